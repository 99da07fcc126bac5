#include "qpiston/langevin.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "qpiston/equilibrium.hpp"
#include "qpiston/errors.hpp"
#include "qpiston/rng.hpp"

namespace qpiston::langevin {

namespace {

constexpr double kBurnInRelaxations = 10.0;
constexpr double kThinRelaxations = 4.0;
constexpr double kUnstableRejectionRate = 0.01;
constexpr std::int64_t kTargetBatches = 64;

struct WalkerTrace {
  std::vector<double> x;
  std::vector<std::int64_t> step;
  std::int64_t rejected = 0;
};

// Walkers advance in lockstep groups so the per-step division of one walker
// overlaps with the others; each still draws only from its own stream.
constexpr std::int64_t kGroup = 4;

void run_group(const LangevinConfig& c, std::int64_t first, std::vector<WalkerTrace>& traces, bool keep_steps) {
  const std::int64_t count = std::min(kGroup, c.ensemble - first);
  std::vector<rng::StreamRng> streams;
  for (std::int64_t k = 0; k < count; ++k) streams.emplace_back(c.seed, static_cast<std::uint64_t>(first + k));
  std::array<double, kGroup> x;
  std::array<std::int64_t, kGroup> rejected{};
  x.fill(c.x0);

  const double drift_scale = c.dt;
  const double noise_scale = std::sqrt(2.0 * c.dt / c.n_particles);
  auto advance = [&](std::int64_t steps) {
    for (std::int64_t i = 0; i < steps; ++i) {
      for (std::int64_t k = 0; k < count; ++k) {
        const double proposal = x[k] + (-c.alpha + 1.0 / x[k]) * drift_scale + noise_scale * streams[k].normal();
        if (proposal > 0.0) {
          x[k] = proposal;
        } else {
          ++rejected[k];
        }
      }
    }
  };

  for (std::int64_t k = 0; k < count; ++k) {
    auto& tr = traces[static_cast<std::size_t>(first + k)];
    tr.x.reserve(static_cast<std::size_t>(c.samples));
    if (keep_steps) tr.step.reserve(static_cast<std::size_t>(c.samples));
  }
  advance(c.burn_in);
  std::int64_t t = c.burn_in;
  for (std::int64_t s = 0; s < c.samples; ++s) {
    advance(c.thin);
    t += c.thin;
    for (std::int64_t k = 0; k < count; ++k) {
      auto& tr = traces[static_cast<std::size_t>(first + k)];
      tr.x.push_back(x[k]);
      if (keep_steps) tr.step.push_back(t);
    }
  }
  for (std::int64_t k = 0; k < count; ++k) traces[static_cast<std::size_t>(first + k)].rejected = rejected[k];
}

struct BatchStats {
  double mean_stderr;
  double variance_stderr;
};

// Batch means over contiguous stretches of each walker's retained series.
BatchStats batch_means(const std::vector<WalkerTrace>& traces, double mean) {
  const auto walkers = static_cast<std::int64_t>(traces.size());
  const std::int64_t per_walker = traces.front().x.size();
  const std::int64_t batches_per_walker =
      std::clamp<std::int64_t>((kTargetBatches + walkers - 1) / walkers, 1, per_walker);
  const std::int64_t size = per_walker / batches_per_walker;

  std::vector<double> m;
  std::vector<double> v;
  for (const auto& tr : traces) {
    for (std::int64_t b = 0; b < batches_per_walker; ++b) {
      const std::int64_t lo = b * size;
      const std::int64_t hi = b + 1 == batches_per_walker ? per_walker : lo + size;
      double s1 = 0.0;
      double s2 = 0.0;
      for (std::int64_t i = lo; i < hi; ++i) {
        const double d = tr.x[static_cast<std::size_t>(i)] - mean;
        s1 += d;
        s2 += d * d;
      }
      const double count = static_cast<double>(hi - lo);
      m.push_back(s1 / count);
      v.push_back(s2 / count);
    }
  }
  auto stderr_of = [](const std::vector<double>& values) {
    const double k = static_cast<double>(values.size());
    if (values.size() < 2) return 0.0;
    double avg = 0.0;
    for (double val : values) avg += val;
    avg /= k;
    double ss = 0.0;
    for (double val : values) ss += (val - avg) * (val - avg);
    return std::sqrt(ss / (k - 1.0) / k);
  };
  return {stderr_of(m), stderr_of(v)};
}

}  // namespace

LangevinConfig LangevinConfig::defaults(int n_particles, double alpha, std::optional<double> dt) {
  require(n_particles >= 1, ErrorKind::InvalidParameter, "N must be at least 1");
  require(std::isfinite(alpha), ErrorKind::InvalidParameter, "alpha must be finite");
  require(alpha > 0.0, ErrorKind::NoStationaryState, "no stationary piston state for alpha <= 0");
  LangevinConfig c;
  c.n_particles = n_particles;
  c.alpha = alpha;
  c.dt = dt.value_or(0.05 / (alpha * n_particles));
  require(c.dt > 0.0, ErrorKind::InvalidParameter, "dt must be positive");
  c.burn_in = static_cast<std::int64_t>(std::ceil(kBurnInRelaxations * c.relaxation_steps()));
  c.thin = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(kThinRelaxations * c.relaxation_steps())));
  c.samples = 1000;
  c.x0 = (n_particles + 1.0) / (alpha * n_particles);
  return c;
}

void LangevinConfig::validate() const {
  require(n_particles >= 1, ErrorKind::InvalidParameter, "N must be at least 1");
  require(std::isfinite(alpha), ErrorKind::InvalidParameter, "alpha must be finite");
  require(alpha > 0.0, ErrorKind::NoStationaryState, "no stationary piston state for alpha <= 0");
  require(std::isfinite(dt) && dt > 0.0, ErrorKind::InvalidParameter, "dt must be positive");
  require(dt <= max_dt() * (1.0 + 1e-12), ErrorKind::InvalidParameter, "dt exceeds the stability bound 0.1/(alpha N)");
  require(burn_in >= 0, ErrorKind::InvalidParameter, "burn-in must be non-negative");
  require(samples >= 1, ErrorKind::InvalidParameter, "samples must be at least 1");
  require(thin >= 1, ErrorKind::InvalidParameter, "thin must be at least 1");
  require(ensemble >= 1, ErrorKind::InvalidParameter, "ensemble must be at least 1");
  require(std::isfinite(x0) && x0 > 0.0, ErrorKind::InvalidParameter, "x0 must be positive");
  require(threads >= 0, ErrorKind::InvalidParameter, "threads must be non-negative");
}

double ks_critical_1pct(std::int64_t n) {
  require(n >= 1, ErrorKind::InvalidParameter, "KS needs at least one sample");
  const double root = std::sqrt(static_cast<double>(n));
  return 1.6276 / (root + 0.12 + 0.11 / root);
}

EnsembleSummary run(const LangevinConfig& config, const SampleSink& sink) {
  config.validate();
  const bool keep_steps = static_cast<bool>(sink);
  std::vector<WalkerTrace> traces(static_cast<std::size_t>(config.ensemble));

  int threads = config.threads == 0 ? static_cast<int>(std::thread::hardware_concurrency()) : config.threads;
  const std::int64_t groups = (config.ensemble + kGroup - 1) / kGroup;
  threads = static_cast<int>(std::clamp<std::int64_t>(threads, 1, groups));
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t g = next++; g < groups; g = next++) run_group(config, g * kGroup, traces, keep_steps);
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  EnsembleSummary s;
  std::vector<double> all;
  all.reserve(static_cast<std::size_t>(config.samples * config.ensemble));
  for (std::int64_t w = 0; w < config.ensemble; ++w) {
    const auto& tr = traces[static_cast<std::size_t>(w)];
    s.rejected_steps += tr.rejected;
    all.insert(all.end(), tr.x.begin(), tr.x.end());
    if (keep_steps) {
      for (std::size_t i = 0; i < tr.x.size(); ++i) sink(w, tr.step[i], tr.x[i]);
    }
  }
  s.retained = static_cast<std::int64_t>(all.size());
  s.total_steps = config.ensemble * (config.burn_in + config.samples * config.thin);

  double sum = 0.0;
  for (double x : all) sum += x;
  s.mean = sum / static_cast<double>(s.retained);
  double ss = 0.0;
  for (double x : all) ss += (x - s.mean) * (x - s.mean);
  s.variance = s.retained > 1 ? ss / static_cast<double>(s.retained - 1) : 0.0;
  const double sd = std::sqrt(s.variance);
  s.snr = sd > 0.0 ? s.mean / sd : 0.0;

  const auto batch = batch_means(traces, s.mean);
  s.mean_stderr = batch.mean_stderr;
  s.variance_stderr = batch.variance_stderr;
  if (sd > 0.0) {
    const double a = s.mean_stderr / sd;
    const double b = s.mean * s.variance_stderr / (2.0 * s.variance * sd);
    s.snr_stderr = std::sqrt(a * a + b * b);
  }

  const equilibrium::GammaEquilibrium law(config.n_particles, config.alpha);
  std::sort(all.begin(), all.end());
  const double n = static_cast<double>(all.size());
  double d = 0.0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const double f = equilibrium::gamma_cdf(all[i], law);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  s.ks_statistic = d;
  s.ks_critical_1pct = ks_critical_1pct(s.retained);

  const double rate = static_cast<double>(s.rejected_steps) / static_cast<double>(s.total_steps);
  if (rate > kUnstableRejectionRate) {
    s.warning = "unstable-dt: " + std::to_string(s.rejected_steps) + " of " + std::to_string(s.total_steps) +
                " steps rejected; reduce dt";
  }
  return s;
}

}  // namespace qpiston::langevin
