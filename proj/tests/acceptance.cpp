// Acceptance checks. One PASS/FAIL line per criterion; nonzero exit if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qpiston/equilibrium.hpp"
#include "qpiston/langevin.hpp"
#include "qpiston/quad.hpp"
#include "qpiston/states.hpp"
#include "qpiston/sweep.hpp"
#include "qpiston/work.hpp"

using namespace qpiston;
using states::AlphaDistribution;
using work::ParticleNumber;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += what;
  }
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const auto kInf = ParticleNumber::infinite();

double w_of(const AlphaDistribution& d) { return work::mean_work(d, kInf).w_bar; }

Outcome gamma_closed_forms() {
  Outcome o;
  double worst_mean = 0, worst_var = 0, worst_snr = 0;
  for (int n : {1, 10, 500}) {
    for (double alpha : {0.5, 1.0, 1.5}) {
      const equilibrium::GammaEquilibrium eq(n, alpha);
      const auto moment = [&](int k) {
        return quad::integrate_semi_infinite(
                   [&](double x) { return std::pow(x, k) * equilibrium::gamma_pdf(x, eq); }, 0.0, quad::Options{1e-13})
            .value;
      };
      const double m1 = moment(1);
      const double var = moment(2) - m1 * m1;
      const double mean_cf = (n + 1.0) / (alpha * n);
      const double var_cf = (n + 1.0) / (alpha * alpha * n * n);
      worst_mean = std::max(worst_mean, std::abs(m1 / mean_cf - 1));
      worst_var = std::max(worst_var, std::abs(var / var_cf - 1));
      worst_snr = std::max(worst_snr, std::abs(equilibrium::gamma_moments(eq).snr - std::sqrt(n + 1.0)));
    }
  }
  require(o, worst_mean < 1e-8, "mean");
  require(o, worst_var < 1e-8, "variance");
  require(o, worst_snr < 1e-10, "snr");
  o.detail += fmt("max rel err mean %.2e, variance %.2e; snr abs %.2e", worst_mean, worst_var, worst_snr);
  return o;
}

Outcome deterministic_work() {
  Outcome o;
  double worst = 0;
  for (double a0 : {0.5, 1.0, 2.0}) {
    for (auto n : {ParticleNumber::finite(1), ParticleNumber::finite(1000), kInf}) {
      const double expect = n.is_infinite() ? -std::log(a0) : -((n.count() + 1.0) / n.count()) * std::log(a0);
      worst = std::max(worst, std::abs(work::mean_work(AlphaDistribution::gaussian(a0, 0.0), n).w_bar - expect));
    }
  }
  require(o, worst < 1e-12, "identity");
  o.detail += fmt("max abs err %.2e", worst);
  return o;
}

Outcome success_closed_form() {
  Outcome o;
  double worst = 0;
  for (double eps : {0.1, 1.0, 3.0}) {
    for (double a0 : {0.0, 1.0, 5.0}) {
      const double q = work::success_probability_by_quadrature(AlphaDistribution::gaussian(a0, eps)).value;
      const double cf = 0.5 * (1 + std::erf(a0 / (std::numbers::sqrt2 * eps)));
      worst = std::max(worst, std::abs(q - cf));
    }
  }
  require(o, worst < 1e-8, "p_s");
  o.detail += fmt("max abs err %.2e", worst);
  return o;
}

Outcome vacuum_coincidence() {
  Outcome o;
  const auto c = work::mean_work(states::from_preset(states::Coherent{0}), kInf);
  const auto t = work::mean_work(states::from_preset(states::Thermal{0}), kInf);
  const auto f = work::mean_work(states::from_preset(states::FockPreset{0}), kInf);
  const double dw = std::max(std::abs(c.w_bar - t.w_bar), std::abs(c.w_bar - f.w_bar));
  const double dp = std::max(std::abs(c.p_s - t.p_s), std::abs(c.p_s - f.p_s));
  require(o, dw < 1e-10, "w_bar");
  require(o, dp < 1e-10, "p_s");
  o.detail += fmt("w_bar spread %.2e, p_s spread %.2e", dw, dp);
  return o;
}

Outcome mixture_nonmonotone() {
  Outcome o;
  const auto mean = [](double eps) {
    return equilibrium::mixture_moments(AlphaDistribution::gaussian(1.0, eps), 500).mean;
  };
  const double sharp = mean(0.0);
  double above_at = NAN, below_at = NAN, peak = 0, peak_at = 0;
  for (int i = 1; i <= 60; ++i) {
    const double eps = 0.5 * i;
    const double m = mean(eps);
    if (m > peak) peak = m, peak_at = eps;
    if (m > 1 && m > sharp && std::isnan(above_at)) above_at = eps;
    if (m < 1 && !std::isnan(above_at) && std::isnan(below_at)) below_at = eps;
  }
  require(o, !std::isnan(above_at) && !std::isnan(below_at), "no crossing");
  if (!o.pass) return o;
  double lo = below_at - 0.5, hi = below_at;
  while (hi - lo > 1e-11) {
    const double mid = 0.5 * (lo + hi);
    (mean(mid) > 1 ? lo : hi) = mid;
  }
  const double crossing = 0.5 * (lo + hi);
  const double golden = 16.2351630828;
  require(o, std::abs(crossing - golden) < 1e-6, "crossing vs golden");
  const bool flagged = equilibrium::mixture_moments(AlphaDistribution::gaussian(1.0, crossing), 500).divergent();
  o.detail += fmt("mean(0) %.6f; rises above it at eps = %g, peak %.4f at eps = %g, crosses 1 at eps = %.10f "
                  "(golden %.10f, divergence flag %s)",
                  sharp, above_at, peak, peak_at, crossing, golden, flagged ? "set" : "clear");
  return o;
}

Outcome work_sign_change() {
  Outcome o;
  const auto w = [](double eps) { return w_of(AlphaDistribution::gaussian(1.0, eps)); };
  require(o, w(0.0) == 0.0, "w(0) != 0");
  require(o, w(6.0) < 0.0, "w(6) >= 0");
  double lo = 0.5, hi = 2.0;
  require(o, w(lo) > 0 && w(hi) < 0, "no bracket");
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (w(mid) > 0 ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  const double golden = 1.09234012662216;
  // Independent check: the oracle integral of ln(alpha) changes sign at the root.
  const auto oracle_num = [](double eps) {
    return oracle::positive_axis([&](double a) { return std::log(a) * oracle::gaussian_pdf(a, 1.0, eps); }, -60.0,
                                 std::log(1 + 14 * eps));
  };
  require(o, std::abs(root - golden) < 1e-8, "root vs golden");
  require(o, oracle_num(root - 1e-6) < 0 && oracle_num(root + 1e-6) > 0, "oracle disagrees");
  o.detail += fmt("root eps* = %.14f (golden %.14f)", root, golden);
  return o;
}

Outcome large_slope_asymptote() {
  Outcome o;
  double worst = 0;
  for (double eps : {0.0, 1.5, 3.0}) {
    double prev = INFINITY;
    for (double a0 : {5.0, 10.0, 20.0, 50.0}) {
      const double dev = std::abs(w_of(AlphaDistribution::gaussian(a0, eps)) + std::log(a0));
      require(o, dev <= prev, fmt("not decreasing at eps %g", eps));
      prev = dev;
    }
    worst = std::max(worst, prev);
  }
  require(o, worst < 5e-2, "deviation at 50");
  o.detail += fmt("max deviation at alpha0 = 50: %.3e", worst);
  return o;
}

Outcome state_ordering() {
  Outcome o;
  for (double nbar : {2.0, 5.0, 10.0}) {
    const double c = w_of(states::from_preset(states::Coherent{nbar}));
    const double t = w_of(states::from_preset(states::Thermal{nbar}));
    const double f = w_of(states::from_preset(states::FockPreset{static_cast<int>(nbar)}));
    require(o, c > t && t > f, fmt("nbar %g: coherent %.4f thermal %.4f fock %.4f", nbar, c, t, f));
  }
  const double nbar = 1e4;
  const double c = w_of(states::from_preset(states::Coherent{nbar}));
  const double target = -std::log(1 + 2 * std::sqrt(nbar));
  require(o, std::abs(c - target) < 1e-2, "asymptote");
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += fmt("coherent(1e4) %.6f vs %.6f", c, target);
  return o;
}

Outcome squeezed_and_phase() {
  Outcome o;
  const double threshold = std::pow(std::sinh(2.0), 2) + 1;
  for (double nbar : {threshold, 16.0, 20.0, 50.0}) {
    const double c = w_of(states::from_preset(states::Coherent{nbar}));
    const double s = w_of(states::from_preset(states::SqueezedCoherent{nbar, 2.0}));
    const double p = w_of(states::from_preset(states::PhaseRandomized{nbar, std::numbers::pi / 4}));
    require(o, s > c && p > c, fmt("nbar %g: coherent %.4f squeezed %.4f phase %.4f", nbar, c, s, p));
  }
  for (const char* name : {"fig11", "fig12"}) {
    const auto t = sweep::run_sweep(sweep::figure_preset(name));
    std::size_t col = 0;
    while (t.output_columns[col] != "p_s") ++col;
    for (const auto& row : t.rows) {
      if (row.values[col]) require(o, *row.values[col] >= 0 && *row.values[col] <= 1, "p_s out of range");
    }
  }
  for (double eps : {0.5, 1.5, 3.0}) {
    double prev = -1;
    for (int i = 0; i <= 60; ++i) {
      const double ps = work::success_probability(AlphaDistribution::gaussian(-10.0 + i, eps));
      require(o, ps >= prev, fmt("p_s decreases at eps %g", eps));
      prev = ps;
    }
  }
  o.detail += fmt("checked nbar >= %.4f", threshold);
  return o;
}

Outcome mc_equivalence() {
  Outcome o;
  const std::int64_t samples = 1'000'000;
  const std::pair<const char*, states::StatePreset> presets[] = {
      {"thermal(2)", states::Thermal{2}}, {"coherent(4)", states::Coherent{4}}, {"fock(3)", states::FockPreset{3}}};
  std::uint64_t seed = 1;
  for (const auto& [name, preset] : presets) {
    const auto d = states::from_preset(preset);
    const auto q = work::mean_work(d, kInf);
    const auto mc = work::mean_work_mc(d, kInf, samples, seed++);
    const double z = (mc.w_bar - q.w_bar) / *mc.mc_stderr;
    const double binom = std::sqrt(std::max(q.p_s * (1 - q.p_s), 1e-300) / samples);
    const double zp = (*mc.acceptance_rate - q.p_s) / binom;
    require(o, std::abs(z) < 3, fmt("%s w_bar z = %.2f", name, z));
    require(o, std::abs(zp) < 3 || *mc.acceptance_rate == q.p_s, fmt("%s p_s z = %.2f", name, zp));
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += fmt("%s z %.2f", name, z);
  }
  return o;
}

Outcome langevin_stationarity() {
  Outcome o;
  const int n = 50;
  for (double alpha : {0.5, 1.0, 2.0}) {
    auto c = langevin::LangevinConfig::defaults(n, alpha);
    c.samples = 5000;
    c.ensemble = 20;
    c.seed = 2024;
    const auto s = langevin::run(c);
    auto h = langevin::LangevinConfig::defaults(n, alpha, c.dt / 2);
    h.samples = c.samples;
    h.ensemble = c.ensemble;
    h.seed = c.seed;
    const auto sh = langevin::run(h);
    const double mean = (n + 1.0) / (alpha * n);
    const double var = (n + 1.0) / (alpha * alpha * n * n);
    const double zm = (s.mean - mean) / s.mean_stderr;
    const double zv = (s.variance - var) / s.variance_stderr;
    const double shift = (sh.mean - s.mean) / std::hypot(s.mean_stderr, sh.mean_stderr);
    require(o, s.retained == 100000, "retained");
    require(o, std::abs(zm) < 3, fmt("alpha %g mean z %.2f", alpha, zm));
    require(o, std::abs(zv) < 3, fmt("alpha %g variance z %.2f", alpha, zv));
    require(o, s.ks_statistic < s.ks_critical_1pct, fmt("alpha %g ks %.5f", alpha, s.ks_statistic));
    require(o, std::abs(shift) < 1, fmt("alpha %g dt-halving shift %.2f stderr", alpha, shift));
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += fmt("alpha %g: z_mean %.2f z_var %.2f ks %.5f/%.5f shift %.2f", alpha, zm, zv, s.ks_statistic,
                    s.ks_critical_1pct, shift);
  }
  return o;
}

Outcome delta_work_chain() {
  Outcome o;
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> log_alpha(std::log(0.02), std::log(50.0));
  std::uniform_int_distribution<std::int64_t> count(1, 1'000'000);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const double alpha = std::exp(log_alpha(gen));
    const auto n = ParticleNumber::finite(count(gen));
    worst = std::max(worst, std::abs(work::delta_work_check(alpha, n) - work::work_finite_n(alpha, n)));
  }
  require(o, worst < 1e-8, "chain");
  o.detail += fmt("max abs err %.2e", worst);
  return o;
}

Outcome determinism() {
  Outcome o;
  for (const auto& name : sweep::figure_names()) {
    std::string csv[2];
    for (auto& text : csv) {
      const auto spec = sweep::figure_preset(name);
      std::ostringstream out;
      sweep::write_csv(out, spec, sweep::run_sweep(spec));
      text = out.str();
    }
    require(o, csv[0] == csv[1], name);
  }
  o.detail += fmt("%zu presets", sweep::figure_names().size());
  return o;
}

struct Criterion {
  const char* title;
  std::function<Outcome()> check;
  double budget_s;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"gamma law closed forms", gamma_closed_forms, 1},
      {"deterministic work identity", deterministic_work, 0},
      {"success probability closed form", success_closed_form, 0},
      {"vacuum coincidence", vacuum_coincidence, 0},
      {"mixture mean nonmonotone in eps", mixture_nonmonotone, 10},
      {"work sign change", work_sign_change, 0},
      {"large slope asymptote", large_slope_asymptote, 0},
      {"state ordering and coherent asymptote", state_ordering, 0},
      {"squeezed and phase-randomized above coherent", squeezed_and_phase, 0},
      {"Monte Carlo vs quadrature", mc_equivalence, 30},
      {"Langevin stationarity", langevin_stationarity, 60},
      {"delta-work chain", delta_work_chain, 0},
      {"figure determinism", determinism, 0},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += fmt("; runtime %.1f s over %.0f s", secs, c.budget_s);
    }
    failures += !o.pass;
    std::printf("%s criterion %zu: %s [%.2f s] %s\n", o.pass ? "PASS" : "FAIL", i + 1, c.title, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
