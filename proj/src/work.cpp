#include "qpiston/work.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qpiston/errors.hpp"
#include "qpiston/rng.hpp"
#include "qpiston/special.hpp"

namespace qpiston::work {

namespace {

// Width of the slice next to alpha = 0 that gets the u = -ln(alpha)
// treatment, and the contribution below which it is skipped.
constexpr double kLogSlice = 1e-6;
constexpr double kLogSliceNegligible = 1e-12;

void require_positive_alpha(double alpha) {
  require(std::isfinite(alpha), ErrorKind::InvalidParameter, "alpha must be finite");
  require(alpha > 0.0, ErrorKind::NoStationaryState, "no stationary piston state for alpha <= 0");
}

}  // namespace

ParticleNumber ParticleNumber::finite(std::int64_t n) {
  require(n >= 1, ErrorKind::InvalidParameter, "N must be at least 1");
  ParticleNumber out;
  out.n_ = n;
  return out;
}

std::int64_t ParticleNumber::count() const {
  require(n_.has_value(), ErrorKind::InvalidParameter, "particle number is infinite");
  return *n_;
}

double ParticleNumber::work_factor() const noexcept {
  if (!n_) return 1.0;
  const double n = static_cast<double>(*n_);
  return (n + 1.0) / n;
}

double work_deterministic(double alpha) {
  require_positive_alpha(alpha);
  return -std::log(alpha);
}

double work_finite_n(double alpha, ParticleNumber n) {
  require_positive_alpha(alpha);
  return -n.work_factor() * std::log(alpha);
}

double delta_work_check(double alpha, ParticleNumber n, double tol) {
  require_positive_alpha(alpha);
  const double factor = n.work_factor();
  // d v_bar / d alpha at fixed rho is <x> = (N+1)/(alpha N).
  auto mean_position = [factor](double a) { return factor / a; };
  return quad::integrate(mean_position, alpha, 1.0, tol).value;
}

double mean_potential_energy(double alpha, std::int64_t n_particles) {
  require_positive_alpha(alpha);
  require(n_particles >= 1, ErrorKind::InvalidParameter, "N must be at least 1");
  const double n = static_cast<double>(n_particles);
  return (n + 1.0) / n - (special::digamma(n + 1.0) - std::log(alpha * n));
}

double success_probability(const states::AlphaDistribution& dist) {
  const auto& v = dist.variant();
  if (const auto* pm = std::get_if<states::PointMass>(&v)) return pm->alpha0 > 0.0 ? 1.0 : 0.0;
  if (const auto* g = std::get_if<states::Gaussian>(&v)) {
    return 0.5 * special::erfc(-g->alpha0 / (std::numbers::sqrt2 * g->epsilon));
  }
  return std::min(1.0, success_probability_by_quadrature(dist).value);
}

quad::IntegrationResult success_probability_by_quadrature(const states::AlphaDistribution& dist, double tol) {
  return states::integrate_weighted(dist, [](double) { return 1.0; }, 0.0, quad::Options{tol});
}

WorkResult mean_work(const states::AlphaDistribution& dist, ParticleNumber n, double tol) {
  WorkResult result;
  result.n_correction = n.work_factor();
  result.p_s = success_probability(dist);
  if (result.p_s < kMinSuccessProbability) {
    fail(ErrorKind::NoStableEnsemble, "no stable ensemble: success probability vanishes for " + dist.describe());
  }
  if (const auto* pm = std::get_if<states::PointMass>(&dist.variant())) {
    result.w_bar = work_finite_n(pm->alpha0, n);
    return result;
  }

  const quad::Options opts{tol};
  auto log_alpha = [](double a) { return std::log(a); };

  quad::IntegrationResult integral;
  const double near_zero = dist.density(kLogSlice);
  if (near_zero * kLogSlice * (1.0 - std::log(kLogSlice)) > kLogSliceNegligible) {
    auto weighted = [&dist](double a) { return std::log(a) * dist.density(a); };
    integral += quad::integrate_log_endpoint(weighted, 0.0, kLogSlice, opts);
  }
  integral += states::integrate_weighted(dist, log_alpha, kLogSlice, opts, {1.0});

  if (!std::isfinite(integral.value)) {
    fail(ErrorKind::DivergentWork, "mean work integral diverges for " + dist.describe());
  }
  result.w_bar = -result.n_correction * integral.value / result.p_s;
  result.quad_error = result.n_correction * integral.error_estimate / result.p_s;
  return result;
}

WorkResult mean_work_mc(const states::AlphaDistribution& dist, ParticleNumber n, std::int64_t samples,
                        std::uint64_t seed) {
  require(samples >= 100, ErrorKind::InvalidParameter, "Monte Carlo needs at least 100 samples");
  const states::AlphaSampler sampler(dist);
  const double factor = n.work_factor();

  // Welford accumulation of -ln(alpha) over accepted draws.
  std::int64_t accepted = 0;
  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t i = 0; i < samples; ++i) {
    rng::StreamRng stream(seed, static_cast<std::uint64_t>(i));
    const double alpha = sampler(stream);
    if (!(alpha > 0.0)) continue;
    ++accepted;
    const double w = -std::log(alpha);
    const double delta = w - mean;
    mean += delta / static_cast<double>(accepted);
    m2 += delta * (w - mean);
  }
  if (accepted == 0) {
    fail(ErrorKind::NoStableEnsemble,
         "no stable ensemble: all " + std::to_string(samples) + " draws had alpha <= 0 for " + dist.describe());
  }

  WorkResult result;
  result.n_correction = factor;
  result.accepted = accepted;
  result.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(samples);
  result.p_s = *result.acceptance_rate;
  result.w_bar = factor * mean;
  const double var = accepted > 1 ? m2 / static_cast<double>(accepted - 1) : 0.0;
  result.mc_stderr = factor * std::sqrt(var / static_cast<double>(accepted));
  return result;
}

double coherent_asymptote(double nbar) {
  require(nbar > 0.0 && std::isfinite(nbar), ErrorKind::InvalidParameter, "nbar must be positive");
  return -std::log(1.0 + 2.0 * std::sqrt(nbar));
}

double coherent_asymptote_leading(double nbar) {
  require(nbar > 0.0 && std::isfinite(nbar), ErrorKind::InvalidParameter, "nbar must be positive");
  return -std::numbers::ln2 - 0.5 * std::log(nbar);
}

}  // namespace qpiston::work
