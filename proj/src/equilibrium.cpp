#include "qpiston/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qpiston/errors.hpp"
#include "qpiston/special.hpp"
#include "qpiston/work.hpp"

namespace qpiston::equilibrium {

namespace {

// Unchecked log density; alpha <= 0 gives -inf so it can sit under an
// integral over alpha.
double log_gamma_law(double x, double alpha, int n, double log_factorial_n) {
  if (x <= 0.0 || alpha <= 0.0) return -std::numeric_limits<double>::infinity();
  const double rate = alpha * n;
  return n * std::log(x) - rate * x + (n + 1.0) * std::log(rate) - log_factorial_n;
}

double log_gamma_law(double x, double alpha, int n) {
  return log_gamma_law(x, alpha, n, special::log_gamma(n + 1.0));
}

double require_stable_ensemble(const states::AlphaDistribution& dist) {
  const double p_s = work::success_probability(dist);
  if (p_s < work::kMinSuccessProbability) {
    fail(ErrorKind::NoStableEnsemble, "no stable ensemble: success probability vanishes for " + dist.describe());
  }
  return p_s;
}

// Splits the alpha-integral around where the conditional Gamma law peaks
// for this x, plus log-spaced points approaching alpha = 0.
std::vector<double> gamma_peak_points(double x, int n) {
  const double centre = (n + 1.0) / (n * x);
  const double width = std::sqrt(n + 1.0) / (n * x);
  std::vector<double> pts;
  for (double k : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double p = centre + k * width;
    if (p > 0.0) pts.push_back(p);
  }
  return pts;
}

std::vector<double> near_zero_points(double cut) {
  std::vector<double> pts;
  for (double p = 10.0 * cut; p < 1.0; p *= 10.0) pts.push_back(p);
  return pts;
}

}  // namespace

double potential(double x, double alpha) {
  require(x > 0.0, ErrorKind::Domain, "potential is defined for x > 0");
  return alpha * x - std::log(x);
}

double potential_minimum(double alpha) {
  require(has_minimum(alpha), ErrorKind::NoStationaryState, "no local minimum for alpha <= 0");
  return 1.0 / alpha;
}

GammaEquilibrium::GammaEquilibrium(int n_particles, double alpha) : n_(n_particles), alpha_(alpha) {
  require(n_particles >= 1, ErrorKind::InvalidParameter, "N must be at least 1");
  require(std::isfinite(alpha), ErrorKind::InvalidParameter, "alpha must be finite");
  require(alpha > 0.0, ErrorKind::NoStationaryState, "no stationary piston state for alpha <= 0");
}

double gamma_log_pdf(double x, const GammaEquilibrium& eq) {
  require(x >= 0.0, ErrorKind::Domain, "Gamma law is supported on x >= 0");
  return log_gamma_law(x, eq.alpha(), eq.n_particles());
}

double gamma_pdf(double x, const GammaEquilibrium& eq) {
  require(x >= 0.0, ErrorKind::Domain, "Gamma law is supported on x >= 0");
  if (x == 0.0) return 0.0;
  return std::exp(log_gamma_law(x, eq.alpha(), eq.n_particles()));
}

double gamma_cdf(double x, const GammaEquilibrium& eq) {
  if (x <= 0.0) return 0.0;
  return special::regularized_lower_incomplete_gamma(eq.shape(), eq.rate() * x);
}

GammaMoments gamma_moments(const GammaEquilibrium& eq) {
  const double n = eq.n_particles();
  const double rate = eq.rate();
  return {(n + 1.0) / rate, (n + 1.0) / (rate * rate), std::sqrt(n + 1.0)};
}

double mixture_pdf(const states::AlphaDistribution& dist, int n_particles, double x, double tol) {
  require(n_particles >= 1, ErrorKind::InvalidParameter, "N must be at least 1");
  require(x > 0.0, ErrorKind::Domain, "mixture density is evaluated at x > 0");
  const double p_s = require_stable_ensemble(dist);
  if (const auto* pm = std::get_if<states::PointMass>(&dist.variant())) {
    return gamma_pdf(x, GammaEquilibrium(n_particles, pm->alpha0));
  }
  const double log_factorial_n = special::log_gamma(n_particles + 1.0);
  auto conditional = [=](double alpha) { return std::exp(log_gamma_law(x, alpha, n_particles, log_factorial_n)); };
  const auto numerator =
      states::integrate_weighted(dist, conditional, 0.0, quad::Options{tol}, gamma_peak_points(x, n_particles));
  return numerator.value / p_s;
}

MixtureMoments mixture_moments(const states::AlphaDistribution& dist, int n_particles, double tol) {
  require(n_particles >= 1, ErrorKind::InvalidParameter, "N must be at least 1");
  const double p_s = require_stable_ensemble(dist);
  const double n = n_particles;
  if (const auto* pm = std::get_if<states::PointMass>(&dist.variant())) {
    const auto m = gamma_moments(GammaEquilibrium(n_particles, pm->alpha0));
    const double sd = std::sqrt(m.variance);
    return {m.mean, sd, m.mean / sd, p_s, 0.0, 0.0, false, false};
  }

  struct Raw {
    double first;
    double second;
  };
  auto conditional_moments = [&](double cut) {
    const quad::Options opts{tol};
    const auto pts = near_zero_points(cut);
    auto first = [n](double a) { return (n + 1.0) / (a * n); };
    auto second = [n](double a) { return (n + 1.0) * (n + 2.0) / (a * n * a * n); };
    return Raw{states::integrate_weighted(dist, first, cut, opts, pts).value / p_s,
               states::integrate_weighted(dist, second, cut, opts, pts).value / p_s};
  };

  const Raw fine = conditional_moments(kCutFine);
  const Raw coarse = conditional_moments(kCutCoarse);
  auto stddev = [](const Raw& r) { return std::sqrt(std::max(0.0, r.second - r.first * r.first)); };
  const double mean = fine.first;
  const double sd = stddev(fine);
  const double mean_sens = std::abs(fine.first - coarse.first) / std::max(1.0, std::abs(mean));
  const double sd_sens = std::abs(sd - stddev(coarse)) / std::max(1.0, sd);
  return {mean,     sd,       mean / sd, p_s, mean_sens, sd_sens, mean_sens > kDivergenceTol,
          sd_sens > kDivergenceTol};
}

double MixtureDensity::trapezoid_moment(int k) const {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double du = std::log(x[i + 1]) - std::log(x[i]);
    const double left = std::pow(x[i], k + 1) * density[i];
    const double right = std::pow(x[i + 1], k + 1) * density[i + 1];
    sum += 0.5 * du * (left + right);
  }
  return sum;
}

MixtureDensity tabulate_mixture(const states::AlphaDistribution& dist, int n_particles, int points) {
  require(points >= 2, ErrorKind::InvalidParameter, "need at least two grid points");
  require(n_particles >= 1, ErrorKind::InvalidParameter, "N must be at least 1");
  const double p_s = require_stable_ensemble(dist);
  const double n = n_particles;
  const double spread = 1.0 + 12.0 / std::sqrt(n + 1.0);

  // Tightest contributing law sits at the top of the alpha bulk.
  const double alpha_top = std::max(dist.bulk().second, 1e-300);
  const double x_lo = (1.0 / alpha_top) / 50.0;

  // Lowest alpha still carrying ~1e-10 of the rectified mass.
  double alpha_low = 0.0;
  if (const auto* pm = std::get_if<states::PointMass>(&dist.variant())) {
    alpha_low = pm->alpha0;
  } else {
    constexpr double kTailMass = 1e-10;
    auto mass_below = [&](double a) {
      return states::integrate_weighted(dist, [a](double v) { return v < a ? 1.0 : 0.0; }, 0.0,
                                        quad::Options{1e-13}, {a})
                 .value /
             p_s;
    };
    double lo = 0.0;
    double hi = std::max(dist.bulk().second, 1.0);
    for (int it = 0; it < 80; ++it) {
      const double mid = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi;
      if (mass_below(mid) > kTailMass) {
        hi = mid;
      } else {
        lo = mid;
      }
      if (lo > 0.0 && hi / lo < 1.01) break;
    }
    alpha_low = std::max(lo, 1e-300);
  }
  double x_hi = spread * (n + 1.0) / (n * alpha_low);
  x_hi = std::max(x_hi, 2.0 * x_lo);

  MixtureDensity out{dist, n_particles, p_s, {}, {}};
  out.x.resize(static_cast<std::size_t>(points));
  out.density.resize(static_cast<std::size_t>(points));
  const double u_lo = std::log(x_lo);
  const double u_hi = std::log(x_hi);
  for (int i = 0; i < points; ++i) {
    const double xi = std::exp(u_lo + (u_hi - u_lo) * i / (points - 1));
    out.x[static_cast<std::size_t>(i)] = xi;
    out.density[static_cast<std::size_t>(i)] = mixture_pdf(dist, n_particles, xi, 1e-12);
  }
  return out;
}

}  // namespace qpiston::equilibrium
