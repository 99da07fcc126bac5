#pragma once

#include <vector>

#include "qpiston/quad.hpp"
#include "qpiston/states.hpp"

namespace qpiston::equilibrium {

/// Dimensionless piston potential v(x) = alpha x - ln x in units of N kB T.
/// Throws Domain for x <= 0.
double potential(double x, double alpha);

/// A local minimum (and hence a stationary piston law) exists iff alpha > 0.
inline bool has_minimum(double alpha) { return alpha > 0.0; }

/// argmin of the potential, 1/alpha. Throws NoStationaryState for alpha <= 0.
double potential_minimum(double alpha);

/// Stationary piston position law for a fixed slope: a Gamma distribution
/// with shape N + 1 and rate alpha N.
class GammaEquilibrium {
 public:
  /// Throws InvalidParameter for N < 1, NoStationaryState for alpha <= 0.
  GammaEquilibrium(int n_particles, double alpha);

  int n_particles() const noexcept { return n_; }
  double alpha() const noexcept { return alpha_; }
  double shape() const noexcept { return n_ + 1.0; }
  double rate() const noexcept { return alpha_ * n_; }

 private:
  int n_;
  double alpha_;
};

/// ln rho(x) = N ln x - alpha N x + (N+1) ln(alpha N) - ln Gamma(N+1).
double gamma_log_pdf(double x, const GammaEquilibrium& eq);
double gamma_pdf(double x, const GammaEquilibrium& eq);
double gamma_cdf(double x, const GammaEquilibrium& eq);

struct GammaMoments {
  double mean;
  double variance;
  double snr;
};

/// mean (N+1)/(alpha N), variance (N+1)/(alpha N)^2, SNR sqrt(N+1).
GammaMoments gamma_moments(const GammaEquilibrium& eq);

/// Piston law averaged over the rectified slope distribution,
/// int_0^inf p(alpha) rho(x; alpha, N) d alpha / p_s.
/// Throws NoStableEnsemble when p_s vanishes.
double mixture_pdf(const states::AlphaDistribution& dist, int n_particles, double x,
                   double tol = quad::kDefaultTol);

/// Lower cut-offs used to probe E[1/alpha^k] for a divergence at alpha -> 0.
inline constexpr double kCutCoarse = 1e-6;
inline constexpr double kCutFine = 1e-8;
/// Relative disagreement between the two cut-offs that flags a divergence.
inline constexpr double kDivergenceTol = 1e-6;

struct MixtureMoments {
  double mean;
  double std;
  double snr;
  double p_s;
  /// Relative change of mean / std between the two cut-offs.
  double mean_sensitivity;
  double std_sensitivity;
  bool mean_divergent;
  bool std_divergent;

  bool divergent() const noexcept { return mean_divergent || std_divergent; }
};

/// Moments of the mixture law by averaging the conditional Gamma moments
/// over the rectified p(alpha) (integration order exchanged). Integrals
/// start at the fine cut-off; mean and std are reported from it, and
/// flagged divergent when the coarse cut-off changes them by more than
/// kDivergenceTol.
MixtureMoments mixture_moments(const states::AlphaDistribution& dist, int n_particles,
                               double tol = quad::kDefaultTol);

/// Mixture density tabulated on a logarithmic grid, for plotting.
struct MixtureDensity {
  states::AlphaDistribution dist;
  int n_particles;
  double p_s;
  std::vector<double> x;
  std::vector<double> density;

  /// Trapezoid rule in u = ln x of x^k rho(x).
  double trapezoid_moment(int k) const;
  double trapezoid_mass() const { return trapezoid_moment(0); }
};

/// Tabulates mixture_pdf on `points` log-spaced abscissae from a fiftieth
/// of the leftmost Gamma mode out to where the rectified mixture has shed
/// all but ~1e-10 of its mass.
MixtureDensity tabulate_mixture(const states::AlphaDistribution& dist, int n_particles, int points = 2000);

}  // namespace qpiston::equilibrium
