#pragma once

#include <cstdint>
#include <optional>

#include "qpiston/quad.hpp"
#include "qpiston/states.hpp"

namespace qpiston::work {

/// Gas particle count, either finite or the thermodynamic limit. The limit
/// is its own state rather than a large number, so the Brownian-piston
/// factor (N+1)/N is exactly 1 there.
class ParticleNumber {
 public:
  static ParticleNumber finite(std::int64_t n);
  static ParticleNumber infinite() { return ParticleNumber(); }

  bool is_infinite() const noexcept { return !n_; }
  /// Throws InvalidParameter in the thermodynamic limit.
  std::int64_t count() const;
  /// (N+1)/N, or 1 in the thermodynamic limit.
  double work_factor() const noexcept;

  friend bool operator==(const ParticleNumber&, const ParticleNumber&) = default;

 private:
  ParticleNumber() = default;
  std::optional<std::int64_t> n_;
};

/// Subensembles with success probability below this are treated as empty.
inline constexpr double kMinSuccessProbability = 1e-14;

struct WorkResult {
  double w_bar = 0.0;          ///< mean work on the successful subensemble, units N kB T
  double p_s = 0.0;            ///< success probability
  double n_correction = 1.0;   ///< (N+1)/N or 1
  double quad_error = 0.0;     ///< error estimate of w_bar
  std::optional<double> mc_stderr;
  std::optional<double> acceptance_rate;
  std::int64_t accepted = 0;   ///< MC only

  /// Work per run of the whole ensemble, failed runs contributing zero.
  double whole_ensemble() const noexcept { return w_bar * p_s; }
};

/// w = -ln alpha, the quasistatic isothermal work for one sharp slope.
double work_deterministic(double alpha);

/// w = -((N+1)/N) ln alpha, including the Brownian piston's own share.
double work_finite_n(double alpha, ParticleNumber n);

/// Integrates <x>(alpha') = (N+1)/(alpha' N) from alpha to 1; must agree with
/// work_finite_n.
double delta_work_check(double alpha, ParticleNumber n, double tol = quad::kDefaultTol);

/// <alpha x - ln x> under the Gamma law: (N+1)/N - psi(N+1) + ln(alpha N).
double mean_potential_energy(double alpha, std::int64_t n_particles);

/// p_s = int_0^inf p(alpha) d alpha. Closed form for Gaussian and point mass.
double success_probability(const states::AlphaDistribution& dist);

/// p_s by quadrature for every variant (cross-check of the closed form).
quad::IntegrationResult success_probability_by_quadrature(const states::AlphaDistribution& dist,
                                                          double tol = quad::kDefaultTol);

/// Rectified mean work, -c int_0^inf ln(alpha) p(alpha) d alpha / p_s.
/// Throws NoStableEnsemble for p_s below kMinSuccessProbability.
WorkResult mean_work(const states::AlphaDistribution& dist, ParticleNumber n, double tol = quad::kDefaultTol);

/// Monte Carlo estimate of mean_work: `samples` raw draws of alpha, draw i
/// generated from the stream (seed, i); draws with alpha <= 0 are rejected.
/// Deterministic for a fixed seed.
WorkResult mean_work_mc(const states::AlphaDistribution& dist, ParticleNumber n, std::int64_t samples,
                        std::uint64_t seed);

/// Large-nbar coherent-state work -ln(1 + 2 sqrt(nbar)).
double coherent_asymptote(double nbar);

/// Leading form -ln 2 - ln(nbar) / 2 of the same asymptote.
double coherent_asymptote_leading(double nbar);

}  // namespace qpiston::work
