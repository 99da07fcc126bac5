#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace qpiston::langevin {

/// Dimensionless overdamped piston dynamics. With x = X/L, L = N kB T/F0,
/// and tau = t F0/(gamma L), the Langevin equation for the piston reads
///
///   dx/dtau = -alpha + 1/x + sqrt(2/N) xi(tau),   <xi(s) xi(t)> = delta(s - t),
///
/// whose stationary density is the Gamma law with shape N+1 and rate alpha N.
/// Near x = 1/alpha the drift linearizes to -alpha^2 (x - 1/alpha), so one
/// relaxation time is 1/alpha^2 in tau units.
enum class Boundary { RejectStep };

struct LangevinConfig {
  int n_particles = 1;
  double alpha = 1.0;
  double dt = 0.0;
  std::int64_t burn_in = 0;  ///< steps discarded per walker
  std::int64_t samples = 0;  ///< retained samples per walker
  std::int64_t thin = 1;     ///< steps between retained samples
  std::int64_t ensemble = 1; ///< independent walkers
  std::uint64_t seed = 0;
  double x0 = 1.0;
  Boundary boundary = Boundary::RejectStep;
  int threads = 1;  ///< 0 = hardware concurrency

  /// dt = 0.05/(alpha N), burn-in 10 and thinning 4 relaxation times,
  /// x0 at the stationary mean.
  static LangevinConfig defaults(int n_particles, double alpha, std::optional<double> dt = std::nullopt);

  /// Largest stable step, 0.1/(alpha N).
  double max_dt() const noexcept { return 0.1 / (alpha * n_particles); }
  double relaxation_steps() const noexcept { return 1.0 / (alpha * alpha * dt); }

  /// Throws InvalidParameter (or NoStationaryState for alpha <= 0).
  void validate() const;
};

struct StepResult {
  double x;
  bool rejected;
};

/// One explicit Euler step of the dimensionless equation; a proposal with
/// x' <= 0 is rejected and x is kept.
inline StepResult step(double x, double alpha, int n_particles, double dt, double noise) noexcept {
  const double proposal = x + (-alpha + 1.0 / x) * dt + std::sqrt(2.0 * dt / n_particles) * noise;
  if (proposal <= 0.0) return {x, true};
  return {proposal, false};
}

struct EnsembleSummary {
  double mean = 0.0;
  double variance = 0.0;
  double snr = 0.0;
  double mean_stderr = 0.0;
  double variance_stderr = 0.0;
  double snr_stderr = 0.0;
  double ks_statistic = 0.0;
  double ks_critical_1pct = 0.0;
  std::int64_t retained = 0;
  std::int64_t rejected_steps = 0;
  std::int64_t total_steps = 0;
  std::optional<std::string> warning;
};

/// Receives retained samples in walker order; `step` counts from the start
/// of the walker including burn-in.
using SampleSink = std::function<void(std::int64_t walker, std::int64_t step, double x)>;

/// Runs every walker, walker i driven by the stream (seed, i). The summary
/// does not depend on the thread count.
EnsembleSummary run(const LangevinConfig& config, const SampleSink& sink = {});

/// Asymptotic 1% critical value of the one-sample KS statistic.
double ks_critical_1pct(std::int64_t n);

}  // namespace qpiston::langevin
