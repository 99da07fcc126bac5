#pragma once

#include <cstdint>

namespace qpiston::units {

/// Physical inputs of the membrane/piston/gas chain. Everything downstream
/// works with the dimensionless reductions below: lengths in
/// L = N kB T / F0, energies in N kB T.
struct DimensionalParams {
  double kappa = 0.0;    ///< membrane-piston coupling (force / length)
  double F0 = 1.0;       ///< ambient pressure force on the piston
  std::int64_t N = 1;    ///< gas particle count
  double kBT = 1.0;      ///< thermal energy
  double gamma = 1.0;    ///< piston damping coefficient
  double XM = 0.0;       ///< membrane position
  double X0 = 0.0;       ///< membrane mean position
  double eps_bar = 0.0;  ///< membrane position standard deviation

  /// Throws InvalidParameter unless F0, kBT, gamma > 0, N >= 1, eps_bar >= 0.
  void validate() const;
};

/// Potential slope alpha = 1 + kappa XM / F0.
double alpha_from(const DimensionalParams& params);

/// Mean slope alpha0 = 1 + kappa X0 / F0 of the induced Gaussian p(alpha).
double alpha0_from(const DimensionalParams& params);

/// Standard deviation of alpha, |kappa| eps_bar / F0.
double epsilon_from(const DimensionalParams& params);

/// Length unit N kB T / F0 (potential minimum for kappa = 0).
double length_unit(const DimensionalParams& params);

}  // namespace qpiston::units
