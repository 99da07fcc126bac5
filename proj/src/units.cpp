#include "qpiston/units.hpp"

#include <cmath>

#include "qpiston/errors.hpp"

namespace qpiston::units {

namespace {

void require_positive_force(const DimensionalParams& params) {
  require(params.F0 > 0.0, ErrorKind::InvalidParameter, "F0 must be positive");
}

}  // namespace

void DimensionalParams::validate() const {
  require_positive_force(*this);
  require(kBT > 0.0, ErrorKind::InvalidParameter, "kBT must be positive");
  require(gamma > 0.0, ErrorKind::InvalidParameter, "gamma must be positive");
  require(N >= 1, ErrorKind::InvalidParameter, "N must be at least 1");
  require(eps_bar >= 0.0, ErrorKind::InvalidParameter, "eps_bar must be non-negative");
}

double alpha_from(const DimensionalParams& params) {
  require_positive_force(params);
  return 1.0 + params.kappa * params.XM / params.F0;
}

double alpha0_from(const DimensionalParams& params) {
  require_positive_force(params);
  return 1.0 + params.kappa * params.X0 / params.F0;
}

double epsilon_from(const DimensionalParams& params) {
  require_positive_force(params);
  require(params.eps_bar >= 0.0, ErrorKind::InvalidParameter, "eps_bar must be non-negative");
  return std::abs(params.kappa) * params.eps_bar / params.F0;
}

double length_unit(const DimensionalParams& params) {
  require_positive_force(params);
  return static_cast<double>(params.N) * params.kBT / params.F0;
}

}  // namespace qpiston::units
