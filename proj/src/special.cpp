#include "qpiston/special.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "qpiston/errors.hpp"

namespace qpiston::special {

double log_gamma(double x) {
  require(x > 0.0 && std::isfinite(x), ErrorKind::InvalidParameter, "log_gamma requires x > 0");
  return boost::math::lgamma(x);
}

double erf(double x) {
  require(!std::isnan(x), ErrorKind::InvalidParameter, "erf of NaN");
  return std::erf(x);
}

double erfc(double x) {
  require(!std::isnan(x), ErrorKind::InvalidParameter, "erfc of NaN");
  return std::erfc(x);
}

double digamma(double x) {
  require(x > 0.0 && std::isfinite(x), ErrorKind::InvalidParameter, "digamma requires x > 0");
  return boost::math::digamma(x);
}

double regularized_lower_incomplete_gamma(double s, double x) {
  require(s > 0.0 && std::isfinite(s), ErrorKind::InvalidParameter,
          "incomplete gamma requires s > 0");
  require(x >= 0.0, ErrorKind::InvalidParameter, "incomplete gamma requires x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(s, x);
}

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace qpiston::special
