#include "qpiston/hermite.hpp"

#include <cmath>
#include <limits>

#include "qpiston/errors.hpp"

namespace qpiston::hermite {

namespace {

constexpr double kBig = 1e100;
constexpr double kSmall = 1e-100;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

SignedLog physicists_log(int n, double t) {
  require(n >= 0, ErrorKind::InvalidParameter, "Hermite order must be non-negative");
  require(std::isfinite(t), ErrorKind::InvalidParameter, "Hermite argument must be finite");
  if (n == 0) return {0.0, 1};

  double prev = 1.0;
  double curr = 2.0 * t;
  double log_scale = 0.0;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * t * curr - 2.0 * k * prev;
    prev = curr;
    curr = next;
    const double mag = std::max(std::abs(prev), std::abs(curr));
    if (mag > kBig || (mag < kSmall && mag > 0.0)) {
      prev /= mag;
      curr /= mag;
      log_scale += std::log(mag);
    }
  }
  if (curr == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
  return {log_scale + std::log(std::abs(curr)), sign_of(curr)};
}

double physicists(int n, double t) {
  const SignedLog h = physicists_log(n, t);
  return h.sign * std::exp(h.log_abs);
}

std::vector<double> roots(int n) {
  require(n >= 0, ErrorKind::InvalidParameter, "Hermite order must be non-negative");
  std::vector<double> out;
  if (n == 0) return out;
  out.reserve(static_cast<std::size_t>(n));

  // Adjacent roots are at least ~ pi / sqrt(2n + 1) / 2 apart near the
  // edge of the oscillatory region; sample well below that.
  const double edge = std::sqrt(2.0 * n + 1.0) + 1.0;
  const int steps = 64 * (n + 1);
  const double h = 2.0 * edge / steps;
  double left = -edge;
  int left_sign = physicists_log(n, left).sign;
  for (int i = 1; i <= steps && static_cast<int>(out.size()) < n; ++i) {
    const double right = -edge + i * h;
    const int right_sign = physicists_log(n, right).sign;
    if (right_sign == 0) {
      out.push_back(right);
      left = right + 1e-3 * h;
      left_sign = physicists_log(n, left).sign;
      continue;
    }
    if (left_sign != right_sign) {
      double lo = left;
      double hi = right;
      for (int it = 0; it < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * std::abs(hi) + 1e-300; ++it) {
        const double mid = 0.5 * (lo + hi);
        const int mid_sign = physicists_log(n, mid).sign;
        if (mid_sign == 0) {
          lo = hi = mid;
          break;
        }
        if (mid_sign == left_sign) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
    left = right;
    left_sign = right_sign;
  }
  if (static_cast<int>(out.size()) != n) {
    fail(ErrorKind::IntegrationFailure, "failed to bracket all Hermite roots");
  }
  return out;
}

}  // namespace qpiston::hermite
