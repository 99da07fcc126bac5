#pragma once

#include <functional>
#include <span>

namespace qpiston::quad {

using Integrand = std::function<double(double)>;

/// Tolerance for integrals compared against closed forms.
inline constexpr double kDefaultTol = 1e-10;
/// Tolerance for the outer level of nested (2-D) integrals.
inline constexpr double kNestedTol = 1e-8;

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;

  IntegrationResult& operator+=(const IntegrationResult& other) {
    value += other.value;
    error_estimate += other.error_estimate;
    evaluations += other.evaluations;
    return *this;
  }
};

struct Options {
  double tol = kDefaultTol;
  int max_subdivisions = 2000;
};

/// Globally adaptive 10/21-point Gauss-Kronrod bisection on [a, b].
/// Converges when the summed error estimate is at most max(tol, tol*|value|).
/// The rule never samples the endpoints, so integrable endpoint
/// singularities (ln x, x^-1/2) are handled by refinement.
/// Throws IntegrationError (with the best estimate) when the subdivision
/// budget runs out.
IntegrationResult integrate(const Integrand& f, double a, double b, Options opts = {});

inline IntegrationResult integrate(const Integrand& f, double a, double b, double tol) {
  return integrate(f, a, b, Options{tol});
}

/// Integral over [a, inf) through the map t = 1 / (1 + x - a), t in (0, 1],
/// x = a + (1 - t) / t, dx = dt / t^2. Intended for integrands with
/// exponential or Gaussian tails whose bulk sits close to a; callers with a
/// far-away peak should integrate the bulk on a finite interval first.
IntegrationResult integrate_semi_infinite(const Integrand& f, double a, Options opts = {});

inline IntegrationResult integrate_semi_infinite(const Integrand& f, double a, double tol) {
  return integrate_semi_infinite(f, a, Options{tol});
}

/// Integral over (-inf, b] by reflection onto integrate_semi_infinite.
IntegrationResult integrate_semi_infinite_left(const Integrand& f, double b, Options opts = {});

/// Integral over (a, a + width] using u = -ln(x - a), which turns a
/// logarithmic endpoint singularity at a into an exponentially decaying tail
/// on [-ln width, inf).
IntegrationResult integrate_log_endpoint(const Integrand& f, double a, double width, Options opts = {});

/// Sum of integrate() over consecutive pieces [points[i], points[i+1]].
/// Points must be non-decreasing; empty pieces are skipped.
IntegrationResult integrate_pieces(const Integrand& f, std::span<const double> points, Options opts = {});

}  // namespace qpiston::quad
