#include "qpiston/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "qpiston/errors.hpp"

namespace qpiston::quad {

namespace {

// Kronrod abscissae; odd indices are the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600083413925, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  double value;
  double error;

  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[10];
  double gauss = 0.0;
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  double error = std::abs(kronrod - gauss);
  if (!std::isfinite(kronrod)) error = std::numeric_limits<double>::infinity();
  // Floor at the rounding level of the rule itself.
  error = std::max(error, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kronrod));
  return {a, b, kronrod, error};
}

constexpr long kEvalsPerRule = 21;

}  // namespace

IntegrationResult integrate(const Integrand& f, double a, double b, Options opts) {
  require(opts.tol > 0.0, ErrorKind::InvalidParameter, "integration tolerance must be positive");
  require(std::isfinite(a) && std::isfinite(b), ErrorKind::InvalidParameter,
          "integration limits must be finite");
  if (a == b) return {};
  if (a > b) {
    IntegrationResult flipped = integrate(f, b, a, opts);
    flipped.value = -flipped.value;
    return flipped;
  }

  std::priority_queue<Segment> heap;
  Segment first = gauss_kronrod(f, a, b);
  double total = first.value;
  double error = first.error;
  long evaluations = kEvalsPerRule;
  heap.push(first);

  // Segments too narrow to bisect further are retired here.
  double retired_value = 0.0;
  double retired_error = 0.0;
  int subdivisions = 0;
  while (error > std::max(opts.tol, opts.tol * std::abs(total))) {
    if (heap.empty() || subdivisions >= opts.max_subdivisions) {
      std::ostringstream msg;
      msg << "adaptive quadrature on [" << a << ", " << b << "] did not reach tolerance "
          << opts.tol << " (achieved " << error << ")";
      throw IntegrationError(msg.str(), total, error);
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      retired_value += worst.value;
      retired_error += worst.error;
      continue;
    }
    Segment left = gauss_kronrod(f, worst.a, mid);
    Segment right = gauss_kronrod(f, mid, worst.b);
    evaluations += 2 * kEvalsPerRule;
    ++subdivisions;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    if (heap.size() % 64 == 0) {
      // Re-sum to keep the running totals free of cancellation drift.
      std::vector<Segment> all;
      all.reserve(heap.size());
      double t = retired_value;
      double e = retired_error;
      while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
      }
      for (const auto& s : all) {
        t += s.value;
        e += s.error;
        heap.push(s);
      }
      total = t;
      error = e;
    }
  }
  return {total, error, evaluations};
}

IntegrationResult integrate_semi_infinite(const Integrand& f, double a, Options opts) {
  require(std::isfinite(a), ErrorKind::InvalidParameter, "semi-infinite lower limit must be finite");
  auto mapped = [&f, a](double t) {
    const double x = a + (1.0 - t) / t;
    const double fx = f(x);
    if (fx == 0.0) return 0.0;
    return fx / (t * t);
  };
  return integrate(mapped, 0.0, 1.0, opts);
}

IntegrationResult integrate_semi_infinite_left(const Integrand& f, double b, Options opts) {
  auto reflected = [&f](double y) { return f(-y); };
  return integrate_semi_infinite(reflected, -b, opts);
}

IntegrationResult integrate_log_endpoint(const Integrand& f, double a, double width, Options opts) {
  require(width > 0.0, ErrorKind::InvalidParameter, "log-endpoint slice width must be positive");
  auto substituted = [&f, a](double u) {
    const double offset = std::exp(-u);
    if (offset == 0.0) return 0.0;
    return f(a + offset) * offset;
  };
  return integrate_semi_infinite(substituted, -std::log(width), opts);
}

IntegrationResult integrate_pieces(const Integrand& f, std::span<const double> points, Options opts) {
  IntegrationResult sum;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    require(points[i] <= points[i + 1], ErrorKind::InvalidParameter,
            "integration breakpoints must be non-decreasing");
    if (points[i] == points[i + 1]) continue;
    sum += integrate(f, points[i], points[i + 1], opts);
  }
  return sum;
}

}  // namespace qpiston::quad
