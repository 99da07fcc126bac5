#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qpiston {

enum class ErrorKind {
  InvalidParameter,
  Domain,
  DegenerateDistribution,
  NoStationaryState,
  NoStableEnsemble,
  IntegrationFailure,
  DivergentWork,
};

/// Stable lowercase tag, used for CSV status columns and diagnostics.
std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Adaptive quadrature gave up; carries the best estimate it reached.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double best_estimate, double achieved_error)
      : Error(ErrorKind::IntegrationFailure, what),
        best_estimate_(best_estimate),
        achieved_error_(achieved_error) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double best_estimate_;
  double achieved_error_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const char* what) {
  if (!condition) throw Error(kind, what);
}

}  // namespace qpiston
