#include "qpiston/errors.hpp"

namespace qpiston {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::Domain: return "domain-error";
    case ErrorKind::DegenerateDistribution: return "degenerate-distribution";
    case ErrorKind::NoStationaryState: return "no-stationary-state";
    case ErrorKind::NoStableEnsemble: return "no-stable-ensemble";
    case ErrorKind::IntegrationFailure: return "integration-failure";
    case ErrorKind::DivergentWork: return "divergent-work";
  }
  return "unknown";
}

}  // namespace qpiston
