#include "sdof/error.hpp"

namespace sdof {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input: return "input";
    case ErrorKind::not_found: return "not_found";
    case ErrorKind::dimension_mismatch: return "dimension_mismatch";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::infeasible_target: return "infeasible_target";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::precondition: return "precondition";
  }
  return "unknown";
}

}  // namespace sdof
