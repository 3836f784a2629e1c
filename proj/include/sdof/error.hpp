#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sdof {

/// Failure categories. The CLI maps each to a process exit code.
enum class ErrorKind {
  input,              // malformed file, schema violation, bad flag value
  not_found,          // input file missing or unreadable
  dimension_mismatch, // shapes that cannot be combined
  degenerate,         // zero channel where a nonzero one is required
  infeasible_target,  // target outside the s.d.o.f. region / not decomposable
  numerical,          // iteration cap hit, inconsistent numerical ranks
  precondition,       // caller broke a documented precondition
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sdof
