#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace epcl {

/// Failure categories. Each maps onto one CLI exit code (see exit_code()).
enum class ErrorKind {
  rejected_input,
  seed_rejected,
  not_an_eigensolution,
  division_failure,
  degenerate_seed,
  singular_lattice,
  near_singular,
  configuration,
  not_compactified,
  singular_bond,
  schema,
  unsupported,
  out_of_range,
  design_infeasible,
  numerical_failure,
  instability,
  pole,
  accuracy,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// 2 for bad input, 3 for numerical failure.
  int exit_code() const noexcept;

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace epcl
