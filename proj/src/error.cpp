#include "epcl/error.hpp"

namespace epcl {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::rejected_input: return "rejected-input";
    case ErrorKind::seed_rejected: return "seed-rejected";
    case ErrorKind::not_an_eigensolution: return "not-an-eigensolution";
    case ErrorKind::division_failure: return "division-failure";
    case ErrorKind::degenerate_seed: return "degenerate-seed";
    case ErrorKind::singular_lattice: return "singular-lattice";
    case ErrorKind::near_singular: return "near-singular";
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::not_compactified: return "not-compactified";
    case ErrorKind::singular_bond: return "singular-bond";
    case ErrorKind::schema: return "schema";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::design_infeasible: return "design-infeasible";
    case ErrorKind::numerical_failure: return "numerical-failure";
    case ErrorKind::instability: return "instability";
    case ErrorKind::pole: return "pole";
    case ErrorKind::accuracy: return "accuracy";
  }
  return "unknown";
}

int Error::exit_code() const noexcept {
  switch (kind_) {
    case ErrorKind::numerical_failure:
    case ErrorKind::instability:
    case ErrorKind::pole:
    case ErrorKind::accuracy:
      return 3;
    default:
      return 2;
  }
}

}  // namespace epcl
