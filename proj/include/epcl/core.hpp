#pragma once

#include <vector>

#include "epcl/error.hpp"
#include "epcl/kernels.hpp"
#include "epcl/lattice.hpp"

namespace epcl {

/// Dense (2N+1)x(2N+1) Dirichlet truncation on [-N, N].
DenseOperator truncate(const Lattice& lat, SiteIndex half_width);

/// All eigenvalues of a dense complex matrix, unordered.
std::vector<cd> eigen_spectrum(const DenseOperator& op);

/// max over interior sites of |(H psi)_n - E psi_n|; `interior_margin` sites are dropped at each edge of psi's window.
double residual(const Lattice& lat, cd energy, const StateVector& psi, int interior_margin);

/// Same, for (H - E) psi - rhs. Used for Jordan-chain checks.
double residual(const Lattice& lat, cd energy, const StateVector& psi, const StateVector& rhs,
                int interior_margin);

/// sum_n |c_n|^2
double power(const StateVector& psi);

/// Interior of `w` after dropping `margin` sites at each end; throws rejected_input when empty.
SiteWindow interior(SiteWindow w, int margin);

}  // namespace epcl
