#pragma once

// Data-parallel inner loops. Each OpenMP kernel has a serial twin in
// epcl::serial that tests use as the reference implementation.

#include <span>

#include "epcl/lattice.hpp"

namespace epcl {

/// phi_n = kappa_n psi_{n-1} + kappa_{n+1} psi_{n+1} + V_n psi_n on psi's window,
/// missing neighbours treated as zero. psi.window() must lie inside lat.window().
StateVector apply_hamiltonian(const Lattice& lat, const StateVector& psi);

/// out = T x. Sizes must match T.size().
void apply_tridiagonal(const TridiagonalOperator& op, std::span<const cd> x, std::span<cd> out);

namespace serial {

StateVector apply_hamiltonian(const Lattice& lat, const StateVector& psi);
void apply_tridiagonal(const TridiagonalOperator& op, std::span<const cd> x, std::span<cd> out);

}  // namespace serial

}  // namespace epcl
