#include "epcl/kernels.hpp"

#include "epcl/error.hpp"

namespace epcl {

namespace {

void check_windows(const Lattice& lat, const StateVector& psi) {
  if (!lat.window().contains(psi.window())) {
    fail(ErrorKind::rejected_input, "state window is not contained in the lattice window");
  }
}

void check_sizes(const TridiagonalOperator& op, std::span<const cd> x, std::span<cd> out) {
  if (x.size() != op.size() || out.size() != op.size()) {
    fail(ErrorKind::rejected_input, "tridiagonal apply: size mismatch");
  }
}

}  // namespace

StateVector apply_hamiltonian(const Lattice& lat, const StateVector& psi) {
  check_windows(lat, psi);
  const auto w = psi.window();
  const auto x = psi.amplitudes();
  const auto m = static_cast<long>(x.size());
  std::vector<cd> out(x.size());
#pragma omp parallel for schedule(static) if (m > 4096)
  for (long i = 0; i < m; ++i) {
    const SiteIndex n = w.n_min + i;
    cd acc = lat.v(n) * x[i];
    if (i > 0) acc += lat.kappa(n) * x[i - 1];
    if (i + 1 < m) acc += lat.kappa(n + 1) * x[i + 1];
    out[i] = acc;
  }
  return StateVector(w, std::move(out));
}

void apply_tridiagonal(const TridiagonalOperator& op, std::span<const cd> x, std::span<cd> out) {
  check_sizes(op, x, out);
  const auto m = static_cast<long>(x.size());
  const cd* lo = op.lower.data();
  const cd* di = op.diag.data();
  const cd* up = op.upper.data();
#pragma omp parallel for schedule(static) if (m > 4096)
  for (long i = 0; i < m; ++i) {
    cd acc = di[i] * x[i];
    if (i > 0) acc += lo[i] * x[i - 1];
    if (i + 1 < m) acc += up[i] * x[i + 1];
    out[i] = acc;
  }
}

namespace serial {

StateVector apply_hamiltonian(const Lattice& lat, const StateVector& psi) {
  check_windows(lat, psi);
  StateVector out(psi.window());
  for (SiteIndex n = psi.window().n_min; n <= psi.window().n_max; ++n) {
    out[n] = lat.kappa(n) * psi.at_or_zero(n - 1) + lat.v(n) * psi[n];
    if (psi.window().contains(n + 1)) out[n] += lat.kappa(n + 1) * psi[n + 1];
  }
  return out;
}

void apply_tridiagonal(const TridiagonalOperator& op, std::span<const cd> x, std::span<cd> out) {
  check_sizes(op, x, out);
  const std::size_t m = x.size();
  for (std::size_t i = 0; i < m; ++i) {
    cd acc = op.diag[i] * x[i];
    if (i > 0) acc += op.lower[i] * x[i - 1];
    if (i + 1 < m) acc += op.upper[i] * x[i + 1];
    out[i] = acc;
  }
}

}  // namespace serial

}  // namespace epcl
