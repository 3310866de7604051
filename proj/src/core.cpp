#include "epcl/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace epcl {

SiteWindow interior(SiteWindow w, int margin) {
  if (margin < 0) fail(ErrorKind::rejected_input, "interior margin must be non-negative");
  const SiteIndex lo = w.n_min + margin;
  const SiteIndex hi = w.n_max - margin;
  if (hi < lo) fail(ErrorKind::rejected_input, "empty interior after removing the margin");
  return {lo, hi};
}

DenseOperator truncate(const Lattice& lat, SiteIndex half_width) {
  if (half_width < 0) fail(ErrorKind::rejected_input, "truncation half-width must be non-negative");
  const SiteWindow w = SiteWindow::symmetric(half_width);
  if (!lat.window().contains(w)) {
    fail(ErrorKind::rejected_input, "truncation N=" + std::to_string(half_width) + " exceeds the lattice window");
  }
  const auto m = static_cast<Eigen::Index>(w.size());
  DenseOperator op;
  op.first_site = w.n_min;
  op.matrix = Eigen::MatrixXcd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const SiteIndex n = w.n_min + i;
    op.matrix(i, i) = lat.v(n);
    if (i > 0) {
      op.matrix(i, i - 1) = lat.kappa(n);
      op.matrix(i - 1, i) = lat.kappa(n);
    }
  }
  return op;
}

std::vector<cd> eigen_spectrum(const DenseOperator& op) {
  if (!op.matrix.allFinite()) fail(ErrorKind::rejected_input, "matrix has non-finite entries");
  if (op.matrix.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(op.matrix, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    fail(ErrorKind::numerical_failure, "eigenvalue iteration did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double residual(const Lattice& lat, cd energy, const StateVector& psi, int interior_margin) {
  return residual(lat, energy, psi, StateVector(psi.window()), interior_margin);
}

double residual(const Lattice& lat, cd energy, const StateVector& psi, const StateVector& rhs,
                int interior_margin) {
  if (interior_margin < 1) fail(ErrorKind::rejected_input, "interior margin must be at least 1");
  const SiteWindow in = interior(psi.window(), interior_margin);
  if (!rhs.window().contains(in)) fail(ErrorKind::rejected_input, "right-hand side does not cover the interior");
  if (!lat.window().contains(in.n_min - 1) || !lat.window().contains(in.n_max + 1)) {
    fail(ErrorKind::rejected_input, "lattice window does not cover the residual stencil");
  }
  double worst = 0.0;
  for (SiteIndex n = in.n_min; n <= in.n_max; ++n) {
    const cd h = lat.kappa(n) * psi[n - 1] + lat.kappa(n + 1) * psi[n + 1] + lat.v(n) * psi[n];
    worst = std::max(worst, std::abs(h - energy * psi[n] - rhs[n]));
  }
  return worst;
}

double power(const StateVector& psi) {
  double p = 0.0;
  for (cd a : psi.amplitudes()) p += std::norm(a);
  return p;
}

}  // namespace epcl
