#include "epcl/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epcl/error.hpp"

namespace epcl {

namespace {

bool finite(cd z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

SiteWindow::SiteWindow(SiteIndex lo, SiteIndex hi) : n_min(lo), n_max(hi) {
  if (hi < lo) {
    fail(ErrorKind::rejected_input,
         "empty site window [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

StateVector::StateVector(SiteWindow window, std::vector<cd> amp) : window_(window), amp_(std::move(amp)) {
  if (amp_.size() != window_.size()) {
    fail(ErrorKind::rejected_input, "state vector length does not match its window");
  }
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    if (!finite(amp_[i])) {
      fail(ErrorKind::rejected_input,
           "non-finite amplitude at site " + std::to_string(window_.n_min + static_cast<SiteIndex>(i)));
    }
  }
}

StateVector::StateVector(SiteWindow window) : window_(window), amp_(window.size(), cd{}) {}

StateVector StateVector::delta(SiteWindow window, SiteIndex site) {
  if (!window.contains(site)) fail(ErrorKind::rejected_input, "delta site outside window");
  StateVector s(window);
  s[site] = 1.0;
  return s;
}

StateVector StateVector::restrict_to(SiteWindow w) const {
  if (!window_.contains(w)) fail(ErrorKind::rejected_input, "restriction window not contained in state window");
  return StateVector(w, std::vector<cd>(amp_.begin() + static_cast<std::ptrdiff_t>(window_.offset(w.n_min)),
                                        amp_.begin() + static_cast<std::ptrdiff_t>(window_.offset(w.n_max)) + 1));
}

StateVector StateVector::embed_in(SiteWindow w) const {
  if (!w.contains(window_)) fail(ErrorKind::rejected_input, "state window does not fit in embedding window");
  StateVector out(w);
  for (SiteIndex n = window_.n_min; n <= window_.n_max; ++n) out[n] = (*this)[n];
  return out;
}

StateVector& StateVector::operator*=(cd s) {
  for (auto& a : amp_) a *= s;
  return *this;
}

StateVector operator+(const StateVector& a, const StateVector& b) {
  if (a.window() != b.window()) fail(ErrorKind::rejected_input, "window mismatch in state sum");
  StateVector out = a;
  for (std::size_t i = 0; i < out.amp_.size(); ++i) out.amp_[i] += b.amp_[i];
  return out;
}

StateVector operator-(const StateVector& a, const StateVector& b) { return a + cd(-1.0) * b; }

Lattice::Lattice(SiteWindow window, std::vector<cd> kappa, std::vector<cd> v, double kappa_asym)
    : window_(window), kappa_(std::move(kappa)), v_(std::move(v)), kappa_asym_(kappa_asym) {
  if (kappa_.size() != window_.size() || v_.size() != window_.size()) {
    fail(ErrorKind::rejected_input, "lattice sequences do not match the window");
  }
  if (!(kappa_asym_ > 0.0) || !std::isfinite(kappa_asym_)) {
    fail(ErrorKind::rejected_input, "kappa_asym must be positive");
  }
  for (std::size_t i = 0; i < kappa_.size(); ++i) {
    const SiteIndex n = window_.n_min + static_cast<SiteIndex>(i);
    if (!finite(kappa_[i]) || !finite(v_[i])) {
      fail(ErrorKind::rejected_input, "non-finite lattice entry at site " + std::to_string(n));
    }
    if (kappa_[i] == cd{}) fail(ErrorKind::rejected_input, "zero hopping at bond " + std::to_string(n));
  }
}

Lattice Lattice::uniform(SiteWindow window, double kappa) {
  return Lattice(window, std::vector<cd>(window.size(), kappa), std::vector<cd>(window.size(), cd{}), kappa);
}

bool Lattice::is_hermitian(double tol) const {
  for (std::size_t i = 0; i < kappa_.size(); ++i) {
    if (std::abs(kappa_[i].imag()) > tol || std::abs(v_[i].imag()) > tol) return false;
  }
  return true;
}

bool Lattice::is_asymptotically_homogeneous(double tol, std::size_t edge_sites) const {
  const std::size_t m = std::min(edge_sites, kappa_.size());
  const double bound = tol * kappa_asym_;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i : {k, kappa_.size() - 1 - k}) {
      if (std::abs(kappa_[i] - kappa_asym_) > bound || std::abs(v_[i]) > bound) return false;
    }
  }
  return true;
}

Lattice Lattice::restrict_to(SiteWindow w) const {
  if (!window_.contains(w)) fail(ErrorKind::rejected_input, "restriction window not contained in lattice window");
  const auto lo = static_cast<std::ptrdiff_t>(window_.offset(w.n_min));
  const auto hi = static_cast<std::ptrdiff_t>(window_.offset(w.n_max)) + 1;
  return Lattice(w, std::vector<cd>(kappa_.begin() + lo, kappa_.begin() + hi),
                 std::vector<cd>(v_.begin() + lo, v_.begin() + hi), kappa_asym_);
}

Lattice Lattice::with_kappa(SiteIndex n, cd value) const {
  if (!window_.contains(n)) fail(ErrorKind::rejected_input, "bond outside lattice window");
  auto k = kappa_;
  k[window_.offset(n)] = value;
  return Lattice(window_, std::move(k), v_, kappa_asym_);
}

TridiagonalOperator TridiagonalOperator::from_lattice(const Lattice& lat, SiteWindow w) {
  if (!lat.window().contains(w)) {
    fail(ErrorKind::rejected_input, "truncation window exceeds the lattice window");
  }
  TridiagonalOperator op;
  op.window = w;
  const std::size_t m = w.size();
  op.lower.assign(m, cd{});
  op.diag.assign(m, cd{});
  op.upper.assign(m, cd{});
  for (std::size_t i = 0; i < m; ++i) {
    const SiteIndex n = w.n_min + static_cast<SiteIndex>(i);
    op.diag[i] = lat.v(n);
    if (i > 0) op.lower[i] = lat.kappa(n);
    if (i + 1 < m) op.upper[i] = lat.kappa(n + 1);
  }
  return op;
}

}  // namespace epcl
