#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace epcl {

using cd = std::complex<double>;
using SiteIndex = long;

/// Closed range of site labels [n_min, n_max]; never empty.
struct SiteWindow {
  SiteIndex n_min = 0;
  SiteIndex n_max = 0;

  SiteWindow() = default;
  SiteWindow(SiteIndex lo, SiteIndex hi);

  static SiteWindow symmetric(SiteIndex half_width) { return {-half_width, half_width}; }

  std::size_t size() const noexcept { return static_cast<std::size_t>(n_max - n_min + 1); }
  bool contains(SiteIndex n) const noexcept { return n >= n_min && n <= n_max; }
  bool contains(const SiteWindow& w) const noexcept { return w.n_min >= n_min && w.n_max <= n_max; }
  std::size_t offset(SiteIndex n) const noexcept { return static_cast<std::size_t>(n - n_min); }

  friend bool operator==(const SiteWindow&, const SiteWindow&) = default;
};

/// Complex amplitudes c_n on a window.
class StateVector {
 public:
  StateVector() = default;
  StateVector(SiteWindow window, std::vector<cd> amp);
  /// All-zero state.
  explicit StateVector(SiteWindow window);

  static StateVector delta(SiteWindow window, SiteIndex site);

  const SiteWindow& window() const noexcept { return window_; }
  std::span<const cd> amplitudes() const noexcept { return amp_; }
  std::span<cd> amplitudes() noexcept { return amp_; }
  std::size_t size() const noexcept { return amp_.size(); }

  cd operator[](SiteIndex n) const { return amp_[window_.offset(n)]; }
  cd& operator[](SiteIndex n) { return amp_[window_.offset(n)]; }
  /// Amplitude at n, or zero outside the window.
  cd at_or_zero(SiteIndex n) const noexcept { return window_.contains(n) ? amp_[window_.offset(n)] : cd{}; }

  /// Restriction to a sub-window.
  StateVector restrict_to(SiteWindow w) const;
  /// Zero-padded copy on a larger window.
  StateVector embed_in(SiteWindow w) const;

  StateVector& operator*=(cd s);
  friend StateVector operator*(cd s, StateVector v) { return v *= s; }
  friend StateVector operator+(const StateVector& a, const StateVector& b);
  friend StateVector operator-(const StateVector& a, const StateVector& b);

 private:
  SiteWindow window_;
  std::vector<cd> amp_;
};

/// Nearest-neighbour lattice. kappa(n) is the hopping on bond (n-1, n); v(n) the on-site energy.
class Lattice {
 public:
  Lattice() = default;
  Lattice(SiteWindow window, std::vector<cd> kappa, std::vector<cd> v, double kappa_asym);

  /// kappa_n = kappa_asym, V_n = 0 on the window.
  static Lattice uniform(SiteWindow window, double kappa);

  const SiteWindow& window() const noexcept { return window_; }
  double kappa_asym() const noexcept { return kappa_asym_; }
  cd kappa(SiteIndex n) const { return kappa_[window_.offset(n)]; }
  cd v(SiteIndex n) const { return v_[window_.offset(n)]; }
  std::span<const cd> kappas() const noexcept { return kappa_; }
  std::span<const cd> potentials() const noexcept { return v_; }

  bool is_hermitian(double tol = 0.0) const;
  /// True when |kappa_n - kappa_asym| and |V_n| fall below tol * kappa_asym on the `edge_sites` outermost sites.
  bool is_asymptotically_homogeneous(double tol, std::size_t edge_sites = 1) const;

  Lattice restrict_to(SiteWindow w) const;
  Lattice with_kappa(SiteIndex n, cd value) const;

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  SiteWindow window_;
  std::vector<cd> kappa_;
  std::vector<cd> v_;
  double kappa_asym_ = 1.0;
};

/// General tridiagonal operator on a window. Row i couples to i-1 via lower[i], to i+1 via upper[i].
/// lower[0] and upper[last] are unused and kept at zero (Dirichlet).
struct TridiagonalOperator {
  SiteWindow window;
  std::vector<cd> lower;
  std::vector<cd> diag;
  std::vector<cd> upper;

  /// Dirichlet truncation of a lattice to `w`.
  static TridiagonalOperator from_lattice(const Lattice& lat, SiteWindow w);

  std::size_t size() const noexcept { return diag.size(); }
};

/// Dense truncation of a lattice. Row i corresponds to site first_site + i.
struct DenseOperator {
  SiteIndex first_site = 0;
  Eigen::MatrixXcd matrix;

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
  SiteIndex site_of_row(Eigen::Index row) const noexcept { return first_site + row; }
};

}  // namespace epcl
