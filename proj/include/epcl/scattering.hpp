#pragma once

// Left-incidence scattering through the transfer-matrix product
// M_N ... M_{-N}. Incoming wave exp(-iqn) on the left, reflected r exp(iqn),
// transmitted t exp(-iqn) on the right, with E = 2 kappa cos q.

#include <optional>

#include <Eigen/Dense>

#include "epcl/core.hpp"

namespace epcl::scattering {

using TransferMatrix = Eigen::Matrix2cd;

/// Tolerance (relative to kappa_asym) for the compact-support precondition of total_transfer.
inline constexpr double kHomogeneityTolerance = 1e-9;
/// Distance kept from q = 0 and q = pi.
inline constexpr double kBandEdgeGuard = 0.01;
/// |det Q - 1| above this is reported as drift.
inline constexpr double kDetDriftTolerance = 1e-8;

/// M_n = [[(E - V_n)/kappa_{n+1}, -kappa_n/kappa_{n+1}], [1, 0]].
TransferMatrix local_transfer(const Lattice& lat, SiteIndex n, cd energy);

/// Q = M_N ... M_{-N}. Needs kappa_n = kappa_asym for n <= -N and n >= N+1 and V_n = 0 for |n| >= N
/// (on every such site the lattice stores) to within kHomogeneityTolerance; else not_compactified.
TransferMatrix total_transfer(const Lattice& lat, SiteIndex half_width, cd energy);

/// Copy of lat on [-N-1, N+1] with the outside region replaced by the homogeneous chain.
Lattice compactify(const Lattice& lat, SiteIndex half_width);

struct Coefficients {
  cd r;
  cd t;
};

/// r(q), t(q) from Q. Throws pole when the denominator vanishes.
Coefficients rt_coefficients(const TransferMatrix& Q, double q, SiteIndex half_width);

struct ScatteringRecord {
  double q = 0.0;
  double energy = 0.0;
  cd r;
  cd t;

  double abs_t2() const { return std::norm(t); }
  double abs_r2() const { return std::norm(r); }
  double arg_t() const { return std::arg(t); }
};

struct ScatteringSpectrum {
  std::vector<ScatteringRecord> records;
  double max_det_drift = 0.0;  ///< max |det Q - 1| over the grid

  bool det_drift_exceeded() const { return max_det_drift > kDetDriftTolerance; }
};

/// `points` uniformly spaced wavenumbers in [guard, pi - guard].
std::vector<double> uniform_grid(std::size_t points, double guard = kBandEdgeGuard);

/// Compactifies lat at N and evaluates every grid point (OpenMP over q).
ScatteringSpectrum spectrum(const Lattice& lat, std::span<const double> q_grid, SiteIndex half_width);

namespace serial {
ScatteringSpectrum spectrum(const Lattice& lat, std::span<const double> q_grid, SiteIndex half_width);
}

struct WidthOptions {
  double threshold = 0.01;
  double centre = 1.5707963267948966;
  double half_span = 0.3;       ///< scan [centre - half_span, centre + half_span]
  std::size_t scan_points = 1201;
  double resolution = 1e-6;     ///< bisection stops at this q spacing
};

/// Width of the q-interval around the centre where ||t|^2 - 1| > threshold, measured between the outermost
/// crossings. nullopt when no scanned point exceeds the threshold.
std::optional<double> resonance_width(const Lattice& lat, SiteIndex half_width, const WidthOptions& opt = {});

}  // namespace epcl::scattering
