#include "epcl/scattering.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <string>

namespace epcl::scattering {

namespace {

constexpr cd kI{0.0, 1.0};

void check_grid(std::span<const double> q_grid) {
  for (double q : q_grid) {
    if (!(q >= kBandEdgeGuard && q <= std::numbers::pi - kBandEdgeGuard)) {
      fail(ErrorKind::rejected_input, "q = " + std::to_string(q) + " lies within the band-edge guard");
    }
  }
}

ScatteringRecord evaluate(const Lattice& compact, double q, SiteIndex N, double& drift) {
  const double kappa = compact.kappa_asym();
  const double energy = 2.0 * kappa * std::cos(q);
  const TransferMatrix Q = total_transfer(compact, N, energy);
  drift = std::abs(Q.determinant() - 1.0);
  const Coefficients c = rt_coefficients(Q, q, N);
  return {q, energy, c.r, c.t};
}

double deviation(const Lattice& compact, double q, SiteIndex N) {
  double drift = 0.0;
  return std::abs(evaluate(compact, q, N, drift).abs_t2() - 1.0);
}

}  // namespace

TransferMatrix local_transfer(const Lattice& lat, SiteIndex n, cd energy) {
  if (!lat.window().contains(n) || !lat.window().contains(n + 1)) {
    fail(ErrorKind::out_of_range, "local_transfer at n = " + std::to_string(n) + " needs sites n and n+1");
  }
  const cd k_next = lat.kappa(n + 1);
  if (k_next == cd{}) fail(ErrorKind::singular_bond, "kappa_" + std::to_string(n + 1) + " is zero");
  TransferMatrix m;
  m << (energy - lat.v(n)) / k_next, -lat.kappa(n) / k_next, 1.0, 0.0;
  return m;
}

TransferMatrix total_transfer(const Lattice& lat, SiteIndex N, cd energy) {
  const SiteWindow w = lat.window();
  if (N < 0 || !w.contains(SiteWindow(-N, N + 1))) {
    fail(ErrorKind::out_of_range, "lattice window must cover [-N, N+1]");
  }
  const double k = lat.kappa_asym();
  const double tol = kHomogeneityTolerance * k;
  for (SiteIndex n = w.n_min; n <= w.n_max; ++n) {
    if ((n <= -N || n >= N + 1) && std::abs(lat.kappa(n) - k) >= tol) {
      fail(ErrorKind::not_compactified, "kappa_" + std::to_string(n) + " differs from kappa_asym outside the defect");
    }
    if ((n <= -N || n >= N) && std::abs(lat.v(n)) >= tol) {
      fail(ErrorKind::not_compactified, "V_" + std::to_string(n) + " is nonzero outside the defect");
    }
  }
  TransferMatrix Q = TransferMatrix::Identity();
  for (SiteIndex n = -N; n <= N; ++n) Q = local_transfer(lat, n, energy) * Q;
  return Q;
}

Lattice compactify(const Lattice& lat, SiteIndex N) {
  const SiteWindow out(-N - 1, N + 1);
  if (N < 0 || !lat.window().contains(SiteWindow(-N, N))) {
    fail(ErrorKind::out_of_range, "lattice window must cover [-N, N]");
  }
  const double k = lat.kappa_asym();
  std::vector<cd> kappa(out.size()), v(out.size());
  for (SiteIndex n = out.n_min; n <= out.n_max; ++n) {
    kappa[out.offset(n)] = (n <= -N || n >= N + 1) ? cd{k} : lat.kappa(n);
    v[out.offset(n)] = (n <= -N || n >= N) ? cd{} : lat.v(n);
  }
  return Lattice(out, std::move(kappa), std::move(v), k);
}

Coefficients rt_coefficients(const TransferMatrix& Q, double q, SiteIndex N) {
  const cd e1 = std::exp(kI * q);
  const cd em1 = 1.0 / e1;
  const cd e2N = std::exp(2.0 * kI * q * static_cast<double>(N));
  const cd den = Q(0, 0) - Q(1, 1) * em1 * em1 + (Q(0, 1) - Q(1, 0)) * em1;
  const double scale = Q.cwiseAbs().sum();
  if (!(std::abs(den) > 1e-13 * scale)) {
    fail(ErrorKind::pole, "vanishing r/t denominator at q = " + std::to_string(q));
  }
  Coefficients c;
  c.r = e2N * (Q(1, 0) * em1 - Q(0, 1) * e1 + Q(1, 1) - Q(0, 0)) / den;
  c.t = Q(0, 0) * e1 * (e2N + c.r) + Q(0, 1) * (e2N * e1 * e1 + c.r);
  return c;
}

std::vector<double> uniform_grid(std::size_t points, double guard) {
  if (points < 2) fail(ErrorKind::rejected_input, "a q grid needs at least two points");
  if (!(guard >= kBandEdgeGuard) || !(guard < std::numbers::pi / 2)) {
    fail(ErrorKind::rejected_input, "band-edge guard must be at least 0.01");
  }
  std::vector<double> q(points);
  const double h = (std::numbers::pi - 2.0 * guard) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) q[i] = guard + h * static_cast<double>(i);
  q.back() = std::numbers::pi - guard;
  return q;
}

ScatteringSpectrum spectrum(const Lattice& lat, std::span<const double> q_grid, SiteIndex N) {
  check_grid(q_grid);
  const Lattice compact = compactify(lat, N);
  ScatteringSpectrum out;
  out.records.resize(q_grid.size());
  std::vector<double> drift(q_grid.size(), 0.0);
  std::exception_ptr error;
  const long m = static_cast<long>(q_grid.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < m; ++i) {
    try {
      out.records[i] = evaluate(compact, q_grid[i], N, drift[i]);
    } catch (...) {
#pragma omp critical(epcl_spectrum_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  for (double d : drift) out.max_det_drift = std::max(out.max_det_drift, d);
  return out;
}

ScatteringSpectrum serial::spectrum(const Lattice& lat, std::span<const double> q_grid, SiteIndex N) {
  check_grid(q_grid);
  const Lattice compact = compactify(lat, N);
  ScatteringSpectrum out;
  out.records.reserve(q_grid.size());
  for (double q : q_grid) {
    double drift = 0.0;
    out.records.push_back(evaluate(compact, q, N, drift));
    out.max_det_drift = std::max(out.max_det_drift, drift);
  }
  return out;
}

std::optional<double> resonance_width(const Lattice& lat, SiteIndex N, const WidthOptions& opt) {
  if (!(opt.threshold > 0.0) || opt.scan_points < 3 || !(opt.resolution > 0.0)) {
    fail(ErrorKind::rejected_input, "invalid resonance-width options");
  }
  const double lo = opt.centre - opt.half_span;
  const double hi = opt.centre + opt.half_span;
  if (lo < kBandEdgeGuard || hi > std::numbers::pi - kBandEdgeGuard) {
    fail(ErrorKind::rejected_input, "width scan reaches into the band-edge guard");
  }
  const Lattice compact = compactify(lat, N);
  const std::size_t m = opt.scan_points;
  const double h = (hi - lo) / static_cast<double>(m - 1);
  std::vector<double> dev(m);
  for (std::size_t i = 0; i < m; ++i) dev[i] = deviation(compact, lo + h * static_cast<double>(i), N);

  std::size_t first = m, last = m;
  for (std::size_t i = 0; i < m; ++i) {
    if (dev[i] > opt.threshold) {
      if (first == m) first = i;
      last = i;
    }
  }
  if (first == m) return std::nullopt;

  // Shrinks [inside, outside] until it is narrower than the resolution; returns the crossing estimate.
  auto refine = [&](double inside, double outside) {
    while (std::abs(outside - inside) > opt.resolution) {
      const double mid = 0.5 * (inside + outside);
      if (deviation(compact, mid, N) > opt.threshold) {
        inside = mid;
      } else {
        outside = mid;
      }
    }
    return 0.5 * (inside + outside);
  };
  const double q_first = lo + h * static_cast<double>(first);
  const double q_last = lo + h * static_cast<double>(last);
  const double left = first == 0 ? lo : refine(q_first, q_first - h);
  const double right = last == m - 1 ? hi : refine(q_last, q_last + h);
  return right - left;
}

}  // namespace epcl::scattering
