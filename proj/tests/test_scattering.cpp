#include "support.hpp"

#include "epcl/ep_models.hpp"
#include "epcl/scattering.hpp"

using namespace test;
using epcl::ErrorKind;
namespace sc = epcl::scattering;
namespace md = epcl::models;
using sc::TransferMatrix;

namespace {

Lattice pt(SiteIndex N, md::SignConvention c = md::SignConvention::k0_plus_k1_minus) {
  md::PtLatticeSpec s;
  s.window = SiteWindow::symmetric(N + 2);
  s.convention = c;
  return md::pt_lattice(s);
}

Lattice h4(SiteIndex N) {
  md::PtLatticeSpec s;
  s.window = SiteWindow::symmetric(N + 2);
  return md::hermitian_counterpart(s);
}

sc::Coefficients coefficients(const Lattice& lat, SiteIndex N, double q) {
  const Lattice c = sc::compactify(lat, N);
  return sc::rt_coefficients(sc::total_transfer(c, N, 2.0 * c.kappa_asym() * std::cos(q)), q, N);
}

// Independent oracle: plane waves exp(-iqn) + r exp(iqn) for n <= -N and t exp(-iqn) for n >= N, with the
// eigen-equation imposed on rows -N..N as one dense linear system in (psi_{-N+1..N-1}, r, t).
sc::Coefficients dense_solve(const Lattice& lat, SiteIndex N, double q) {
  const double k = lat.kappa_asym();
  const cd E = 2.0 * k * std::cos(q);
  auto kap = [&](SiteIndex n) { return (n <= -N || n >= N + 1) ? cd{k} : lat.kappa(n); };
  auto pot = [&](SiteIndex n) { return (n <= -N || n >= N) ? cd{} : lat.v(n); };
  const Eigen::Index inner = 2 * N - 1, dim = 2 * N + 1, ir = inner, it = inner + 1;
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(dim);
  // psi_m = const + coeff * unknown
  auto add = [&](Eigen::Index row, SiteIndex m, cd weight) {
    const double md = static_cast<double>(m);
    if (m <= -N) {
      b(row) -= weight * std::exp(-I * q * md);
      A(row, ir) += weight * std::exp(I * q * md);
    } else if (m >= N) {
      A(row, it) += weight * std::exp(-I * q * md);
    } else {
      A(row, m + N - 1) += weight;
    }
  };
  for (SiteIndex n = -N; n <= N; ++n) {
    const Eigen::Index row = n + N;
    add(row, n - 1, kap(n));
    add(row, n + 1, kap(n + 1));
    add(row, n, pot(n) - E);
  }
  const Eigen::VectorXcd x = A.fullPivLu().solve(b);
  return {x(ir), x(it)};
}

}  // namespace

TEST_CASE("local transfer matrices") {
  const double k = 1.3, E = 0.7;
  const TransferMatrix m = sc::local_transfer(Lattice::uniform(SiteWindow::symmetric(3), k), 0, E);
  CHECK(std::abs(m(0, 0) - E / k) < 1e-15);
  CHECK(m(0, 1) == cd{-1.0});
  CHECK(m(1, 0) == cd{1.0});
  CHECK(m(1, 1) == cd{});
  CHECK(std::abs(m.determinant() - 1.0) < 1e-15);

  const TransferMatrix m0 = sc::local_transfer(pt(10), 0, 0.0);
  CHECK(std::abs(m0(0, 0)) < 1e-15);
  CHECK(std::abs(m0(0, 1) - 1.0) < 1e-15);

  const Lattice lat = random_lattice(SiteWindow::symmetric(20), 41);
  for (SiteIndex n = -20; n < 20; ++n) {
    const cd e{0.3, -0.2};
    CHECK(std::abs(sc::local_transfer(lat, n, e).determinant() - lat.kappa(n) / lat.kappa(n + 1)) < 1e-14);
  }
  CHECK_ERROR_KIND(sc::local_transfer(lat, 20, 0.0), ErrorKind::out_of_range);
}

TEST_CASE("total transfer") {
  const double q = 1.1, E = 2.0 * std::cos(q);
  const SiteIndex N = 7;
  const Lattice u = Lattice::uniform(SiteWindow::symmetric(N + 1), 1.0);
  const TransferMatrix Q = sc::total_transfer(u, N, E);
  TransferMatrix M;
  M << E, -1.0, 1.0, 0.0;
  TransferMatrix P = TransferMatrix::Identity();
  for (SiteIndex i = 0; i < 2 * N + 1; ++i) P = M * P;
  CHECK((Q - P).norm() < 1e-12);
  CHECK(std::abs(Q.trace()) <= 2.0 + 1e-12);

  // Split at n = 0 and recombine.
  const Lattice c = sc::compactify(pt(40), 40);
  const TransferMatrix full = sc::total_transfer(c, 40, E);
  TransferMatrix left = TransferMatrix::Identity(), right = TransferMatrix::Identity();
  for (SiteIndex n = -40; n < 0; ++n) left = sc::local_transfer(c, n, E) * left;
  for (SiteIndex n = 0; n <= 40; ++n) right = sc::local_transfer(c, n, E) * right;
  CHECK((right * left - full).norm() < 1e-12 * full.norm());

  CHECK_ERROR_KIND(sc::total_transfer(pt(60), 30, E), ErrorKind::not_compactified);
  CHECK_ERROR_KIND(sc::total_transfer(u, N + 1, E), ErrorKind::out_of_range);
}

TEST_CASE("determinant telescopes to one for the PT lattice at N = 200") {
  const Lattice c = sc::compactify(pt(200), 200);
  for (double q : sc::uniform_grid(41)) {
    CHECK(std::abs(sc::total_transfer(c, 200, 2.0 * std::cos(q)).determinant() - 1.0) < 1e-8);
  }
}

TEST_CASE("compactify") {
  const Lattice c = sc::compactify(pt(50), 10);
  CHECK(c.window() == SiteWindow(-11, 11));
  CHECK(c.kappa(-10) == cd{1.0});
  CHECK(c.kappa(11) == cd{1.0});
  CHECK(c.kappa(10) == pt(50).kappa(10));
  CHECK(c.kappa(0) == I);
}

TEST_CASE("uniform chain is transparent") {
  const sc::Coefficients c = coefficients(Lattice::uniform(SiteWindow::symmetric(52), 1.0), 50, pi / 3.0);
  CHECK(std::abs(c.r) < 1e-12);
  CHECK(std::abs(c.t - 1.0) < 1e-12);
}

TEST_CASE("transfer-matrix coefficients match the dense scattering solve") {
  // Three-site defect plus a random complex defect of width five.
  const SiteWindow w = SiteWindow::symmetric(4);
  std::vector<cd> kappa(w.size(), 1.0), v(w.size(), 0.0);
  kappa[w.offset(0)] = {0.6, 0.2};
  kappa[w.offset(1)] = {1.4, 0.0};
  v[w.offset(0)] = {0.3, -0.1};
  const Lattice toy(w, kappa, v, 1.0);
  const Lattice rnd = random_lattice(SiteWindow::symmetric(7), 42);
  for (double q : {0.3, pi / 3.0, 1.7, 2.6}) {
    const sc::Coefficients a = coefficients(toy, 1, q), b = dense_solve(toy, 1, q);
    CHECK(std::abs(a.r - b.r) < 1e-10);
    CHECK(std::abs(a.t - b.t) < 1e-10);
    const sc::Coefficients c = coefficients(rnd, 5, q), d = dense_solve(rnd, 5, q);
    CHECK(std::abs(c.r - d.r) < 1e-10);
    CHECK(std::abs(c.t - d.t) < 1e-10);
  }
}

TEST_CASE("pole detection") {
  TransferMatrix Q;
  // den = Q00 - Q11 e^{-2iq} + (Q01 - Q10) e^{-iq} vanishes for Q = [[a, 0], [0, a e^{2iq}]].
  const double q = 0.9;
  Q << 2.0, 0.0, 0.0, 2.0 * std::exp(2.0 * I * q);
  CHECK_ERROR_KIND(sc::rt_coefficients(Q, q, 3), ErrorKind::pole);
}

TEST_CASE("Hermitian lattices scatter unitarily") {
  const sc::Coefficients c = coefficients(h4(200), 200, pi / 3.0);
  CHECK(std::abs(std::norm(c.r) + std::norm(c.t) - 1.0) < 1e-10);
  CHECK(std::abs(c.r) > 0.0);

  const auto grid = sc::uniform_grid(201);
  // Weak real disorder: well-conditioned products.
  const SiteWindow w = SiteWindow::symmetric(32);
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cd> kappa(w.size()), v(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    kappa[i] = 1.0 + 0.1 * u(rng);
    v[i] = 0.2 * u(rng);
  }
  const Lattice weak(w, kappa, v, 1.0);
  for (const auto& rec : sc::spectrum(weak, grid, 30).records) {
    CHECK(std::abs(rec.abs_r2() + rec.abs_t2() - 1.0) < 1e-10);
  }

  // Strong disorder localizes: ||Q|| grows and the unitarity defect tracks eps ||Q||^2 instead.
  const Lattice strong = random_lattice(w, 43, false);
  const Lattice compact = sc::compactify(strong, 30);
  for (const auto& rec : sc::spectrum(strong, grid, 30).records) {
    const double q_norm = sc::total_transfer(compact, 30, rec.energy).norm();
    CHECK(std::abs(rec.abs_r2() + rec.abs_t2() - 1.0) < 1e-14 * q_norm * q_norm);
  }
}

TEST_CASE("compactified PT lattice reflects as 1/N") {
  // Cutting the 1/n coupling tails at |n| = N leaves a residual reflection ~ 1/N.
  const double q = pi / 3.0;
  double prev_r = 1.0, prev_t = 1.0;
  std::vector<double> scaled;
  for (SiteIndex N : {100L, 200L, 400L}) {
    const sc::Coefficients c = coefficients(pt(N), N, q);
    MESSAGE("N = " << N << " |r| = " << std::abs(c.r) << " |t - 1| = " << std::abs(c.t - 1.0));
    CHECK(std::abs(c.r) < prev_r);
    CHECK(std::abs(c.t - 1.0) < prev_t);
    prev_r = std::abs(c.r);
    prev_t = std::abs(c.t - 1.0);
    scaled.push_back(std::abs(c.r) * double(N));
  }
  CHECK(std::abs(scaled[2] / scaled[0] - 1.0) < 0.1);
}

TEST_CASE("spectrum sweep") {
  const auto grid = sc::uniform_grid(2001);
  REQUIRE(grid.size() == 2001);
  CHECK(std::abs(grid.front() - sc::kBandEdgeGuard) < 1e-15);
  CHECK(std::abs(grid.back() - (pi - sc::kBandEdgeGuard)) < 1e-15);

  const Lattice lat = pt(200);
  const sc::ScatteringSpectrum par = sc::spectrum(lat, grid, 200);
  const sc::ScatteringSpectrum ser = sc::serial::spectrum(lat, grid, 200);
  REQUIRE(par.records.size() == ser.records.size());
  for (std::size_t i = 0; i < par.records.size(); ++i) {
    CHECK(par.records[i].r == ser.records[i].r);
    CHECK(par.records[i].t == ser.records[i].t);
    CHECK(std::abs(par.records[i].energy - 2.0 * std::cos(grid[i])) < 1e-15);
  }
  CHECK_FALSE(par.det_drift_exceeded());

  // A narrow feature in |t|^2 sits at the band centre.
  double peak = 0.0;
  for (const auto& rec : par.records) {
    if (std::abs(rec.q - pi / 2.0) < 0.05) peak = std::max(peak, std::abs(rec.abs_t2() - 1.0));
  }
  CHECK(peak > 0.01);

  // H4 shows order-unity structure across the band.
  double min_t2 = 1.0;
  for (const auto& rec : sc::spectrum(h4(200), grid, 200).records) min_t2 = std::min(min_t2, rec.abs_t2());
  MESSAGE("H4 min |t|^2 = " << min_t2);
  CHECK(min_t2 < 0.5);
}

TEST_CASE("phase slip leaves |r| and |t| unchanged") {
  const Lattice pm = pt(100), pp = pt(100, md::SignConvention::k0_plus_k1_plus);
  const Lattice slipped = md::gauge_phase_slip(h4(100), 5);
  for (double q : {0.4, 1.2, 1.5, 2.5}) {
    const sc::Coefficients a = coefficients(pm, 100, q), b = coefficients(pp, 100, q);
    CHECK(std::abs(std::abs(a.r) - std::abs(b.r)) < 1e-12);
    CHECK(std::abs(std::abs(a.t) - std::abs(b.t)) < 1e-12);
    const sc::Coefficients c = coefficients(h4(100), 100, q), d = coefficients(slipped, 100, q);
    CHECK(std::abs(std::abs(c.r) - std::abs(d.r)) < 1e-12);
    CHECK(std::abs(std::abs(c.t) - std::abs(d.t)) < 1e-12);
  }
}

TEST_CASE("resonance width") {
  double prev = 1e9;
  for (SiteIndex N : {100L, 200L, 400L}) {
    const auto w = sc::resonance_width(pt(N), N);
    REQUIRE(w.has_value());
    MESSAGE("N = " << N << " width " << *w);
    CHECK(*w < prev);
    prev = *w;
  }
  sc::WidthOptions high;
  high.threshold = 1e3;
  CHECK_FALSE(sc::resonance_width(pt(100), 100, high).has_value());

  const auto a = sc::resonance_width(pt(100), 100);
  const auto b = sc::resonance_width(pt(100, md::SignConvention::k0_plus_k1_plus), 100);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(std::abs(*a - *b) < 1e-9);
}
