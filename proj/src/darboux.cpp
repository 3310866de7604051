#include "epcl/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace epcl::darboux {

namespace {

constexpr cd kI{0.0, 1.0};

double max_abs(std::span<const cd> v) {
  double m = 0.0;
  for (cd z : v) m = std::max(m, std::abs(z));
  return m;
}

double lattice_scale(const Lattice& h, cd mu) {
  return std::max({1.0, std::abs(mu), max_abs(h.kappas()), max_abs(h.potentials())});
}

// s_n = sqrt(rho_n), c_n = cos(q0 n + sigma).
struct ClosedFormTerms {
  const SeedParams& seed;
  cd s(SiteIndex n) const { return std::sqrt(seed.rho(n)); }
  double c(SiteIndex n) const { return seed.seed_amplitude(n); }

  // A_n, B_n, C_n of the scattering eigenfunctions; q-independent.
  void abc(SiteIndex n, cd& a, cd& b, cd& cc) const {
    const cd ratio = s(n - 1) / s(n);
    a = ratio;
    cc = 1.0 / ratio;
    b = -(c(n) / c(n - 1)) * a - (c(n - 2) / c(n - 1)) * cc;
  }
};

void require_q0(const SeedParams& seed) {
  if (!(seed.q0 > 0.0 && seed.q0 < M_PI)) fail(ErrorKind::seed_rejected, "q0 must lie in (0, pi)");
  if (!(seed.kappa > 0.0)) fail(ErrorKind::seed_rejected, "kappa must be positive");
}

}  // namespace

double SeedParams::mu1() const { return 2.0 * kappa * std::cos(q0); }

cd SeedParams::rho(SiteIndex n) const {
  const double nd = static_cast<double>(n);
  return lambda + nd + std::sin(q0 * nd) * std::cos(q0 * (nd - 1.0) + 2.0 * sigma) / std::sin(q0);
}

double SeedParams::seed_amplitude(SiteIndex n) const { return std::cos(q0 * static_cast<double>(n) + sigma); }

void validate_seed(const SeedParams& seed, SiteWindow w) {
  require_q0(seed);
  for (SiteIndex n = w.n_min - 2; n <= w.n_max + 1; ++n) {
    if (!(std::abs(seed.seed_amplitude(n)) > seed.epsilon)) {
      fail(ErrorKind::seed_rejected, "seed amplitude |cos(q0 n + sigma)| <= epsilon at n = " + std::to_string(n));
    }
    if (std::abs(seed.rho(n)) < 1e-14 * (1.0 + std::abs(static_cast<double>(n)))) {
      fail(ErrorKind::singular_lattice, "rho_n vanishes at n = " + std::to_string(n));
    }
  }
}

FactorPair::FactorPair(SiteWindow w, std::vector<cd> r_in, std::vector<cd> r_bar_in)
    : window(w), r(std::move(r_in)), r_bar(std::move(r_bar_in)) {
  if (r.size() != w.size() || r_bar.size() != w.size()) {
    fail(ErrorKind::rejected_input, "factor pair sequences do not match the window");
  }
  q.resize(r.size());
  q_bar.assign(r.size(), cd{});
  for (std::size_t i = 0; i < r.size(); ++i) {
    q[i] = -r[i];
    if (i + 1 < r.size()) q_bar[i] = -r_bar[i + 1];
  }
}

StateVector seed_solution(const SeedParams& seed, SiteWindow w) {
  require_q0(seed);
  StateVector phi(w);
  for (SiteIndex n = w.n_min; n <= w.n_max; ++n) {
    const double c = seed.seed_amplitude(n);
    if (!(std::abs(c) > seed.epsilon)) {
      fail(ErrorKind::seed_rejected, "seed amplitude |cos(q0 n + sigma)| <= epsilon at n = " + std::to_string(n));
    }
    phi[n] = c;
  }
  return phi;
}

FactorPair factorize(const Lattice& h, cd mu, const StateVector& phi) {
  const SiteWindow w = phi.window();
  if (w.size() < 3) fail(ErrorKind::rejected_input, "factorize needs at least three sites");
  if (!h.window().contains(w)) fail(ErrorKind::rejected_input, "eigensolution window exceeds the lattice window");
  for (SiteIndex n = w.n_min; n <= w.n_max; ++n) {
    if (phi[n] == cd{}) fail(ErrorKind::division_failure, "eigensolution vanishes at n = " + std::to_string(n));
  }
  const double res = residual(h, mu, phi, 1);
  const double bound = kEigensolutionTolerance * std::max(1.0, max_abs(phi.amplitudes())) * lattice_scale(h, mu);
  if (!(res <= bound)) {
    fail(ErrorKind::not_an_eigensolution, "(H - mu) phi residual " + std::to_string(res) + " exceeds tolerance");
  }
  const SiteWindow fw(w.n_min + 1, w.n_max);
  std::vector<cd> r(fw.size()), r_bar(fw.size());
  for (SiteIndex n = fw.n_min; n <= fw.n_max; ++n) {
    const cd rn = -std::sqrt(h.kappa(n) * phi[n - 1] / phi[n]);
    r[fw.offset(n)] = rn;
    r_bar[fw.offset(n)] = -h.kappa(n) / rn;
  }
  return FactorPair(fw, std::move(r), std::move(r_bar));
}

Lattice reconstruct(const FactorPair& fp, cd mu, double kappa_asym) {
  const SiteWindow w(fp.window.n_min, fp.window.n_max - 1);
  std::vector<cd> kappa(w.size()), v(w.size());
  for (SiteIndex n = w.n_min; n <= w.n_max; ++n) {
    kappa[w.offset(n)] = fp.q_at(n) * fp.r_bar_at(n);
    v[w.offset(n)] = mu + fp.q_at(n) * fp.r_at(n) + fp.q_bar_at(n) * fp.r_bar_at(n + 1);
  }
  return Lattice(w, std::move(kappa), std::move(v), kappa_asym);
}

Lattice partner(const Lattice& h, cd mu, const StateVector& phi) { return partner(h, factorize(h, mu, phi), phi); }

Lattice partner(const Lattice& h, const FactorPair& fp, const StateVector& phi) {
  const SiteWindow pw = phi.window();
  if (fp.window != SiteWindow(pw.n_min + 1, pw.n_max)) {
    fail(ErrorKind::rejected_input, "factor pair does not belong to this eigensolution");
  }
  const SiteWindow w(pw.n_min + 2, pw.n_max - 1);
  std::vector<cd> kappa(w.size()), v(w.size());
  for (SiteIndex n = w.n_min; n <= w.n_max; ++n) {
    kappa[w.offset(n)] = h.kappa(n) * fp.r_at(n - 1) / fp.r_at(n);
    v[w.offset(n)] = h.v(n) + h.kappa(n + 1) * phi[n + 1] / phi[n] - h.kappa(n) * phi[n] / phi[n - 1];
  }
  return Lattice(w, std::move(kappa), std::move(v), h.kappa_asym());
}

StateVector partner_kernel(const FactorPair& fp, const StateVector& phi) {
  StateVector theta(fp.window);
  for (SiteIndex n = fp.window.n_min; n <= fp.window.n_max; ++n) theta[n] = -1.0 / (fp.r_at(n) * phi[n]);
  return theta;
}

StateVector intertwine(const FactorPair& fp, const StateVector& psi) {
  const SiteIndex lo = std::max(fp.window.n_min, psi.window().n_min + 1);
  const SiteIndex hi = std::min(fp.window.n_max, psi.window().n_max);
  const SiteWindow w(lo, hi);
  StateVector xi(w);
  for (SiteIndex n = lo; n <= hi; ++n) xi[n] = fp.r_at(n) * psi[n] + fp.r_bar_at(n) * psi[n - 1];
  return xi;
}

StateVector general_phi2(const Lattice& h2, const StateVector& theta, cd lambda) {
  const SiteIndex lo = std::max(theta.window().n_min, h2.window().n_min - 1);
  const SiteIndex hi = std::min(theta.window().n_max, h2.window().n_max);
  const SiteWindow w(lo, hi);
  if (!w.contains(0)) fail(ErrorKind::rejected_input, "general_phi2 needs site 0 in the window");
  auto step = [&](SiteIndex n) {  // S_{n+1} - S_n
    const cd den = h2.kappa(n + 1) * theta[n] * theta[n + 1];
    if (den == cd{} || !std::isfinite(std::abs(den))) {
      fail(ErrorKind::degenerate_seed, "zero denominator in the phi2 sum at n = " + std::to_string(n));
    }
    return 1.0 / den;
  };
  std::vector<cd> sums(w.size());
  sums[w.offset(0)] = 0.0;
  for (SiteIndex n = 0; n < hi; ++n) sums[w.offset(n + 1)] = sums[w.offset(n)] + step(n);
  for (SiteIndex n = -1; n >= lo; --n) sums[w.offset(n)] = sums[w.offset(n + 1)] - step(n);
  StateVector phi2(w);
  for (SiteIndex n = lo; n <= hi; ++n) phi2[n] = theta[n] * (lambda + sums[w.offset(n)]);
  return phi2;
}

cd v3_three_term(const SeedParams& seed, SiteIndex n) {
  const double k = seed.kappa;
  const double c0 = seed.seed_amplitude(n), c1 = seed.seed_amplitude(n - 1), c2 = seed.seed_amplitude(n - 2);
  const double s2 = std::sin(seed.q0) * std::sin(seed.q0);
  return -k * s2 / (c0 * c1) + k * (c1 / c0) * seed.rho(n + 1) / seed.rho(n) -
         k * (c2 / c1) * seed.rho(n) / seed.rho(n - 1);
}

DoubleDarboux double_darboux_closed_form(const SeedParams& seed, SiteWindow w) {
  validate_seed(seed, w);
  const ClosedFormTerms t{seed};
  const double k = seed.kappa;
  std::vector<cd> kappa(w.size()), v(w.size()), omega(w.size()), rho(w.size());
  for (SiteIndex n = w.n_min; n <= w.n_max; ++n) {
    const std::size_t i = w.offset(n);
    const cd s0 = t.s(n), s1 = t.s(n - 1), s2 = t.s(n - 2);
    kappa[i] = k * s0 * s2 / (s1 * s1);
    // Same value as the three-term form; regular where cos vanishes.
    v[i] = 2.0 * k * t.c(n - 1) * (t.c(n) / seed.rho(n) - t.c(n - 2) / seed.rho(n - 1));
    omega[i] = t.c(n - 1) / (s0 * s1);
    rho[i] = seed.rho(n);
  }
  return {Lattice(w, std::move(kappa), std::move(v), k), StateVector(w, std::move(omega)), std::move(rho)};
}

DarbouxChain build_chain(const SeedParams& seed, SiteWindow w) {
  require_q0(seed);
  if (!w.contains(0)) fail(ErrorKind::rejected_input, "the Darboux chain window must contain site 0");
  const SiteWindow seed_window(w.n_min - 4, w.n_max + 2);
  const cd mu1 = seed.mu1();

  DarbouxChain chain{seed, Lattice::uniform(seed_window, seed.kappa), {}, {}, {}, {}, {}, {}, {}};
  chain.phi1 = seed_solution(seed, seed_window);

  const FactorPair f1 = factorize(chain.h1, mu1, chain.phi1);
  chain.h2 = partner(chain.h1, f1, chain.phi1);
  chain.theta = partner_kernel(f1, chain.phi1);

  // sum_k phi1_k^2 = (rho_n - lambda) / 2, so lambda/2 reproduces rho_n / 2.
  const StateVector phi2_full = general_phi2(chain.h2, chain.theta, seed.lambda / 2.0);
  chain.phi2 = phi2_full.restrict_to(chain.h2.window());

  const FactorPair f2 = factorize(chain.h2, mu1, chain.phi2);
  const Lattice h3_full = partner(chain.h2, f2, chain.phi2);
  const StateVector omega_full = partner_kernel(f2, chain.phi2);

  chain.h3 = h3_full.restrict_to(w);
  chain.omega = omega_full.restrict_to(w);
  chain.rho.resize(w.size());
  for (SiteIndex n = w.n_min; n <= w.n_max; ++n) {
    chain.rho[w.offset(n)] = 2.0 * chain.phi2[n] / chain.theta[n];
  }
  return chain;
}

DoubleDarboux double_darboux_pipeline(const SeedParams& seed, SiteWindow w) {
  DarbouxChain chain = build_chain(seed, w);
  return {std::move(chain.h3), std::move(chain.omega), std::move(chain.rho)};
}

GaugeComparison compare_gauge_fixed(const Lattice& a, const StateVector& omega_a, const Lattice& b,
                                    const StateVector& omega_b) {
  const SiteIndex lo = std::max({a.window().n_min, b.window().n_min, omega_a.window().n_min, omega_b.window().n_min});
  const SiteIndex hi = std::min({a.window().n_max, b.window().n_max, omega_a.window().n_max, omega_b.window().n_max});
  const SiteWindow w(lo, hi);

  GaugeComparison out;
  std::vector<double> d(w.size(), 1.0);
  for (SiteIndex n = lo; n <= hi; ++n) {
    const cd ka = a.kappa(n), kb = b.kappa(n);
    const double sign = std::abs(ka - kb) <= std::abs(ka + kb) ? 1.0 : -1.0;
    out.kappa_deviation = std::max(out.kappa_deviation, std::abs(ka - sign * kb));
    out.v_deviation = std::max(out.v_deviation, std::abs(a.v(n) - b.v(n)));
    if (n > lo) d[w.offset(n)] = d[w.offset(n - 1)] * sign;
  }
  // Global ratio from the largest reference amplitude.
  SiteIndex ref = lo;
  for (SiteIndex n = lo; n <= hi; ++n) {
    if (std::abs(omega_b[n]) > std::abs(omega_b[ref])) ref = n;
  }
  out.omega_ratio = omega_a[ref] / (d[w.offset(ref)] * omega_b[ref]);
  for (SiteIndex n = lo; n <= hi; ++n) {
    const cd aligned = d[w.offset(n)] * omega_b[n];
    out.omega_deviation = std::max(out.omega_deviation, std::abs(omega_a[n] - out.omega_ratio * aligned));
    if (aligned != cd{}) {
      out.omega_ratio_spread = std::max(out.omega_ratio_spread, std::abs(omega_a[n] / aligned - out.omega_ratio));
    }
  }
  return out;
}

StateVector scattering_eigenfunction(const SeedParams& seed, double q, Branch branch, SiteWindow w) {
  validate_seed(seed, w);
  const double mu = 2.0 * seed.kappa * std::cos(q);
  if (std::abs(mu - seed.mu1()) < kNearSingularTolerance * seed.kappa) {
    fail(ErrorKind::near_singular, "q is too close to +-q0; use regularized_F for the limit");
  }
  const ClosedFormTerms t{seed};
  const double sgn = branch == Branch::plus ? 1.0 : -1.0;
  const cd e1 = std::exp(-sgn * kI * q), e2 = e1 * e1;
  StateVector xi(w);
  for (SiteIndex n = w.n_min; n <= w.n_max; ++n) {
    cd a, b, c;
    t.abc(n, a, b, c);
    xi[n] = seed.kappa * std::exp(sgn * kI * q * static_cast<double>(n)) / (mu - seed.mu1()) * (a + b * e1 + c * e2);
  }
  return xi;
}

StateVector g_sequence(const SeedParams& seed, double q, SiteWindow w) {
  validate_seed(seed, w);
  const ClosedFormTerms t{seed};
  const cd em = std::exp(-kI * q), ep = std::exp(kI * q);
  StateVector g(w);
  for (SiteIndex n = w.n_min; n <= w.n_max; ++n) {
    cd a, b, c;
    t.abc(n, a, b, c);
    const double phase = q * static_cast<double>(n) + seed.sigma;
    const cd sp = a + b * em + c * em * em;
    const cd sm = a + b * ep + c * ep * ep;
    g[n] = std::exp(kI * phase) * sp - std::exp(-kI * phase) * sm;
  }
  return g;
}

StateVector g_sequence_derivative(const SeedParams& seed, double q, SiteWindow w) {
  validate_seed(seed, w);
  const ClosedFormTerms t{seed};
  const cd em = std::exp(-kI * q), ep = std::exp(kI * q);
  StateVector dg(w);
  for (SiteIndex n = w.n_min; n <= w.n_max; ++n) {
    cd a, b, c;
    t.abc(n, a, b, c);
    const double nd = static_cast<double>(n);
    const double phase = q * nd + seed.sigma;
    const cd sp = a + b * em + c * em * em;
    const cd sm = a + b * ep + c * ep * ep;
    const cd dsp = -kI * b * em - 2.0 * kI * c * em * em;
    const cd dsm = kI * b * ep + 2.0 * kI * c * ep * ep;
    const cd up = std::exp(kI * phase), down = std::exp(-kI * phase);
    dg[n] = kI * nd * up * sp + up * dsp + kI * nd * down * sm - down * dsm;
  }
  return dg;
}

StateVector regularized_F(const SeedParams& seed, double q, SiteWindow w) {
  StateVector g = g_sequence(seed, q, w);
  g *= kI / (4.0 * std::sin(seed.q0));
  return g;
}

StateVector associated_function(const SeedParams& seed, SiteWindow w) {
  StateVector dg = g_sequence_derivative(seed, seed.q0, w);
  const double s = std::sin(seed.q0);
  dg *= -kI / (8.0 * seed.kappa * s * s);
  return dg;
}

}  // namespace epcl::darboux
