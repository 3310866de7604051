#include "epcl/ep_models.hpp"

#include <algorithm>
#include <cmath>

namespace epcl::models {

namespace {

constexpr cd kI{0.0, 1.0};

void check_spec(const PtLatticeSpec& spec) {
  if (!(spec.kappa > 0.0)) fail(ErrorKind::rejected_input, "kappa must be positive");
  if (!spec.window.contains(SiteWindow(-2, 3))) {
    fail(ErrorKind::rejected_input, "the model window must contain the defect core [-2, 3]");
  }
}

Lattice defect_lattice(const PtLatticeSpec& spec, cd k0, cd k1) {
  check_spec(spec);
  const SiteWindow w = spec.window;
  std::vector<cd> kappa(w.size());
  for (SiteIndex n = w.n_min; n <= w.n_max; ++n) {
    if (n == 0) {
      kappa[w.offset(n)] = k0;
    } else if (n == 1) {
      kappa[w.offset(n)] = k1;
    } else {
      kappa[w.offset(n)] = spec.kappa * defect_coupling_ratio(n);
    }
  }
  return Lattice(w, std::move(kappa), std::vector<cd>(w.size(), cd{}), spec.kappa);
}

// Even-site amplitudes (n/|n|) i^n / sqrt(n^2 - 1) for n != 0; zero on odd sites.
StateVector even_bound_state(SiteWindow w) {
  StateVector omega(w);
  for (SiteIndex n = w.n_min; n <= w.n_max; ++n) {
    if (n == 0 || n % 2 != 0) continue;
    const double sign = n > 0 ? 1.0 : -1.0;
    const double in = (n / 2) % 2 == 0 ? 1.0 : -1.0;  // i^n for even n
    const double nd = static_cast<double>(n);
    omega[n] = sign * in / std::sqrt(nd * nd - 1.0);
  }
  return omega;
}

// Least-squares omega_0 from rows n = +-1: kappa_1 w0 + kappa_2 w2 = 0, kappa_0 w0 + kappa_{-1} w_{-2} = 0.
cd solve_center(const Lattice& lat, const StateVector& omega) {
  const cd a1 = lat.kappa(1), b1 = -lat.kappa(2) * omega[2];
  const cd a2 = lat.kappa(0), b2 = -lat.kappa(-1) * omega[-2];
  return (std::conj(a1) * b1 + std::conj(a2) * b2) / (std::norm(a1) + std::norm(a2));
}

}  // namespace

double defect_coupling_ratio(SiteIndex n) {
  const double nd = static_cast<double>(n);
  if (n == 0 || n == 1) fail(ErrorKind::rejected_input, "bonds 0 and 1 carry the imaginary couplings");
  return n % 2 == 0 ? std::sqrt((nd + 1.0) / (nd - 1.0)) : std::sqrt((nd - 2.0) / nd);
}

Lattice pt_lattice(const PtLatticeSpec& spec) {
  const cd k0 = kI * spec.kappa;
  const cd k1 = spec.convention == SignConvention::k0_plus_k1_minus ? -k0 : k0;
  return defect_lattice(spec, k0, k1);
}

StateVector bic_pt(const PtLatticeSpec& spec) {
  const Lattice lat = pt_lattice(spec);
  StateVector omega = even_bound_state(spec.window);
  omega[0] = solve_center(lat, omega);
  return omega;
}

StateVector assoc_pt(const PtLatticeSpec& spec) {
  check_spec(spec);
  StateVector f(spec.window);
  for (SiteIndex n = spec.window.n_min; n <= spec.window.n_max; ++n) {
    if (n % 2 == 0) continue;
    // sin(pi n / 2) = +1 for n = 1 mod 4, -1 for n = 3 mod 4
    const double s = ((n % 4) + 4) % 4 == 1 ? 1.0 : -1.0;
    f[n] = -s / (2.0 * spec.kappa);
  }
  return f;
}

Lattice hermitian_counterpart(const PtLatticeSpec& spec) { return defect_lattice(spec, spec.kappa, -spec.kappa); }

StateVector bic_hermitian(const PtLatticeSpec& spec) {
  const Lattice lat = hermitian_counterpart(spec);
  StateVector omega = even_bound_state(spec.window);
  omega[0] = solve_center(lat, omega);
  return omega;
}

Lattice gauge_phase_slip(const Lattice& lat, SiteIndex site) { return lat.with_kappa(site, -lat.kappa(site)); }

std::vector<cd> gap_states(const Lattice& lat, SiteIndex half_width) {
  std::vector<cd> ev = eigen_spectrum(truncate(lat, half_width));
  const double edge = 2.0 * lat.kappa_asym();
  std::vector<cd> out;
  std::copy_if(ev.begin(), ev.end(), std::back_inserter(out), [&](cd e) { return std::abs(e.real()) > edge; });
  std::sort(out.begin(), out.end(), [](cd a, cd b) { return a.real() < b.real(); });
  return out;
}

}  // namespace epcl::models
