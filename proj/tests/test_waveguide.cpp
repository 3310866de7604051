#include "support.hpp"

#include "epcl/dynamics.hpp"
#include "epcl/waveguide.hpp"

using namespace test;
using epcl::ErrorKind;
namespace wg = epcl::waveguide;
namespace dy = epcl::dynamics;
namespace md = epcl::models;

namespace {

// (1/pi) int_0^pi cos(x sin theta) dtheta by the trapezoid rule, spectrally accurate for this periodic integrand.
double j0_quadrature(double x) {
  const int n = 400;
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += std::cos(x * std::sin(pi * k / n));
  return s / n;
}

// int_0^t gamma by composite Simpson on sub-intervals split at multiples of Lambda/16, which contain every
// jump of the square wave and every kink of a 16-sample table.
cd simpson_phase(const wg::ModulationProfile& p, double t) {
  auto simpson = [&](double a, double b) {
    const int n = 200;
    const double h = (b - a) / n;
    const double nudge = 1e-12 * p.Lambda;  // stay on the inner side of a jump
    cd s = p.gamma(a + nudge) + p.gamma(b - nudge);
    for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * p.gamma(a + k * h);
    return s * h / 3.0;
  };
  const double step = p.Lambda / 16.0;
  cd total{};
  for (int k = 0; k * step < t; ++k) total += simpson(k * step, std::min(t, (k + 1) * step));
  return total;
}

dy::IntegratorConfig config(double T, SiteIndex N, double dt) {
  dy::IntegratorConfig c;
  c.T = T;
  c.half_width = N;
  c.dt = dt;
  c.sample_interval = 0.1;
  return c;
}

md::PtLatticeSpec spec_with(SiteIndex N, md::SignConvention c = md::SignConvention::k0_plus_k1_minus) {
  md::PtLatticeSpec s;
  s.window = SiteWindow::symmetric(N);
  s.convention = c;
  return s;
}

}  // namespace

TEST_CASE("profile validation and names") {
  CHECK_ERROR_KIND(wg::ModulationProfile::sinusoidal(1.0, 1.0, 0.0).validate(), ErrorKind::rejected_input);
  CHECK_ERROR_KIND(wg::ModulationProfile::tabulated({1.0, 1.0}, 1.0).validate(), ErrorKind::rejected_input);
  CHECK_ERROR_KIND(wg::ModulationProfile::tabulated({1.0}, 1.0).validate(), ErrorKind::rejected_input);
  CHECK_NOTHROW(wg::ModulationProfile::tabulated({1.0, -1.0}, 1.0).validate());
  for (auto k : {wg::ModulationKind::sinusoidal, wg::ModulationKind::square, wg::ModulationKind::tabulated}) {
    CHECK(wg::modulation_kind_from_string(wg::to_string(k)) == k);
  }
  CHECK_ERROR_KIND(wg::modulation_kind_from_string("triangle"), ErrorKind::rejected_input);
}

TEST_CASE("phase is the exact integral of gamma") {
  const double L = 0.7;
  std::vector<cd> tab;
  for (int k = 0; k < 16; ++k) tab.push_back(cd{std::sin(2 * pi * k / 16.0), 0.3 * std::cos(2 * pi * k / 16.0)});
  for (const auto& p : {wg::ModulationProfile::reference_sinusoidal(L), wg::ModulationProfile::reference_square(L),
                        wg::ModulationProfile::tabulated(tab, L)}) {
    for (double t : {0.1 * L, 0.5 * L, 0.93 * L, 2.3 * L}) {
      CHECK(std::abs(p.phase(t) - simpson_phase(p, t)) < 1e-10 * std::max(1.0, std::abs(p.phase(t))));
    }
    CHECK(std::abs(p.phase(L)) < 1e-12 * std::abs(p.gamma(0.0)) * L + 1e-14);
  }
}

TEST_CASE("complex J0") {
  CHECK(wg::complex_bessel_j0(0.0) == cd{1.0});
  const cd j = wg::complex_bessel_j0(cd{2.0, -2.096});
  CHECK(std::abs(j.imag() - 1.9414) < 0.005);
  CHECK(std::abs(j.real()) < 0.01);
  for (double x : {1.0, 2.4048}) {
    CHECK(std::abs(wg::complex_bessel_j0(x).real() - j0_quadrature(x)) < 1e-10);
    CHECK(std::abs(wg::complex_bessel_j0(x).real() - std::cyl_bessel_j(0.0, x)) < 1e-12);
  }
  CHECK(std::abs(wg::complex_bessel_j0(2.4048)) < 1e-4);
  // Symmetries: J0(-z) = J0(z), J0(conj z) = conj J0(z).
  const cd z{3.1, 4.7};
  CHECK(std::abs(wg::complex_bessel_j0(-z) - wg::complex_bessel_j0(z)) < 1e-12 * std::abs(wg::complex_bessel_j0(z)));
  CHECK(std::abs(wg::complex_bessel_j0(std::conj(z)) - std::conj(wg::complex_bessel_j0(z))) < 1e-10);
  CHECK_ERROR_KIND(wg::complex_bessel_j0(cd{15.0, 15.0}), ErrorKind::out_of_range);
}

TEST_CASE("complex sinc") {
  CHECK(wg::complex_sinc(0.0) == cd{1.0});
  const cd s = wg::complex_sinc(cd{2.7255, -1.3707});
  CHECK(std::abs(s.imag() - 0.6182) < 0.005);
  CHECK(std::abs(s.real()) < 0.01);
  CHECK(std::abs(wg::complex_sinc(1e-9) - 1.0) < 1e-15);
}

TEST_CASE("closed forms") {
  const double L = 0.1 * 2 * pi;
  const wg::ClosedForm sin_form = wg::closed_form_R(wg::ModulationProfile::reference_sinusoidal(L));
  CHECK(std::abs(sin_form.Gamma - cd{2.0, -2.096}) < 1e-12);
  CHECK(std::abs(sin_form.R - wg::complex_bessel_j0(sin_form.Gamma)) < 1e-15);
  const wg::ClosedForm sq_form = wg::closed_form_R(wg::ModulationProfile::reference_square(L));
  CHECK(std::abs(sq_form.Gamma - cd{2.7255, -1.3707}) < 1e-12);
  CHECK(std::abs(sq_form.R - wg::complex_sinc(sq_form.Gamma)) < 1e-15);
  CHECK(std::abs(wg::closed_form_R(wg::ModulationProfile::sinusoidal(1e-9, 0.0, L)).R - 1.0) < 1e-12);
  CHECK(std::abs(wg::closed_form_R(wg::ModulationProfile::square(1e-9, 0.0, L)).R - 1.0) < 1e-12);
  CHECK_ERROR_KIND(wg::closed_form_R(wg::ModulationProfile::tabulated({1.0, -1.0}, L)), ErrorKind::unsupported);
}

TEST_CASE("averaged coupling by quadrature") {
  for (double L : {0.2 * 2 * pi, 0.1 * 2 * pi, 1.0}) {
    for (const auto& p : {wg::ModulationProfile::reference_sinusoidal(L), wg::ModulationProfile::reference_square(L)}) {
      const wg::AveragedCoupling a = wg::averaged_coupling(p);
      const cd R = wg::closed_form_R(p).R;
      CHECK(std::abs(a.r_plus - R) < 1e-8);
      CHECK(std::abs(a.r_minus - R) < 1e-8);
    }
  }
  const wg::AveragedCoupling flat = wg::averaged_coupling(wg::ModulationProfile::sinusoidal(0.0, 0.0, 1.0));
  CHECK(std::abs(flat.r_plus - 1.0) < 1e-14);
  CHECK(std::abs(flat.r_minus - 1.0) < 1e-14);

  // Tabulated samples of the sinusoidal profile converge to J0 as the table is refined.
  const double L = 0.1 * 2 * pi;
  const wg::ModulationProfile ref = wg::ModulationProfile::reference_sinusoidal(L);
  double prev = 1e9;
  for (int M : {64, 256, 1024}) {
    std::vector<cd> tab(static_cast<std::size_t>(M));
    for (int k = 0; k < M; ++k) tab[static_cast<std::size_t>(k)] = ref.gamma(L * k / M);
    const double err =
        std::abs(wg::averaged_coupling(wg::ModulationProfile::tabulated(tab, L)).r_plus - wg::closed_form_R(ref).R);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("solve_delta") {
  const double L = 0.1 * 2 * pi, kappa = 1.0;
  const wg::DesignResult s = wg::solve_delta(wg::ModulationProfile::reference_sinusoidal(L), kappa);
  CHECK(std::abs(s.Delta / (kappa / 1.9414) - 1.0) < 0.005);
  CHECK(std::abs(s.effective_coupling - I * kappa) < 0.01 * kappa);
  const wg::DesignResult q = wg::solve_delta(wg::ModulationProfile::reference_square(L), kappa);
  CHECK(std::abs(q.Delta / (kappa / 0.6182) - 1.0) < 0.005);
  CHECK_ERROR_KIND(wg::solve_delta(wg::ModulationProfile::sinusoidal(0.0, 0.0, L), kappa),
                   ErrorKind::design_infeasible);
}

TEST_CASE("unmodulated full model is the static lattice") {
  const double Delta = 1.0;
  const SiteIndex N = 60;
  const Lattice base = wg::modulated_base_lattice(spec_with(N), Delta);
  CHECK(base.kappa(0) == cd{Delta});
  CHECK(base.kappa(1) == cd{Delta});
  const StateVector psi0 = random_state(SiteWindow::symmetric(3), 51);
  const auto cfg = config(5.0, N, 0.005);
  const auto full = wg::full_model_evolve(wg::ModulationProfile::sinusoidal(0.0, 0.0, 1.0), Delta, base, psi0, cfg);
  const auto stat = dy::evolve(base, psi0, cfg);
  REQUIRE(full.size() == stat.size());
  for (std::size_t i = 0; i < full.size(); ++i) CHECK(max_diff(full.states[i], stat.states[i]) < 1e-10);

  CHECK_ERROR_KIND(wg::full_model_evolve(wg::ModulationProfile::sinusoidal(1.0, 0.0, 1.0), Delta, base, psi0,
                                         config(5.0, N, 0.01)),
                   ErrorKind::configuration);
  CHECK_ERROR_KIND(wg::full_model_evolve(wg::ModulationProfile::sinusoidal(1.0, 0.0, 1.0), 0.5, base, psi0, cfg),
                   ErrorKind::rejected_input);
}

TEST_CASE("effective model with Delta R = i kappa is the PT lattice") {
  const SiteIndex N = 60;
  const double Delta = 0.5;
  const Lattice base = wg::modulated_base_lattice(spec_with(N), Delta);
  const cd R = I / Delta;
  const StateVector psi0 = random_state(SiteWindow::symmetric(4), 52);
  const auto cfg = config(5.0, N, 0.01);
  const auto eff = wg::effective_model_evolve(R, R, Delta, base, psi0, cfg);
  const auto ref = dy::evolve(md::pt_lattice(spec_with(N, md::SignConvention::k0_plus_k1_plus)), psi0, cfg);
  for (std::size_t i = 0; i < eff.size(); ++i) CHECK(max_diff(eff.states[i], ref.states[i]) < 1e-13);

  // Linear in the initial state.
  const cd a{-0.7, 0.2};
  const auto scaled = wg::effective_model_evolve(R, R, Delta, base, a * psi0, cfg);
  CHECK(max_diff(scaled.states.back(), a * eff.states.back()) < 1e-12);

  // The two off-diagonal factors enter asymmetrically.
  const auto asym = wg::effective_model_evolve(R, 0.5 * R, Delta, base, StateVector::delta(SiteWindow(0, 0), 0),
                                               config(0.01, N, 0.01));
  const StateVector& s = asym.states.back();
  CHECK(std::abs(s[1] / s[-1] - 1.0) < 1e-12);
}

TEST_CASE("RWA deviation shrinks with the modulation period") {
  double prev = 1e9;
  for (double f : {0.2, 0.1, 0.05}) {
    const wg::RwaTrace tr = wg::rwa_validation(f * 2 * pi);
    MESSAGE("Lambda = " << f << " * 2 pi: max deviation " << tr.max_deviation);
    CHECK(tr.max_deviation < prev / 1.5);
    prev = tr.max_deviation;
  }
}

TEST_CASE("designed effective lattice shows quadratic power growth") {
  const double kappa = 1.0;
  const wg::DesignResult d = wg::solve_delta(wg::ModulationProfile::reference_sinusoidal(0.1 * 2 * pi), kappa);
  const Lattice base = wg::modulated_base_lattice(spec_with(300), d.Delta);
  const auto tr = wg::effective_model_evolve(d.R_plus, d.R_minus, d.Delta, base,
                                             StateVector::delta(SiteWindow(0, 0), 0), config(20.0, 300, 0.01));
  const dy::SecularFit fit = dy::secular_fit(tr, 10.0, 20.0);
  CHECK(std::abs(fit.exponent - 2.0) < 0.1);
}
