#include <cmath>

#include "support.hpp"

#include "epcl/dynamics.hpp"
#include "epcl/ep_models.hpp"

using namespace test;
using epcl::ErrorKind;
namespace dy = epcl::dynamics;
namespace md = epcl::models;

namespace {

dy::IntegratorConfig config(double T, SiteIndex N, double dt = 0.01, double interval = 0.1) {
  dy::IntegratorConfig c;
  c.T = T;
  c.half_width = N;
  c.dt = dt;
  c.sample_interval = interval;
  return c;
}

md::PtLatticeSpec pt_spec(SiteIndex N) {
  md::PtLatticeSpec s;
  s.window = SiteWindow::symmetric(N);
  return s;
}

double variance(const StateVector& s) {
  double v = 0.0;
  for (SiteIndex n = s.window().n_min; n <= s.window().n_max; ++n) v += double(n) * double(n) * std::norm(s[n]);
  return v;
}

}  // namespace

TEST_CASE("integrator configuration guards") {
  CHECK_NOTHROW(config(20.0, 300).validate(1.0));
  CHECK_ERROR_KIND(config(20.0, 300, 0.06).validate(1.0), ErrorKind::configuration);
  CHECK_ERROR_KIND(config(20.0, 60).validate(1.0), ErrorKind::configuration);
  CHECK_ERROR_KIND(config(20.0, 100).validate(2.0), ErrorKind::configuration);
  CHECK(config(1.0, 300, 0.03, 0.1).steps() == 33);
  CHECK(config(1.0, 300, 0.03, 0.1).steps_per_sample() == 3);

  const Lattice lat = Lattice::uniform(SiteWindow::symmetric(30), 1.0);
  CHECK_ERROR_KIND(dy::evolve(lat, StateVector::delta(lat.window(), 0), config(10.0, 30)), ErrorKind::configuration);
  CHECK_ERROR_KIND(dy::evolve(lat, StateVector::delta(lat.window(), 0), config(1.0, 40)), ErrorKind::rejected_input);
  CHECK_ERROR_KIND(dy::evolve(lat, StateVector::delta(SiteWindow(20, 30), 25), config(1.0, 25)),
                   ErrorKind::rejected_input);
}

TEST_CASE("instability is reported with its step") {
  const SiteWindow w = SiteWindow::symmetric(30);
  Lattice lat(w, std::vector<cd>(w.size(), 1.0), std::vector<cd>(w.size(), cd{0.0, 3e4}), 1.0);
  bool thrown = false;
  try {
    (void)dy::evolve(lat, StateVector::delta(w, 0), config(1.0, 30));
  } catch (const epcl::Error& e) {
    thrown = true;
    CHECK(e.kind() == ErrorKind::instability);
    CHECK(std::string(e.what()).find("step") != std::string::npos);
  }
  CHECK(thrown);
}

TEST_CASE("trajectory layout") {
  const Lattice lat = Lattice::uniform(SiteWindow::symmetric(40), 1.0);
  const auto tr = dy::evolve(lat, StateVector::delta(SiteWindow(0, 0), 0), config(1.05, 40, 0.01, 0.1));
  REQUIRE(tr.size() == 12);
  CHECK(tr.times.front() == 0.0);
  CHECK(std::abs(tr.times.back() - 1.05) < 1e-12);
  for (std::size_t i = 1; i < tr.size(); ++i) CHECK(tr.times[i] > tr.times[i - 1]);
  for (const auto& s : tr.states) CHECK(s.window() == SiteWindow::symmetric(40));
}

TEST_CASE("discrete diffraction on the uniform chain") {
  const double kappa = 1.0, T = 5.0;
  const SiteIndex N = 60;
  const Lattice lat = Lattice::uniform(SiteWindow::symmetric(N), kappa);
  const StateVector start = StateVector::delta(SiteWindow::symmetric(N), 0);
  const auto tr = dy::evolve(lat, start, config(T, N));
  const auto ref = dy::evolve(lat, start, config(T, N, 0.001));
  REQUIRE(tr.size() == ref.size());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const double t = tr.times[i];
    CHECK(std::abs(tr.power[i] - 1.0) < 1e-6);
    CHECK(max_diff(tr.states[i], ref.states[i]) < 1e-7);
    if (t > 0.5) CHECK(std::abs(variance(tr.states[i]) / (2.0 * kappa * kappa * t * t) - 1.0) < 1e-4);
  }
  // Amplitudes follow |J_n(2 kappa t)|.
  const StateVector& last = tr.states.back();
  for (SiteIndex n = -20; n <= 20; ++n) {
    CHECK(std::abs(std::abs(last[n]) - std::abs(std::cyl_bessel_j(double(std::abs(n)), 2.0 * kappa * T))) < 1e-8);
  }
}

TEST_CASE("Hermitian counterpart conserves power") {
  const Lattice h4 = md::hermitian_counterpart(pt_spec(300));
  const auto tr = dy::evolve(h4, StateVector::delta(SiteWindow(0, 0), 0), config(20.0, 300));
  double worst = 0.0;
  for (double p : tr.power) worst = std::max(worst, std::abs(p - 1.0));
  CHECK(worst < 1e-6);
  const dy::SecularFit fit = dy::secular_fit(tr, 10.0, 20.0);
  CHECK(std::abs(fit.exponent) < 1e-5);
  CHECK(std::abs(fit.slope) < 1e-6);
}

TEST_CASE("PT bound state is stationary") {
  const md::PtLatticeSpec s = pt_spec(300);
  const StateVector omega = md::bic_pt(s);
  const auto tr = dy::evolve(md::pt_lattice(s), omega, config(20.0, 300, 0.01, 1.0));
  const SiteWindow inner = SiteWindow::symmetric(200);
  for (const auto& st : tr.states) CHECK(max_diff(st, omega, inner) < 1e-6);
}

TEST_CASE("PT single-site excitation grows quadratically") {
  const md::PtLatticeSpec s = pt_spec(300);
  const auto tr = dy::evolve(md::pt_lattice(s), StateVector::delta(SiteWindow(0, 0), 0), config(20.0, 300));
  const dy::SecularFit fit = dy::secular_fit(tr, 10.0, 20.0);
  CHECK(std::abs(fit.exponent - 2.0) < 0.1);
  CHECK(fit.r_squared > 0.999);
  CHECK(fit.slope > 0.0);

  // Doubling the window leaves P(t) unchanged while the light cone stays inside.
  const auto wide = dy::evolve(md::pt_lattice(pt_spec(600)), StateVector::delta(SiteWindow(0, 0), 0),
                               config(20.0, 600));
  REQUIRE(wide.size() == tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) CHECK(std::abs(wide.power[i] - tr.power[i]) < 1e-8);
}

TEST_CASE("defective solution") {
  const md::PtLatticeSpec s = pt_spec(300);
  const Lattice lat = md::pt_lattice(s);
  const StateVector omega = md::bic_pt(s), f = md::assoc_pt(s);
  const double eps = 0.1;
  CHECK(max_diff(dy::defective_solution(omega, f, eps, 0.0, 0.0), omega + cd{eps} * f) == 0.0);

  // i dpsi/dt - H psi with the analytic derivative d/dt = [-i eps omega - i mu1 psi_bracket] e^{-i mu1 t}.
  for (double t : {0.0, 1.3, 7.0}) {
    const StateVector psi = dy::defective_solution(omega, f, eps, 0.0, t);
    const StateVector dpsi = cd{-I * eps} * omega;
    const StateVector res = I * dpsi - epcl::apply_hamiltonian(lat, psi);
    CHECK(max_abs(res.restrict_to(SiteWindow::symmetric(299))) < 1e-10);
  }

  // Nonzero mu1 only adds a global phase.
  const StateVector rotated = dy::defective_solution(omega, f, eps, 0.7, 2.0);
  CHECK(max_diff(rotated, std::exp(-I * 1.4) * dy::defective_solution(omega, f, eps, 0.0, 2.0)) < 1e-15);

  const double e3 = 1e-3;
  const auto tr = dy::evolve(lat, omega + cd{e3} * f, config(10.0, 300, 0.01, 1.0));
  CHECK(max_diff(tr.states.back(), dy::defective_solution(omega, f, e3, 0.0, 10.0), SiteWindow::symmetric(250)) <
        1e-5);
}

TEST_CASE("Jordan-seeded run grows linearly in amplitude once eps t is of order one") {
  // sqrt(P) ~ |1 - i eps t| ||omega||: linear only for eps t >~ 1. With eps = 1e-3 and t <= 20 the curve is
  // still in its quadratic onset (r^2 ~ 0.99). The non-normalizable f adds eps^2 ||f||^2 to P, so the late-time law
  // is checked at eps = 0.5, where eps t dominates both offsets.
  const md::PtLatticeSpec s = pt_spec(300);
  const StateVector omega = md::bic_pt(s), f = md::assoc_pt(s);
  const Lattice lat = md::pt_lattice(s);
  const auto late = dy::evolve(lat, omega + cd{0.5} * f, config(20.0, 300));
  const dy::SecularFit fit = dy::secular_fit(late, 10.0, 20.0);
  MESSAGE("eps = 0.5: r^2 = " << fit.r_squared);
  CHECK(fit.r_squared > 0.999);
  CHECK(fit.slope > 0.0);

  const auto early = dy::evolve(lat, omega + cd{1e-3} * f, config(20.0, 300));
  const dy::SecularFit onset = dy::secular_fit(early, 10.0, 20.0);
  MESSAGE("eps = 1e-3: r^2 = " << onset.r_squared);
  CHECK(onset.slope > 0.0);
}

TEST_CASE("evolution is linear") {
  const Lattice lat = random_lattice(SiteWindow::symmetric(40), 31);
  const StateVector psi = random_state(SiteWindow::symmetric(5), 32);
  const cd a{0.3, -2.1};
  const auto x = dy::evolve(lat, psi, config(2.0, 40, 0.01, 0.5));
  const auto y = dy::evolve(lat, a * psi, config(2.0, 40, 0.01, 0.5));
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(max_diff(y.states[i], a * x.states[i]) < 1e-13 * std::abs(a) * std::max(1.0, max_abs(x.states[i])));
  }
}

TEST_CASE("RK4 step halving shows fourth order") {
  const Lattice lat = md::pt_lattice(pt_spec(60));
  const StateVector start = StateVector::delta(SiteWindow(0, 0), 0);
  auto final_state = [&](double dt) { return dy::evolve(lat, start, config(5.0, 60, dt, 5.0)).states.back(); };
  const StateVector a = final_state(0.04), b = final_state(0.02), c = final_state(0.01);
  const double ratio = max_diff(a, b) / max_diff(b, c);
  MESSAGE("error ratio " << ratio);
  CHECK(ratio > 4.0);
  CHECK(ratio < 64.0);
}

TEST_CASE("secular_fit rejects degenerate windows") {
  const Lattice lat = Lattice::uniform(SiteWindow::symmetric(40), 1.0);
  const auto tr = dy::evolve(lat, StateVector::delta(SiteWindow(0, 0), 0), config(1.0, 40));
  CHECK_ERROR_KIND(dy::secular_fit(tr, 0.5, 0.5), ErrorKind::rejected_input);
  CHECK_ERROR_KIND(dy::secular_fit(tr, 0.0, 0.5), ErrorKind::rejected_input);
  CHECK_ERROR_KIND(dy::secular_fit(tr, 0.51, 0.55), ErrorKind::rejected_input);
}
