#include "epcl/dynamics.hpp"

#include <cmath>
#include <string>

namespace epcl::dynamics {

namespace {

constexpr cd kI{0.0, 1.0};

bool all_finite(std::span<const cd> x) {
  for (cd z : x) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

struct LinearFit {
  double slope = 0.0, intercept = 0.0, r_squared = 0.0;
};

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += e * e;
  }
  if (syy > 0.0) {
    f.r_squared = 1.0 - ss_res / syy;
  } else {
    f.r_squared = ss_res == 0.0 ? 1.0 : 0.0;
  }
  return f;
}

}  // namespace

void IntegratorConfig::validate(double kappa) const {
  if (!(dt > 0.0) || !(T > 0.0) || !(sample_interval > 0.0)) {
    fail(ErrorKind::configuration, "dt, T and the sample interval must be positive");
  }
  if (dt > 0.05 / kappa * (1.0 + 1e-12)) {
    fail(ErrorKind::configuration, "dt = " + std::to_string(dt) + " exceeds 0.05 / kappa");
  }
  if (!(static_cast<double>(half_width) > 2.0 * kappa * T + 20.0)) {
    fail(ErrorKind::configuration, "light-cone guard violated: need N > 2 kappa T + 20 (N = " +
                                       std::to_string(half_width) + ")");
  }
}

std::size_t IntegratorConfig::steps() const {
  return static_cast<std::size_t>(std::max(1.0, std::round(T / dt)));
}

std::size_t IntegratorConfig::steps_per_sample() const {
  return static_cast<std::size_t>(std::max(1.0, std::round(sample_interval / dt)));
}

Trajectory integrate_rk4(const Generator& h, const StateVector& psi0, const IntegratorConfig& cfg,
                         const SampleMap& map) {
  if (!(cfg.dt > 0.0) || !(cfg.T > 0.0)) fail(ErrorKind::configuration, "dt and T must be positive");
  const std::size_t steps = cfg.steps();
  const std::size_t every = cfg.steps_per_sample();
  const double dt = cfg.T / static_cast<double>(steps);
  const std::size_t m = psi0.size();

  std::vector<cd> y(psi0.amplitudes().begin(), psi0.amplitudes().end());
  std::vector<cd> k1(m), k2(m), k3(m), k4(m), tmp(m);

  Trajectory traj;
  auto record = [&](double t) {
    StateVector s(psi0.window(), y);
    if (map) map(t, s);
    traj.times.push_back(t);
    traj.power.push_back(power(s));
    traj.states.push_back(std::move(s));
  };
  // k = -i H(t) x
  auto rhs = [&](double t, const std::vector<cd>& x, std::vector<cd>& k) {
    h(t, x, k);
    for (auto& z : k) z *= -kI;
  };

  record(0.0);
  for (std::size_t step = 0; step < steps; ++step) {
    const double t = static_cast<double>(step) * dt;
    rhs(t, y, k1);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    rhs(t + 0.5 * dt, tmp, k2);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    rhs(t + 0.5 * dt, tmp, k3);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + dt * k3[i];
    rhs(t + dt, tmp, k4);
    for (std::size_t i = 0; i < m; ++i) y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!all_finite(y)) {
      fail(ErrorKind::instability, "non-finite amplitude after step " + std::to_string(step + 1));
    }
    if ((step + 1) % every == 0 || step + 1 == steps) record(static_cast<double>(step + 1) * dt);
  }
  return traj;
}

Trajectory evolve(const TridiagonalOperator& op, double kappa, const StateVector& psi0, const IntegratorConfig& cfg) {
  cfg.validate(kappa);
  const SiteWindow w = SiteWindow::symmetric(cfg.half_width);
  if (op.window != w) fail(ErrorKind::rejected_input, "operator window must be [-N, N]");
  if (!w.contains(psi0.window())) fail(ErrorKind::rejected_input, "initial state lies outside [-N, N]");
  const Generator h = [&op](double, std::span<const cd> x, std::span<cd> hx) { apply_tridiagonal(op, x, hx); };
  return integrate_rk4(h, psi0.embed_in(w), cfg);
}

Trajectory evolve(const Lattice& lat, const StateVector& psi0, const IntegratorConfig& cfg) {
  const SiteWindow w = SiteWindow::symmetric(cfg.half_width);
  cfg.validate(lat.kappa_asym());
  if (!lat.window().contains(w)) fail(ErrorKind::rejected_input, "lattice window does not cover [-N, N]");
  return evolve(TridiagonalOperator::from_lattice(lat, w), lat.kappa_asym(), psi0, cfg);
}

StateVector defective_solution(const StateVector& omega, const StateVector& f, double eps, cd mu1, double t) {
  const SiteWindow w(std::max(omega.window().n_min, f.window().n_min),
                     std::min(omega.window().n_max, f.window().n_max));
  const cd phase = std::exp(-kI * mu1 * t);
  const cd growth = 1.0 - kI * eps * t;
  StateVector psi(w);
  for (SiteIndex n = w.n_min; n <= w.n_max; ++n) psi[n] = (growth * omega[n] + eps * f[n]) * phase;
  return psi;
}

SecularFit secular_fit(const Trajectory& traj, double t1, double t2) {
  if (!(t2 > t1) || !(t1 > 0.0)) fail(ErrorKind::rejected_input, "fit window needs 0 < t1 < t2");
  if (traj.size() == 0 || !(traj.power.front() > 0.0)) fail(ErrorKind::rejected_input, "empty trajectory");
  const double p0 = traj.power.front();
  std::vector<double> t, root, log_t, log_p;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double ti = traj.times[i];
    if (ti < t1 - 1e-12 || ti > t2 + 1e-12) continue;
    t.push_back(ti);
    root.push_back(std::sqrt(traj.power[i] / p0));
    log_t.push_back(std::log(ti));
    log_p.push_back(std::log(traj.power[i]));
  }
  if (t.size() < 3) fail(ErrorKind::rejected_input, "fit window holds fewer than three samples");
  const LinearFit lin = least_squares(t, root);
  const LinearFit loglog = least_squares(log_t, log_p);
  return {lin.slope, lin.intercept, lin.r_squared, loglog.slope};
}

}  // namespace epcl::dynamics
