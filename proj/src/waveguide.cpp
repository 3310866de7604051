#include "epcl/waveguide.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace epcl::waveguide {

namespace {

constexpr cd kI{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMinPanels = 2048;

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGlNodes{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                         0.9061798459386640};
constexpr std::array<double, 5> kGlWeights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                           0.4786286704993665, 0.2369268850561891};

// Fractional position u in [0, 1) within the period.
double period_fraction(double t, double Lambda) {
  const double u = t / Lambda;
  return u - std::floor(u);
}

// Antiderivative of the zero-mean square wave over one period (in units of Lambda), zero at u = 0.
double square_ramp(double u) {
  if (u < 0.25) return u;
  if (u < 0.75) return 0.5 - u;
  return u - 1.0;
}

// Integral of exp(sign i Phi) over one period with the given number of panels.
cd outer_integral(const ModulationProfile& p, double sign, std::size_t panels) {
  const double h = p.Lambda / static_cast<double>(panels);
  cd sum{};
  for (std::size_t k = 0; k < panels; ++k) {
    const double mid = (static_cast<double>(k) + 0.5) * h;
    cd panel{};
    for (std::size_t j = 0; j < kGlNodes.size(); ++j) {
      panel += kGlWeights[j] * std::exp(sign * kI * p.phase(mid + 0.5 * h * kGlNodes[j]));
    }
    sum += 0.5 * h * panel;
  }
  return sum / p.Lambda;
}

bool imaginary_dominant(cd r) { return std::abs(r.real()) < kImaginaryDominance * std::abs(r); }

}  // namespace

ModulationProfile ModulationProfile::sinusoidal(double alpha, double beta, double Lambda) {
  ModulationProfile p{ModulationKind::sinusoidal, alpha, beta, Lambda, {}};
  p.validate();
  return p;
}

ModulationProfile ModulationProfile::square(double alpha, double beta, double Lambda) {
  ModulationProfile p{ModulationKind::square, alpha, beta, Lambda, {}};
  p.validate();
  return p;
}

ModulationProfile ModulationProfile::tabulated(std::vector<cd> samples, double Lambda) {
  ModulationProfile p{ModulationKind::tabulated, 0.0, 0.0, Lambda, std::move(samples)};
  p.validate();
  return p;
}

ModulationProfile ModulationProfile::reference_sinusoidal(double Lambda) {
  return sinusoidal(2.0 * kTwoPi / Lambda, -2.096 * kTwoPi / Lambda, Lambda);
}

ModulationProfile ModulationProfile::reference_square(double Lambda) {
  return square(2.7255 * 4.0 / Lambda, -1.3707 * 4.0 / Lambda, Lambda);
}

void ModulationProfile::validate() const {
  if (!(Lambda > 0.0) || !std::isfinite(Lambda)) fail(ErrorKind::rejected_input, "Lambda must be positive");
  if (!std::isfinite(alpha) || !std::isfinite(beta)) fail(ErrorKind::rejected_input, "non-finite modulation depth");
  if (kind != ModulationKind::tabulated) return;
  if (samples.size() < 2) fail(ErrorKind::rejected_input, "a tabulated profile needs at least two samples");
  cd mean{};
  double scale = 0.0;
  for (cd g : samples) {
    if (!std::isfinite(g.real()) || !std::isfinite(g.imag())) fail(ErrorKind::rejected_input, "non-finite sample");
    mean += g;
    scale = std::max(scale, std::abs(g));
  }
  mean /= static_cast<double>(samples.size());
  if (std::abs(mean) > 1e-9 * std::max(scale, 1.0)) {
    fail(ErrorKind::rejected_input, "tabulated gamma must have zero mean over the period");
  }
}

cd ModulationProfile::gamma(double t) const {
  const cd depth{alpha, beta};
  const double u = period_fraction(t, Lambda);
  switch (kind) {
    case ModulationKind::sinusoidal:
      return depth * std::cos(kTwoPi * t / Lambda);
    case ModulationKind::square:
      return (u < 0.25 || u >= 0.75) ? depth : -depth;
    case ModulationKind::tabulated: {
      const double m = static_cast<double>(samples.size());
      const double x = u * m;
      const std::size_t k = std::min(static_cast<std::size_t>(x), samples.size() - 1);
      const double frac = x - static_cast<double>(k);
      return (1.0 - frac) * samples[k] + frac * samples[(k + 1) % samples.size()];
    }
  }
  return {};
}

cd ModulationProfile::phase(double t) const {
  const cd depth{alpha, beta};
  const double u = period_fraction(t, Lambda);
  switch (kind) {
    case ModulationKind::sinusoidal:
      return depth * Lambda / kTwoPi * std::sin(kTwoPi * t / Lambda);
    case ModulationKind::square:
      return depth * Lambda * square_ramp(u);
    case ModulationKind::tabulated: {
      // Zero mean: every full period contributes nothing; integrate the interpolant exactly on the rest.
      const std::size_t m = samples.size();
      const double h = Lambda / static_cast<double>(m);
      const double x = u * static_cast<double>(m);
      const std::size_t k = std::min(static_cast<std::size_t>(x), m - 1);
      cd acc{};
      for (std::size_t j = 0; j < k; ++j) acc += 0.5 * h * (samples[j] + samples[(j + 1) % m]);
      const double tau = (x - static_cast<double>(k)) * h;
      const cd g0 = samples[k], g1 = samples[(k + 1) % m];
      return acc + g0 * tau + (g1 - g0) * tau * tau / (2.0 * h);
    }
  }
  return {};
}

std::string_view to_string(ModulationKind kind) {
  switch (kind) {
    case ModulationKind::sinusoidal: return "sinusoidal";
    case ModulationKind::square: return "square";
    case ModulationKind::tabulated: return "tabulated";
  }
  return "unknown";
}

ModulationKind modulation_kind_from_string(std::string_view name) {
  if (name == "sinusoidal") return ModulationKind::sinusoidal;
  if (name == "square") return ModulationKind::square;
  if (name == "tabulated") return ModulationKind::tabulated;
  fail(ErrorKind::rejected_input, "unknown modulation kind '" + std::string(name) + "'");
}

AveragedCoupling averaged_coupling(const ModulationProfile& profile) {
  profile.validate();
  std::size_t panels = kMinPanels;
  if (profile.kind == ModulationKind::tabulated) {
    const std::size_t m = profile.samples.size();
    panels = m * ((kMinPanels + m - 1) / m);
  }
  AveragedCoupling out;
  for (double sign : {1.0, -1.0}) {
    const cd coarse = outer_integral(profile, sign, panels);
    const cd fine = outer_integral(profile, sign, 2 * panels);
    if (std::abs(coarse - fine) > 1e-10 * std::max(1.0, std::abs(fine))) {
      fail(ErrorKind::accuracy, "averaged coupling quadrature did not converge under step halving");
    }
    (sign > 0 ? out.r_plus : out.r_minus) = fine;
  }
  return out;
}

cd complex_bessel_j0(cd z) {
  if (!(std::abs(z) <= 20.0)) fail(ErrorKind::out_of_range, "J0 series is limited to |z| <= 20");
  const cd x = -0.25 * z * z;
  cd term{1.0, 0.0};
  cd sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= x / static_cast<double>(k * k);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) return sum;
  }
  fail(ErrorKind::accuracy, "J0 series did not converge within 200 terms");
}

cd complex_sinc(cd z) {
  if (std::abs(z) < 1e-4) {
    const cd z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

ClosedForm closed_form_R(const ModulationProfile& profile) {
  profile.validate();
  const cd depth{profile.alpha, profile.beta};
  switch (profile.kind) {
    case ModulationKind::sinusoidal: {
      const cd g = profile.Lambda * depth / kTwoPi;
      return {g, complex_bessel_j0(g)};
    }
    case ModulationKind::square: {
      const cd g = profile.Lambda * depth / 4.0;
      return {g, complex_sinc(g)};
    }
    case ModulationKind::tabulated:
      break;
  }
  fail(ErrorKind::unsupported, "no closed form for tabulated profiles; use averaged_coupling");
}

DesignResult solve_delta(const ModulationProfile& profile, double kappa) {
  if (!(kappa > 0.0)) fail(ErrorKind::rejected_input, "kappa must be positive");
  DesignResult d;
  if (profile.kind == ModulationKind::tabulated) {
    const AveragedCoupling ac = averaged_coupling(profile);
    d.R_plus = ac.r_plus;
    d.R_minus = ac.r_minus;
  } else {
    const ClosedForm cf = closed_form_R(profile);
    d.Gamma = cf.Gamma;
    d.R_plus = cf.R;
    // Both closed forms are even in Gamma.
    d.R_minus = profile.kind == ModulationKind::sinusoidal ? complex_bessel_j0(-cf.Gamma) : complex_sinc(-cf.Gamma);
  }
  for (cd r : {d.R_plus, d.R_minus}) {
    if (!imaginary_dominant(r)) {
      fail(ErrorKind::design_infeasible, "R is not imaginary-dominant: |Re R|/|R| = " +
                                             std::to_string(std::abs(r.real()) / std::abs(r)));
    }
  }
  if (std::abs(d.R_plus - d.R_minus) > kImaginaryDominance * std::abs(d.R_plus)) {
    fail(ErrorKind::design_infeasible, "R+ and R- differ; no single real Delta satisfies both bonds");
  }
  d.Delta = kappa / d.R_plus.imag();
  d.effective_coupling = d.Delta * d.R_plus;
  return d;
}

Lattice modulated_base_lattice(const models::PtLatticeSpec& spec, double Delta) {
  if (!(Delta != 0.0) || !std::isfinite(Delta)) fail(ErrorKind::rejected_input, "Delta must be finite and nonzero");
  return models::pt_lattice(spec).with_kappa(0, Delta).with_kappa(1, Delta);
}

dynamics::Trajectory full_model_evolve(const ModulationProfile& profile, double Delta, const Lattice& base,
                                       const StateVector& psi0, const dynamics::IntegratorConfig& cfg) {
  profile.validate();
  cfg.validate(base.kappa_asym());
  if (cfg.dt > profile.Lambda / 200.0 * (1.0 + 1e-12)) {
    fail(ErrorKind::configuration, "dt must not exceed Lambda / 200 for the modulated model");
  }
  const SiteWindow w = SiteWindow::symmetric(cfg.half_width);
  if (!base.window().contains(w)) fail(ErrorKind::rejected_input, "base lattice does not cover [-N, N]");
  if (!w.contains(psi0.window())) fail(ErrorKind::rejected_input, "initial state lies outside [-N, N]");
  const double tol = 1e-12 * std::abs(Delta);
  if (std::abs(base.kappa(0) - Delta) > tol || std::abs(base.kappa(1) - Delta) > tol) {
    fail(ErrorKind::rejected_input, "base lattice must carry kappa_0 = kappa_1 = Delta");
  }
  const TridiagonalOperator op = TridiagonalOperator::from_lattice(base, w);
  const std::size_t centre = w.offset(0);
  const dynamics::Generator h = [&](double t, std::span<const cd> x, std::span<cd> hx) {
    apply_tridiagonal(op, x, hx);
    hx[centre] += profile.gamma(t) * x[centre];
  };
  const dynamics::SampleMap map = [&](double t, StateVector& s) { s[0] *= std::exp(kI * profile.phase(t)); };
  return dynamics::integrate_rk4(h, psi0.embed_in(w), cfg, map);
}

dynamics::Trajectory effective_model_evolve(cd r_plus, cd r_minus, double Delta, const Lattice& base,
                                            const StateVector& psi0, const dynamics::IntegratorConfig& cfg) {
  const SiteWindow w = SiteWindow::symmetric(cfg.half_width);
  if (!base.window().contains(w)) fail(ErrorKind::rejected_input, "base lattice does not cover [-N, N]");
  TridiagonalOperator op = TridiagonalOperator::from_lattice(base, w);
  const std::size_t c = w.offset(0);
  op.lower[c] = Delta * r_plus;
  op.upper[c] = Delta * r_plus;
  op.upper[c - 1] = Delta * r_minus;
  op.lower[c + 1] = Delta * r_minus;
  return dynamics::evolve(op, base.kappa_asym(), psi0, cfg);
}

RwaTrace rwa_validation(double Lambda, const RwaOptions& opt) {
  const ModulationProfile profile = ModulationProfile::reference_sinusoidal(Lambda);
  const DesignResult d = solve_delta(profile, opt.kappa);
  models::PtLatticeSpec spec;
  spec.kappa = opt.kappa;
  spec.window = SiteWindow::symmetric(opt.half_width);
  const Lattice base = modulated_base_lattice(spec, d.Delta);

  dynamics::IntegratorConfig cfg;
  cfg.T = opt.T;
  cfg.half_width = opt.half_width;
  cfg.dt = std::min(Lambda / static_cast<double>(opt.steps_per_period), 0.01 / opt.kappa);
  cfg.sample_interval = opt.sample_interval;
  const StateVector psi0 = StateVector::delta(spec.window, 0);

  const auto full = full_model_evolve(profile, d.Delta, base, psi0, cfg);
  const auto eff = effective_model_evolve(d.R_plus, d.R_minus, d.Delta, base, psi0, cfg);
  RwaTrace trace;
  for (std::size_t i = 0; i < full.size(); ++i) {
    double dev = 0.0;
    const auto a = full.states[i].amplitudes();
    const auto b = eff.states[i].amplitudes();
    for (std::size_t j = 0; j < a.size(); ++j) dev = std::max(dev, std::abs(a[j] - b[j]));
    trace.times.push_back(full.times[i]);
    trace.deviation.push_back(dev);
    trace.max_deviation = std::max(trace.max_deviation, dev);
  }
  return trace;
}

}  // namespace epcl::waveguide
