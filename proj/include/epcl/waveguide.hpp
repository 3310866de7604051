#pragma once

// Optical realization of the imaginary couplings: a longitudinally modulated
// central waveguide gamma(t) on site 0, its averaged couplings
// R+- = (1/Lambda) int_0^Lambda exp(+-i Phi(t)) dt with Phi(t) = int_0^t gamma,
// and the full versus averaged (rotating-wave) dynamics.

#include "epcl/dynamics.hpp"
#include "epcl/ep_models.hpp"

namespace epcl::waveguide {

enum class ModulationKind { sinusoidal, square, tabulated };

struct ModulationProfile {
  ModulationKind kind = ModulationKind::sinusoidal;
  double alpha = 0.0;
  double beta = 0.0;
  double Lambda = 1.0;
  /// One period of gamma at t_k = k Lambda / M (tabulated only), linearly interpolated and periodic.
  std::vector<cd> samples;

  static ModulationProfile sinusoidal(double alpha, double beta, double Lambda);
  static ModulationProfile square(double alpha, double beta, double Lambda);
  static ModulationProfile tabulated(std::vector<cd> samples, double Lambda);
  /// alpha = 2 (2 pi / Lambda), beta = -2.096 (2 pi / Lambda).
  static ModulationProfile reference_sinusoidal(double Lambda);
  /// alpha = 2.7255 (4 / Lambda), beta = -1.3707 (4 / Lambda).
  static ModulationProfile reference_square(double Lambda);

  /// Lambda > 0, finite depths; tabulated needs >= 2 samples with zero mean.
  void validate() const;
  cd gamma(double t) const;
  /// Phi(t) = int_0^t gamma, exact for every kind.
  cd phase(double t) const;
};

std::string_view to_string(ModulationKind kind);
ModulationKind modulation_kind_from_string(std::string_view name);

struct AveragedCoupling {
  cd r_plus;
  cd r_minus;
};

/// Outer integral by composite 5-point Gauss-Legendre on >= 2048 panels (aligned with profile kinks),
/// checked against a run with twice as many panels; disagreement above 1e-10 raises accuracy.
AveragedCoupling averaged_coupling(const ModulationProfile& profile);

struct ClosedForm {
  cd Gamma;
  cd R;
};

/// Sinusoidal: Gamma = Lambda (alpha + i beta) / (2 pi), R = J0(Gamma).
/// Square: Gamma = Lambda (alpha + i beta) / 4, R = sin(Gamma) / Gamma. Tabulated raises unsupported.
ClosedForm closed_form_R(const ModulationProfile& profile);

/// Power series, |z| <= 20; larger arguments raise out_of_range.
cd complex_bessel_j0(cd z);

/// sin(z) / z with the removable point filled in.
cd complex_sinc(cd z);

/// Feasibility bound on |Re R| / |R|.
inline constexpr double kImaginaryDominance = 0.01;

struct DesignResult {
  cd Gamma;        ///< zero for tabulated profiles
  cd R_plus;
  cd R_minus;
  double Delta = 0.0;
  cd effective_coupling;  ///< Delta R_plus, close to i kappa for a feasible design
};

/// Delta = kappa / Im R. Raises design_infeasible when R is not imaginary-dominant or R+ and R- disagree.
DesignResult solve_delta(const ModulationProfile& profile, double kappa);

/// pt_lattice couplings with kappa_0 = kappa_1 = Delta.
Lattice modulated_base_lattice(const models::PtLatticeSpec& spec, double Delta);

/// i da/dt = H_base a + gamma(t) a_0 delta_{n0} on [-N, N]. Stored states carry c_0 = a_0 exp(i Phi(t)).
/// Needs kappa_0 = kappa_1 = Delta in base and dt <= Lambda / 200.
dynamics::Trajectory full_model_evolve(const ModulationProfile& profile, double Delta, const Lattice& base,
                                       const StateVector& psi0, const dynamics::IntegratorConfig& cfg);

/// Averaged model: site 0 couples to +-1 with Delta R+, sites +-1 couple to 0 with Delta R-.
dynamics::Trajectory effective_model_evolve(cd r_plus, cd r_minus, double Delta, const Lattice& base,
                                            const StateVector& psi0, const dynamics::IntegratorConfig& cfg);

struct RwaTrace {
  std::vector<double> times;
  std::vector<double> deviation;  ///< max_n |c_full - c_eff| at each sample
  double max_deviation = 0.0;
};

struct RwaOptions {
  double kappa = 1.0;
  double T = 5.0;
  SiteIndex half_width = 60;
  double sample_interval = 0.05;
  std::size_t steps_per_period = 400;
};

/// Full versus effective model from delta_{n,0} for the reference sinusoidal profile with period Lambda.
/// dt = Lambda / steps_per_period (capped at 0.01 / kappa); Delta from solve_delta.
RwaTrace rwa_validation(double Lambda, const RwaOptions& opt = {});

}  // namespace epcl::waveguide
