#pragma once

// Single and double discrete Darboux transformations of the uniform chain,
// the closed-form exceptional-point lattice family, its scattering
// eigenfunctions and the associated (Jordan-chain) function.
//
// Square roots: the closed forms use s_n = sqrt(rho_n) (principal branch)
// per site and build every root-bearing quantity from s_n, so kappa3, omega
// and the scattering functions sit in one consistent sign gauge. The
// pipeline takes the principal root for each r_n. Two lattices that differ
// only by bond signs are diagonal +-1 similar; cross-checks compare
// gauge-invariant data (see GaugeComparison).

#include "epcl/core.hpp"

namespace epcl::darboux {

/// Seed data for phi1_n = cos(q0 n + sigma) on the uniform chain with coupling kappa.
struct SeedParams {
  double q0 = 0.0;
  double sigma = 0.0;
  cd lambda{0.0, 1.0};
  double kappa = 1.0;
  /// Lower bound on |cos(q0 n + sigma)| over the working window.
  double epsilon = 1e-3;

  /// mu1 = 2 kappa cos q0
  double mu1() const;
  /// rho_n = lambda + n + sin(q0 n) cos(q0 (n-1) + 2 sigma) / sin q0
  cd rho(SiteIndex n) const;
  double seed_amplitude(SiteIndex n) const;
};

/// Throws seed_rejected / singular_lattice if the seed is unusable on `w` (plus the stencil sites the
/// closed forms touch).
void validate_seed(const SeedParams& seed, SiteWindow w);

/// Factors of H = Q R + mu. r and r_bar live on [n_min + 1, n_max] of the eigensolution window;
/// q = -r and q_bar_n = -r_bar_{n+1} (the latter on [n_min + 1, n_max - 1]).
struct FactorPair {
  SiteWindow window;
  std::vector<cd> r;
  std::vector<cd> r_bar;
  std::vector<cd> q;
  std::vector<cd> q_bar;

  FactorPair(SiteWindow w, std::vector<cd> r_in, std::vector<cd> r_bar_in);

  cd r_at(SiteIndex n) const { return r[window.offset(n)]; }
  cd r_bar_at(SiteIndex n) const { return r_bar[window.offset(n)]; }
  cd q_at(SiteIndex n) const { return q[window.offset(n)]; }
  /// Valid for n in [window.n_min, window.n_max - 1].
  cd q_bar_at(SiteIndex n) const { return q_bar[window.offset(n)]; }
};

/// Residual bound used to accept phi as an eigensolution in factorize/partner.
inline constexpr double kEigensolutionTolerance = 1e-8;

/// phi1_n = cos(q0 n + sigma); throws seed_rejected naming the first site where |phi1_n| <= epsilon.
StateVector seed_solution(const SeedParams& seed, SiteWindow w);

FactorPair factorize(const Lattice& h, cd mu, const StateVector& phi);

/// Lattice rebuilt from Q R + mu on the interior of the factor window. Used as the reconstruction check.
Lattice reconstruct(const FactorPair& fp, cd mu, double kappa_asym);

/// H2 = R Q + mu. Output window is [n_min + 2, n_max - 1] of phi's window.
Lattice partner(const Lattice& h, cd mu, const StateVector& phi);
Lattice partner(const Lattice& h, const FactorPair& fp, const StateVector& phi);

/// theta_n = -1 / (r_n phi_n): the mu-eigensolution of the partner, in the factor pair's gauge.
StateVector partner_kernel(const FactorPair& fp, const StateVector& phi);

/// xi_n = r_n psi_n + r_bar_n psi_{n-1}, on [fp.window.n_min, fp.window.n_max] intersected with psi's window
/// shifted by one.
StateVector intertwine(const FactorPair& fp, const StateVector& psi);

/// phi2_n = theta_n (lambda + S_n), S_0 = 0, S_{n+1} - S_n = 1 / (kappa2_{n+1} theta_n theta_{n+1}).
/// Site 0 must lie in theta's window.
StateVector general_phi2(const Lattice& h2, const StateVector& theta, cd lambda);

struct DoubleDarboux {
  Lattice h3;
  StateVector omega;
  /// rho_n on the output window (closed form: Eq. value; pipeline: lambda + 2 S_n).
  std::vector<cd> rho;
};

/// Closed-form kappa3, V3 and omega on `w`.
DoubleDarboux double_darboux_closed_form(const SeedParams& seed, SiteWindow w);

/// Full chain: seed -> factorize -> partner -> theta -> phi2 -> factorize -> partner, with
/// omega_n = -1 / (r2_n phi2_n). Output restricted to `w`.
struct DarbouxChain {
  SeedParams seed;
  Lattice h1;
  Lattice h2;
  Lattice h3;
  StateVector phi1;
  StateVector theta;
  StateVector phi2;
  StateVector omega;
  std::vector<cd> rho;
};

DarbouxChain build_chain(const SeedParams& seed, SiteWindow w);
DoubleDarboux double_darboux_pipeline(const SeedParams& seed, SiteWindow w);

/// Closed-form V3 in the three-term arrangement with c-denominators (singular when some cos vanishes).
/// Kept for cross-checking the library's regular form.
cd v3_three_term(const SeedParams& seed, SiteIndex n);

/// Gauge-fixed comparison of two (lattice, omega) pairs on their common window.
struct GaugeComparison {
  double kappa_deviation = 0.0;   ///< max |kappa_a - d kappa_b| with per-bond sign d
  double v_deviation = 0.0;       ///< max |V_a - V_b|
  double omega_ratio_spread = 0.0;  ///< max |ratio_n - ratio| of gauge-aligned omega_a / omega_b
  double omega_deviation = 0.0;     ///< max |omega_a - ratio d omega_b|
  cd omega_ratio{1.0, 0.0};         ///< global scalar relating the two omegas
};

GaugeComparison compare_gauge_fixed(const Lattice& a, const StateVector& omega_a, const Lattice& b,
                                    const StateVector& omega_b);

enum class Branch { plus, minus };

/// Smallest |mu - mu1| / kappa accepted by scattering_eigenfunction.
inline constexpr double kNearSingularTolerance = 1e-8;

/// xi+-_n(q) built from the Bloch states exp(+-i q n).
StateVector scattering_eigenfunction(const SeedParams& seed, double q, Branch branch, SiteWindow w);

/// G_n(q) = e^{i(qn+sigma)} S+_n(q) - e^{-i(qn+sigma)} S-_n(q), S+-_n = A_n + B_n e^{-+iq} + C_n e^{-+2iq}.
StateVector g_sequence(const SeedParams& seed, double q, SiteWindow w);
/// dG_n/dq, analytic.
StateVector g_sequence_derivative(const SeedParams& seed, double q, SiteWindow w);

/// F_n(q) = i (mu - mu1) / (4 kappa sin q0) [xi+_n e^{i sigma} - xi-_n e^{-i sigma}] = i G_n(q) / (4 sin q0);
/// finite at q = q0 where it equals omega.
StateVector regularized_F(const SeedParams& seed, double q, SiteWindow w);

/// f_n = -i / (8 kappa sin^2 q0) dG_n/dq at q0. Satisfies (H3 - mu1) f = omega.
StateVector associated_function(const SeedParams& seed, SiteWindow w);

}  // namespace epcl::darboux
