#pragma once

#include "epcl/core.hpp"

namespace epcl::models {

/// Sign of the two imaginary couplings at bonds 0 and 1.
enum class SignConvention {
  k0_plus_k1_minus,  ///< kappa_0 = i kappa, kappa_1 = -i kappa (PT symmetric)
  k0_plus_k1_plus,   ///< kappa_0 = kappa_1 = i kappa
};

struct PtLatticeSpec {
  double kappa = 1.0;
  SiteWindow window{-300, 300};
  SignConvention convention = SignConvention::k0_plus_k1_minus;
};

/// Real couplings of the band-centre EP lattice for n outside {0, 1}:
/// sqrt((n+1)/(n-1)) for even n, sqrt((n-2)/n) for odd n (in units of kappa).
double defect_coupling_ratio(SiteIndex n);

/// PT-symmetric lattice with the EP at E = 0. V = 0.
Lattice pt_lattice(const PtLatticeSpec& spec);

/// Bound state of pt_lattice at E = 0. omega_0 is fixed by the n = +-1 rows of H omega = 0.
StateVector bic_pt(const PtLatticeSpec& spec);

/// f_n = -sin(pi n / 2) / (2 kappa); (H - 0) f = omega.
StateVector assoc_pt(const PtLatticeSpec& spec);

/// Hermitian counterpart: kappa_0 = kappa, kappa_1 = -kappa, other bonds as pt_lattice.
Lattice hermitian_counterpart(const PtLatticeSpec& spec);

/// von Neumann-Wigner bound state of the Hermitian counterpart at E = 0; omega_0 from the eigen-equation.
StateVector bic_hermitian(const PtLatticeSpec& spec);

/// Negates the hopping on bond (site-1, site): a pi phase slip of every amplitude at n >= site.
Lattice gauge_phase_slip(const Lattice& lat, SiteIndex site);

/// Eigenvalues of truncate(lat, N) with |Re E| > 2 kappa_asym, sorted ascending by real part.
std::vector<cd> gap_states(const Lattice& lat, SiteIndex half_width);

}  // namespace epcl::models
