#pragma once

#include <functional>
#include <span>

#include "epcl/core.hpp"

namespace epcl::dynamics {

enum class Method { rk4 };

struct IntegratorConfig {
  double dt = 0.01;                 ///< step, units of 1/kappa
  double T = 20.0;                  ///< final time
  SiteIndex half_width = 300;       ///< simulation window [-N, N], Dirichlet outside
  double sample_interval = 0.1;     ///< spacing of stored states (rounded to a whole number of steps)
  Method method = Method::rk4;

  /// dt <= 0.05 / kappa and N > 2 kappa T + 20 (light cone plus margin); throws configuration.
  void validate(double kappa) const;
  /// Number of steps and steps between samples after rounding.
  std::size_t steps() const;
  std::size_t steps_per_sample() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<double> power;

  std::size_t size() const noexcept { return times.size(); }
};

/// x -> H(t) x on a fixed window.
using Generator = std::function<void(double t, std::span<const cd> x, std::span<cd> hx)>;
/// Applied to a copy of the state before it is stored (e.g. a gauge map). May be empty.
using SampleMap = std::function<void(double t, StateVector& state)>;

/// Classical RK4 for i dpsi/dt = H(t) psi on psi0's window. No configuration checks beyond dt > 0.
Trajectory integrate_rk4(const Generator& h, const StateVector& psi0, const IntegratorConfig& cfg,
                         const SampleMap& map = {});

/// i dpsi/dt = H psi for a static lattice truncated to [-N, N].
Trajectory evolve(const Lattice& lat, const StateVector& psi0, const IntegratorConfig& cfg);

/// Same, for an arbitrary static tridiagonal operator whose window is [-N, N].
Trajectory evolve(const TridiagonalOperator& op, double kappa, const StateVector& psi0, const IntegratorConfig& cfg);

/// [(1 - i eps t) omega + eps f] exp(-i mu1 t) on the common window of omega and f.
StateVector defective_solution(const StateVector& omega, const StateVector& f, double eps, cd mu1, double t);

struct SecularFit {
  double slope = 0.0;       ///< of sqrt(P/P0) versus t
  double intercept = 0.0;
  double r_squared = 0.0;
  double exponent = 0.0;    ///< of P versus t on log-log axes
};

SecularFit secular_fit(const Trajectory& traj, double t1, double t2);

}  // namespace epcl::dynamics
