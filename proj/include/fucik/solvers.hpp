#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fucik/energy.hpp"

namespace fucik {

/// Derivative of ∫ |u|^p at an arbitrary (not necessarily unit-norm) field.
Field abs_p_gradient(const Field& u, const Exponent& pe);

/// P1 stiffness matrix of the interval, prefactored; used as the metric for
/// descent directions and as a generic smoother.
class StiffnessPreconditioner {
 public:
  explicit StiffnessPreconditioner(const Domain& d);
  std::vector<double> solve(const std::vector<double>& rhs) const;
  Field solve(const Field& rhs) const;

 private:
  double h_;
  std::vector<double> upper_;  // precomputed elimination coefficients
};

struct DescentOptions {
  double tol = 1e-8;           // Euclidean norm of the tangent-projected gradient
  int max_iters = 100000;
  double armijo = 1e-4;
  int max_backtracks = 60;
  double step0 = 1.0;
  bool precondition = true;
  std::vector<std::pair<double, double>>* trace = nullptr;  // (value, grad norm) per iteration
};

struct SphereMinResult {
  SpherePoint w;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

/// Backtracking line-search descent of a functional restricted to the unit
/// L^p sphere. The direction is the negative gradient with the component
/// violating the linearized constraint removed, measured in the stiffness
/// metric when preconditioning is on.
SphereMinResult sphere_minimize(const FunctionalHandle& J, const SpherePoint& w0,
                                const DescentOptions& opts,
                                const StiffnessPreconditioner* precond = nullptr);

struct AmbientMinResult {
  Field u;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

/// Unconstrained backtracking descent in the ambient field space.
AmbientMinResult ambient_minimize(const FunctionalHandle& J, const Field& u0,
                                  const DescentOptions& opts,
                                  const StiffnessPreconditioner* precond = nullptr);

struct NewtonOptions {
  double tol = 1e-10;
  int max_iters = 60;
  double fd_step = 1e-6;
  int max_backtracks = 40;
};

struct NewtonResult {
  std::vector<double> x;
  double resid_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

using ResidualFn = std::function<std::vector<double>(const std::vector<double>&)>;
using JacobianFn = std::function<void(const std::vector<double>&, double* /*col-major n*n*/)>;

/// Damped Newton on a square residual system with a Levenberg fallback when
/// the plain step stalls. The Jacobian comes from `jac` when provided and
/// from centered finite differences otherwise.
NewtonResult newton_polish(const ResidualFn& R, std::vector<double> x0,
                           const NewtonOptions& opts, const JacobianFn& jac = nullptr);

struct CriticalPoint {
  Field u;
  double residual = 0.0;   // Euclidean norm of the functional gradient
  double value = 0.0;
  bool converged = false;
  std::string message;
};

/// Newton refinement of a critical point of J on the unit sphere (solves the
/// stationarity system with the norm constraint and a multiplier unknown).
/// Returns the refined point normalized, with the tangent-gradient residual.
CriticalPoint constrained_critical_polish(const FunctionalHandle& J, const SpherePoint& w0,
                                          const NewtonOptions& opts);

/// Newton refinement of an unconstrained critical point (gradient root).
CriticalPoint ambient_critical_polish(const FunctionalHandle& J, const Field& u0,
                                      const NewtonOptions& opts);

/// Deterministic RNG with a portable uniform; distribution code is hand-rolled
/// so the restart sequences depend on the seed only.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 eng_;
};

Field random_field(const Domain& d, Rng& rng, double amplitude = 1.0);

/// Runs fn(0..n-1); with workers > 1 the indices are distributed over threads.
/// Outputs must go to per-index slots so the result is worker-count invariant.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

}  // namespace fucik
