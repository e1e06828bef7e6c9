#pragma once

#include <cstdint>

#include "fucik/solvers.hpp"

namespace fucik {

struct MinimaxConfig;  // minimax.hpp

struct EigenPair {
  double lambda;
  SpherePoint phi;
  double residual;   // Euclidean norm of the tangent-projected gradient
  Exponent pe;
  int iterations;
  bool converged;
  std::string message;
};

struct EigenOptions {
  double tol = 1e-9;
  int max_iters = 100000;
};

/// First Dirichlet eigenpair of the p-Laplacian on the interval: minimizes
/// the sphere-restricted Dirichlet energy from a positive bump seed, then
/// Newton-polishes the constrained criticality system. The eigenfunction is
/// strictly positive at every interior node on success.
EigenPair first_eigenpair(const Domain& d, const Exponent& pe,
                          const EigenOptions& opts = {});

/// Second eigenvalue, obtained as the s = 0 mountain-pass level.
double second_eigenvalue(const EigenPair& eig, const MinimaxConfig& cfg);

struct CriticalValueSample {
  double value;
  double residual;
  bool converged;
};

/// Random-restart descent on the sphere-restricted shifted functional;
/// returns the polished critical values found. Restart k is seeded from
/// (seed, k) so the sequence is worker-count invariant.
std::vector<CriticalValueSample> sphere_descent_multistart(const Domain& d,
                                                           const Exponent& pe,
                                                           const Shift& s, int runs,
                                                           std::uint64_t seed, double tol,
                                                           int workers = 1);

}  // namespace fucik
