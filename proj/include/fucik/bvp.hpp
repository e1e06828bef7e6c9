#pragma once

#include "fucik/spectrum.hpp"

namespace fucik {

enum class SolutionSign { positive, negative, sign_changing };
const char* to_string(SolutionSign s);

/// A residual-certified critical point of the reaction functional.
struct Solution {
  Field u;
  double residual;  // Euclidean norm of the reaction-functional gradient
  SolutionSign sign;
  double energy;
  std::vector<std::string> scenarios;  // scenario tags this solution certifies
  std::string origin;                  // which solver produced it
};

struct SolveReport {
  std::vector<std::string> scenarios;  // applicable scenario tags for the pair
  std::vector<Solution> solutions;
  std::vector<std::vector<double>> distances;  // pairwise nodal max-norm
  std::optional<PerturbationSpec> perturbation;
  std::vector<std::string> notes;
  bool all_required_found = false;
};

struct BvpConfig {
  double tol = 1e-9;              // residual target for reported solutions
  int restarts = 20;              // random restarts for certification searches
  double separation = 1e-2;       // distinctness threshold, nodal max-norm
  double nontrivial_norm = 1e-5;  // below this max-norm a point counts as trivial
  double t_small = 0.1;           // model nonlinearity: exact zero-slope range
  double t_large = 1.0;           // model nonlinearity: exact infinity-slope range
  double band = -1.0;             // spectrum rejection band; < 0 → 2% of lambda1
  std::uint64_t seed = 12345;
  int workers = 1;
  MinimaxConfig path_cfg;                        // bead settings for saddle searches
  std::optional<PerturbationSpec> perturbation;  // override the automatic radii
};

struct SignedSolveResult {
  std::optional<Solution> solution;
  bool crossing_holds;       // zero/infinity slopes straddle lambda1
  bool only_trivial_found;   // certification outcome of the restart sweep
  int restarts_used;
  std::string message;
};

/// Finds a one-signed solution through the sign-truncated functional:
/// coercive minimization when the infinity slope sits below lambda1,
/// mountain pass over the origin barrier when it sits above. Candidates are
/// clipped to the sign cone and re-polished under the full functional, so the
/// reported residual certifies the untruncated problem.
SignedSolveResult solve_signed(const Nonlinearity& f, SignRestriction sign,
                               const EigenPair& eig, const BvpConfig& cfg);

/// The three-solution scenario: zero-slope pair above the first curve,
/// infinity-slope pair below both first-eigenvalue lines. Finds the two
/// signed global minimizers, builds the norm-window perturbed functional,
/// and runs an ambient mountain pass between the minimizers for the third
/// solution.
SolveReport solve_third(const Nonlinearity& f, const SpectrumData& spec,
                        const EigenPair& eig, const BvpConfig& cfg);

/// Classifies both slope pairs, selects every applicable existence scenario,
/// runs the corresponding solvers, and consolidates the certified solutions.
SolveReport multiplicity_experiment(const FucikParams& ab0, const FucikParams& ab,
                                    const SpectrumData& spec, const EigenPair& eig,
                                    const BvpConfig& cfg);

/// Weak-form residual of the reaction problem assembled directly (flux term
/// element by element, load term by quadrature); an independent check of the
/// functional gradient, which equals p times this vector.
Field assemble_weak_residual(const Field& u, const Nonlinearity& f, const Exponent& pe);

}  // namespace fucik
