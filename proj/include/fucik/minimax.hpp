#pragma once

#include <optional>

#include "fucik/eigensolver.hpp"

namespace fucik {

struct MinimaxConfig {
  int beads = 41;
  double tol = 1e-7;       // relative stagnation threshold for the path max
  double grad_tol = 1e-6;  // tangent-gradient norm required at the max bead
  int patience = 8;        // sweeps of stagnation before the saddle polish
  int max_sweeps = 3000;
  double step_damping = 1.0;  // initial per-bead line-search step scale
  int workers = 1;

  void validate() const {
    if (beads < 5) throw Error("MinimaxConfig: need at least 5 beads");
    if (!(tol > 0.0 && grad_tol > 0.0 && step_damping > 0.0) || patience < 1 ||
        max_sweeps < 1)
      throw Error("MinimaxConfig: all tunables must be positive");
  }
};

struct SweepRecord {
  int sweep;
  double max_value;        // path max after the sweep (post reparametrization)
  double descent_max;      // path max right after the descent phase
  double grad_norm_at_max;
  double reparam_defect;   // max(0, post-reparam max - post-descent max)
};

struct MinimaxResult {
  double s;
  double c;                // attained minimax level
  SpherePoint argmax;
  Path path;
  double grad_norm_at_max;
  int iterations;          // sweeps executed
  int argmax_index;
  int plateau_beads;       // beads sharing the max within 1e-12 relative
  bool converged;
  bool c_above_lambda1;
  std::string message;
  std::vector<SweepRecord> log;
};

/// Elastic-string minimax of the sphere-restricted shifted functional between
/// the first eigenfunction and its antipode: per-bead damped descent with
/// backtracking (monotone by construction), arclength respacing plus peak
/// centering each sweep (any induced rise of the discrete max is recorded as
/// the reparametrization defect), and a Newton saddle polish once the max
/// stagnates. Endpoints never move.
MinimaxResult mountain_pass(const Shift& s, const EigenPair& eig, const MinimaxConfig& cfg,
                            const Path* warm_start = nullptr);

/// Euclidean norm of the asymmetric-functional gradient at the argmax bead
/// with (a, b) = (s + c, c): the certificate that the bead is a discrete
/// asymmetric eigenfunction.
double fucik_residual(const MinimaxResult& res, const Shift& s);

enum class Connectivity { connected, disconnected, inconclusive };

struct ConnectivityResult {
  Connectivity status;
  std::optional<Path> witness;  // sub-level path when connected
  double c;                     // computed minimax level
  double margin;
  std::string message;
};

/// Decides whether the open sublevel set {J < b} on the sphere joins the two
/// endpoint minima: connected when b exceeds the minimax level by the margin,
/// disconnected when b falls short of it by the margin, inconclusive within
/// the band. Requires b above both endpoint values.
ConnectivityResult connectivity_check(const Shift& s, double b, const EigenPair& eig,
                                      const MinimaxConfig& cfg);

}  // namespace fucik
