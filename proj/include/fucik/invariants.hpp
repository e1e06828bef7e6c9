#pragma once

#include "fucik/bvp.hpp"

namespace fucik {

struct CheckRow {
  std::string name;
  bool pass;
  std::string detail;
};

/// Relative mismatch between the analytic gradient and a centered difference
/// along random directions; the workhorse oracle of the check suite.
double fd_gradient_mismatch(const FunctionalHandle& J, const Field& u, Rng& rng,
                            int directions = 4, double step = 1e-6);

struct SignPathReport {
  double level;          // functional value at the base critical point
  double max_deviation;  // max |value along the path - level|
  double bound;          // 1e-4 |level| + scaled measured splitting defect
  double defect_measure; // the measured nodal-splitting defect at the base point
  int sign_change_elements;
  bool pass;
};

/// Checks that the sign-collapsing path through a critical point stays at the
/// critical value, up to the measured first-order splitting defect of the
/// nodal clipping.
SignPathReport sign_path_constancy(const SpherePoint& u0, const Shift& s, int beads = 41);

/// Measured defect of the gradient-energy splitting E(u) vs E(u+) + E(u-),
/// plus the sign-change element count it is attributed to.
std::pair<double, int> splitting_defect(const Field& u, const Exponent& pe);

/// Full invariant sweep at the given discretization; deterministic in seed.
std::vector<CheckRow> run_invariant_checks(const Domain& d, const Exponent& pe,
                                           std::uint64_t seed);

}  // namespace fucik
