#include "fucik/eigensolver.hpp"

#include <algorithm>
#include <cmath>

#include "fucik/minimax.hpp"

namespace fucik {

EigenPair first_eigenpair(const Domain& d, const Exponent& pe, const EigenOptions& opts) {
  const FunctionalHandle J = shifted_handle(Shift(0.0), pe);
  const StiffnessPreconditioner K(d);

  // positive bump seed; the global minimizer is the only positive critical point
  const double L = d.right - d.left;
  const SpherePoint seed = normalize(
      interpolate(d, [&](double x) { return (x - d.left) * (d.right - x) / (L * L); }), pe);

  DescentOptions dopts;
  dopts.tol = std::max(opts.tol, 1e-5);  // Newton polish finishes the job
  dopts.max_iters = opts.max_iters;
  SphereMinResult min = sphere_minimize(J, seed, dopts, &K);

  NewtonOptions nopts;
  nopts.tol = std::min(opts.tol * 1e-2, 1e-11);
  nopts.fd_step = pe.p < 2.0 ? 1e-7 : 1e-6;
  const CriticalPoint polished = constrained_critical_polish(J, min.w, nopts);

  // keep whichever candidate certifies better
  SpherePoint phi = min.w;
  double residual = min.grad_norm;
  if (polished.residual < residual) {
    phi = normalize(polished.u, pe);
    residual = norm2(tangent_project(phi, J.gradient(phi.field)));
  }
  const double lambda = J.value(phi.field);

  bool positive = true;
  for (double v : phi.field.values) positive = positive && v > 0.0;

  EigenPair out{lambda,
                phi,
                residual,
                pe,
                min.iterations,
                residual <= opts.tol && positive,
                ""};
  if (!positive) {
    out.converged = false;
    out.message = "sign-changing limit: descent escaped the positive cone; restart with a different seed";
  } else if (residual > opts.tol) {
    out.message = "non-convergence within iteration budget; best iterate returned (" +
                  min.message + ")";
  }
  return out;
}

double second_eigenvalue(const EigenPair& eig, const MinimaxConfig& cfg) {
  const MinimaxResult res = mountain_pass(Shift(0.0), eig, cfg);
  if (!res.converged)
    throw Error("second_eigenvalue: mountain pass failed: " + res.message);
  return res.c;
}

std::vector<CriticalValueSample> sphere_descent_multistart(const Domain& d,
                                                           const Exponent& pe,
                                                           const Shift& s, int runs,
                                                           std::uint64_t seed, double tol,
                                                           int workers) {
  const FunctionalHandle J = shifted_handle(s, pe);
  const StiffnessPreconditioner K(d);
  std::vector<CriticalValueSample> out(runs, CriticalValueSample{0.0, 0.0, false});

  parallel_for(runs, workers, [&](int k) {
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(k) + 1);
    SpherePoint w0 = [&] {
      for (;;) {
        Field f = random_field(d, rng);
        if (lp_norm(f, pe) > 1e-8) return normalize(f, pe);
      }
    }();
    DescentOptions dopts;
    dopts.tol = std::max(tol, 1e-7);
    dopts.max_iters = 20000;
    const SphereMinResult min = sphere_minimize(J, w0, dopts, &K);
    NewtonOptions nopts;
    nopts.tol = std::min(tol * 1e-2, 1e-11);
    nopts.fd_step = pe.p < 2.0 ? 1e-7 : 1e-6;
    const CriticalPoint polished = constrained_critical_polish(J, min.w, nopts);
    if (polished.converged && polished.residual <= tol) {
      out[k] = {polished.value, polished.residual, true};
    } else {
      out[k] = {min.value, min.grad_norm, min.converged && min.grad_norm <= tol};
    }
  });
  return out;
}

}  // namespace fucik
