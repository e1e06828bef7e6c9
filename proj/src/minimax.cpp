#include "fucik/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fucik {

namespace {

constexpr double kChordGuard = 0.1;

// golden-section maximization on [lo, hi]
double golden_max(const std::function<double(double)>& fn, double lo, double hi,
                  double* arg, int iters = 48) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = fn(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = fn(x1);
    }
  }
  if (arg) *arg = 0.5 * (a + b);
  return std::max(f1, f2);
}

// uniform arclength respacing by chordal interpolation; end beads untouched
Path respace(const Path& path, int m) {
  const int n = path.size();
  std::vector<double> cum(n, 0.0);
  for (int k = 1; k < n; ++k)
    cum[k] = cum[k - 1] + norm2(sub(path.beads[k].field, path.beads[k - 1].field));
  const double total = cum.back();
  Path out;
  out.beads.reserve(m);
  out.beads.push_back(path.beads.front());
  int seg = 0;
  for (int j = 1; j < m - 1; ++j) {
    const double target = total * j / (m - 1);
    while (seg < n - 2 && cum[seg + 1] < target) ++seg;
    const double span = cum[seg + 1] - cum[seg];
    const double t = span > 0.0 ? (target - cum[seg]) / span : 0.0;
    try {
      out.beads.push_back(
          interpolate_between(path.beads[seg], path.beads[seg + 1], t, kChordGuard));
    } catch (const Error&) {
      // interpolant fell inside the guard ball; reuse the nearer source bead
      out.beads.push_back(t < 0.5 ? path.beads[seg] : path.beads[seg + 1]);
    }
  }
  out.beads.push_back(path.beads.back());
  return out;
}

}  // namespace

MinimaxResult mountain_pass(const Shift& s, const EigenPair& eig, const MinimaxConfig& cfg,
                            const Path* warm_start) {
  cfg.validate();
  if (!eig.converged)
    throw Error("mountain_pass: the eigenpair must be converged (endpoints are its minima)");
  const Exponent pe = eig.pe;
  const Domain dom = eig.phi.field.domain;
  const FunctionalHandle J = shifted_handle(s, pe);
  const StiffnessPreconditioner K(dom);
  const int m = cfg.beads;

  const SpherePoint anchor_lo = eig.phi;
  const SpherePoint anchor_hi = SpherePoint(scaled(eig.phi.field, -1.0), pe);

  Path path;
  if (warm_start && warm_start->size() >= 2) {
    path = respace(*warm_start, m);
    path.beads.front() = anchor_lo;
    path.beads.back() = anchor_hi;
  } else {
    const double L = dom.right - dom.left;
    const double pi = std::acos(-1.0);
    const Field via = normalize(
        interpolate(dom, [&](double x) { return std::sin(2.0 * pi * (x - dom.left) / L); }),
        pe).field;
    path = make_arc_path(anchor_lo, via, m);
  }

  std::vector<double> vals(m);
  for (int k = 0; k < m; ++k) vals[k] = J.value(path.beads[k].field);
  std::vector<double> steps(m, cfg.step_damping);

  auto first_argmax = [&](const std::vector<double>& v) {
    int k = 0;
    for (int i = 1; i < m; ++i)
      if (v[i] > v[k]) k = i;
    return k;
  };

  std::vector<SweepRecord> log;
  int stall = 0;
  int loose_stall = 0;
  int next_polish_sweep = 0;
  double prev_descent_max = vals[first_argmax(vals)];
  bool converged = false;
  std::string message;
  double c = prev_descent_max;
  double grad_at_max = std::numeric_limits<double>::infinity();
  int sweep = 0;

  auto tangent_grad_norm = [&](const SpherePoint& w) {
    return norm2(tangent_project(w, J.gradient(w.field)));
  };

  int polished_index = -1;
  auto polish_at = [&](int kmax) -> bool {
    NewtonOptions nopts;
    nopts.tol = std::min(cfg.grad_tol * 1e-2, 1e-10);
    nopts.fd_step = pe.p < 2.0 ? 1e-7 : 1e-6;
    const CriticalPoint pol = constrained_critical_polish(J, path.beads[kmax], nopts);
    if (!(pol.converged && pol.residual <= cfg.grad_tol)) return false;
    const double gap = std::max(vals[kmax] - eig.lambda, 1e-12);
    if (std::fabs(pol.value - vals[kmax]) > 0.5 * gap + 1e-8) return false;
    path.beads[kmax] = SpherePoint(pol.u, pe);
    vals[kmax] = pol.value;
    c = pol.value;
    grad_at_max = pol.residual;
    polished_index = kmax;
    return true;
  };

  for (sweep = 1; sweep <= cfg.max_sweeps && !converged; ++sweep) {
    // descent phase: per-bead backtracking steps, end beads pinned; each
    // bead's displacement is capped by the local spacing so the chain stays
    // coherent through reparametrization
    std::vector<double> spacing(m, 0.0);
    {
      std::vector<double> chord(m - 1);
      for (int k = 0; k + 1 < m; ++k)
        chord[k] = norm2(sub(path.beads[k + 1].field, path.beads[k].field));
      for (int i = 1; i < m - 1; ++i) spacing[i] = 0.5 * (chord[i - 1] + chord[i]);
    }
    std::vector<SpherePoint> next = path.beads;
    std::vector<double> nvals = vals;
    parallel_for(m - 2, cfg.workers, [&](int idx) {
      const int i = idx + 1;
      const SpherePoint& w = path.beads[i];
      const Field g = J.gradient(w.field);
      const Field n = constraint_normal(w);
      Field d(dom);
      double slope;
      {
        const Field Bg = K.solve(g);
        const Field Bn = K.solve(n);
        const double mu = dot(n, Bg) / dot(n, Bn);
        d = Bg;
        add_scaled(d, -mu, Bn);
        for (double& x : d.values) x = -x;
        slope = dot(g, d);
      }
      if (!(slope < 0.0)) {
        Field gt = g;
        const double nn = dot(n, n);
        if (nn > 0.0) add_scaled(gt, -dot(n, g) / nn, n);
        d = scaled(gt, -1.0);
        slope = -dot(gt, gt);
      }
      const double dn = norm2(d);
      if (!(dn > 0.0)) return;
      const double t_cap = 0.5 * cfg.step_damping * spacing[i] / dn;
      double t = std::min(steps[i], t_cap);
      for (int bt = 0; bt < 30; ++bt, t *= 0.5) {
        try {
          const SpherePoint trial = retract(w, scaled(d, t));
          const double tv = J.value(trial.field);
          if (tv <= vals[i] + 1e-4 * t * slope) {
            next[i] = trial;
            nvals[i] = tv;
            steps[i] = std::min(t * 2.0, 1e3);
            return;
          }
        } catch (const Error&) {
          // retraction degenerate at this step length; halve
        }
      }
      steps[i] = std::max(steps[i] * 0.5, 1e-12);  // bead kept in place
    });
    path.beads = std::move(next);
    vals = std::move(nvals);
    const double descent_max = vals[first_argmax(vals)];

    // reparametrization: respace, then center a bead on the local peak
    {
      Path spaced = respace(path, m);
      for (int k = 1; k < m - 1; ++k) {
        path.beads[k] = spaced.beads[k];
        vals[k] = J.value(path.beads[k].field);
      }
      const int kmax = first_argmax(vals);
      if (kmax > 0 && kmax < m - 1) {
        auto on_chord = [&](double tau) -> SpherePoint {
          if (tau <= 1.0)
            return interpolate_between(path.beads[kmax - 1], path.beads[kmax], tau,
                                       kChordGuard);
          return interpolate_between(path.beads[kmax], path.beads[kmax + 1], tau - 1.0,
                                     kChordGuard);
        };
        try {
          double best_tau = 1.0;
          const double best = golden_max(
              [&](double tau) { return J.value(on_chord(tau).field); }, 0.05, 1.95,
              &best_tau);
          if (best > vals[kmax]) {
            path.beads[kmax] = on_chord(best_tau);
            vals[kmax] = J.value(path.beads[kmax].field);
          }
        } catch (const Error&) {
          // peak chord dipped inside the guard ball; skip centering this sweep
        }
      }
    }

    const int kmax = first_argmax(vals);
    const double reparam_max = vals[kmax];
    const double defect = std::max(0.0, reparam_max - descent_max);
    grad_at_max = tangent_grad_norm(path.beads[kmax]);
    c = reparam_max;
    log.push_back({sweep, reparam_max, descent_max, grad_at_max, defect});

    const double rel_change =
        std::fabs(descent_max - prev_descent_max) / std::max(1.0, std::fabs(descent_max));
    stall = rel_change <= cfg.tol ? stall + 1 : 0;
    loose_stall = rel_change <= std::max(cfg.tol, 1e-4) ? loose_stall + 1 : 0;
    prev_descent_max = descent_max;

    if (grad_at_max <= cfg.grad_tol && stall >= cfg.patience) {
      converged = true;
      break;
    }
    const bool strict_trigger = stall >= cfg.patience;
    const bool loose_trigger = loose_stall >= cfg.patience && sweep >= next_polish_sweep;
    if (strict_trigger || loose_trigger) {
      if (polish_at(kmax)) {
        converged = true;
        break;
      }
      if (strict_trigger) {
        message = "saddle not resolved; increase beads";
        break;
      }
      next_polish_sweep = sweep + 2 * cfg.patience;  // keep sweeping, retry later
    }
  }

  if (!converged && message.empty()) {
    const int kmax = first_argmax(vals);
    if (polish_at(kmax))
      converged = true;
    else
      message = "sweep budget exhausted without resolving the saddle";
  }

  const int kmax = (converged && polished_index >= 0) ? polished_index
                                                      : first_argmax(vals);
  int plateau = 0;
  for (double v : vals)
    if (std::fabs(v - vals[kmax]) <= 1e-12 * std::max(1.0, std::fabs(vals[kmax]))) ++plateau;

  if (c < eig.lambda + cfg.tol) {
    converged = false;
    message = "degenerate path: max did not rise above the first eigenvalue "
              "(endpoints mis-set?)";
  }

  return MinimaxResult{s.s,
                       c,
                       path.beads[kmax],
                       path,
                       grad_at_max,
                       sweep,
                       kmax,
                       plateau,
                       converged,
                       c > eig.lambda,
                       message,
                       std::move(log)};
}

double fucik_residual(const MinimaxResult& res, const Shift& s) {
  const FucikParams ab{s.s + res.c, res.c};
  return norm2(fucik_energy_grad(res.argmax.field, ab, res.argmax.pe));
}

ConnectivityResult connectivity_check(const Shift& s, double b, const EigenPair& eig,
                                      const MinimaxConfig& cfg) {
  const double l1 = eig.lambda;
  if (!(b > std::max(l1 - s.s, l1)))
    throw Error(
        "connectivity_check: level b = " + std::to_string(b) +
        " leaves an endpoint outside the sublevel set (endpoint values are lambda1 - s = " +
        std::to_string(l1 - s.s) + " and lambda1 = " + std::to_string(l1) + ")");

  MinimaxResult res = mountain_pass(s, eig, cfg);
  if (!res.converged)
    return {Connectivity::inconclusive, std::nullopt, res.c, 0.0,
            "minimax did not converge: " + res.message};
  const double margin = 0.01 * (res.c - l1);

  if (b >= res.c + margin) {
    double wmax = -std::numeric_limits<double>::infinity();
    for (const auto& bead : res.path.beads)
      wmax = std::max(wmax, sphere_energy(bead, s));
    if (wmax < b)
      return {Connectivity::connected, res.path, res.c, margin,
              "witness path max " + std::to_string(wmax) + " < b"};
    return {Connectivity::inconclusive, std::nullopt, res.c, margin,
            "relaxed path max not strictly below b"};
  }
  if (b <= res.c - margin)
    return {Connectivity::disconnected, std::nullopt, res.c, margin,
            "b lies below the minimax level"};
  return {Connectivity::inconclusive, std::nullopt, res.c, margin,
          "b falls inside the decision band around the minimax level"};
}

}  // namespace fucik
