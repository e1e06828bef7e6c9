#include "fucik/solvers.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <thread>

namespace fucik {

Field abs_p_gradient(const Field& u, const Exponent& pe) {
  Field g(u.domain);
  const double p = pe.p;
  add_composed_gradient(
      u, [p](double t) { return p * sign_pow(t, p - 1.0); }, 1.0,
      std::span<double>(g.values));
  return g;
}

StiffnessPreconditioner::StiffnessPreconditioner(const Domain& d) : h_(d.h()) {
  const int n = d.n_interior;
  upper_.resize(n);
  // Thomas elimination for tridiag(-1, 2, -1)/h: diagonal after elimination
  // is (2 - c_{i-1})/h with c_i = 1/(2 - c_{i-1}).
  double c = 0.0;
  for (int i = 0; i < n; ++i) {
    c = 1.0 / (2.0 - c);
    upper_[i] = c;
  }
}

std::vector<double> StiffnessPreconditioner::solve(const std::vector<double>& rhs) const {
  const int n = static_cast<int>(rhs.size());
  std::vector<double> y(n), x(n);
  double prev = 0.0;
  for (int i = 0; i < n; ++i) {
    // forward sweep of tridiag(-1,2,-1) x = h * rhs
    y[i] = (h_ * rhs[i] + prev) * upper_[i];
    prev = y[i];
  }
  double next = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    x[i] = y[i] + upper_[i] * next;
    next = x[i];
  }
  return x;
}

Field StiffnessPreconditioner::solve(const Field& rhs) const {
  return Field(rhs.domain, solve(rhs.values));
}

SphereMinResult sphere_minimize(const FunctionalHandle& J, const SpherePoint& w0,
                                const DescentOptions& opts,
                                const StiffnessPreconditioner* precond) {
  SphereMinResult res{w0, J.value(w0.field), 0.0, 0, false, ""};
  double step = opts.step0;
  for (int it = 0; it < opts.max_iters; ++it) {
    res.iterations = it;
    const Field g = J.gradient(res.w.field);
    const Field n = constraint_normal(res.w);
    Field gt = g;
    const double nn = dot(n, n);
    if (nn > 0.0) add_scaled(gt, -dot(n, g) / nn, n);
    res.grad_norm = norm2(gt);
    if (opts.trace) opts.trace->emplace_back(res.value, res.grad_norm);
    if (res.grad_norm <= opts.tol) {
      res.converged = true;
      return res;
    }

    Field d(res.w.field.domain);
    double slope;
    if (precond && opts.precondition) {
      const Field Bg = precond->solve(g);
      const Field Bn = precond->solve(n);
      const double mu = dot(n, Bg) / dot(n, Bn);
      d = Bg;
      add_scaled(d, -mu, Bn);
      for (double& x : d.values) x = -x;
      slope = dot(g, d);
      if (!(slope < 0.0)) {  // metric direction degenerate; plain projection
        d = scaled(gt, -1.0);
        slope = -res.grad_norm * res.grad_norm;
      }
    } else {
      d = scaled(gt, -1.0);
      slope = -res.grad_norm * res.grad_norm;
    }

    bool accepted = false;
    double t = step;
    for (int bt = 0; bt < opts.max_backtracks; ++bt, t *= 0.5) {
      Field trial_step = scaled(d, t);
      SpherePoint trial = res.w;
      try {
        trial = retract(res.w, trial_step);
      } catch (const Error&) {
        continue;  // step annihilated the field; halve
      }
      const double v = J.value(trial.field);
      if (v <= res.value + opts.armijo * t * slope) {
        res.w = trial;
        res.value = v;
        step = std::min(t * 2.0, 1e6);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      res.message = "line search stalled";
      return res;
    }
  }
  res.message = "iteration budget exhausted";
  return res;
}

AmbientMinResult ambient_minimize(const FunctionalHandle& J, const Field& u0,
                                  const DescentOptions& opts,
                                  const StiffnessPreconditioner* precond) {
  AmbientMinResult res{u0, J.value(u0), 0.0, 0, false, ""};
  double step = opts.step0;
  for (int it = 0; it < opts.max_iters; ++it) {
    res.iterations = it;
    const Field g = J.gradient(res.u);
    res.grad_norm = norm2(g);
    if (opts.trace) opts.trace->emplace_back(res.value, res.grad_norm);
    if (res.grad_norm <= opts.tol) {
      res.converged = true;
      return res;
    }
    Field d = (precond && opts.precondition) ? precond->solve(g) : g;
    for (double& x : d.values) x = -x;
    double slope = dot(g, d);
    if (!(slope < 0.0)) {
      d = scaled(g, -1.0);
      slope = -res.grad_norm * res.grad_norm;
    }
    bool accepted = false;
    double t = step;
    for (int bt = 0; bt < opts.max_backtracks; ++bt, t *= 0.5) {
      Field trial = res.u;
      add_scaled(trial, t, d);
      const double v = J.value(trial);
      if (std::isfinite(v) && v <= res.value + opts.armijo * t * slope) {
        res.u = std::move(trial);
        res.value = v;
        step = std::min(t * 2.0, 1e6);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      res.message = "line search stalled";
      return res;
    }
  }
  res.message = "iteration budget exhausted";
  return res;
}

namespace {

Eigen::MatrixXd fd_jacobian(const ResidualFn& R, const std::vector<double>& x,
                            double fd_step) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd J(n, n);
  std::vector<double> xp = x, xm = x;
  for (int j = 0; j < n; ++j) {
    const double dj = fd_step * (1.0 + std::fabs(x[j]));
    xp[j] = x[j] + dj;
    xm[j] = x[j] - dj;
    const std::vector<double> rp = R(xp), rm = R(xm);
    for (int i = 0; i < n; ++i) J(i, j) = (rp[i] - rm[i]) / (2.0 * dj);
    xp[j] = x[j];
    xm[j] = x[j];
  }
  return J;
}

double vnorm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

NewtonResult newton_polish(const ResidualFn& R, std::vector<double> x0,
                           const NewtonOptions& opts, const JacobianFn& jac) {
  NewtonResult res{std::move(x0), 0.0, 0, false, ""};
  std::vector<double> r = R(res.x);
  res.resid_norm = vnorm(r);
  const int n = static_cast<int>(res.x.size());

  for (int it = 0; it < opts.max_iters; ++it) {
    res.iterations = it;
    if (res.resid_norm <= opts.tol) {
      res.converged = true;
      return res;
    }
    Eigen::MatrixXd J(n, n);
    if (jac)
      jac(res.x, J.data());
    else
      J = fd_jacobian(R, res.x, opts.fd_step);
    Eigen::VectorXd rv(n);
    for (int i = 0; i < n; ++i) rv(i) = r[i];

    auto try_step = [&](const Eigen::VectorXd& dx) -> bool {
      double t = 1.0;
      for (int bt = 0; bt < opts.max_backtracks; ++bt, t *= 0.5) {
        std::vector<double> xt(n);
        for (int i = 0; i < n; ++i) xt[i] = res.x[i] + t * dx(i);
        const std::vector<double> rt = R(xt);
        const double rn = vnorm(rt);
        if (std::isfinite(rn) && rn < res.resid_norm * (1.0 - 1e-4 * t)) {
          res.x = std::move(xt);
          r = rt;
          res.resid_norm = rn;
          return true;
        }
      }
      return false;
    };

    Eigen::VectorXd dx = J.partialPivLu().solve(-rv);
    bool ok = dx.allFinite() && try_step(dx);
    if (!ok) {
      // Levenberg fallback on the normal equations
      const Eigen::MatrixXd JtJ = J.transpose() * J;
      const Eigen::VectorXd Jtr = J.transpose() * rv;
      double mu = 1e-8 * (JtJ.trace() / n + 1.0);
      for (int k = 0; k < 20 && !ok; ++k, mu *= 10.0) {
        Eigen::MatrixXd A = JtJ;
        for (int i = 0; i < n; ++i) A(i, i) += mu;
        dx = A.ldlt().solve(-Jtr);
        ok = dx.allFinite() && try_step(dx);
      }
    }
    if (!ok) {
      res.message = "no descent step found";
      return res;
    }
  }
  res.converged = res.resid_norm <= opts.tol;
  if (!res.converged) res.message = "iteration budget exhausted";
  return res;
}

namespace {

// finite-difference Newton with an fd-step ladder: smoothed-kernel terms (the
// eps_reg core at p < 2) defeat a single too-small step, while a larger step
// still yields a usable secant Jacobian
NewtonResult newton_polish_ladder(const ResidualFn& R, std::vector<double> x0,
                                  const NewtonOptions& opts) {
  NewtonResult best = newton_polish(R, x0, opts);
  for (double scale : {10.0, 100.0}) {
    if (best.converged) break;
    NewtonOptions retry = opts;
    retry.fd_step = opts.fd_step * scale;
    NewtonResult nr = newton_polish(R, best.x, retry);
    if (nr.resid_norm < best.resid_norm) best = std::move(nr);
  }
  return best;
}

}  // namespace

CriticalPoint constrained_critical_polish(const FunctionalHandle& J, const SpherePoint& w0,
                                          const NewtonOptions& opts) {
  const Domain dom = w0.field.domain;
  const Exponent pe = w0.pe;
  const int n = dom.n_interior;

  ResidualFn R = [&J, dom, pe, n](const std::vector<double>& x) {
    Field w(dom, std::vector<double>(x.begin(), x.begin() + n));
    const double mu = x[n];
    Field g = J.gradient(w);
    const Field cn = abs_p_gradient(w, pe);
    std::vector<double> r(n + 1);
    for (int i = 0; i < n; ++i) r[i] = g.values[i] - mu * cn.values[i];
    r[n] = integral_abs_p(w, pe) - 1.0;
    return r;
  };

  std::vector<double> x0(n + 1);
  std::copy(w0.field.values.begin(), w0.field.values.end(), x0.begin());
  {
    const Field g = J.gradient(w0.field);
    const Field cn = constraint_normal(w0);
    x0[n] = dot(cn, g) / std::max(dot(cn, cn), 1e-300);
  }

  JacobianFn jac = nullptr;
  if (J.hessian) {
    jac = [&J, dom, pe, n](const std::vector<double>& x, double* out) {
      Field w(dom, std::vector<double>(x.begin(), x.begin() + n));
      const double mu = x[n];
      const TriDiag hj = J.hessian(w);
      const TriDiag hc = abs_p_hessian(w, pe);
      const Field cn = abs_p_gradient(w, pe);
      Eigen::Map<Eigen::MatrixXd> A(out, n + 1, n + 1);
      A.setZero();
      for (int i = 0; i < n; ++i) {
        A(i, i) = hj.diag[i] - mu * hc.diag[i];
        if (i + 1 < n) {
          A(i, i + 1) = A(i + 1, i) = hj.off[i] - mu * hc.off[i];
        }
        A(i, n) = -cn.values[i];
        A(n, i) = cn.values[i];
      }
    };
  }

  const NewtonResult nr = jac ? newton_polish(R, std::move(x0), opts, jac)
                              : newton_polish_ladder(R, std::move(x0), opts);
  CriticalPoint out;
  Field w(dom, std::vector<double>(nr.x.begin(), nr.x.begin() + n));
  try {
    const SpherePoint ws = normalize(w, pe);
    out.u = ws.field;
    const Field gt = tangent_project(ws, J.gradient(ws.field));
    out.residual = norm2(gt);
    out.value = J.value(ws.field);
    out.converged = nr.converged && out.residual <= 10.0 * opts.tol + 1e-9;
    out.message = nr.message;
  } catch (const Error& e) {
    out.u = w;
    out.residual = nr.resid_norm;
    out.converged = false;
    out.message = std::string("polish left the sphere: ") + e.what();
  }
  return out;
}

CriticalPoint ambient_critical_polish(const FunctionalHandle& J, const Field& u0,
                                      const NewtonOptions& opts) {
  const Domain dom = u0.domain;
  ResidualFn R = [&J, dom](const std::vector<double>& x) {
    return J.gradient(Field(dom, x)).values;
  };
  const NewtonResult nr = newton_polish_ladder(R, u0.values, opts);
  CriticalPoint out;
  out.u = Field(dom, nr.x);
  out.residual = nr.resid_norm;
  out.value = J.value(out.u);
  out.converged = nr.converged;
  out.message = nr.message;
  return out;
}

Field random_field(const Domain& d, Rng& rng, double amplitude) {
  Field f(d);
  for (double& x : f.values) x = rng.uniform(-amplitude, amplitude);
  return f;
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([t, n, workers, &fn] {
      for (int i = t; i < n; i += workers) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace fucik
