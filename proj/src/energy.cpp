#include "fucik/energy.hpp"

#include <cmath>
#include <utility>

namespace fucik {

double fucik_energy(const Field& u, const FucikParams& ab, const Exponent& pe) {
  return dirichlet_energy(u, pe) - ab.a * integral_pos_p(u, pe) -
         ab.b * integral_neg_p(u, pe);
}

Field fucik_energy_grad(const Field& u, const FucikParams& ab, const Exponent& pe) {
  Field g(u.domain);
  std::span<double> out(g.values);
  add_dirichlet_energy_gradient(u, pe, 1.0, out);
  const double p = pe.p;
  add_composed_gradient(
      u, [p](double t) { return t > 0.0 ? p * std::pow(t, p - 1.0) : 0.0; }, -ab.a, out);
  add_composed_gradient(
      u, [p](double t) { return t < 0.0 ? -p * std::pow(-t, p - 1.0) : 0.0; }, -ab.b, out);
  return g;
}

double shifted_energy(const Field& u, const Shift& s, const Exponent& pe) {
  return dirichlet_energy(u, pe) - s.s * integral_pos_p(u, pe);
}

Field shifted_energy_grad(const Field& u, const Shift& s, const Exponent& pe) {
  Field g(u.domain);
  std::span<double> out(g.values);
  add_dirichlet_energy_gradient(u, pe, 1.0, out);
  const double p = pe.p;
  add_composed_gradient(
      u, [p](double t) { return t > 0.0 ? p * std::pow(t, p - 1.0) : 0.0; }, -s.s, out);
  return g;
}

double sphere_energy(const SpherePoint& w, const Shift& s) {
  return shifted_energy(w.field, s, w.pe);
}

double bvp_energy(const Field& u, const Nonlinearity& f, const Exponent& pe) {
  const double potential = integrate_composed(u, [&f](double t) { return f.F(t); });
  return dirichlet_energy(u, pe) - pe.p * potential;
}

Field bvp_energy_grad(const Field& u, const Nonlinearity& f, const Exponent& pe) {
  Field g(u.domain);
  std::span<double> out(g.values);
  add_dirichlet_energy_gradient(u, pe, 1.0, out);
  add_composed_gradient(u, [&f](double t) { return f.f(t); }, -pe.p, out);
  return g;
}

double signed_energy(const Field& u, const Nonlinearity& f, SignRestriction sign,
                     const Exponent& pe) {
  const bool pos = sign == SignRestriction::positive;
  const double potential = integrate_composed(u, [&f, pos](double t) {
    return (pos ? t >= 0.0 : t <= 0.0) ? f.F(t) : 0.0;
  });
  return dirichlet_energy(u, pe) - pe.p * potential;
}

Field signed_energy_grad(const Field& u, const Nonlinearity& f, SignRestriction sign,
                         const Exponent& pe) {
  Field g(u.domain);
  std::span<double> out(g.values);
  add_dirichlet_energy_gradient(u, pe, 1.0, out);
  const bool pos = sign == SignRestriction::positive;
  add_composed_gradient(
      u,
      [&f, pos](double t) { return (pos ? t >= 0.0 : t <= 0.0) ? f.f(t) : 0.0; },
      -pe.p, out);
  return g;
}

namespace {

// d2/dt2 of (t+)^p resp. (t-)^p with the p < 2 origin smoothing
double pos_pow_dd(double t, double p, double cap_eps) {
  if (t <= 0.0) return 0.0;
  if (p >= 2.0) return p * (p - 1.0) * std::pow(t, p - 2.0);
  return p * (p - 1.0) * std::pow(t * t + cap_eps * cap_eps, 0.5 * p - 1.0);
}

double neg_pow_dd(double t, double p, double cap_eps) { return pos_pow_dd(-t, p, cap_eps); }

}  // namespace

TriDiag abs_p_hessian(const Field& u, const Exponent& pe) {
  TriDiag H(u.size());
  const double p = pe.p;
  const double cap = std::max(pe.eps_reg, 1e-10);
  add_composed_hessian(
      u,
      [p, cap](double t) { return pos_pow_dd(t, p, cap) + neg_pow_dd(t, p, cap); },
      1.0, H);
  return H;
}

FunctionalHandle fucik_handle(const FucikParams& ab, const Exponent& pe) {
  return {"fucik(a=" + std::to_string(ab.a) + ",b=" + std::to_string(ab.b) + ")",
          [ab, pe](const Field& u) { return fucik_energy(u, ab, pe); },
          [ab, pe](const Field& u) { return fucik_energy_grad(u, ab, pe); },
          [ab, pe](const Field& u) {
            TriDiag H(u.size());
            add_dirichlet_energy_hessian(u, pe, 1.0, H);
            const double p = pe.p;
            const double cap = std::max(pe.eps_reg, 1e-10);
            add_composed_hessian(
                u, [p, cap](double t) { return pos_pow_dd(t, p, cap); }, -ab.a, H);
            add_composed_hessian(
                u, [p, cap](double t) { return neg_pow_dd(t, p, cap); }, -ab.b, H);
            return H;
          }};
}

FunctionalHandle shifted_handle(const Shift& s, const Exponent& pe) {
  return {"shifted(s=" + std::to_string(s.s) + ")",
          [s, pe](const Field& u) { return shifted_energy(u, s, pe); },
          [s, pe](const Field& u) { return shifted_energy_grad(u, s, pe); },
          [s, pe](const Field& u) {
            TriDiag H(u.size());
            add_dirichlet_energy_hessian(u, pe, 1.0, H);
            const double p = pe.p;
            const double cap = std::max(pe.eps_reg, 1e-10);
            add_composed_hessian(
                u, [p, cap](double t) { return pos_pow_dd(t, p, cap); }, -s.s, H);
            return H;
          }};
}

FunctionalHandle bvp_handle(const Nonlinearity& f, const Exponent& pe) {
  return {"bvp",
          [f, pe](const Field& u) { return bvp_energy(u, f, pe); },
          [f, pe](const Field& u) { return bvp_energy_grad(u, f, pe); },
          nullptr};
}

FunctionalHandle signed_handle(const Nonlinearity& f, SignRestriction sign,
                               const Exponent& pe) {
  return {sign == SignRestriction::positive ? "bvp+" : "bvp-",
          [f, sign, pe](const Field& u) { return signed_energy(u, f, sign, pe); },
          [f, sign, pe](const Field& u) { return signed_energy_grad(u, f, sign, pe); },
          nullptr};
}

namespace {
double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return (3.0 - 2.0 * x) * x * x;
}
double smoothstep_d(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return 6.0 * x * (1.0 - x);
}
}  // namespace

CutoffProfile inner_cutoff() {
  return {"smoothstep-inner",
          [](double t) { return 1.0 - smoothstep(2.0 * t - 1.0); },
          [](double t) { return -2.0 * smoothstep_d(2.0 * t - 1.0); }};
}

CutoffProfile outer_cutoff() {
  return {"smoothstep-outer",
          [](double t) { return smoothstep(t - 1.0); },
          [](double t) { return smoothstep_d(t - 1.0); }};
}

FunctionalHandle build_perturbed_energy(const Nonlinearity& f, const FucikParams& ab0,
                                        const FucikParams& ab, const PerturbationSpec& pert,
                                        const Exponent& pe, const SpectrumGuard& guard) {
  if (!(pert.rho > 0.0 && pert.R > pert.rho))
    throw Error("build_perturbed_energy: need 0 < rho < R");
  if (guard) {
    if (auto why = guard(ab0))
      throw Error("build_perturbed_energy: zero-slope pair rejected: " + *why);
    if (auto why = guard(ab))
      throw Error("build_perturbed_energy: infinity-slope pair rejected: " + *why);
  }

  const double rho = pert.rho, R = pert.R;
  const CutoffProfile inner = pert.cutoff_inner, outer = pert.cutoff_outer;

  auto value = [f, ab0, ab, pe, rho, R, inner, outer](const Field& u) {
    const double phi = bvp_energy(u, f, pe);
    const double nu = seminorm(u, pe);
    const double c0 = inner.value(nu / rho);
    const double c1 = outer.value(nu / R);
    double v = phi;
    if (c0 != 0.0) v -= c0 * (phi - fucik_energy(u, ab0, pe));
    if (c1 != 0.0) v -= c1 * (phi - fucik_energy(u, ab, pe));
    return v;
  };

  auto gradient = [f, ab0, ab, pe, rho, R, inner, outer](const Field& u) {
    Field g = bvp_energy_grad(u, f, pe);
    const double nu = seminorm(u, pe);
    const double c0 = inner.value(nu / rho);
    const double dc0 = inner.derivative(nu / rho) / rho;
    const double c1 = outer.value(nu / R);
    const double dc1 = outer.derivative(nu / R) / R;

    // grad = gPhi - Σ_k [ dc_k * (phi - I_k) * grad(nu) + c_k * (gPhi - gI_k) ]
    const double phi_val = bvp_energy(u, f, pe);
    Field grad_nu(u.domain);
    if (dc0 != 0.0 || dc1 != 0.0) {
      // d(nu)/du = (1/p) E^{1/p - 1} dE/du, E = dirichlet_energy
      const double E = dirichlet_energy(u, pe);
      if (E > 0.0) {
        add_dirichlet_energy_gradient(u, pe, 1.0, std::span<double>(grad_nu.values));
        const double scale = std::pow(E, 1.0 / pe.p - 1.0) / pe.p;
        for (double& x : grad_nu.values) x *= scale;
      }
    }
    Field out = g;
    if (c0 != 0.0 || dc0 != 0.0) {
      const double psi0 = phi_val - fucik_energy(u, ab0, pe);
      if (dc0 != 0.0) add_scaled(out, -dc0 * psi0, grad_nu);
      if (c0 != 0.0) {
        const Field gi0 = fucik_energy_grad(u, ab0, pe);
        for (int i = 0; i < out.size(); ++i)
          out.values[i] -= c0 * (g.values[i] - gi0.values[i]);
      }
    }
    if (c1 != 0.0 || dc1 != 0.0) {
      const double psi = phi_val - fucik_energy(u, ab, pe);
      if (dc1 != 0.0) add_scaled(out, -dc1 * psi, grad_nu);
      if (c1 != 0.0) {
        const Field gi = fucik_energy_grad(u, ab, pe);
        for (int i = 0; i < out.size(); ++i)
          out.values[i] -= c1 * (g.values[i] - gi.values[i]);
      }
    }
    return out;
  };

  return {"perturbed", std::move(value), std::move(gradient), nullptr};
}

}  // namespace fucik
