#include "fucik/domain.hpp"

#include <algorithm>
#include <cmath>

namespace fucik {

double integral_abs_p(const Field& u, const Exponent& pe) {
  const double p = pe.p;
  return integrate_composed(u, [p](double t) { return std::pow(std::fabs(t), p); });
}

double integral_pos_p(const Field& u, const Exponent& pe) {
  const double p = pe.p;
  return integrate_composed(u, [p](double t) { return t > 0.0 ? std::pow(t, p) : 0.0; });
}

double integral_neg_p(const Field& u, const Exponent& pe) {
  const double p = pe.p;
  return integrate_composed(u, [p](double t) { return t < 0.0 ? std::pow(-t, p) : 0.0; });
}

double lp_norm(const Field& u, const Exponent& pe) {
  return std::pow(integral_abs_p(u, pe), 1.0 / pe.p);
}

double dirichlet_energy(const Field& u, const Exponent& pe) {
  const double h = u.domain.h();
  const double e2 = pe.eps_reg * pe.eps_reg;
  const double base = std::pow(pe.eps_reg, pe.p);
  const int n = u.size();
  double total = 0.0;
  for (int e = 0; e <= n; ++e) {
    const double va = (e == 0) ? 0.0 : u.values[e - 1];
    const double vb = (e == n) ? 0.0 : u.values[e];
    const double g = (vb - va) / h;
    total += h * (std::pow(g * g + e2, 0.5 * pe.p) - base);
  }
  return total;
}

void add_dirichlet_energy_gradient(const Field& u, const Exponent& pe, double scale,
                                   std::span<double> out) {
  const double h = u.domain.h();
  const double e2 = pe.eps_reg * pe.eps_reg;
  const int n = u.size();
  for (int e = 0; e <= n; ++e) {
    const double va = (e == 0) ? 0.0 : u.values[e - 1];
    const double vb = (e == n) ? 0.0 : u.values[e];
    const double g = (vb - va) / h;
    // d/dg of h (g^2+e2)^{p/2} is h p g (g^2+e2)^{(p-2)/2}; chain through
    // dg/dva = -1/h, dg/dvb = +1/h.
    const double flux = pe.p * g * std::pow(g * g + e2, 0.5 * pe.p - 1.0);
    if (e > 0) out[e - 1] -= scale * flux;
    if (e < n) out[e] += scale * flux;
  }
}

void add_dirichlet_energy_hessian(const Field& u, const Exponent& pe, double scale,
                                  TriDiag& H) {
  const double h = u.domain.h();
  const double e2 = pe.eps_reg * pe.eps_reg;
  const int n = u.size();
  for (int e = 0; e <= n; ++e) {
    const double va = (e == 0) ? 0.0 : u.values[e - 1];
    const double vb = (e == n) ? 0.0 : u.values[e];
    const double g = (vb - va) / h;
    const double gg = g * g + e2;
    // second derivative of h (g^2+e2)^{p/2} in g, divided by h^2 chain factor;
    // at gg = 0 (possible only when eps_reg = 0, so p >= 2) the limit is
    // p(p-1)|g|^{p-2} -> {p(p-1) at p = 2, 0 at p > 2}
    const double kappa =
        gg == 0.0
            ? (pe.p == 2.0 ? pe.p * (pe.p - 1.0) : 0.0) / h
            : pe.p * std::pow(gg, 0.5 * pe.p - 2.0) * ((pe.p - 1.0) * g * g + e2) / h;
    if (e > 0) H.diag[e - 1] += scale * kappa;
    if (e < n) H.diag[e] += scale * kappa;
    if (e > 0 && e < n) H.off[e - 1] -= scale * kappa;
  }
}

double seminorm(const Field& u, const Exponent& pe) {
  return std::pow(std::max(dirichlet_energy(u, pe), 0.0), 1.0 / pe.p);
}

Field positive_part(const Field& u) {
  Field r(u.domain);
  for (int i = 0; i < u.size(); ++i) r.values[i] = std::max(u.values[i], 0.0);
  return r;
}

Field negative_part(const Field& u) {
  Field r(u.domain);
  for (int i = 0; i < u.size(); ++i) r.values[i] = std::max(-u.values[i], 0.0);
  return r;
}

Field interpolate(const Domain& d, const std::function<double(double)>& f) {
  Field r(d);
  for (int i = 0; i < d.n_interior; ++i) r.values[i] = f(d.node(i));
  return r;
}

Field scaled(const Field& u, double c) {
  Field r = u;
  for (double& x : r.values) x *= c;
  return r;
}

Field add(const Field& u, const Field& v) {
  Field r = u;
  for (int i = 0; i < r.size(); ++i) r.values[i] += v.values[i];
  return r;
}

Field sub(const Field& u, const Field& v) {
  Field r = u;
  for (int i = 0; i < r.size(); ++i) r.values[i] -= v.values[i];
  return r;
}

void add_scaled(Field& u, double c, const Field& v) {
  for (int i = 0; i < u.size(); ++i) u.values[i] += c * v.values[i];
}

double dot(const Field& u, const Field& v) {
  double s = 0.0;
  for (int i = 0; i < u.size(); ++i) s += u.values[i] * v.values[i];
  return s;
}

double norm2(const Field& u) { return std::sqrt(dot(u, u)); }

double linf(const Field& u) {
  double m = 0.0;
  for (double x : u.values) m = std::max(m, std::fabs(x));
  return m;
}

double linf_dist(const Field& u, const Field& v) {
  double m = 0.0;
  for (int i = 0; i < u.size(); ++i) m = std::max(m, std::fabs(u.values[i] - v.values[i]));
  return m;
}

}  // namespace fucik
