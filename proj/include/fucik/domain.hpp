#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fucik {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Uniform mesh on (left, right) with homogeneous Dirichlet ends.
/// Only the n_interior interior nodes carry degrees of freedom; the two
/// boundary nodes are pinned to zero and never appear in coefficient vectors.
struct Domain {
  double left = 0.0;
  double right = 1.0;
  int n_interior = 1;

  Domain() = default;
  Domain(double l, double r, int n) : left(l), right(r), n_interior(n) {
    if (!(r > l)) throw Error("Domain: right must exceed left");
    if (n < 1) throw Error("Domain: need at least one interior node");
  }

  double h() const { return (right - left) / (n_interior + 1); }
  int n_elements() const { return n_interior + 1; }
  /// Coordinate of interior node i (0-based; boundary nodes excluded).
  double node(int i) const { return left + (i + 1) * h(); }

  bool operator==(const Domain&) const = default;
};

/// Nodal coefficients of a piecewise-linear function on a Domain, zero at
/// both boundary nodes. values[i] is the value at Domain::node(i).
struct Field {
  Domain domain;
  std::vector<double> values;

  Field() = default;
  explicit Field(const Domain& d) : domain(d), values(d.n_interior, 0.0) {}
  Field(const Domain& d, std::vector<double> v) : domain(d), values(std::move(v)) {
    if (static_cast<int>(values.size()) != d.n_interior)
      throw Error("Field: coefficient count does not match the domain");
    for (double x : values)
      if (!std::isfinite(x)) throw Error("Field: non-finite coefficient");
  }

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int i) const { return values[i]; }
  double& operator[](int i) { return values[i]; }
};

/// The exponent p of the energy together with the gradient-term smoothing
/// eps_reg used when p < 2 (the flux |t|^{p-2} t is singular at t = 0).
struct Exponent {
  double p = 2.0;
  double eps_reg = 0.0;

  Exponent() = default;
  explicit Exponent(double p_, double eps = -1.0) : p(p_) {
    if (!(p > 1.0)) throw Error("Exponent: p must exceed 1");
    eps_reg = (eps >= 0.0) ? eps : (p < 2.0 ? 1e-8 : 0.0);
    if (eps_reg == 0.0 && p < 2.0)
      throw Error("Exponent: eps_reg = 0 requires p >= 2");
  }
};

inline double sign_pow(double t, double q) {
  // sign(t) |t|^q, continuous through 0 for q > 0
  if (t == 0.0) return 0.0;
  return t > 0.0 ? std::pow(t, q) : -std::pow(-t, q);
}

namespace quadrature {
// 3-point Gauss on the unit element; exact through degree 5.
inline constexpr double kXi[3] = {0.1127016653792583, 0.5, 0.8872983346207417};
inline constexpr double kW[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
}  // namespace quadrature

/// Integral over the domain of g(u(x)), u piecewise linear with zero ends.
template <class G>
double integrate_composed(const Field& u, G&& g) {
  const double h = u.domain.h();
  const int n = u.size();
  double total = 0.0;
  for (int e = 0; e <= n; ++e) {
    const double va = (e == 0) ? 0.0 : u.values[e - 1];
    const double vb = (e == n) ? 0.0 : u.values[e];
    double elem = 0.0;
    for (int q = 0; q < 3; ++q) {
      const double xi = quadrature::kXi[q];
      elem += quadrature::kW[q] * g((1.0 - xi) * va + xi * vb);
    }
    total += h * elem;
  }
  return total;
}

/// out_j += scale * d/du_j of integrate_composed(u, W), with dW = W'.
template <class DG>
void add_composed_gradient(const Field& u, DG&& dW, double scale, std::span<double> out) {
  const double h = u.domain.h();
  const int n = u.size();
  for (int e = 0; e <= n; ++e) {
    const double va = (e == 0) ? 0.0 : u.values[e - 1];
    const double vb = (e == n) ? 0.0 : u.values[e];
    double ga = 0.0, gb = 0.0;
    for (int q = 0; q < 3; ++q) {
      const double xi = quadrature::kXi[q];
      const double w = quadrature::kW[q] * dW((1.0 - xi) * va + xi * vb);
      ga += w * (1.0 - xi);
      gb += w * xi;
    }
    if (e > 0) out[e - 1] += scale * h * ga;
    if (e < n) out[e] += scale * h * gb;
  }
}

/// Symmetric tridiagonal matrix on the interior nodes (diag size n, off n-1).
struct TriDiag {
  std::vector<double> diag;
  std::vector<double> off;

  explicit TriDiag(int n) : diag(n, 0.0), off(n > 0 ? n - 1 : 0, 0.0) {}
};

/// H += scale * d2/du2 of integrate_composed(u, W), with ddW = W''.
template <class DDG>
void add_composed_hessian(const Field& u, DDG&& ddW, double scale, TriDiag& H) {
  const double h = u.domain.h();
  const int n = u.size();
  for (int e = 0; e <= n; ++e) {
    const double va = (e == 0) ? 0.0 : u.values[e - 1];
    const double vb = (e == n) ? 0.0 : u.values[e];
    double haa = 0.0, hab = 0.0, hbb = 0.0;
    for (int q = 0; q < 3; ++q) {
      const double xi = quadrature::kXi[q];
      const double w = quadrature::kW[q] * ddW((1.0 - xi) * va + xi * vb);
      haa += w * (1.0 - xi) * (1.0 - xi);
      hab += w * (1.0 - xi) * xi;
      hbb += w * xi * xi;
    }
    if (e > 0) H.diag[e - 1] += scale * h * haa;
    if (e < n) H.diag[e] += scale * h * hbb;
    if (e > 0 && e < n) H.off[e - 1] += scale * h * hab;
  }
}

/// H += scale * Hessian of dirichlet_energy at u (exact, including eps_reg).
void add_dirichlet_energy_hessian(const Field& u, const Exponent& pe, double scale,
                                  TriDiag& H);

// --- grid module operations -------------------------------------------------

double integral_abs_p(const Field& u, const Exponent& pe);   // ∫ |u|^p
double integral_pos_p(const Field& u, const Exponent& pe);   // ∫ (u+)^p
double integral_neg_p(const Field& u, const Exponent& pe);   // ∫ (u-)^p

/// L^p norm (∫ |u|^p)^{1/p}; zero exactly when u vanishes.
double lp_norm(const Field& u, const Exponent& pe);

/// ∫ |u'|^p with the eps_reg smoothing, normalized to vanish at u = 0:
/// sum over elements of h [ (slope^2 + eps^2)^{p/2} - eps^p ].
double dirichlet_energy(const Field& u, const Exponent& pe);

/// out += scale * gradient of dirichlet_energy at u.
void add_dirichlet_energy_gradient(const Field& u, const Exponent& pe, double scale,
                                   std::span<double> out);

/// Discrete W^{1,p} seminorm, dirichlet_energy^{1/p}.
double seminorm(const Field& u, const Exponent& pe);

/// Nodal clipping u+ and u-; u = u+ - u- holds exactly nodewise.
Field positive_part(const Field& u);
Field negative_part(const Field& u);

// --- small field utilities ---------------------------------------------------

Field interpolate(const Domain& d, const std::function<double(double)>& f);
Field scaled(const Field& u, double c);
Field add(const Field& u, const Field& v);
Field sub(const Field& u, const Field& v);
void add_scaled(Field& u, double c, const Field& v);  // u += c v
double dot(const Field& u, const Field& v);
double norm2(const Field& u);       // Euclidean norm of the coefficient vector
double linf(const Field& u);
double linf_dist(const Field& u, const Field& v);

}  // namespace fucik
