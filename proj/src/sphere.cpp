#include "fucik/sphere.hpp"

#include <cmath>

namespace fucik {

SpherePoint::SpherePoint(Field f, const Exponent& e) : field(std::move(f)), pe(e) {
  const double n = lp_norm(field, pe);
  if (std::fabs(n - 1.0) > kNormTol)
    throw Error("SpherePoint: off-sphere input, ||u||_p = " + std::to_string(n));
}

SpherePoint normalize(const Field& u, const Exponent& pe) {
  const double n = lp_norm(u, pe);
  if (!(n > 1e-14))
    throw Error("normalize: degenerate (zero) field cannot be projected to the sphere");
  return SpherePoint(scaled(u, 1.0 / n), pe);
}

Field constraint_normal(const SpherePoint& w) {
  Field n(w.field.domain);
  const double p = w.pe.p;
  add_composed_gradient(
      w.field, [p](double t) { return p * sign_pow(t, p - 1.0); }, 1.0,
      std::span<double>(n.values));
  return n;
}

Field tangent_project(const SpherePoint& w, const Field& g) {
  const Field n = constraint_normal(w);
  const double nn = dot(n, n);
  Field r = g;
  if (nn > 0.0) add_scaled(r, -dot(n, g) / nn, n);
  return r;
}

SpherePoint retract(const SpherePoint& w, const Field& v) {
  Field stepped = add(w.field, v);
  if (!(lp_norm(stepped, w.pe) > 1e-10))
    throw Error("retract: step annihilates the field");
  return normalize(stepped, w.pe);
}

SpherePoint interpolate_between(const SpherePoint& a, const SpherePoint& b, double t,
                                double guard) {
  Field mix = scaled(a.field, 1.0 - t);
  add_scaled(mix, t, b.field);
  const double n = lp_norm(mix, a.pe);
  if (n < guard)
    throw Error("interpolate_between: pre-normalization norm " + std::to_string(n) +
                " below guard (near-antipodal beads)");
  return SpherePoint(scaled(mix, 1.0 / n), a.pe);
}

Path sign_path(const SpherePoint& u0, int beads) {
  if (beads < 2) throw Error("sign_path: need at least two beads");
  const Field up = positive_part(u0.field);
  const Field um = negative_part(u0.field);
  if (!(lp_norm(up, u0.pe) > 0.0))
    throw Error("sign_path: construction requires a nonzero positive part");
  Path path;
  path.beads.reserve(beads);
  for (int k = 0; k < beads; ++k) {
    const double t = static_cast<double>(k) / (beads - 1);
    Field pre = up;
    add_scaled(pre, -(1.0 - t), um);
    path.beads.push_back(normalize(pre, u0.pe));
  }
  return path;
}

Path make_arc_path(const SpherePoint& from, const Field& via, int beads) {
  if (beads < 2) throw Error("make_arc_path: need at least two beads");
  Path path;
  path.beads.reserve(beads);
  const double pi = std::acos(-1.0);
  for (int k = 0; k < beads; ++k) {
    const double theta = pi * static_cast<double>(k) / (beads - 1);
    Field mix = scaled(from.field, std::cos(theta));
    add_scaled(mix, std::sin(theta), via);
    const double n = lp_norm(mix, from.pe);
    if (n < 0.1)
      throw Error("make_arc_path: seed direction nearly annihilates an arc bead");
    path.beads.push_back(SpherePoint(scaled(mix, 1.0 / n), from.pe));
  }
  return path;
}

}  // namespace fucik
