#pragma once

#include <optional>
#include <vector>

#include "fucik/domain.hpp"

namespace fucik {

/// A field with unit L^p norm. Construction validates the constraint.
struct SpherePoint {
  static constexpr double kNormTol = 1e-10;

  Field field;
  Exponent pe;

  SpherePoint(Field f, const Exponent& e);
};

/// Ordered bead chain on the sphere; the deformation algorithms keep the two
/// end beads fixed.
struct Path {
  std::vector<SpherePoint> beads;

  int size() const { return static_cast<int>(beads.size()); }
};

/// u / ||u||_p. Throws on (numerically) zero input.
SpherePoint normalize(const Field& u, const Exponent& pe);

/// Derivative of ∫ |u|^p at w — the constraint normal used for tangency.
Field constraint_normal(const SpherePoint& w);

/// Remove from g its component along the constraint normal at w, so the
/// linearized constraint <normal, result> vanishes.
Field tangent_project(const SpherePoint& w, const Field& g);

/// normalize(w + v); throws if the step (numerically) annihilates the field.
SpherePoint retract(const SpherePoint& w, const Field& v);

/// Chordal point between two sphere points: normalize((1-t) a + t b).
/// Rejects interpolants whose pre-normalization norm falls below `guard`
/// (the zero-crossing hazard between antipodal points).
SpherePoint interpolate_between(const SpherePoint& a, const SpherePoint& b, double t,
                                double guard = 0.1);

/// The sign-collapsing family u_t = (u0+ - (1-t) u0-) / ||...||_p sampled on a
/// uniform t-grid; u_0 = u0 and u_1 = normalize(u0+). Requires u0+ != 0.
Path sign_path(const SpherePoint& u0, int beads = 41);

/// Initial bead chain from `from` to its antipode routed through a
/// perpendicular-ish direction `via`: bead_k = normalize(cos θ_k from + sin θ_k via),
/// θ sweeping 0..π. Avoids the interpolation-through-zero hazard.
Path make_arc_path(const SpherePoint& from, const Field& via, int beads);

}  // namespace fucik
