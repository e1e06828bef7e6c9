#include <doctest.h>

#include <cmath>

#include "fucik/solvers.hpp"

using namespace fucik;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("normalize: idempotence, scale invariance, odd symmetry, degeneracy") {
  const Domain d(0.0, 1.0, 40);
  for (double p : {2.0, 1.5, 3.0}) {
    const Exponent pe(p);
    Rng rng(21);
    const Field u = random_field(d, rng);
    const SpherePoint w = normalize(u, pe);
    CHECK(linf_dist(normalize(w.field, pe).field, w.field) <= 1e-14);
    CHECK(linf_dist(normalize(scaled(u, 5.5), pe).field, w.field) <= 1e-13);
    CHECK(linf_dist(normalize(scaled(u, -1.0), pe).field, scaled(w.field, -1.0)) <= 1e-14);
    CHECK_THROWS_AS(normalize(Field(d), pe), Error);
  }
}

TEST_CASE("tangent projection annihilates the normal and fixes tangents") {
  const Domain d(0.0, 1.0, 50);
  const Exponent pe(2.5);
  Rng rng(23);
  const SpherePoint w = normalize(random_field(d, rng), pe);
  const Field n = constraint_normal(w);

  const Field along = scaled(n, 3.0);
  CHECK(norm2(tangent_project(w, along)) <= 1e-12 * norm2(along));

  Field g = random_field(d, rng);
  const Field gt = tangent_project(w, g);
  CHECK(std::fabs(dot(n, gt)) <= 1e-12 * norm2(n) * norm2(g));
  CHECK(linf_dist(tangent_project(w, gt), gt) <= 1e-12);
}

TEST_CASE("retraction absorbs radial steps and is second-order feasible") {
  const Domain d(0.0, 1.0, 60);
  const Exponent pe(2.0);
  Rng rng(25);
  const SpherePoint w = normalize(random_field(d, rng), pe);

  CHECK(linf_dist(retract(w, Field(d)).field, w.field) <= 1e-14);
  for (double t : {-0.5, 0.3, 2.0})
    CHECK(linf_dist(retract(w, scaled(w.field, t)).field, w.field) <= 1e-12);
  CHECK_THROWS_AS(retract(w, scaled(w.field, -1.0)), Error);

  // pre-normalization constraint violation along a tangent is O(delta^2):
  // log-log slope of the violation against the step should be close to 2
  const Field gt = tangent_project(w, random_field(d, rng));
  const Field dir = scaled(gt, 1.0 / norm2(gt));
  std::vector<double> lx, ly;
  for (double delta : {1e-1, 1e-2, 1e-3, 1e-4}) {
    Field stepped = w.field;
    add_scaled(stepped, delta, dir);
    const double err = std::fabs(lp_norm(stepped, pe) - 1.0);
    lx.push_back(std::log(delta));
    ly.push_back(std::log(err));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int m = static_cast<int>(lx.size());
  for (int i = 0; i < m; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  CHECK(slope == doctest::Approx(2.0).epsilon(0.08));
}

TEST_CASE("descent along the projected negative gradient decreases the energy") {
  const Domain d(0.0, 1.0, 60);
  const Exponent pe(2.0);
  const Shift s(4.0);
  Rng rng(27);
  for (int k = 0; k < 10; ++k) {
    const SpherePoint w = normalize(random_field(d, rng), pe);
    const Field g = shifted_energy_grad(w.field, s, pe);
    const Field gt = tangent_project(w, g);
    if (norm2(gt) < 1e-10) continue;
    const double v0 = sphere_energy(w, s);
    const SpherePoint w1 = retract(w, scaled(gt, -1e-4 / norm2(gt)));
    CHECK(sphere_energy(w1, s) < v0);
  }
}

TEST_CASE("sign path: constant for one-signed input, endpoint identity, errors") {
  const Domain d(0.0, 1.0, 50);
  const Exponent pe(2.0);

  const SpherePoint pos = normalize(interpolate(d, [](double x) { return x * (1.0 - x); }), pe);
  const Path constant = sign_path(pos, 11);
  for (const SpherePoint& b : constant.beads)
    CHECK(linf_dist(b.field, pos.field) <= 1e-13);

  const SpherePoint mixed =
      normalize(interpolate(d, [](double x) { return std::sin(2.0 * kPi * x) + 0.3; }), pe);
  const Path path = sign_path(mixed, 21);
  CHECK(path.size() == 21);
  CHECK(linf_dist(path.beads.front().field, mixed.field) <= 1e-13);
  CHECK(linf_dist(path.beads.back().field,
                  normalize(positive_part(mixed.field), pe).field) <= 1e-13);
  for (const SpherePoint& b : path.beads)
    CHECK(std::fabs(lp_norm(b.field, pe) - 1.0) <= 1e-12);

  const SpherePoint neg = normalize(scaled(pos.field, -1.0), pe);
  CHECK_THROWS_AS(sign_path(neg, 11), Error);
}

TEST_CASE("arc seed path: endpoints, sphere membership, antipodal guard") {
  const Domain d(0.0, 1.0, 40);
  const Exponent pe(1.5);
  const SpherePoint phi = normalize(interpolate(d, [](double x) { return x * (1.0 - x); }), pe);
  const Field via =
      normalize(interpolate(d, [](double x) { return std::sin(2.0 * kPi * x); }), pe).field;
  const Path arc = make_arc_path(phi, via, 15);
  CHECK(arc.size() == 15);
  CHECK(linf_dist(arc.beads.front().field, phi.field) <= 1e-12);
  CHECK(linf_dist(arc.beads.back().field, scaled(phi.field, -1.0)) <= 1e-12);
  for (const SpherePoint& b : arc.beads)
    CHECK(std::fabs(lp_norm(b.field, pe) - 1.0) <= 1e-10);

  const SpherePoint anti = normalize(scaled(phi.field, -1.0), pe);
  CHECK_THROWS_AS(interpolate_between(phi, anti, 0.5), Error);
}
