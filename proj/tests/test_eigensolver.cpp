#include <doctest.h>

#include <cmath>

#include "fucik/minimax.hpp"
#include "oracles.hpp"

using namespace fucik;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("first eigenpair at p = 2 against the dense pencil oracle") {
  const Domain d(0.0, 1.0, 200);
  const Exponent pe(2.0);
  const EigenPair eig = first_eigenpair(d, pe);
  REQUIRE(eig.converged);

  const oracles::LinearEigs lin = oracles::dense_linear_eigs(d);
  // same discrete problem: the quadrature is exact for p = 2, so the
  // minimized Rayleigh quotient must match the pencil eigenvalue tightly
  CHECK(eig.lambda == doctest::Approx(lin.lambda1).epsilon(1e-10));
  CHECK(eig.lambda == doctest::Approx(kPi * kPi).epsilon(0.005));
  CHECK(eig.residual <= 1e-9);

  // eigenfunction against the oracle eigenvector (both L^p-normalized)
  Field oracle(d);
  for (int i = 0; i < d.n_interior; ++i) oracle.values[i] = lin.phi1(i);
  const SpherePoint oracle_w = normalize(oracle, pe);
  CHECK(linf_dist(eig.phi.field, oracle_w.field) <= 1e-6);

  // spec reference: matches the normalized sine interpolant to 1e-3
  const SpherePoint sine =
      normalize(interpolate(d, [](double x) { return std::sin(kPi * x); }), pe);
  CHECK(linf_dist(eig.phi.field, sine.field) <= 1e-3);

  for (double v : eig.phi.field.values) CHECK(v > 0.0);
}

TEST_CASE("Rayleigh bound: random sphere points sit above the minimum") {
  const Domain d(0.0, 1.0, 80);
  for (double p : {2.0, 1.5}) {
    const Exponent pe(p);
    const EigenPair eig = first_eigenpair(d, pe);
    REQUIRE(eig.converged);
    Rng rng(41);
    for (int k = 0; k < 100; ++k) {
      const SpherePoint w = normalize(random_field(d, rng), pe);
      CHECK(sphere_energy(w, Shift(0.0)) >= eig.lambda - 1e-9);
    }
  }
}

TEST_CASE("eigen-equation residual scales homogeneously") {
  const Domain d(0.0, 1.0, 100);
  const Exponent pe(2.0);
  const EigenPair eig = first_eigenpair(d, pe);
  REQUIRE(eig.converged);
  const FucikParams ab{eig.lambda, eig.lambda};
  for (double t : {0.5, 1.0, 2.0}) {
    const double r = norm2(fucik_energy_grad(scaled(eig.phi.field, t), ab, pe));
    CHECK(r <= 1e-9 * std::pow(t, pe.p - 1.0) + 1e-12);
  }
  // the asymmetric functional itself vanishes at the eigenpair
  CHECK(std::fabs(fucik_energy(eig.phi.field, ab, pe)) <= 1e-10);
}

TEST_CASE("mesh convergence of the first eigenvalue is second order") {
  const Exponent pe(2.0);
  std::vector<double> errs;
  for (int n : {50, 100, 200}) {
    const EigenPair eig = first_eigenpair(Domain(0.0, 1.0, n), pe);
    REQUIRE(eig.converged);
    errs.push_back(std::fabs(eig.lambda - kPi * kPi));
  }
  CHECK(errs[0] / errs[1] >= 3.0);
  CHECK(errs[1] / errs[2] >= 3.0);
}

TEST_CASE("p = 1.5 eigenvalue against the shooting-verified closed form") {
  const Domain d(0.0, 1.0, 120);
  const Exponent pe(1.5);
  const EigenPair eig = first_eigenpair(d, pe);
  REQUIRE(eig.converged);
  CHECK(eig.lambda == doctest::Approx(oracles::lambda_k_closed(1.5, 1)).epsilon(0.05));
  for (double v : eig.phi.field.values) CHECK(v > 0.0);
}

TEST_CASE("second eigenvalue equals the zero-shift minimax level") {
  const Domain d(0.0, 1.0, 120);
  const Exponent pe(2.0);
  const EigenPair eig = first_eigenpair(d, pe);
  REQUIRE(eig.converged);
  MinimaxConfig cfg;
  cfg.beads = 31;
  const double l2 = second_eigenvalue(eig, cfg);
  const oracles::LinearEigs lin = oracles::dense_linear_eigs(d);
  CHECK(l2 == doctest::Approx(lin.lambda2).epsilon(1e-8));
  CHECK(l2 > eig.lambda);
}

TEST_CASE("spectral gap: random descents find no level strictly between the endpoints") {
  const Domain d(0.0, 1.0, 60);
  const Exponent pe(2.0);
  const EigenPair eig = first_eigenpair(d, pe);
  REQUIRE(eig.converged);
  const double s = 5.0;
  const auto samples = sphere_descent_multistart(d, pe, Shift(s), 20, 99, 1e-8, 2);
  int converged = 0;
  for (const auto& sample : samples) {
    if (!sample.converged) continue;
    ++converged;
    const bool inside_gap =
        sample.value > eig.lambda - s + 0.05 && sample.value < eig.lambda - 0.05;
    INFO("converged value ", sample.value);
    CHECK(!inside_gap);
  }
  CHECK(converged >= 15);
}

TEST_CASE("asymmetric energy vanishes at the eigenpair for any negative-side slope") {
  const Domain d(0.0, 1.0, 80);
  const Exponent pe(2.0);
  const EigenPair eig = first_eigenpair(d, pe);
  REQUIRE(eig.converged);
  for (double b : {-7.0, 0.0, 13.0})
    CHECK(std::fabs(fucik_energy(eig.phi.field, {eig.lambda, b}, pe)) <= 1e-9);
}

TEST_CASE("multistart results are worker-count invariant") {
  const Domain d(0.0, 1.0, 40);
  const Exponent pe(2.0);
  const auto serial = sphere_descent_multistart(d, pe, Shift(4.0), 8, 321, 1e-8, 1);
  const auto parallel = sphere_descent_multistart(d, pe, Shift(4.0), 8, 321, 1e-8, 4);
  REQUIRE(serial.size() == parallel.size());
  for (size_t k = 0; k < serial.size(); ++k) {
    CHECK(serial[k].converged == parallel[k].converged);
    CHECK(serial[k].value == parallel[k].value);
  }
}

TEST_CASE("p = 3 eigenvalue against the shooting-verified closed form") {
  const Domain d(0.0, 1.0, 120);
  const Exponent pe(3.0);
  const EigenPair eig = first_eigenpair(d, pe);
  REQUIRE(eig.converged);
  CHECK(eig.lambda == doctest::Approx(oracles::lambda_k_closed(3.0, 1)).epsilon(0.01));
  for (double v : eig.phi.field.values) CHECK(v > 0.0);
}
