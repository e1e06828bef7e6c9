#include <doctest.h>

#include <cmath>

#include "fucik/invariants.hpp"
#include "fucik/json_io.hpp"
#include "oracles.hpp"

using namespace fucik;

TEST_CASE("asymmetric functional: zero field, homogeneity, eigen identity") {
  const Domain d(0.0, 1.0, 80);
  const Exponent pe(2.0);
  const FucikParams ab{17.0, 4.0};
  CHECK(fucik_energy(Field(d), ab, pe) == 0.0);
  CHECK(linf(fucik_energy_grad(Field(d), ab, pe)) == 0.0);

  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    const Field u = random_field(d, rng);
    const double t = rng.uniform(0.1, 4.0);
    const double lhs = fucik_energy(scaled(u, t), ab, pe);
    const double rhs = std::pow(t, pe.p) * fucik_energy(u, ab, pe);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    const Field gl = fucik_energy_grad(scaled(u, t), ab, pe);
    const Field gr = scaled(fucik_energy_grad(u, ab, pe), std::pow(t, pe.p - 1.0));
    CHECK(linf_dist(gl, gr) <= 1e-12 * std::max(1.0, linf(gr)));
  }
}

TEST_CASE("gradients match central finite differences") {
  const Domain d(0.0, 1.0, 60);
  Rng rng(5);
  for (double p : {2.0, 1.5}) {
    const Exponent pe(p);
    const double tol = p == 2.0 ? 1e-5 : 1e-3;
    const Nonlinearity f = make_model_nonlinearity({7.0, 3.0}, {15.0, 22.0}, pe);
    const std::vector<FunctionalHandle> handles = {
        fucik_handle({12.0, 5.0}, pe), shifted_handle(Shift(6.0), pe),
        bvp_handle(f, pe), signed_handle(f, SignRestriction::positive, pe),
        signed_handle(f, SignRestriction::negative, pe)};
    for (const FunctionalHandle& h : handles) {
      double worst = 0.0;
      for (int k = 0; k < 8; ++k) {
        const Field u = random_field(d, rng);
        worst = std::max(worst, fd_gradient_mismatch(h, u, rng));
      }
      INFO(h.tag, " p=", p);
      CHECK(worst <= tol);
    }
  }
}

TEST_CASE("restriction identity on the unit sphere") {
  const Domain d(0.0, 1.0, 90);
  Rng rng(9);
  for (double p : {2.0, 1.5, 3.0}) {
    const Exponent pe(p);
    for (int k = 0; k < 10; ++k) {
      const SpherePoint w = normalize(random_field(d, rng), pe);
      const double b = rng.uniform(-10.0, 30.0);
      const double a = b + rng.uniform(0.0, 40.0);
      const double lhs = fucik_energy(w.field, {a, b}, pe);
      const double rhs = sphere_energy(w, Shift(a - b)) - b;
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("sphere_energy rejects off-sphere input at the type boundary") {
  const Domain d(0.0, 1.0, 30);
  const Exponent pe(2.0);
  Field u = interpolate(d, [](double x) { return x * (1.0 - x); });
  CHECK_THROWS_AS(SpherePoint(u, pe), Error);
  const SpherePoint w = normalize(u, pe);
  CHECK(lp_norm(w.field, pe) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("reaction functional reduces to the asymmetric one for pure power data") {
  const Domain d(0.0, 1.0, 70);
  Rng rng(13);
  for (double p : {2.0, 1.5}) {
    const Exponent pe(p);
    const FucikParams ab{9.0, 14.0};
    const Nonlinearity f = make_model_nonlinearity(ab, ab, pe);
    CHECK(f.pure());
    for (int k = 0; k < 6; ++k) {
      const Field u = random_field(d, rng, 3.0);
      const double phi = bvp_energy(u, f, pe);
      const double i = fucik_energy(u, ab, pe);
      CHECK(phi == doctest::Approx(i).epsilon(1e-14));
      CHECK(linf_dist(bvp_energy_grad(u, f, pe), fucik_energy_grad(u, ab, pe)) <=
            1e-13 * std::max(1.0, linf(fucik_energy_grad(u, ab, pe))));
    }
  }
}

TEST_CASE("sign-restricted functionals: inactive truncation and energy-only side") {
  const Domain d(0.0, 1.0, 50);
  const Exponent pe(2.0);
  const Nonlinearity f = make_model_nonlinearity({6.0, 3.0}, {18.0, 25.0}, pe);
  const Field pos = interpolate(d, [](double x) { return x * (1.0 - x); });
  CHECK(signed_energy(pos, f, SignRestriction::positive, pe) ==
        doctest::Approx(bvp_energy(pos, f, pe)).epsilon(1e-14));
  const Field neg = scaled(pos, -2.0);
  CHECK(signed_energy(neg, f, SignRestriction::positive, pe) ==
        doctest::Approx(dirichlet_energy(neg, pe)).epsilon(1e-14));
  CHECK(signed_energy(neg, f, SignRestriction::negative, pe) ==
        doctest::Approx(bvp_energy(neg, f, pe)).epsilon(1e-14));
}

TEST_CASE("perturbed functional: shells, gradient, rejection paths") {
  const Domain d(0.0, 1.0, 60);
  const Exponent pe(2.0);
  const Nonlinearity f = make_model_nonlinearity({20.0, 20.0}, {5.0, 5.0}, pe);
  PerturbationSpec pert;
  pert.rho = 0.8;
  pert.R = 3.0;
  const FucikParams ab0{20.0, 20.0}, ab{5.0, 5.0};
  const FunctionalHandle phit = build_perturbed_energy(f, ab0, ab, pert, pe);

  Rng rng(17);
  auto at_norm = [&](double nu) {
    Field u = random_field(d, rng);
    return scaled(u, nu / seminorm(u, pe));
  };
  SUBCASE("exact-match shells") {
    const Field u1 = at_norm(0.25 * pert.rho);
    CHECK(phit.value(u1) ==
          doctest::Approx(fucik_energy(u1, ab0, pe)).epsilon(1e-14));
    const Field u2 = at_norm(0.5 * (pert.rho + pert.R));
    CHECK(phit.value(u2) == doctest::Approx(bvp_energy(u2, f, pe)).epsilon(1e-14));
    const Field u3 = at_norm(2.5 * pert.R);
    CHECK(phit.value(u3) == doctest::Approx(fucik_energy(u3, ab, pe)).epsilon(1e-14));
  }
  SUBCASE("finite-difference gradient across the blend shells") {
    for (double nu : {0.7 * pert.rho, 0.95 * pert.rho, 1.4 * pert.R, 1.9 * pert.R}) {
      const Field u = at_norm(nu);
      CHECK(fd_gradient_mismatch(phit, u, rng) <= 1e-4);
    }
  }
  SUBCASE("invalid radii and spectrum guard rejection") {
    PerturbationSpec bad = pert;
    bad.R = 0.5 * bad.rho;
    CHECK_THROWS_AS(build_perturbed_energy(f, ab0, ab, bad, pe), Error);
    const SpectrumGuard guard = [](const FucikParams& q) -> std::optional<std::string> {
      if (q.a > 10.0) return "too close to the sampled curve";
      return std::nullopt;
    };
    CHECK_THROWS_AS(build_perturbed_energy(f, ab0, ab, pert, pe, guard), Error);
    const FucikParams ok0{5.0, 5.0};
    CHECK_NOTHROW(build_perturbed_energy(f, ok0, ab, pert, pe, guard));
  }
}

TEST_CASE("cutoff profiles have the declared plateaus and C1 shape") {
  const CutoffProfile in = inner_cutoff(), out = outer_cutoff();
  CHECK(in.value(0.0) == 1.0);
  CHECK(in.value(0.5) == 1.0);
  CHECK(in.value(1.0) == 0.0);
  CHECK(in.value(2.0) == 0.0);
  CHECK(out.value(0.5) == 0.0);
  CHECK(out.value(1.0) == 0.0);
  CHECK(out.value(2.0) == 1.0);
  for (double t = 0.0; t <= 2.5; t += 0.01) {
    CHECK(in.value(t) >= -1e-15);
    CHECK(in.value(t) <= 1.0 + 1e-15);
    CHECK(in.value(t + 0.01) <= in.value(t) + 1e-15);   // monotone down
    CHECK(out.value(t + 0.01) >= out.value(t) - 1e-15); // monotone up
    const double fd = (in.value(t + 1e-6) - in.value(t - 1e-6)) / 2e-6;
    CHECK(fd == doctest::Approx(in.derivative(t)).epsilon(1e-4).scale(1.0));
  }
}

TEST_CASE("nonlinearity and perturbation specs round-trip through JSON") {
  const Exponent pe(1.5);
  const Nonlinearity f = make_model_nonlinearity({4.0, 7.0}, {11.0, 2.0}, pe, 0.2, 1.7);
  const Nonlinearity g = nonlinearity_from_json(nonlinearity_to_json(f));
  for (double t : {-3.0, -0.5, -0.1, 0.0, 0.15, 0.9, 2.5}) {
    CHECK(g.f(t) == f.f(t));
    CHECK(g.F(t) == f.F(t));
  }
  PerturbationSpec pert;
  pert.rho = 0.4;
  pert.R = 2.2;
  const PerturbationSpec q = perturbation_from_json(perturbation_to_json(pert));
  CHECK(q.rho == pert.rho);
  CHECK(q.R == pert.R);
  CHECK(q.norm_used == pert.norm_used);
}

TEST_CASE("reaction functional vanishes on the zero field") {
  const Domain d(0.0, 1.0, 30);
  for (double p : {2.0, 1.5}) {
    const Exponent pe(p);
    const Nonlinearity f = make_model_nonlinearity({9.0, 4.0}, {17.0, 6.0}, pe);
    CHECK(bvp_energy(Field(d), f, pe) == 0.0);
    CHECK(linf(bvp_energy_grad(Field(d), f, pe)) == 0.0);
  }
}
