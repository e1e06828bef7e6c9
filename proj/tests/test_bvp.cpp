#include <doctest.h>

#include <cmath>

#include "fucik/json_io.hpp"
#include "oracles.hpp"

using namespace fucik;

namespace {

struct Setup {
  Domain d{0.0, 1.0, 100};
  Exponent pe{2.0};
  EigenPair eig;
  SpectrumData spec;
};

const Setup& shared_setup() {
  static const Setup s = [] {
    const Domain d(0.0, 1.0, 100);
    const Exponent pe(2.0);
    EigenPair eig = first_eigenpair(d, pe);
    REQUIRE(eig.converged);
    TraceOptions topts;
    SpectrumData spec = trace_curve(eig, {0.0, 10.0, 25.0, 50.0}, topts);
    return Setup{d, pe, eig, spec};
  }();
  return s;
}

BvpConfig quick_config() {
  BvpConfig cfg;
  cfg.tol = 1e-8;
  cfg.restarts = 20;
  cfg.path_cfg.beads = 31;
  cfg.seed = 2024;
  return cfg;
}

}  // namespace

TEST_CASE("model nonlinearity: exact asymptotics and consistent primitive") {
  const Exponent pe(2.0);
  const Nonlinearity f = make_model_nonlinearity({7.0, 3.0}, {18.0, 25.0}, pe, 0.1, 1.0);

  // small-t clause is exact on the dyadic ladder below t_small
  for (int k = 1; k <= 8; ++k) {
    const double t = 0.1 / std::pow(2.0, k);
    CHECK(f.f(t) / std::pow(t, pe.p - 1.0) == doctest::Approx(7.0).epsilon(1e-13));
    CHECK(f.f(-t) / -std::pow(t, pe.p - 1.0) == doctest::Approx(3.0).epsilon(1e-13));
  }
  // exact tails beyond t_large
  CHECK(f.f(4.0) == doctest::Approx(18.0 * 4.0).epsilon(1e-14));
  CHECK(f.f(-4.0) == doctest::Approx(-25.0 * 4.0).epsilon(1e-14));
  CHECK(f.F(0.0) == 0.0);

  // F' = f across all three pieces, central differences at 1000 points
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double t = -2.5 + 5.0 * k / 999.0;
    const double h = 1e-6;
    const double fd = (f.F(t + h) - f.F(t - h)) / (2.0 * h);
    worst = std::max(worst, std::fabs(fd - f.f(t)) / std::max(1.0, std::fabs(f.f(t))));
  }
  CHECK(worst <= 1e-6);

  // continuity at the seams
  for (double t : {0.1, 1.0}) {
    CHECK(f.f(t - 1e-12) == doctest::Approx(f.f(t + 1e-12)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(make_model_nonlinearity({1, 1}, {2, 2}, pe, 1.0, 0.5), Error);
}

TEST_CASE("fractional p: primitive matches numerical quadrature of f") {
  const Exponent pe(1.5);
  const Nonlinearity f = make_model_nonlinearity({4.0, 9.0}, {12.0, 2.0}, pe, 0.2, 1.5);
  for (double T : {0.15, 0.7, 2.2, -0.4, -1.9}) {
    // trapezoid refinement as the independent oracle
    const int n = 20000;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const double t0 = T * k / n, t1 = T * (k + 1) / n;
      acc += 0.5 * (f.f(t0) + f.f(t1)) * (t1 - t0);
    }
    CHECK(f.F(T) == doctest::Approx(acc).epsilon(1e-6));
  }
}

TEST_CASE("weak-form residual assembly agrees with the functional gradient") {
  const Setup& s = shared_setup();
  Rng rng(77);
  const Nonlinearity f = make_model_nonlinearity({5.0, 5.0}, {20.0, 20.0}, s.pe);
  for (int k = 0; k < 10; ++k) {
    const Field u = random_field(s.d, rng, 2.0);
    const Field g = bvp_energy_grad(u, f, s.pe);
    const Field r = assemble_weak_residual(u, f, s.pe);
    double diff = 0.0;
    for (int i = 0; i < u.size(); ++i)
      diff = std::max(diff, std::fabs(g.values[i] - s.pe.p * r.values[i]));
    CHECK(diff <= 1e-12 * (1.0 + norm2(g)));
  }
}

TEST_CASE("signed solver: crossing from below produces a one-signed solution") {
  const Setup& s = shared_setup();
  const Nonlinearity f = make_model_nonlinearity({5.0, 5.0}, {20.0, 20.0}, s.pe);
  const BvpConfig cfg = quick_config();

  const SignedSolveResult rp = solve_signed(f, SignRestriction::positive, s.eig, cfg);
  REQUIRE(rp.solution.has_value());
  CHECK(rp.crossing_holds);
  CHECK(rp.solution->residual <= 1e-8);
  CHECK(rp.solution->sign == SolutionSign::positive);
  for (double v : rp.solution->u.values) CHECK(v > 0.0);
  CHECK(linf(negative_part(rp.solution->u)) <= 1e-6);

  const SignedSolveResult rm = solve_signed(f, SignRestriction::negative, s.eig, cfg);
  REQUIRE(rm.solution.has_value());
  CHECK(rm.solution->sign == SolutionSign::negative);
  for (double v : rm.solution->u.values) CHECK(v < 0.0);
}

TEST_CASE("signed solver: no crossing certifies only the trivial solution") {
  const Setup& s = shared_setup();
  const Nonlinearity f = make_model_nonlinearity({5.0, 5.0}, {5.0, 5.0}, s.pe);
  const BvpConfig cfg = quick_config();
  const SignedSolveResult r = solve_signed(f, SignRestriction::positive, s.eig, cfg);
  CHECK(!r.crossing_holds);
  CHECK(!r.solution.has_value());
  CHECK(r.only_trivial_found);
  CHECK(r.restarts_used >= 20);
}

TEST_CASE("signed minimizers transfer to local minimizers of the full functional") {
  const Setup& s = shared_setup();
  // coercive crossing: zero slopes above, infinity slopes below the eigenvalue
  const Nonlinearity f = make_model_nonlinearity({45.0, 45.0}, {5.0, 5.0}, s.pe);
  const BvpConfig cfg = quick_config();
  const SignedSolveResult r = solve_signed(f, SignRestriction::positive, s.eig, cfg);
  REQUIRE(r.solution.has_value());
  const Field& u0 = r.solution->u;
  const double phi0 = bvp_energy(u0, f, s.pe);
  CHECK(phi0 < 0.0);
  Rng rng(123);
  for (int k = 0; k < 200; ++k) {
    Field v = random_field(s.d, rng);
    v = scaled(v, rng.uniform(0.0, 1e-3) / norm2(v));
    Field probe = u0;
    add_scaled(probe, 1.0, v);
    CHECK(bvp_energy(probe, f, s.pe) >= phi0 - 1e-10);
  }
}

TEST_CASE("three-solution scenario at desk scale") {
  const Setup& s = shared_setup();
  const Nonlinearity f = make_model_nonlinearity({45.0, 45.0}, {5.0, 5.0}, s.pe);
  BvpConfig cfg = quick_config();
  cfg.tol = 1e-7;
  const SolveReport report = solve_third(f, s.spec, s.eig, cfg);
  REQUIRE(report.all_required_found);
  REQUIRE(report.solutions.size() >= 3);

  bool pos = false, neg = false;
  for (const Solution& sol : report.solutions) {
    CHECK(sol.residual <= 1e-6);
    CHECK(linf(sol.u) > 1e-3);
    pos = pos || sol.sign == SolutionSign::positive;
    neg = neg || sol.sign == SolutionSign::negative;
  }
  CHECK(pos);
  CHECK(neg);
  for (size_t i = 0; i < report.solutions.size(); ++i)
    for (size_t j = i + 1; j < report.solutions.size(); ++j)
      CHECK(report.distances[i][j] >= 0.05);

  // signed minimizer energies are negative
  CHECK(report.solutions[0].energy < 0.0);
  CHECK(report.solutions[1].energy < 0.0);
  REQUIRE(report.perturbation.has_value());
  CHECK(report.perturbation->rho < report.perturbation->R);
}

TEST_CASE("three-solution scenario rejects the swapped hypothesis") {
  const Setup& s = shared_setup();
  const Nonlinearity f = make_model_nonlinearity({5.0, 5.0}, {45.0, 45.0}, s.pe);
  CHECK_THROWS_WITH_AS(solve_third(f, s.spec, s.eig, quick_config()),
                       doctest::Contains("hypothesis violated"), Error);
}

TEST_CASE("multiplicity dispatcher selects and certifies the applicable scenarios") {
  const Setup& s = shared_setup();
  BvpConfig cfg = quick_config();

  SUBCASE("lower-left to upper region: positive and negative solutions") {
    const SolveReport r = multiplicity_experiment({5.0, 5.0}, {20.0, 20.0}, s.spec, s.eig, cfg);
    CHECK(r.all_required_found);
    CHECK(std::find(r.scenarios.begin(), r.scenarios.end(), "fixed_sign_pair") !=
          r.scenarios.end());
    bool pos = false, neg = false;
    for (const Solution& sol : r.solutions) {
      pos = pos || sol.sign == SolutionSign::positive;
      neg = neg || sol.sign == SolutionSign::negative;
    }
    CHECK(pos);
    CHECK(neg);
  }
  SUBCASE("curve crossing with both pairs above the upper lines") {
    const SolveReport r =
        multiplicity_experiment({20.0, 20.0}, {45.0, 45.0}, s.spec, s.eig, cfg);
    CHECK(r.scenarios == std::vector<std::string>{"nontrivial_via_curve_crossing"});
    CHECK(r.all_required_found);
    REQUIRE(!r.solutions.empty());
    for (const Solution& sol : r.solutions) CHECK(sol.residual <= 1e-6);
  }
  SUBCASE("equal labels promise nothing") {
    const SolveReport r = multiplicity_experiment({4.0, 5.0}, {5.0, 4.0}, s.spec, s.eig, cfg);
    CHECK(r.scenarios.empty());
    CHECK(r.all_required_found);
    REQUIRE(!r.notes.empty());
    CHECK(r.notes.front().find("no applicable scenario") != std::string::npos);
  }
  SUBCASE("resonant band points are refused") {
    CHECK_THROWS_AS(
        multiplicity_experiment({s.eig.lambda, 5.0}, {20.0, 20.0}, s.spec, s.eig, cfg),
        Error);
  }
}

TEST_CASE("solve report serialization carries the certification data") {
  const Setup& s = shared_setup();
  BvpConfig cfg = quick_config();
  const SolveReport r = multiplicity_experiment({5.0, 5.0}, {20.0, 20.0}, s.spec, s.eig, cfg);
  const json j = solve_report_json(r);
  CHECK(j.at("all_required_found").get<bool>() == r.all_required_found);
  CHECK(j.at("solutions").size() == r.solutions.size());
  CHECK(j.at("distances").size() == r.solutions.size());
}
