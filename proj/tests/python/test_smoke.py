"""Smoke tests for the python bindings (built module on PYTHONPATH)."""

import math

import pytest

import fucik1d as fk

PI = math.pi


@pytest.fixture(scope="module")
def domain():
    return fk.Domain(0.0, 1.0, 100)


@pytest.fixture(scope="module")
def p2():
    return fk.Exponent(2.0)


@pytest.fixture(scope="module")
def eig(domain, p2):
    pair = fk.first_eigenpair(domain, p2, tol=1e-8)
    assert pair.converged
    return pair


def test_version_and_types(domain, p2):
    assert fk.__version__
    assert domain.n_interior == 100
    assert domain.h == pytest.approx(1.0 / 101.0)
    assert p2.eps_reg == 0.0
    assert fk.Exponent(1.5).eps_reg == pytest.approx(1e-8)


def test_norms_and_parts(domain, p2):
    u = fk.interpolate(domain, lambda x: math.sin(PI * x))
    assert fk.lp_norm(u, p2) == pytest.approx(math.sqrt(0.5), rel=1e-3)
    assert fk.dirichlet_energy(u, p2) == pytest.approx(PI * PI / 2.0, rel=1e-2)
    v = fk.interpolate(domain, lambda x: math.sin(2.0 * PI * x))
    plus, minus = fk.positive_part(v), fk.negative_part(v)
    assert all(a - b == c for a, b, c in zip(plus.values, minus.values, v.values))


def test_degenerate_normalize_rejected(domain, p2):
    with pytest.raises(fk.FucikError):
        fk.normalize(fk.Field(domain, [0.0] * domain.n_interior), p2)
    w = fk.normalize(fk.interpolate(domain, lambda x: x * (1.0 - x)), p2)
    assert fk.lp_norm(w.field, p2) == pytest.approx(1.0, abs=1e-12)


def test_first_eigenpair(eig):
    assert eig.lambda1 == pytest.approx(PI * PI, rel=0.01)
    assert eig.residual < 1e-8
    assert all(v > 0.0 for v in eig.phi.field.values)


def test_mountain_pass_and_relation(eig):
    cfg = fk.MinimaxConfig()
    cfg.beads = 31
    res = fk.mountain_pass(8.0, eig, cfg)
    assert res.converged
    a, b = 8.0 + res.c, res.c
    assert abs(PI / math.sqrt(a) + PI / math.sqrt(b) - 1.0) < 0.03


def test_trace_and_classify(eig):
    cfg = fk.MinimaxConfig()
    cfg.beads = 31
    spec = fk.trace_curve(eig, [0.0, 5.0], cfg)
    assert spec.monotone_ok
    assert spec.lambda2 == pytest.approx(4.0 * PI * PI, rel=0.02)

    label, groups, _ = fk.classify(5.0, 5.0, spec)
    assert label == "below_Cl1"
    assert groups == ["C_q = δ_{q0}ℤ"]
    label, groups, _ = fk.classify(20.0, 5.0, spec)
    assert label == "between_Cl1_Cu1"
    label, groups, _ = fk.classify(12.0, 12.0, spec)
    assert label == "between_Cu1_C2"

    round_tripped = fk.spectrum_from_json(spec.to_json())
    assert round_tripped.lambda1 == spec.lambda1


def test_nonlinearity(p2):
    f = fk.make_model_nonlinearity(5.0, 5.0, 20.0, 20.0, p2)
    assert f.f(0.05) == pytest.approx(5.0 * 0.05)
    assert f.f(2.0) == pytest.approx(20.0 * 2.0)
    h = 1e-6
    for t in (-1.5, -0.3, 0.07, 0.5, 3.0):
        fd = (f.F(t + h) - f.F(t - h)) / (2.0 * h)
        assert fd == pytest.approx(f.f(t), rel=1e-5, abs=1e-8)


def test_multiplicity_pair(eig):
    cfg = fk.MinimaxConfig()
    cfg.beads = 31
    spec = fk.trace_curve(eig, [0.0, 5.0], cfg)
    bcfg = fk.BvpConfig()
    bcfg.tol = 1e-7
    report = fk.multiplicity_experiment(
        fk.FucikParams(5.0, 5.0), fk.FucikParams(20.0, 20.0), spec, eig, bcfg)
    assert report.all_required_found
    signs = {s.sign for s in report.solutions}
    assert {"positive", "negative"} <= signs
    for s in report.solutions:
        assert s.residual < 1e-6
