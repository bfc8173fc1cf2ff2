"""Stationary-phase formulas against brute-force quadrature oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semiwig.errors import (AccuracyError, DegeneratePointError, DomainError,
                            UnsupportedError)
from semiwig.specfun import airy_ai_aip
from semiwig.stationary_phase import (PhaseModel, StationaryPointSet,
                                      airy_decompose, find_saddles,
                                      oscillatory_quadrature, standard_sp,
                                      standard_sp_2d, uniform_sp)


def _z(s):
    return np.zeros_like(np.asarray(s, dtype=float))


def _ones(s):
    return np.ones_like(np.asarray(s, dtype=float))


def cubic_model(amplitude=_ones):
    return PhaseModel(
        phi=lambda s, a: s ** 3 / 3.0 - a * s,
        dphi=lambda s, a: s * s - a,
        d2phi=lambda s, a: 2.0 * np.asarray(s, dtype=float),
        d3phi=lambda s, a: 2.0 + _z(s),
        amplitude=amplitude)


def quadratic_model(sign=+1.0):
    return PhaseModel(
        phi=lambda s, a: sign * s * s,
        dphi=lambda s, a: sign * 2.0 * np.asarray(s, dtype=float),
        d2phi=lambda s, a: sign * 2.0 + _z(s),
        d3phi=lambda s, a: _z(s),
        amplitude=_ones)


def test_phase_model_derivative_gate():
    with pytest.raises(DomainError):
        PhaseModel(phi=lambda s, a: s ** 3 / 3.0 - a * s,
                   dphi=lambda s, a: s * s + 1.0 - a,   # wrong derivative
                   d2phi=lambda s, a: 2.0 * np.asarray(s, dtype=float),
                   d3phi=lambda s, a: 2.0 + _z(s),
                   amplitude=_ones)


# ---------------------------------------------------------------------------
# quadrature oracle
# ---------------------------------------------------------------------------

def test_quadrature_gaussian_fresnel():
    model = PhaseModel(
        phi=lambda s, a: s * s, dphi=lambda s, a: 2.0 * np.asarray(s, dtype=float),
        d2phi=lambda s, a: 2.0 + _z(s), d3phi=lambda s, a: _z(s),
        amplitude=lambda s: np.exp(-np.asarray(s, dtype=float) ** 2))
    got = oscillatory_quadrature(model, 1.0, (-10.0, 10.0))
    ref = complex(np.sqrt(np.pi / (1.0 - 1.0j)))   # closed complex Gaussian
    assert abs(got - ref) < 1e-8


def test_quadrature_plane_wave():
    model = PhaseModel(lambda s, a: np.asarray(s, dtype=float),
                       lambda s, a: _ones(s), lambda s, a: _z(s),
                       lambda s, a: _z(s), _ones)
    got = oscillatory_quadrature(model, 50.0, (-1.0, 1.0))
    assert abs(got - 2.0 * math.sin(50.0) / 50.0) < 1e-10


def test_quadrature_airy_representation():
    # window-truncated integral of e^{i lam (s^3/3 - s)}; the boundary terms
    # of the non-decaying integrand limit the match to O(1/(lam phi'(edge)))
    got = oscillatory_quadrature(cubic_model(), 20.0, (-8.0, 8.0), alpha=1.0)
    ref = 2.0 * math.pi * 20.0 ** (-1.0 / 3.0) * airy_ai_aip(-20.0 ** (2.0 / 3.0))[0]
    assert abs(got - ref) / abs(ref) < 5e-3


def test_quadrature_budget_error():
    model = cubic_model()
    with pytest.raises(AccuracyError) as err:
        oscillatory_quadrature(model, 5e6, (-50.0, 50.0), alpha=1.0, tol=1e-14)
    assert err.value.achieved is not None and err.value.achieved > 0.0


# ---------------------------------------------------------------------------
# standard stationary phase
# ---------------------------------------------------------------------------

def test_standard_sp_exact_values():
    got = standard_sp(quadratic_model(+1.0), 100.0, 0.0)
    ref = math.sqrt(math.pi / 100.0) * np.exp(1j * math.pi / 4.0)
    assert abs(got - ref) < 1e-15
    # mu = -1 mirror
    got_m = standard_sp(quadratic_model(-1.0), 100.0, 0.0)
    assert abs(got_m - np.conj(ref)) < 1e-15


def test_standard_sp_degenerate():
    with pytest.raises(DegeneratePointError):
        standard_sp(cubic_model(), 10.0, 0.0, alpha=0.0)   # phi'' = 0 at 0


def test_standard_sp_error_order():
    # single saddle isolated by a narrow Gaussian: error = O(lam^{-3/2})
    c = 0.5
    model = cubic_model(lambda s: np.exp(-16.0 * (np.asarray(s, dtype=float) - c) ** 2))
    lams = np.array([50.0, 100.0, 200.0, 400.0])
    errs = []
    for lam in lams:
        q = oscillatory_quadrature(model, float(lam), (-6.0, 6.0), alpha=0.25)
        s = standard_sp(model, float(lam), c, alpha=0.25)
        errs.append(abs(q - s))
    slope = np.polyfit(np.log(lams), np.log(errs), 1)[0]
    assert slope == pytest.approx(-1.5, abs=0.2)
    assert errs[0] > errs[-1]


# ---------------------------------------------------------------------------
# two-dimensional formula
# ---------------------------------------------------------------------------

def test_standard_sp_2d_values():
    got = standard_sp_2d(1.0, [[2.0, 0.0], [0.0, 2.0]], 0.0, 10.0)
    assert abs(got - 2.0j * math.pi / 20.0) < 1e-15           # delta = +1
    got = standard_sp_2d(1.0, [[2.0, 0.0], [0.0, -2.0]], 0.0, 10.0)
    assert abs(got - 2.0 * math.pi / 20.0) < 1e-15            # delta = 0, real
    got = standard_sp_2d(1.0, [[-2.0, 0.0], [0.0, -2.0]], 0.0, 10.0)
    assert abs(got + 2.0j * math.pi / 20.0) < 1e-15           # delta = -1
    with pytest.raises(DegeneratePointError):
        standard_sp_2d(1.0, [[1.0, 1.0], [1.0, 1.0]], 0.0, 10.0)


def test_standard_sp_2d_against_2d_quadrature():
    # one nondegenerate saddle of Phi = u^3/3 + u(x^2 - a^2) at (u, x) = (a, 0),
    # isolated with a Gaussian cutoff; oracle = dense 2-D trapezoid
    a = 1.0
    lam = 60.0
    cut = lambda u, x: np.exp(-12.0 * ((u - a) ** 2 + x ** 2))
    us = np.linspace(a - 1.0, a + 1.0, 1200)
    xs = np.linspace(-1.0, 1.0, 1200)
    U, X = np.meshgrid(us, xs, indexing="ij")
    phi = U ** 3 / 3.0 + U * (X ** 2 - a ** 2)
    integrand = cut(U, X) * np.exp(1j * lam * phi)
    oracle = np.trapezoid(np.trapezoid(integrand, xs, axis=1), us)
    # Hessian at (a, 0): phi_uu = 2a, phi_xx = 2a, phi_ux = 0; phase -2a^3/3
    got = standard_sp_2d(1.0, [[2.0 * a, 0.0], [0.0, 2.0 * a]],
                         -2.0 * a ** 3 / 3.0, lam)
    assert abs(got - oracle) / abs(oracle) < 2e-2


def test_airy_decomposition_coefficients_via_2d_saddles():
    # the four saddles of Phi = u^3/3 + u(x^2 - a^2) reproduce the two-peak
    # weights eps/(2a) and the center weight (1/a) sin(2 a^3/(3 eps^{3/2}))
    a = 1.0
    for eps in (0.05, 0.02):
        lam = eps ** -1.5
        # peak saddles (u = 0, x = +/-a): Hessian [[0, 2a], [2a, 0]]
        peak = standard_sp_2d(1.0, [[0.0, 2.0 * a], [2.0 * a, 0.0]], 0.0, lam)
        assert abs(peak - 2.0 * math.pi / (lam * 2.0 * a)) < 1e-14
        # interior saddles (u = +/-a, x = 0) carry the oscillation
        up = standard_sp_2d(1.0, [[2.0 * a, 0.0], [0.0, 2.0 * a]],
                            -2.0 * a ** 3 / 3.0, lam)
        dn = standard_sp_2d(1.0, [[-2.0 * a, 0.0], [0.0, -2.0 * a]],
                            2.0 * a ** 3 / 3.0, lam)
        combo = (up + dn) * lam / (2.0 * math.pi)      # strip 2 pi/lam measure
        expect = (2.0 / (2.0 * a)) * math.sin(lam * 2.0 * a ** 3 / 3.0)
        assert abs(combo - expect) < 1e-12


# ---------------------------------------------------------------------------
# saddle location/classification
# ---------------------------------------------------------------------------

def test_find_saddles_cubic_cases():
    model = cubic_model()
    s = find_saddles(model, 0.25, (-2.0, 2.0))
    assert s.kind == "two_real"
    assert s.points == pytest.approx([-0.5, 0.5], abs=1e-12)
    assert s.second_derivs[0] < 0.0 < s.second_derivs[1]

    s0 = find_saddles(model, 0.0, (-2.0, 2.0))
    assert s0.kind == "coalesced"
    assert s0.points[0] == pytest.approx(0.0, abs=1e-9)

    sm = find_saddles(model, -0.25, (-2.0, 2.0))
    assert sm.kind == "complex_pair"
    assert sm.points[0] == pytest.approx(0.0, abs=1e-9)
    assert sm.points[1] == pytest.approx(0.5, abs=1e-9)

    none = find_saddles(quadratic_model(), 0.0, (1.0, 2.0))
    assert none.kind == "none"


@given(st.floats(0.01, 1.0))
@settings(max_examples=40, deadline=None)
def test_find_saddles_residual_property(alpha):
    model = cubic_model()
    s = find_saddles(model, alpha, (-2.5, 2.5))
    assert s.kind == "two_real"
    for p in s.points:
        assert abs(model.dphi(p, alpha)) < 1e-10


# ---------------------------------------------------------------------------
# uniform formula
# ---------------------------------------------------------------------------

def test_uniform_sp_exact_on_normal_form():
    # the cubic with unit amplitude *is* the normal form: the uniform value
    # must equal 2 pi lam^{-1/3} Ai(-lam^{2/3} alpha) to rounding
    model = cubic_model()
    for alpha in (0.25, 0.0):
        sad = find_saddles(model, alpha, (-2.0, 2.0))
        res = uniform_sp(model, 30.0, sad)
        ref = 2.0 * math.pi * 30.0 ** (-1.0 / 3.0) * \
            airy_ai_aip(-30.0 ** (2.0 / 3.0) * alpha)[0]
        assert abs(res.value - ref) < 1e-12
        assert res.xi == pytest.approx(alpha, abs=1e-12)
        assert abs(res.b0) < 1e-12
    # coalescence amplitude A0 = f(x0) (2/|phi'''|)^{1/3}
    sad = find_saddles(model, 0.0, (-2.0, 2.0))
    res = uniform_sp(model, 30.0, sad)
    assert res.a0 == pytest.approx(1.0, abs=1e-12)


def test_uniform_sp_two_real_invariants():
    model = cubic_model(lambda s: np.exp(-np.asarray(s, dtype=float) ** 2))
    sad = find_saddles(model, 0.25, (-2.0, 2.0))
    res = uniform_sp(model, 30.0, sad)
    # phi0 is the mean saddle phase, xi >= 0 for real saddles
    p1 = float(model.phi(sad.points[0], 0.25))
    p2 = float(model.phi(sad.points[1], 0.25))
    assert res.phi0 == pytest.approx(0.5 * (p1 + p2), abs=1e-10)
    assert res.xi >= 0.0
    # 3%-level agreement with the quadrature oracle (spec-scale example)
    q = oscillatory_quadrature(model, 30.0, (-8.0, 8.0), alpha=0.25)
    assert abs(res.value - q) / abs(q) < 0.03


def test_uniform_sp_matching_law():
    # at fixed alpha away from coalescence, uniform - sum(standard) -> 0
    model = cubic_model(lambda s: np.exp(-np.asarray(s, dtype=float) ** 2))
    alpha = 0.4
    rel = []
    for lam in (50.0, 200.0, 800.0):
        sad = find_saddles(model, alpha, (-2.0, 2.0))
        u = uniform_sp(model, lam, sad)
        s = sum(standard_sp(model, lam, p, alpha=alpha) for p in sad.points)
        rel.append(abs(u.value - s) / abs(u.value))
    assert rel[0] > rel[1] > rel[2]
    assert rel[-1] < 1e-3


def test_uniform_sp_complex_pair_modes():
    model = cubic_model()
    sad = find_saddles(model, -0.25, (-2.0, 2.0))
    with pytest.raises(UnsupportedError):
        uniform_sp(model, 30.0, sad)
    res = uniform_sp(model, 30.0, sad, formal=True)
    # formal continuation reproduces the Airy value at negative xi exactly
    # for the normal form (no accuracy promise in general)
    ref = 2.0 * math.pi * 30.0 ** (-1.0 / 3.0) * \
        airy_ai_aip(30.0 ** (2.0 / 3.0) * 0.25)[0]
    assert abs(res.value - ref) / abs(ref) < 1e-10
    assert res.xi == pytest.approx(-0.25, abs=1e-10)


def test_uniform_sp_rejects_none():
    with pytest.raises(DomainError):
        uniform_sp(cubic_model(), 10.0, StationaryPointSet("none", [], [], 0.0))


# ---------------------------------------------------------------------------
# Airy decomposition
# ---------------------------------------------------------------------------

def test_airy_decompose_peak_values():
    eps, alpha = 0.05, 1.0
    d = airy_decompose(1.0, alpha, eps)       # x exactly at +alpha
    assert d.right_peak == pytest.approx(airy_ai_aip(0.0)[0] / (2.0 * alpha * eps),
                                         rel=1e-12)
    d = airy_decompose(-1.0, alpha, eps)
    assert d.left_peak == pytest.approx(airy_ai_aip(0.0)[0] / (2.0 * alpha * eps),
                                        rel=1e-12)
    with pytest.raises(DegeneratePointError):
        airy_decompose(0.0, 1e-9, eps)


def test_airy_decompose_small_eps_limit():
    # both sides tested weakly converge to (phi(1) + phi(-1))/2 as eps -> 0
    alpha = 1.0
    phi = lambda x: np.exp(-2.0 * (x - 1.0) ** 2) + 0.5 * np.exp(-3.0 * (x + 1.0) ** 2)
    target = 0.5 * (phi(alpha) + phi(-alpha))
    vals = []
    for eps in (0.05, 0.02, 0.008):
        x = np.linspace(-3.5, 3.5, 20001)
        lhs = np.trapezoid(airy_ai_aip((x * x - alpha * alpha) / eps)[0] / eps
                           * phi(x), x)
        vals.append(lhs)
    assert abs(vals[-1] - target) < 0.02
    assert abs(vals[-1] - target) < abs(vals[0] - target)
