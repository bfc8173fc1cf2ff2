"""Special-function accuracy against independent extended-precision oracles."""

import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semiwig.errors import CapabilityError, DomainError
from semiwig.specfun import (AI_ZERO, AIP_ZERO, airy, airy_ai_aip, airy_scaled,
                             hermite, hermite_function, laguerre,
                             laguerre_airy, laguerre_scaled, log_gamma)

mp.mp.dps = 40


# ---------------------------------------------------------------------------
# Airy
# ---------------------------------------------------------------------------

def maclaurin_airy_oracle(z, terms=50):
    """Extended-precision Maclaurin series for Ai (independent of the library)."""
    z = mp.mpf(z)
    c1 = mp.mpf(3) ** mp.mpf(-2.0 / 3.0) / mp.gamma(mp.mpf(2) / 3)
    c2 = mp.mpf(3) ** mp.mpf(-1.0 / 3.0) / mp.gamma(mp.mpf(1) / 3)
    f = mp.mpf(1)
    g = z
    tf, tg = mp.mpf(1), z
    for k in range(1, terms):
        tf *= z ** 3 / ((3 * k) * (3 * k - 1))
        tg *= z ** 3 / ((3 * k + 1) * (3 * k))
        f += tf
        g += tg
    return c1 * f - c2 * g


def test_airy_at_zero_frozen():
    # Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3)
    pair = airy(0.0)
    assert pair.ai == pytest.approx(0.3550280538878172, abs=1e-15)
    assert pair.ai_prime == pytest.approx(-0.2588194037928068, abs=1e-15)
    assert float(maclaurin_airy_oracle(0)) == pytest.approx(pair.ai, abs=1e-15)


def test_airy_accuracy_bands():
    zs = np.concatenate([np.linspace(-8.0, 8.0, 801),
                         np.linspace(-40.0, -8.01, 160),
                         np.linspace(8.01, 40.0, 160)])
    ai, aip = airy_ai_aip(zs)
    for z, a, ap in zip(zs, ai, aip):
        ra, rap = float(mp.airyai(z)), float(mp.airyai(z, 1))
        tol = 1e-12 if abs(z) <= 8.0 else 1e-9
        assert abs(a - ra) <= tol * abs(ra)
        assert abs(ap - rap) <= tol * abs(rap)


def test_airy_positive_tail():
    # frozen from the high-precision asymptotic oracle
    assert airy(10.0).ai == pytest.approx(1.1047532552898685e-10, rel=1e-9)
    # monotone exponential decay past z = 2
    zs = np.linspace(2.0, 30.0, 200)
    vals = airy_ai_aip(zs)[0]
    assert np.all(np.diff(vals) < 0.0)
    assert np.all(vals > 0.0)
    # asymptotic underflow regime rounds to zero, stays total
    assert airy(120.0).ai == 0.0


def test_airy_first_negative_zero():
    # bisection on the series oracle brackets the first zero near -2.338
    lo, hi = -2.5, -2.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if maclaurin_airy_oracle(mid) > 0:
            hi = mid
        else:
            lo = mid
    assert lo == pytest.approx(-2.338107410459767, abs=1e-9)
    a_left, a_right = airy(lo - 0.05).ai, airy(lo + 0.05).ai
    assert a_left * a_right < 0.0   # library oscillates through the same zero


def test_airy_ode_residual_grid():
    # |Ai''(z) - z Ai(z)| via central differences, grid [-10, 5] step 0.1
    z = np.arange(-10.0, 5.0 + 1e-12, 0.1)
    h = 1e-3
    ai_p = airy_ai_aip(z + h)[0]
    ai_m = airy_ai_aip(z - h)[0]
    ai_0 = airy_ai_aip(z)[0]
    second = (ai_p - 2.0 * ai_0 + ai_m) / h ** 2
    assert np.max(np.abs(second - z * ai_0)) < 1e-5


def test_airy_scaled_consistency():
    for z in (0.5, 3.0, 9.0, 30.0, 100.0):
        s, sp = airy_scaled(z)
        zeta = 2.0 / 3.0 * z ** 1.5
        ref = float(mp.airyai(z) * mp.e ** mp.mpf(zeta))
        assert s == pytest.approx(ref, rel=1e-10)
    with pytest.raises(DomainError):
        airy_scaled(-1.0)


# ---------------------------------------------------------------------------
# Hermite
# ---------------------------------------------------------------------------

def hermite_direct(n, x):
    xq = Fraction(x)
    tot = Fraction(0)
    for m in range(n // 2 + 1):
        tot += (Fraction((-1) ** m * math.factorial(n),
                         math.factorial(m) * math.factorial(n - 2 * m))
                * (2 * xq) ** (n - 2 * m))
    return tot


def test_hermite_basic():
    assert hermite(0, 17.3) == 1.0
    assert hermite(1, 1.5) == 3.0        # H_1(x) = 2x
    assert hermite(4, 0.0) == 12.0       # frozen from the recurrence oracle


@pytest.mark.parametrize("n", [3, 12, 37, 60])
@pytest.mark.parametrize("x", [0.1, 1.0, 10.0])
def test_hermite_vs_direct_sum(n, x):
    ref = float(hermite_direct(n, x))
    assert hermite(n, x) == pytest.approx(ref, rel=1e-9)


@given(st.integers(0, 60), st.floats(-8.0, 8.0, allow_nan=False))
@settings(max_examples=60, deadline=None)
def test_hermite_parity(n, x):
    assert hermite(n, -x) == (-1.0) ** n * hermite(n, x)


def test_hermite_limits():
    with pytest.raises(CapabilityError):
        hermite(201, 1.0)
    with pytest.raises(DomainError):
        hermite(-1, 1.0)


def test_hermite_function_matches_scaled_polynomial():
    for n in (0, 3, 25, 120):
        xi = np.linspace(-6.0, 6.0, 41)
        ref = np.array([float(
            mp.hermite(n, x) * mp.e ** (-mp.mpf(x) ** 2 / 2)
            / mp.sqrt(2 ** n * mp.factorial(n) * mp.sqrt(mp.pi))) for x in xi])
        got = hermite_function(n, xi)
        assert np.max(np.abs(got - ref)) < 1e-12 * np.max(np.abs(ref)) + 1e-15


# ---------------------------------------------------------------------------
# Laguerre
# ---------------------------------------------------------------------------

def laguerre_direct(n, a, x):
    xq, aq = Fraction(x), Fraction(a)
    tot = Fraction(0)
    for m in range(n + 1):
        binom = Fraction(1)
        for j in range(1, n - m + 1):
            binom *= (aq + m + j) / j
        tot += binom * (-xq) ** m / math.factorial(m)
    return tot


def test_laguerre_basic():
    assert laguerre(0, 0.7, 3.0) == 1.0
    assert laguerre(1, 2.0, 0.5) == pytest.approx(2.5, abs=1e-14)
    assert laguerre(2, 0.0, 2.0) == pytest.approx(-1.0, abs=1e-14)


@pytest.mark.parametrize("n", [5, 23, 60])
@pytest.mark.parametrize("a", [0, 1, Fraction(5, 2)])
@pytest.mark.parametrize("x", [0.1, 1.0, 10.0])
def test_laguerre_vs_direct_sum(n, a, x):
    ref = float(laguerre_direct(n, a, x))
    assert laguerre(n, float(a), x) == pytest.approx(ref, rel=1e-9, abs=1e-25)


def test_laguerre_domain_and_caps():
    with pytest.raises(DomainError):
        laguerre(3, -1.0, 1.0)
    with pytest.raises(CapabilityError):
        laguerre(250, 0.0, 1.0)


def test_laguerre_scaled_large_argument():
    # value * exp(log_scale) reproduces huge polynomial values stably
    n, a, x = 80, 2.0, 320.0
    val, logsc = laguerre_scaled(n, a, x)
    ref = mp.laguerre(n, a, x)
    got = mp.mpf(val) * mp.e ** mp.mpf(logsc)
    assert abs(got - ref) / abs(ref) < 1e-10


# ---------------------------------------------------------------------------
# Airy-type Laguerre asymptotics
# ---------------------------------------------------------------------------

def test_laguerre_airy_accuracy_and_order():
    errs = {}
    for n in (50, 100):
        nu = 4 * n + 2
        ref = float(mp.laguerre(n, 0, mp.mpf(nu) * mp.mpf("0.9")))
        got = laguerre_airy(n, 0.0, 0.9)
        errs[n] = abs(got - ref) / abs(ref)
    assert errs[50] < 1e-2
    assert errs[100] < errs[50]     # order-of-accuracy property


def test_laguerre_airy_turning_window():
    # |t-1| < delta_t goes through the limiting forms: finite, no NaN, and
    # still close to the true polynomial
    for t in (0.9995, 1.0, 1.0005):
        n, a = 60, 1.0
        got = laguerre_airy(n, a, t)
        assert math.isfinite(got)
        nu = 4 * n + 2 * a + 2
        ref = float(mp.laguerre(n, a, mp.mpf(nu) * mp.mpf(t)))
        assert abs(got - ref) / abs(ref) < 1e-2


def test_laguerre_airy_domain():
    with pytest.raises(DomainError):
        laguerre_airy(50, 0.0, -0.5)
    with pytest.raises(DomainError):
        laguerre_airy(5, 0.0, 0.9)     # below the asymptotic regime


# ---------------------------------------------------------------------------
# log-gamma
# ---------------------------------------------------------------------------

def test_log_gamma_values():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-14)
    assert log_gamma(2.0) == pytest.approx(0.0, abs=1e-14)
    assert log_gamma(11.0) == pytest.approx(math.log(3628800.0), rel=1e-13)
    for x in (0.1, 0.5, 3.7, 42.0, 171.0):
        assert log_gamma(x) == pytest.approx(math.lgamma(x), rel=1e-12, abs=1e-13)
    with pytest.raises(DomainError):
        log_gamma(0.0)
    with pytest.raises(DomainError):
        log_gamma(-3.0)
