"""Stationary-phase evaluation of oscillatory integrals.

Covers the standard simple-point formula, the two-dimensional version, the
uniform (coalescing-saddle) Airy formula, saddle location/classification for
one-parameter phase families, a brute-force oscillation-aware quadrature used
as the oracle throughout the test suite, and the two-peak Airy decomposition
of Airy functions with quadratic argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import (AccuracyError, BracketingError, DegeneratePointError,
                     DomainError, UnsupportedError)
from .numerics import find_roots, panel_nodes
from .specfun import airy_ai_aip

NODE_BUDGET = 2 ** 18          # max quadrature nodes per integral
PANEL_DEG = 24                 # Gauss-Legendre nodes per panel
DEGENERACY_TOL = 1e-8          # |phi''| below this is a degenerate point
COALESCENCE_RTOL = 1e-6        # |x1-x2| < tol*(1+|x1|) -> limiting A0/B0 path
ALPHA_MIN = 1e-6               # airy_decompose blows up as 1/(2*alpha)


@dataclass
class PhaseModel:
    """One-parameter family of oscillatory integrands f(s) e^{i lam phi(s, a)}.

    All callables must be numpy-vectorized over ``s`` and stateless.  The
    supplied derivatives are cross-checked against finite differences of
    ``phi`` on ``check_window`` at construction (disable with validate=False).
    """

    phi: Callable
    dphi: Callable
    d2phi: Callable
    d3phi: Callable
    amplitude: Callable
    check_window: tuple[float, float] = (-1.0, 1.0)
    check_alpha: float = 0.0
    validate: bool = True

    def __post_init__(self):
        if not self.validate:
            return
        a, b = self.check_window
        s = np.linspace(a, b, 9)
        al = self.check_alpha
        h = 1e-5 * (1.0 + abs(b - a))
        fd1 = (self.phi(s + h, al) - self.phi(s - h, al)) / (2 * h)
        if np.max(np.abs(fd1 - self.dphi(s, al))) > 1e-5 * (1.0 + np.max(np.abs(fd1))):
            raise DomainError("dphi disagrees with finite differences of phi")
        h2 = 1e-4 * (1.0 + abs(b - a))
        fd2 = (self.phi(s + h2, al) - 2 * self.phi(s, al) + self.phi(s - h2, al)) / h2 ** 2
        if np.max(np.abs(fd2 - self.d2phi(s, al))) > 1e-4 * (1.0 + np.max(np.abs(fd2))):
            raise DomainError("d2phi disagrees with finite differences of phi")
        h3 = 1e-3 * (1.0 + abs(b - a))
        fd3 = (self.phi(s + 2 * h3, al) - 2 * self.phi(s + h3, al)
               + 2 * self.phi(s - h3, al) - self.phi(s - 2 * h3, al)) / (2 * h3 ** 3)
        if np.max(np.abs(fd3 - self.d3phi(s, al))) > 1e-2 * (1.0 + np.max(np.abs(fd3))):
            raise DomainError("d3phi disagrees with finite differences of phi")


@dataclass(frozen=True)
class StationaryPointSet:
    """Classified stationary points of a phase at one parameter value.

    kind:
      * ``two_real``     points = [x1, x2] ordered so phi''(x1) < 0 < phi''(x2)
      * ``coalesced``    points = [x0, x0] (double point)
      * ``complex_pair`` points = [re, im] meaning x = re +/- i*im
      * ``none``         no saddle-pair structure detected
    """

    kind: str
    points: list = field(default_factory=list)
    second_derivs: list = field(default_factory=list)
    alpha: float = 0.0


@dataclass(frozen=True)
class UniformSpResult:
    """Coalescing-saddle data and the assembled Airy value."""

    phi0: float
    xi: float
    a0: complex
    b0: complex
    value: complex


def oscillatory_quadrature(model: PhaseModel, lam: float, window,
                           alpha: float = 0.0, tol: float = 1e-8) -> complex:
    """Brute-force value of int f(s) e^{i lam phi(s, alpha)} ds over ``window``.

    Panel Gauss-Legendre with panel count set by the local oscillation rate
    (at least 12 nodes per wavelength 2 pi / (lam |dphi|)); the error estimate
    is the change under one panel doubling.  Raises AccuracyError carrying the
    achieved estimate once the node budget is exhausted.
    """
    if lam <= 0:
        raise DomainError("lam must be positive")
    a, b = float(window[0]), float(window[1])
    if not b > a:
        raise DomainError("empty integration window")
    s = np.linspace(a, b, 257)
    dmax = float(np.max(np.abs(model.dphi(s, alpha))))
    # 24-node panels, >= 12 nodes per local wavelength -> <= 2 wavelengths/panel
    n0 = max(4, int(math.ceil((b - a) * lam * dmax / (4.0 * math.pi))))
    n0 = min(n0, NODE_BUDGET // (2 * PANEL_DEG))

    def value(n_panels):
        nodes, weights = panel_nodes(a, b, n_panels, PANEL_DEG)
        integrand = model.amplitude(nodes) * np.exp(1j * lam * model.phi(nodes, alpha))
        return complex(np.sum(weights * integrand))

    prev = value(n0)
    n = 2 * n0
    while True:
        cur = value(n)
        err = abs(cur - prev)
        if err <= tol:
            return cur
        if 2 * n * PANEL_DEG > NODE_BUDGET:
            raise AccuracyError(
                f"node budget {NODE_BUDGET} exhausted (estimate {err:.2e})",
                achieved=err)
        prev, n = cur, 2 * n


def standard_sp(model: PhaseModel, lam: float, point: float,
                alpha: float = 0.0) -> complex:
    """Simple-stationary-point approximation at ``point``.

    f(c) sqrt(2 pi / (lam |phi''(c)|)) e^{i lam phi(c) + i mu pi/4},
    mu = sign phi''(c).
    """
    d2 = float(model.d2phi(point, alpha))
    if abs(d2) < DEGENERACY_TOL:
        raise DegeneratePointError(
            "phi'' ~ 0 at the stationary point; use uniform_sp")
    mu = math.copysign(1.0, d2)
    amp = complex(model.amplitude(point))
    ph = float(model.phi(point, alpha))
    return amp * math.sqrt(2.0 * math.pi / (lam * abs(d2))) * \
        np.exp(1j * (lam * ph + mu * math.pi / 4.0))


def standard_sp_2d(f00: complex, hessian, phase00: float, lam: float) -> complex:
    """Leading term of a double oscillatory integral at a nondegenerate point.

    2 pi f0 e^{i delta pi/2} lam^{-1} e^{i lam phi0} / sqrt|det H| with delta
    determined by the Hessian eigenvalue signs (+1 both positive, 0 mixed,
    -1 both negative).
    """
    h = np.asarray(hessian, dtype=float)
    det = h[0, 0] * h[1, 1] - h[0, 1] * h[1, 0]
    if abs(det) < DEGENERACY_TOL:
        raise DegeneratePointError("degenerate Hessian in standard_sp_2d")
    ev = np.linalg.eigvalsh(0.5 * (h + h.T))
    delta = (int(np.sign(ev[0])) + int(np.sign(ev[1]))) // 2  # in {-1, 0, +1}
    return (2.0 * math.pi * f00 * np.exp(1j * delta * math.pi / 2.0)
            * np.exp(1j * lam * phase00) / (lam * math.sqrt(abs(det))))


def find_saddles(model: PhaseModel, alpha: float, bracket) -> StationaryPointSet:
    """Locate and classify the (at most two) saddles of dphi(., alpha) in ``bracket``."""
    lo, hi = float(bracket[0]), float(bracket[1])
    g = lambda s: float(model.dphi(s, alpha))
    dg = lambda s: float(model.d2phi(s, alpha))
    roots = find_roots(g, lo, hi, n=600, df=dg)
    if len(roots) > 2:
        raise BracketingError(f"bracket isolates {len(roots)} > 2 stationary points")
    if len(roots) == 2:
        x1, x2 = roots
        if abs(x1 - x2) < COALESCENCE_RTOL * (1.0 + abs(x1)):
            x0 = 0.5 * (x1 + x2)
            return StationaryPointSet("coalesced", [x0, x0], [dg(x0), dg(x0)], alpha)
        d1, d2 = dg(x1), dg(x2)
        if d1 > 0.0 > d2:
            x1, x2, d1, d2 = x2, x1, d2, d1
        return StationaryPointSet("two_real", [x1, x2], [d1, d2], alpha)
    if len(roots) == 1:
        x0 = roots[0]
        if abs(dg(x0)) < DEGENERACY_TOL * (1.0 + abs(x0)):
            return StationaryPointSet("coalesced", [x0, x0], [0.0, 0.0], alpha)
        return StationaryPointSet("none", [x0], [dg(x0)], alpha)
    # no real roots: look for a near-coalescence point (root of d) and continue
    # the surd of the local quadratic model to the imaginary axis
    cand = find_roots(dg, lo, hi, n=600)
    for x0 in cand:
        d3 = float(model.d3phi(x0, alpha))
        if d3 == 0.0:
            continue
        disc = -2.0 * g(x0) / d3      # (x - x0)^2 at the stationary points
        scale = 1.0 + x0 * x0
        if abs(disc) < (COALESCENCE_RTOL * scale) ** 2:
            return StationaryPointSet("coalesced", [x0, x0], [0.0, 0.0], alpha)
        if disc < 0.0:
            return StationaryPointSet("complex_pair",
                                      [x0, math.sqrt(-disc)], [], alpha)
    return StationaryPointSet("none", [], [], alpha)


def uniform_sp(model: PhaseModel, lam: float, saddles: StationaryPointSet,
               formal: bool = False) -> UniformSpResult:
    """Uniform Airy approximation for a pair of (nearly) coalescing saddles.

    value = e^{i lam phi0} [2 pi A0 lam^{-1/3} Ai(-lam^{2/3} xi)
                            - 2 pi i B0 lam^{-2/3} Ai'(-lam^{2/3} xi)]

    with phi0 the mean saddle phase, xi the signed 2/3 power of the phase
    difference, and (A0, B0) matched to the standard formula amplitudes.  At
    coalescence B0 = 0 and A0 = f(x0) (2/|phi'''(x0)|)^{1/3}.  Complex pairs
    are refused unless ``formal`` is set, in which case the same expression is
    evaluated at negative xi with the coalescence-limit amplitude (no accuracy
    statement attaches to that branch).
    """
    alpha = saddles.alpha
    if saddles.kind == "two_real":
        x1, x2 = saddles.points
        if abs(x1 - x2) < COALESCENCE_RTOL * (1.0 + abs(x1)):
            return uniform_sp(model, lam,
                              StationaryPointSet("coalesced",
                                                 [0.5 * (x1 + x2)] * 2,
                                                 [0.0, 0.0], alpha))
        p1, p2 = float(model.phi(x1, alpha)), float(model.phi(x2, alpha))
        d1, d2 = float(model.d2phi(x1, alpha)), float(model.d2phi(x2, alpha))
        f1, f2 = complex(model.amplitude(x1)), complex(model.amplitude(x2))
        phi0 = 0.5 * (p1 + p2)
        dphi = p1 - p2
        xi = math.copysign(abs(0.75 * dphi) ** (2.0 / 3.0), dphi)
        q = abs(xi) ** 0.25
        a0 = (f2 / math.sqrt(abs(d2)) + f1 / math.sqrt(abs(d1))) * q / math.sqrt(2.0)
        b0 = -(f1 / math.sqrt(abs(d1)) - f2 / math.sqrt(abs(d2))) / (q * math.sqrt(2.0))
    elif saddles.kind == "coalesced":
        x0 = saddles.points[0]
        d3 = float(model.d3phi(x0, alpha))
        if d3 == 0.0:
            raise DegeneratePointError("phi''' = 0 at the coalescence point")
        phi0 = float(model.phi(x0, alpha))
        xi = 0.0
        a0 = complex(model.amplitude(x0)) * (2.0 / abs(d3)) ** (1.0 / 3.0)
        b0 = 0.0 + 0.0j
    elif saddles.kind == "complex_pair":
        if not formal:
            raise UnsupportedError(
                "complex saddle pair: exact mode unsupported "
                "(pass formal=True for the formal continuation)")
        x0, s = saddles.points
        try:
            pp = complex(model.phi(x0 + 1j * s, alpha))
        except TypeError as exc:
            raise UnsupportedError(
                "formal mode requires phi to accept complex arguments") from exc
        phi0 = pp.real
        xi = -abs(0.75 * 2.0 * pp.imag) ** (2.0 / 3.0)
        d3 = float(model.d3phi(x0, alpha))
        if d3 == 0.0:
            raise DegeneratePointError("phi''' = 0 at the double point")
        a0 = complex(model.amplitude(x0)) * (2.0 / abs(d3)) ** (1.0 / 3.0)
        b0 = 0.0 + 0.0j
    else:
        raise DomainError("uniform_sp needs a two_real/coalesced/complex_pair set")

    ai, aip = airy_ai_aip(-lam ** (2.0 / 3.0) * xi)
    value = np.exp(1j * lam * phi0) * (
        2.0 * math.pi * a0 * lam ** (-1.0 / 3.0) * ai
        - 2.0j * math.pi * b0 * lam ** (-2.0 / 3.0) * aip)
    return UniformSpResult(phi0, xi, complex(a0), complex(b0), complex(value))


@dataclass(frozen=True)
class AiryDecomposition:
    """Two Airy peaks plus an oscillatory point-mass weight at the origin.

    ``left_peak``/``right_peak`` are pointwise values at the evaluation point;
    ``center_weight`` is the coefficient of the delta at x = 0 (distributions
    cannot be sampled pointwise, so it is reported as a weight).
    """

    left_peak: float
    right_peak: float
    center_weight: float

    @property
    def peak_sum(self) -> float:
        return self.left_peak + self.right_peak


def airy_decompose(x: float, alpha: float, eps: float) -> AiryDecomposition:
    """Decompose (1/eps) Ai((x^2 - alpha^2)/eps) into single-peak terms.

    (1/eps) Ai((x^2-a^2)/eps) ~ (1/2a eps)[Ai((x+a)/eps) + Ai((x-a)/eps)]
                                 + (1/a) sin(2 a^3 / (3 eps^{3/2})) delta(x)

    weakly as eps -> 0, with remainder O(eps^{3/2}) in distributions.  The
    point-mass coefficient follows from the four-saddle evaluation of the
    double-integral representation (two degenerate-direction saddles at
    x = +/-a and two conjugate interior saddles carrying the oscillation).
    """
    if eps <= 0.0:
        raise DomainError("eps must be positive")
    if alpha <= ALPHA_MIN:
        raise DegeneratePointError(f"alpha <= {ALPHA_MIN}: 1/(2 alpha) degenerate")
    c = 1.0 / (2.0 * alpha * eps)
    left = c * airy_ai_aip((x + alpha) / eps)[0]
    right = c * airy_ai_aip((x - alpha) / eps)[0]
    weight = math.sin(2.0 * alpha ** 3 / (3.0 * eps ** 1.5)) / alpha
    return AiryDecomposition(float(left), float(right), float(weight))
