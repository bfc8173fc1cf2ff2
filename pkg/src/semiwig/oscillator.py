"""Spectral data of the 1-D harmonic oscillator and general single wells.

Exact Hermite eigenfunctions (stable normalized recurrence), WKB
eigenfunctions across the three turning-point regions with the closed-form
action, and a Bohr-Sommerfeld eigenvalue solver for generic single-well
potentials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import BracketingError, CapabilityError, DomainError, TurningBandError
from .numerics import bisect_newton, find_roots, gauss_legendre
from .specfun import N_MAX, hermite_function

_ARCSIN_SLACK = 1e-14  # clamp |x|/sqrt(2E) <= 1 within this slack before arcsin


@dataclass(frozen=True)
class SemiclassicalParams:
    """Semiclassical parameter and mode indices."""

    eps: float
    n: int
    m: int = 0

    def __post_init__(self):
        if not 0.0 < self.eps <= 1.0:
            raise DomainError("eps must lie in (0, 1]")
        if self.n < 0 or self.m < 0:
            raise DomainError("mode indices must be nonnegative")

    @property
    def energy_n(self) -> float:
        return (self.n + 0.5) * self.eps

    @property
    def energy_m(self) -> float:
        return (self.m + 0.5) * self.eps


def eigenvalue(params: SemiclassicalParams) -> float:
    """Exact oscillator eigenvalue (n + 1/2) eps."""
    return params.energy_n


def exact_eigenfunction(params: SemiclassicalParams, x):
    """Normalized eigenfunction eps^{-1/4} psi_n(x/sqrt(eps)); vectorized."""
    if params.n > N_MAX:
        raise CapabilityError(f"exact_eigenfunction supports n <= {N_MAX}")
    xi = np.asarray(x, dtype=float) / math.sqrt(params.eps)
    return params.eps ** -0.25 * hermite_function(params.n, xi)


def turning_point(params: SemiclassicalParams) -> float:
    """Right turning point sqrt(2 E_n)."""
    return math.sqrt(2.0 * params.energy_n)


def turning_band_width(params: SemiclassicalParams) -> float:
    """Half width of the turning-point exclusion band, 2 eps^{2/3} (2E_n)^{1/6}.

    Scales like the Airy boundary layer of the uniformized phase-space
    eigenfunction expressed in the position coordinate.
    """
    return 2.0 * params.eps ** (2.0 / 3.0) * (2.0 * params.energy_n) ** (1.0 / 6.0)


def wkb_action(params: SemiclassicalParams, x):
    """Closed-form action int_{sqrt(2E)}^{x} sqrt(2E - t^2) dt on [-sqrt(2E), sqrt(2E)].

    (x/2) sqrt(2E - x^2) + E arcsin(x / sqrt(2E)) - E pi/2; vanishes at the
    right turning point.
    """
    e = params.energy_n
    r = math.sqrt(2.0 * e)
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    u = x / r
    if np.any(np.abs(u) > 1.0 + _ARCSIN_SLACK):
        raise DomainError("wkb_action requires |x| <= sqrt(2 E_n)")
    u = np.clip(u, -1.0, 1.0)
    # 2E (1 - u^2) instead of 2E - x^2: exact zero at the clamped endpoints
    s = 0.5 * x * np.sqrt(2.0 * e * np.maximum(1.0 - u * u, 0.0)) \
        + e * np.arcsin(u) - e * math.pi / 2.0
    return float(s[0]) if scalar else s


def region(params: SemiclassicalParams, x: float) -> str:
    """Classify x: 'oscillatory', 'evanescent-left/right', or 'turning-band'."""
    r = turning_point(params)
    band = turning_band_width(params)
    if abs(x - r) < band or abs(x + r) < band:
        return "turning-band"
    if x > r:
        return "evanescent-right"
    if x < -r:
        return "evanescent-left"
    return "oscillatory"


def _barrier_action(e: float, x):
    # int_{sqrt(2E)}^{x} sqrt(t^2 - 2E) dt for x >= sqrt(2E)
    r2 = 2.0 * e
    q = np.sqrt(np.maximum(x * x - r2, 0.0))
    return 0.5 * x * q - e * np.log((x + q) / math.sqrt(r2))


def wkb_eigenfunction(params: SemiclassicalParams, x, band_guard: bool = True):
    """Normalized WKB eigenfunction (2/pi)^{1/2} psi_n outside the turning bands.

    Oscillatory region: (2/pi)^{1/2} (2E - x^2)^{-1/4} cos(S_n(x)/eps + pi/4).
    Evanescent regions: one-sided decaying branch, left side carrying (-1)^n.
    Raises TurningBandError anywhere inside the exclusion bands; the remedy
    there is the phase-space uniformization, not a patched value.  Comparison
    studies that knowingly sample near the band may disable the guard (the
    amplitude still diverges at the turning points themselves).
    """
    e = params.energy_n
    r = math.sqrt(2.0 * e)
    band = turning_band_width(params)
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    if band_guard and np.any((np.abs(x - r) < band) | (np.abs(x + r) < band)):
        raise TurningBandError(
            "x inside the turning exclusion band; WKB amplitude diverges there")
    out = np.empty_like(x)
    norm = math.sqrt(2.0 / math.pi)
    osc = np.abs(x) < r
    if np.any(osc):
        xo = x[osc]
        out[osc] = norm * (2.0 * e - xo * xo) ** -0.25 * np.cos(
            wkb_action(params, xo) / params.eps + math.pi / 4.0)
    ev = ~osc
    if np.any(ev):
        xa = np.abs(x[ev])
        val = norm * (xa * xa - 2.0 * e) ** -0.25 * np.exp(
            -_barrier_action(e, xa) / params.eps)
        sign = np.where(x[ev] < 0, (-1.0) ** params.n, 1.0)
        out[ev] = sign * val
    return float(out[0]) if scalar else out


def wkb_two_phase(params: SemiclassicalParams, x):
    """Complex pair (A+ e^{iS/eps}, A- e^{-iS/eps}) in the oscillatory region.

    A+/- = (1/2)(2/pi)^{1/2} (2E - x^2)^{-1/4} e^{+/- i pi/4}; the sum of the
    two branches is the real cosine form.
    """
    e = params.energy_n
    r = math.sqrt(2.0 * e)
    band = turning_band_width(params)
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(np.abs(x) - r) < band) or np.any(np.abs(x) >= r):
        raise TurningBandError("two-phase form defined on the oscillatory interior")
    amp = 0.5 * math.sqrt(2.0 / math.pi) * (2.0 * e - x * x) ** -0.25
    s = wkb_action(params, x) / params.eps
    plus = amp * np.exp(1j * (s + math.pi / 4.0))
    minus = amp * np.exp(-1j * (s + math.pi / 4.0))
    return plus, minus


@dataclass(frozen=True)
class WkbEigenfunction:
    """Piecewise WKB description of one oscillator mode."""

    params: SemiclassicalParams

    @property
    def turning_points(self) -> tuple[float, float]:
        r = turning_point(self.params)
        return (-r, r)

    def region(self, x: float) -> str:
        return region(self.params, x)

    def amplitude(self, x):
        e = self.params.energy_n
        x = np.asarray(x, dtype=float)
        return math.sqrt(2.0 / math.pi) * np.abs(2.0 * e - x * x) ** -0.25

    def phase(self, x):
        return wkb_action(self.params, x)

    def __call__(self, x):
        return wkb_eigenfunction(self.params, x)

    def two_phase(self, x):
        return wkb_two_phase(self.params, x)


@dataclass
class WellPotential:
    """Smooth confining potential with a single well.

    ``v`` and ``dv`` must be vectorized; ``x_range`` bounds the turning-point
    search.  Validation probes one energy and requires exactly two simple
    roots of V(x) = E.
    """

    v: Callable
    dv: Callable
    description: str = ""
    x_range: tuple[float, float] = (-30.0, 30.0)

    def turning_points(self, e: float) -> tuple[float, float]:
        roots = find_roots(lambda x: float(self.v(x)) - e,
                           self.x_range[0], self.x_range[1], n=2000)
        if len(roots) != 2:
            raise DomainError(
                f"V(x) = {e} must have exactly two simple roots; found {len(roots)}")
        return roots[0], roots[1]

    def validate(self, probe_energy: float) -> None:
        x1, x2 = self.turning_points(probe_energy)
        if float(self.dv(x1)) >= 0.0 or float(self.dv(x2)) <= 0.0:
            raise DomainError("turning points are not simple")


def action_integral(potential: WellPotential, e: float, n_nodes: int = 200) -> float:
    """f(E) = int_{x1}^{x2} sqrt(2 (E - V(x))) dx with sqrt endpoints removed.

    The substitution x = c + r sin(theta) (exact for the harmonic well) turns
    the integrand into a smooth function of theta.
    """
    x1, x2 = potential.turning_points(e)
    c, r = 0.5 * (x1 + x2), 0.5 * (x2 - x1)
    th, w = gauss_legendre(n_nodes)
    theta = 0.5 * math.pi * th
    x = c + r * np.sin(theta)
    val = np.sqrt(np.maximum(2.0 * (e - potential.v(x)), 0.0)) * r * np.cos(theta)
    return float(np.sum(w * val) * 0.5 * math.pi)


def _action_derivative(potential: WellPotential, e: float, n_nodes: int = 200) -> float:
    # f'(E) = int dx / sqrt(2 (E - V)); same substitution, still integrable
    x1, x2 = potential.turning_points(e)
    c, r = 0.5 * (x1 + x2), 0.5 * (x2 - x1)
    th, w = gauss_legendre(n_nodes)
    theta = 0.5 * math.pi * th
    x = c + r * np.sin(theta)
    denom = np.sqrt(np.maximum(2.0 * (e - potential.v(x)), 1e-300))
    val = r * np.cos(theta) / denom
    return float(np.sum(w * val) * 0.5 * math.pi)


def bohr_sommerfeld(potential: WellPotential, n: int, eps: float,
                    bracket: tuple[float, float]) -> float:
    """Energy solving f(E) = pi (n + 1/2) eps by safeguarded Newton to 1e-10."""
    lo, hi = bracket
    if not 0.0 < lo < hi:
        raise DomainError("bracket must satisfy 0 < lo < hi")
    probes = np.linspace(lo, hi, 5)
    fvals = [action_integral(potential, float(e)) for e in probes]
    if any(b <= a for a, b in zip(fvals, fvals[1:])):
        raise BracketingError("action integral is not monotone on the bracket")
    target = math.pi * (n + 0.5) * eps
    if not fvals[0] <= target <= fvals[-1]:
        raise BracketingError(
            f"bracket does not straddle the quantization target {target:.6g}")
    g = lambda e: action_integral(potential, e) - target
    dg = lambda e: _action_derivative(potential, e)
    return bisect_newton(g, lo, hi, df=dg, tol=1e-12)


class SchrodingerSeries:
    """Truncated eigenfunction series sum_n c_n v_n(x) e^{-i E_n t / eps}."""

    def __init__(self, eps: float, coeffs: Sequence[complex]):
        self.eps = eps
        self.coeffs = np.asarray(coeffs, dtype=complex)
        if self.coeffs.ndim != 1:
            raise DomainError("coeffs must be a 1-D sequence")

    @classmethod
    def from_initial_datum(cls, u0: Callable, eps: float,
                           window: tuple[float, float],
                           n_max: int | None = None,
                           tail_tol: float = 1e-6,
                           nodes_per_unit: int | None = None) -> "SchrodingerSeries":
        """Project ``u0`` onto the eigenfunctions by panel quadrature.

        Default truncation: smallest N with sum_{n<=N} |c_n|^2 covering all
        but ``tail_tol`` of ||u0||^2, capped at N_MAX.
        """
        cap = N_MAX if n_max is None else min(n_max, N_MAX)
        a, b = window
        if nodes_per_unit is None:
            # resolve the fastest eigenfunction oscillation sqrt(2 E_cap)/eps
            k = math.sqrt(2.0 * (cap + 0.5) * eps) / eps
            nodes_per_unit = max(32, int(3.0 * k))
        n_panels = max(4, int((b - a) * nodes_per_unit / 24))
        from .numerics import panel_nodes
        nodes, weights = panel_nodes(a, b, n_panels, 24)
        u_vals = np.asarray(u0(nodes), dtype=complex)
        norm_sq = float(np.sum(weights * np.abs(u_vals) ** 2).real)
        coeffs = []
        acc = 0.0
        for n in range(cap + 1):
            vn = exact_eigenfunction(SemiclassicalParams(eps, n), nodes)
            c = complex(np.sum(weights * u_vals * vn))
            coeffs.append(c)
            acc += abs(c) ** 2
            if n_max is None and acc >= (1.0 - tail_tol) * norm_sq:
                break
        return cls(eps, coeffs)

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def evaluate(self, x, t: float):
        """u(x, t); vectorized over x."""
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        for n, c in enumerate(self.coeffs):
            if c == 0.0:
                continue
            e_n = (n + 0.5) * self.eps
            out = out + c * exact_eigenfunction(SemiclassicalParams(self.eps, n), x) \
                * np.exp(-1j * e_n * t / self.eps)
        return out
