"""Eigenfunction-series solution of the phase-space evolution problem.

Builds expansion coefficients from a WKB initial datum (exact quadrature,
closed forms for quadratic phases, stationary-set approximation for cubic
phases), evolves the field with either the exact Laguerre backend or the
Airy-uniformized backend, splits coherent/incoherent parts, reconstructs
position-space intensities, and measures the transport-equation residual.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (DegenerateRootError, DomainError, GridError,
                     WrongBranchError)
from .numerics import find_roots, panel_nodes
from .oscillator import SemiclassicalParams, exact_eigenfunction
from .specfun import N_MAX, airy_ai_aip, airy_scaled
from .wigner import (ComplexField, EigencurveGeometry,
                     N_MIN_ASYMPTOTIC, PhaseSpaceGrid, airy_diagonal,
                     airy_offdiagonal, exact_wigner_eigenfunction, marginals)

__all__ = [
    "InitialDatum", "SpectralSolution", "AmplitudeDecomposition",
    "bump_amplitude", "gaussian_amplitude", "unit_amplitude",
    "polynomial_phase", "coefficients_exact", "quadratic_phase_coefficient",
    "quadratic_phase_closed_form", "cubic_phase_coefficient",
    "cubic_phase_roots", "evolve", "split", "amplitude",
    "coherent_intensity_closed", "incoherent_at_origin_closed",
    "liouville_residual",
]


# ---------------------------------------------------------------------------
# initial data
# ---------------------------------------------------------------------------

def bump_amplitude(center: float = 0.0, halfwidth: float = 1.0) -> Callable:
    """Smooth compactly supported bump, value 1 at the center."""
    def f(x):
        u = (np.asarray(x, dtype=float) - center) / halfwidth
        out = np.zeros_like(u)
        inside = np.abs(u) < 1.0
        with np.errstate(divide="ignore", over="ignore"):
            out[inside] = np.exp(1.0 - 1.0 / (1.0 - u[inside] ** 2))
        return out
    return f


def gaussian_amplitude(center: float = 0.0, width: float = 1.0) -> Callable:
    def f(x):
        u = (np.asarray(x, dtype=float) - center) / width
        return np.exp(-0.5 * u * u)
    return f


def unit_amplitude() -> Callable:
    return lambda x: np.ones_like(np.asarray(x, dtype=float))


def polynomial_phase(coeffs: Sequence[float]):
    """(s0, s0', s0'', s0''') for S0(x) = sum_k coeffs[k] x^k, degree <= 5."""
    c = np.asarray(coeffs, dtype=float)
    if c.size > 6:
        raise DomainError("phase polynomials are limited to degree 5")
    d1 = np.polynomial.polynomial.polyder(c)
    d2 = np.polynomial.polynomial.polyder(c, 2)
    d3 = np.polynomial.polynomial.polyder(c, 3)
    pv = np.polynomial.polynomial.polyval
    return (lambda x: pv(np.asarray(x, dtype=float), c),
            lambda x: pv(np.asarray(x, dtype=float), d1),
            lambda x: pv(np.asarray(x, dtype=float), d2),
            lambda x: pv(np.asarray(x, dtype=float), d3))


@dataclass
class InitialDatum:
    """WKB initial wavefunction a0(x) e^{i s0(x)/eps} with declared support."""

    a0: Callable
    s0: Callable
    ds0: Callable
    d2s0: Callable
    d3s0: Callable
    eps: float
    support: tuple[float, float]
    validate: bool = True

    def __post_init__(self):
        if self.eps <= 0.0:
            raise DomainError("eps must be positive")
        lo, hi = self.support
        if not hi > lo:
            raise DomainError("empty support")
        if not self.validate:
            return
        x = np.linspace(lo, hi, 9)
        h = 1e-5 * (1.0 + hi - lo)
        fd = (self.s0(x + h) - self.s0(x - h)) / (2.0 * h)
        if np.max(np.abs(fd - self.ds0(x))) > 1e-5 * (1.0 + np.max(np.abs(fd))):
            raise DomainError("ds0 disagrees with finite differences of s0")
        h3 = 1e-2 * (1.0 + hi - lo)   # wider step: h^3 must clear roundoff
        fd3 = (self.s0(x + 2 * h3) - 2 * self.s0(x + h3)
               + 2 * self.s0(x - h3) - self.s0(x - 2 * h3)) / (2 * h3 ** 3)
        if np.max(np.abs(fd3 - self.d3s0(x))) > 1e-2 * (1.0 + np.max(np.abs(fd3))):
            raise DomainError("d3s0 disagrees with finite differences of s0")

    def __call__(self, x):
        return np.asarray(self.a0(x), dtype=complex) * \
            np.exp(1j * np.asarray(self.s0(x), dtype=float) / self.eps)

    def max_momentum(self) -> float:
        x = np.linspace(self.support[0], self.support[1], 513)
        return float(np.max(np.abs(self.ds0(x))))


# ---------------------------------------------------------------------------
# spectral solution container
# ---------------------------------------------------------------------------

@dataclass
class SpectralSolution:
    """Truncated coefficient matrix c_nm with eigenvalue table.

    c_nm multiplies e^{-i (E_n - E_m) t / eps} W_nm in the series; by
    construction from projections c is Hermitian with nonnegative diagonal.
    ``provenance`` records how each diagonal entry was produced.
    """

    eps: float
    coeffs: np.ndarray
    provenance: str = "exact-quadrature"
    projections: np.ndarray | None = None

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.ndim != 2 or self.coeffs.shape[0] != self.coeffs.shape[1]:
            raise DomainError("coeffs must be a square matrix")
        herm = np.max(np.abs(self.coeffs - self.coeffs.conj().T))
        if herm > 1e-12 * max(1.0, float(np.max(np.abs(self.coeffs)))):
            raise DomainError(f"coefficient matrix is not Hermitian ({herm:.2e})")
        if np.any(self.coeffs.real.diagonal() < -1e-14):
            raise DomainError("diagonal coefficients must be nonnegative")

    @property
    def n_max(self) -> int:
        return self.coeffs.shape[0] - 1

    def eigenvalues(self) -> np.ndarray:
        return (np.arange(self.n_max + 1) + 0.5) * self.eps

    def trace(self) -> float:
        return float(np.sum(self.coeffs.real.diagonal()))


def coefficients_exact(datum: InitialDatum, n_max: int | None = None,
                       tail_tol: float = 1e-6) -> SpectralSolution:
    """Coefficients c_nm = (u0, v_n) conj((u0, v_m)) by 1-D panel quadrature.

    Truncation defaults to the smallest N whose cumulative |projection|^2
    reaches (1 - tail_tol) of ||u0||^2, capped at N_MAX.
    """
    cap = N_MAX if n_max is None else min(n_max, N_MAX)
    eps = datum.eps
    lo, hi = datum.support
    k_modes = math.sqrt(2.0 * (cap + 0.5) * eps)
    rate = (datum.max_momentum() + k_modes) / eps
    n_panels = max(8, int(math.ceil((hi - lo) * rate * 12.0 / (2.0 * math.pi * 24.0))))
    nodes, weights = panel_nodes(lo, hi, n_panels, 24)
    u_vals = datum(nodes)
    norm_sq = float(np.sum(weights * np.abs(u_vals) ** 2).real)
    proj = []
    acc = 0.0
    for n in range(cap + 1):
        vn = exact_eigenfunction(SemiclassicalParams(eps, n), nodes)
        b = complex(np.sum(weights * u_vals * vn))
        proj.append(b)
        acc += abs(b) ** 2
        if n_max is None and acc >= (1.0 - tail_tol) * norm_sq:
            break
    b = np.asarray(proj)
    return SpectralSolution(eps, np.outer(b, b.conj()),
                            provenance="exact-quadrature", projections=b)


# ---------------------------------------------------------------------------
# closed-form / approximate coefficients (diagonal, WKB data)
# ---------------------------------------------------------------------------

def quadratic_phase_coefficient(datum: InitialDatum, n: int) -> float:
    """Smoothed diagonal coefficient for quadratic phase s0 = +/- x^2/2.

    eps (A0^2(sqrt(E_n)) + A0^2(-sqrt(E_n))) / (2 sqrt(E_n)).  The sign of
    the phase does not enter (the diagonal field depends on p^2 only).  This
    is the n-smoothed value: exact projections oscillate around it with the
    parity of the interference between the two curve crossings.
    """
    x = np.linspace(*datum.support, 33)
    if np.max(np.abs(datum.d3s0(x))) > 1e-10 or \
       np.max(np.abs(np.abs(datum.d2s0(x)) - 1.0)) > 1e-10:
        raise WrongBranchError("datum phase is not +/- x^2/2")
    e = (n + 0.5) * datum.eps
    a = math.sqrt(e)
    amp2 = float(datum.a0(a)) ** 2 + float(datum.a0(-a)) ** 2
    return datum.eps * amp2 / (2.0 * a)


def quadratic_phase_closed_form(eps: float, n: int, amplitude: str) -> float:
    """Closed diagonal coefficients for quadratic phase, special amplitudes.

    amplitude='one':      2^{7/6} pi eps^{2/3} (2E)^{-1/6} Ai^2(-(2E)^{2/3}/(2^{2/3} eps^{2/3}))
    amplitude='gaussian': A0 = e^{-x^2/2}; Airy transform of the Gaussian,
                          assembled in log scale (the two exponential factors
                          individually overflow), including the overall eps.
    """
    e = (n + 0.5) * eps
    if amplitude == "one":
        z = (2.0 * e) ** (2.0 / 3.0) / (2.0 ** (2.0 / 3.0) * eps ** (2.0 / 3.0))
        ai = airy_ai_aip(-z)[0]
        return 2.0 ** (7.0 / 6.0) * math.pi * eps ** (2.0 / 3.0) \
            * (2.0 * e) ** (-1.0 / 6.0) * ai * ai
    if amplitude == "gaussian":
        a = math.sqrt(e)
        b = 0.5 * eps ** (2.0 / 3.0) * (2.0 * e) ** (1.0 / 3.0)
        pref = eps * math.sqrt(math.pi) / (2.0 * a * b)
        out = 0.0
        for sgn in (+1.0, -1.0):
            z = sgn * a / b + 1.0 / (16.0 * b ** 4)
            expo = 1.0 / (96.0 * b ** 6) + sgn * a / (4.0 * b ** 3)
            if z >= 0.0:
                ai_s = airy_scaled(z)[0]            # Ai(z) e^{(2/3) z^{3/2}}
                expo -= (2.0 / 3.0) * z ** 1.5
                out += pref * ai_s * math.exp(expo) if expo > -745.0 else 0.0
            else:
                out += pref * airy_ai_aip(z)[0] * math.exp(expo)
        return out
    raise DomainError(f"no closed form for amplitude {amplitude!r}")


def cubic_phase_roots(datum: InitialDatum, n: int):
    """Stationary-set roots of s0'(x) = +/- sqrt(2 E_n - x^2) inside the support.

    Returns (plus_roots, minus_roots); each root is checked to be simple.
    """
    e = (n + 0.5) * datum.eps
    r = math.sqrt(2.0 * e)
    lo = max(datum.support[0], -r + 1e-12)
    hi = min(datum.support[1], r - 1e-12)
    out = []
    for branch in (+1.0, -1.0):
        def g(x, _b=branch):
            return float(datum.ds0(x)) - _b * math.sqrt(max(2.0 * e - x * x, 0.0))
        roots = find_roots(g, lo, hi, n=800) if hi > lo else []
        for x0 in roots:
            h = 1e-6 * (1.0 + abs(x0))
            slope = (g(x0 + h) - g(x0 - h)) / (2.0 * h)
            if abs(slope) < 1e-6:
                raise DegenerateRootError(
                    f"stationary-set root {x0:.6g} is not simple")
        if hi > lo:
            # tangencies leave no sign change: flag near-zero local minima
            # of |g| that are not one of the simple roots already found
            xs = np.linspace(lo, hi, 801)
            vals = np.abs([g(float(x)) for x in xs])
            scale = max(float(np.max(vals)), 1.0)
            mins = (vals[1:-1] < vals[:-2]) & (vals[1:-1] < vals[2:]) \
                & (vals[1:-1] < 1e-7 * scale)
            for c in xs[1:-1][mins]:
                if not roots or min(abs(c - r) for r in roots) > 1e-6 * (1 + abs(c)):
                    raise DegenerateRootError(
                        "tangential (double) stationary-set root detected")
        out.append(roots)
    return out[0], out[1]


def cubic_phase_coefficient(datum: InitialDatum, n: int) -> float:
    """Stationary-set diagonal coefficient for cubic-type phases (s0''' != 0).

    eps * sum over crossings of the curve p = s0'(x) with the energy circle:
      upper-branch roots x+ (s0' = +sqrt(2E-x^2)):
          A0^2(x+) / |s0''(x+) sqrt(2E - x+^2) + x+|
      lower-branch roots x- (s0' = -sqrt(2E-x^2)):
          A0^2(x-) / |s0''(x-) sqrt(2E - x-^2) - x-|

    Remains finite when a root reaches a turning point (the square root
    vanishes but the |...| keeps the |x| term).  Verified against 2-D
    phase-space quadrature of the projection integral.
    """
    x = np.linspace(*datum.support, 33)
    if np.min(np.abs(datum.d3s0(x))) < 1e-8:
        raise WrongBranchError("s0''' vanishes on the support; use the "
                               "quadratic-phase route")
    e = (n + 0.5) * datum.eps
    plus, minus = cubic_phase_roots(datum, n)
    total = 0.0
    for x0 in plus:
        sq = math.sqrt(max(2.0 * e - x0 * x0, 0.0))
        total += float(datum.a0(x0)) ** 2 / abs(float(datum.d2s0(x0)) * sq + x0)
    for x0 in minus:
        sq = math.sqrt(max(2.0 * e - x0 * x0, 0.0))
        total += float(datum.a0(x0)) ** 2 / abs(float(datum.d2s0(x0)) * sq - x0)
    return datum.eps * total


# ---------------------------------------------------------------------------
# field assembly and evolution
# ---------------------------------------------------------------------------

def _pair_field(eps: float, n: int, m: int, xg, pg, backend: str,
                n_min: int) -> np.ndarray:
    geom = EigencurveGeometry.from_modes(eps, n, m)
    if backend == "exact":
        return exact_wigner_eigenfunction(geom, eps, xg, pg)
    if backend == "airy":
        if n == m:
            return airy_diagonal(geom, eps, xg, pg, n_min=n_min).astype(complex)
        return airy_offdiagonal(geom, eps, xg, pg, n_min=n_min)
    if backend == "hybrid":
        if min(n, m) >= n_min:
            return _pair_field(eps, n, m, xg, pg, "airy", n_min)
        return _pair_field(eps, n, m, xg, pg, "exact", n_min)
    raise DomainError(f"unknown backend {backend!r}")


def field_values(solution: SpectralSolution, x, p, t: float,
                 backend: str = "exact", n_min: int = N_MIN_ASYMPTOTIC,
                 diagonal: bool = True, offdiagonal: bool = True,
                 threads: int = 1, pair_tol: float = 0.0) -> np.ndarray:
    """Series field evaluated on arbitrary broadcastable point arrays."""
    xg = np.asarray(x, dtype=float)
    pg = np.asarray(p, dtype=float)
    xg, pg = np.broadcast_arrays(xg, pg)
    eps = solution.eps
    c = solution.coeffs
    cmax = float(np.max(np.abs(c))) or 1.0
    jobs = []
    if diagonal:
        jobs += [(n, n) for n in range(solution.n_max + 1)
                 if abs(c[n, n]) > pair_tol * cmax]
    if offdiagonal:
        jobs += [(n, m) for n in range(solution.n_max + 1)
                 for m in range(n + 1, solution.n_max + 1)
                 if abs(c[n, m]) > pair_tol * cmax]

    def term(pair):
        n, m = pair
        w = _pair_field(eps, n, m, xg, pg, backend, n_min)
        if n == m:
            return c[n, n].real * w
        phase = np.exp(-1j * (n - m) * t)  # (E_n - E_m)/eps = n - m
        term_nm = c[n, m] * phase * w
        return term_nm + np.conj(term_nm)   # + (m, n) partner

    out = np.zeros_like(xg, dtype=complex)
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            for v in ex.map(term, jobs):
                out += v
    else:
        for pair in jobs:
            out += term(pair)
    return out


def _assemble(solution: SpectralSolution, grid: PhaseSpaceGrid, t: float,
              backend: str, n_min: int, diagonal: bool, offdiagonal: bool,
              threads: int = 1, pair_tol: float = 0.0) -> ComplexField:
    xg, pg = grid.mesh()
    vals = field_values(solution, xg, pg, t, backend, n_min,
                        diagonal, offdiagonal, threads, pair_tol)
    return ComplexField(grid, vals)


def evolve(solution: SpectralSolution, backend: str, grid: PhaseSpaceGrid,
           t: float, n_min: int = N_MIN_ASYMPTOTIC, threads: int = 1,
           pair_tol: float = 0.0) -> ComplexField:
    """Field sum_{n,m} c_nm e^{-i(E_n-E_m)t/eps} W_nm on the grid.

    backend 'exact' uses the Laguerre closed forms, 'airy' the uniformized
    approximations (refusing modes below ``n_min``), 'hybrid' substitutes the
    exact form for low modes.  Hermitian pairing keeps the output real up to
    rounding.  ``pair_tol`` drops pairs with |c_nm| below that fraction of
    the largest coefficient.
    """
    if t < 0.0:
        raise DomainError("t must be nonnegative")
    return _assemble(solution, grid, t, backend, n_min, True, True,
                     threads, pair_tol)


def split(solution: SpectralSolution, backend: str, grid: PhaseSpaceGrid,
          t: float, n_min: int = N_MIN_ASYMPTOTIC, threads: int = 1,
          pair_tol: float = 0.0):
    """(coherent, incoherent) fields: diagonal terms vs oscillatory rest."""
    coh = _assemble(solution, grid, t, backend, n_min, True, False,
                    threads, pair_tol)
    inc = _assemble(solution, grid, t, backend, n_min, False, True,
                    threads, pair_tol)
    return coh, inc


# ---------------------------------------------------------------------------
# intensity reconstruction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AmplitudeDecomposition:
    """Position-space intensity split at one time."""

    x: np.ndarray
    coherent: np.ndarray      # time-independent, nonnegative
    incoherent: np.ndarray    # oscillates and changes sign
    t: float

    @property
    def total(self) -> np.ndarray:
        return self.coherent + self.incoherent


def amplitude(solution: SpectralSolution, backend: str, grid: PhaseSpaceGrid,
              t: float, n_min: int = N_MIN_ASYMPTOTIC, threads: int = 1,
              pair_tol: float = 0.0) -> AmplitudeDecomposition:
    """Momentum marginals of the split fields on the grid's x axis."""
    coh, inc = split(solution, backend, grid, t, n_min, threads, pair_tol)
    mc = marginals(coh)
    mi = marginals(inc)
    return AmplitudeDecomposition(grid.x_axis(), mc.density.real,
                                  mi.density.real, t)


def coherent_intensity_closed(solution: SpectralSolution, x,
                              coeffs: np.ndarray | None = None) -> np.ndarray:
    """Closed Airy^2 form of the coherent intensity (uniformized backend).

    sum_n c_nn 2^{2/3} eps^{-1/3} (2E_n)^{-1/6}
          Ai^2(-(2E_n - x^2)/(2^{2/3} eps^{2/3} (2E_n)^{1/3}));
    finite at the turning points x^2 = 2E_n (the summand is Ai^2(0) there).
    """
    eps = solution.eps
    x = np.asarray(x, dtype=float)
    diag = solution.coeffs.real.diagonal() if coeffs is None else coeffs
    out = np.zeros_like(x)
    for n, c in enumerate(diag):
        if c == 0.0:
            continue
        e = (n + 0.5) * eps
        arg = -(2.0 * e - x * x) / (2.0 ** (2.0 / 3.0) * eps ** (2.0 / 3.0)
                                    * (2.0 * e) ** (1.0 / 3.0))
        ai = airy_ai_aip(arg)[0]
        out += c * 2.0 ** (2.0 / 3.0) * eps ** (-1.0 / 3.0) \
            * (2.0 * e) ** (-1.0 / 6.0) * ai * ai
    return out


def incoherent_at_origin_closed(solution: SpectralSolution, t: float) -> float:
    """Closed form of the incoherent intensity at x = 0 (cross-check only).

    Each (n, m) pair contributes
      cos((n-m) pi/2) 2^{2/3} eps^{-1/3} R^{-2/3} (R^2-rho^2)^{1/6}
        Ai^2(-R^2 / (2^{2/3} eps^{2/3} R^{4/3} (R^2-rho^2)^{-1/3})),
    the angular factor e^{-i(n-m) phi} being piecewise constant on the p-axis.
    Pairs with odd n-m drop out entirely.
    """
    eps = solution.eps
    c = solution.coeffs
    total = 0.0
    for n in range(c.shape[0]):
        for m in range(n + 1, c.shape[0]):
            if (n - m) % 2 != 0:
                continue
            geom = EigencurveGeometry.from_modes(eps, n, m)
            big_r2 = geom.R_nm ** 2
            gap2 = big_r2 - geom.rho_nm ** 2
            h = eps ** (2.0 / 3.0) * big_r2 ** (2.0 / 3.0) * gap2 ** (-1.0 / 3.0)
            ai = airy_ai_aip(-big_r2 / (2.0 ** (2.0 / 3.0) * h))[0]
            base = (math.cos((n - m) * math.pi / 2.0) * 2.0 ** (2.0 / 3.0)
                    * eps ** (-1.0 / 3.0) * big_r2 ** (-1.0 / 3.0) * gap2 ** (1.0 / 6.0)
                    * ai * ai)
            pair = c[n, m] * np.exp(-1j * (n - m) * t)
            total += float((pair + np.conj(pair)).real) * base
    return total


# ---------------------------------------------------------------------------
# transport-equation residual
# ---------------------------------------------------------------------------

_MARGIN = 3  # interior margin of the difference stencils


def _deriv_axis(values: np.ndarray, h: float, axis: int) -> np.ndarray:
    # 6th-order central first derivative on the interior (margin 3)
    v = np.moveaxis(values, axis, 0)
    out = (-v[:-6] + 9.0 * v[1:-5] - 45.0 * v[2:-4]
           + 45.0 * v[4:-2] - 9.0 * v[5:-1] + v[6:]) / (60.0 * h)
    return np.moveaxis(out, 0, axis)


def _deriv3_axis(values: np.ndarray, h: float, axis: int) -> np.ndarray:
    # 4th-order central third derivative (margin 3)
    v = np.moveaxis(values, axis, 0)
    out = (v[:-6] - 8.0 * v[1:-5] + 13.0 * v[2:-4]
           - 13.0 * v[4:-2] + 8.0 * v[5:-1] - v[6:]) / (8.0 * h ** 3)
    return np.moveaxis(out, 0, axis)


def liouville_residual(solution: SpectralSolution, grid: PhaseSpaceGrid,
                       t: float, potential: Sequence[float] = (0.0, 0.0, 0.5),
                       h: float | None = None, backend: str = "exact",
                       n_min: int = N_MIN_ASYMPTOTIC,
                       analytic_time: bool = False) -> float:
    """Grid L2 norm of the transport + finite-dispersion residual.

    potential gives polynomial coefficients of V (lowest degree first); for
    polynomial V the dispersion series terminates, and for the harmonic well
    it is empty.  Time derivative by central differences with step ``h``
    (default eps/20, resolving the fastest retained oscillation) or
    analytically from the series when ``analytic_time`` is set.
    """
    eps = solution.eps
    if h is None:
        h = eps / 20.0
    if h <= 0.0 or (not analytic_time and h < 1e-12):
        raise DomainError("time step below the roundoff floor")
    coeffs = np.asarray(potential, dtype=float)
    deg = len(coeffs) - 1

    w0 = evolve(solution, backend, grid, t, n_min=n_min)
    if analytic_time:
        wt = _analytic_time_derivative(solution, grid, t, backend, n_min)
    elif t >= h:
        wp = evolve(solution, backend, grid, t + h, n_min=n_min)
        wm = evolve(solution, backend, grid, t - h, n_min=n_min)
        wt = (wp.values - wm.values) / (2.0 * h)
    else:
        # one-sided second-order stencil near t = 0
        w1 = evolve(solution, backend, grid, t + h, n_min=n_min)
        w2 = evolve(solution, backend, grid, t + 2.0 * h, n_min=n_min)
        wt = (-3.0 * w0.values + 4.0 * w1.values - w2.values) / (2.0 * h)
    x = grid.x_axis()
    vp = np.polynomial.polynomial.polyval(
        x, np.polynomial.polynomial.polyder(coeffs))
    p = grid.p_axis()
    mg = _MARGIN

    wx = _deriv_axis(w0.values, grid.dx, 0)[:, mg:-mg]
    wp_ = _deriv_axis(w0.values, grid.dp, 1)[mg:-mg, :]
    core = (wt[mg:-mg, mg:-mg] + p[None, mg:-mg] * wx
            - vp[mg:-mg, None] * wp_)
    # residual = W_t + p W_x - V' W_p - sum_{k>=1} (-1)^k/(2k+1)! (eps/2)^{2k}
    #            V^{(2k+1)} d_p^{2k+1} W; polynomial V truncates the sum
    if deg >= 3:
        dcoef = np.polynomial.polynomial.polyder(coeffs, 3)
        v3 = np.polynomial.polynomial.polyval(x, dcoef)
        w3p = _deriv3_axis(w0.values, grid.dp, 1)[mg:-mg, :]
        core = core + (1.0 / 6.0) * (eps / 2.0) ** 2 * v3[mg:-mg, None] * w3p
    if deg >= 5:
        raise DomainError("potentials above degree 4 are not supported here")
    return float(np.sqrt(np.sum(np.abs(core) ** 2) * grid.dx * grid.dp))


def _analytic_time_derivative(solution, grid, t, backend, n_min):
    eps = solution.eps
    c = solution.coeffs
    xg, pg = grid.mesh()
    out = np.zeros_like(xg, dtype=complex)
    for n in range(solution.n_max + 1):
        for m in range(n + 1, solution.n_max + 1):
            if c[n, m] == 0.0:
                continue
            w = _pair_field(eps, n, m, xg, pg, backend, n_min)
            term = c[n, m] * (-1j * (n - m)) * np.exp(-1j * (n - m) * t) * w
            out += term + np.conj(term)
    return out
