"""Phase-space fields: Wigner transforms, eigenfunctions, and their Airy forms.

Conventions fixed here once and used everywhere:

* transform normalization (2 pi eps)^{-1} with full-y integration,
  W[f,g](x,p) = (2 pi eps)^{-1} int e^{-i p y/eps} f(x+y/2) conj(g)(x-y/2) dy;
* phase-space angle phi = atan2(p, x) (full-plane continuous up to the cut);
  off-diagonal fields carry e^{-i(n-m) phi}, single-valued since n-m is an
  integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (AccuracyError, CertificateError, DomainError,
                     FlatPhaseError, GridError)
from .numerics import panel_nodes
from .specfun import airy_ai_aip, laguerre_scaled, log_gamma

N_MIN_ASYMPTOTIC = 10   # Airy forms refuse smaller mode indices by default


# ---------------------------------------------------------------------------
# grids and fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Uniform rectangular (x, p) sampling."""

    x_min: float
    x_max: float
    p_min: float
    p_max: float
    nx: int
    np: int

    def __post_init__(self):
        if not (self.x_max > self.x_min and self.p_max > self.p_min):
            raise DomainError("grid bounds must be increasing")
        if self.nx < 2 or self.np < 2:
            raise DomainError("grid needs at least 2 points per axis")

    @classmethod
    def square(cls, radius: float, n: int) -> "PhaseSpaceGrid":
        return cls(-radius, radius, -radius, radius, n, n)

    @classmethod
    def for_modes(cls, eps: float, n_max: int, n: int = 129,
                  margin: float = 0.0) -> "PhaseSpaceGrid":
        """Grid covering the working annulus sqrt(2 E_N) + 4 eps^{2/3} of mode N."""
        r = math.sqrt(2.0 * (n_max + 0.5) * eps) + 4.0 * eps ** (2.0 / 3.0) + margin
        return cls.square(r, n)

    def x_axis(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def p_axis(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.np)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dp(self) -> float:
        return (self.p_max - self.p_min) / (self.np - 1)

    def mesh(self):
        return np.meshgrid(self.x_axis(), self.p_axis(), indexing="ij")

    def covers_modes(self, eps: float, n_max: int) -> bool:
        need = math.sqrt(2.0 * (n_max + 0.5) * eps) + 4.0 * eps ** (2.0 / 3.0)
        return (self.x_max >= need and -self.x_min >= need
                and self.p_max >= need and -self.p_min >= need)


@dataclass
class ComplexField:
    """Complex values sampled on a phase-space grid (axis 0 = x, axis 1 = p)."""

    grid: PhaseSpaceGrid
    values: np.ndarray
    error_estimate: float | None = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.nx, self.grid.np):
            raise DomainError("field shape does not match the grid")
        if not np.all(np.isfinite(self.values)):
            raise DomainError("field contains non-finite values")

    def peak(self) -> float:
        return float(np.max(np.abs(self.values)))

    def imag_residue(self) -> float:
        """Max |Im| relative to the peak; small for diagonal-type fields."""
        return float(np.max(np.abs(self.values.imag)) / max(self.peak(), 1e-300))


# ---------------------------------------------------------------------------
# eigencurve geometry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EigencurveGeometry:
    """Mode-pair energies and the two Lagrangian circle radii."""

    n: int
    m: int
    E_n: float
    E_m: float

    @classmethod
    def from_modes(cls, eps: float, n: int, m: int | None = None) -> "EigencurveGeometry":
        if m is None:
            m = n
        return cls(n, m, (n + 0.5) * eps, (m + 0.5) * eps)

    def __post_init__(self):
        if self.E_n <= 0.0 or self.E_m <= 0.0:
            raise DomainError("energies must be positive")

    @property
    def R_nm(self) -> float:
        return 0.5 * (math.sqrt(2.0 * self.E_n) + math.sqrt(2.0 * self.E_m))

    @property
    def rho_nm(self) -> float:
        return 0.5 * abs(math.sqrt(2.0 * self.E_n) - math.sqrt(2.0 * self.E_m))

    @property
    def E_mean(self) -> float:
        return 0.5 * (self.E_n + self.E_m)

    @property
    def e_half_gap(self) -> float:
        return 0.5 * (self.E_n - self.E_m)


# ---------------------------------------------------------------------------
# numerical Wigner transform
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecayCertificate:
    """Declared decay of a wavefunction, fixing the y-truncation window.

    kind 'compact':     |f| = 0 for |x| > radius
    kind 'gaussian':    |f| <= amplitude * e^{-(|x|-radius)^2 / (2 scale^2)}
    kind 'exponential': |f| <= amplitude * e^{-(|x|-radius) / scale}

    ``max_frequency`` bounds |d/dy arg(f(x+y/2) conj(g)(x-y/2))| so the node
    density can resolve the integrand's own oscillation on top of the kernel.
    """

    kind: str
    radius: float
    scale: float = 1.0
    amplitude: float = 1.0
    max_frequency: float = 0.0

    def y_halfwidth(self, tail: float = 1e-14) -> float:
        if self.kind == "compact":
            return 2.0 * self.radius
        decades = math.log(max(self.amplitude, 1.0) ** 2 / tail)
        if self.kind == "gaussian":
            return 2.0 * (self.radius + self.scale * math.sqrt(2.0 * decades))
        if self.kind == "exponential":
            return 2.0 * (self.radius + self.scale * decades)
        raise CertificateError(f"unknown certificate kind {self.kind!r}")


def eigenfunction_certificate(eps: float, n_max: int) -> DecayCertificate:
    """Certificate for oscillator eigenfunctions up to mode ``n_max``.

    Window 2 sqrt(eps ln(1/tau)) (1 + sqrt(2 E_N / eps)) at tau = 1e-14,
    realized as a gaussian certificate; the in-well oscillation rate is
    sqrt(2 E_N)/eps per unit y (two half-shifted factors).
    """
    e_top = (n_max + 0.5) * eps
    tau = 1e-14
    half = math.sqrt(eps * math.log(1.0 / tau)) * (1.0 + math.sqrt(2.0 * e_top / eps))
    # encode the window directly: radius + scale*sqrt(2 ln(1/tau)) = half
    sc = math.sqrt(eps)
    rad = max(half - sc * math.sqrt(2.0 * math.log(1.0 / tau)), math.sqrt(2.0 * e_top))
    return DecayCertificate("gaussian", rad, sc,
                            max_frequency=math.sqrt(2.0 * e_top) / eps)


def wigner_transform(f: Callable, g: Callable, eps: float, grid: PhaseSpaceGrid,
                     certificate: DecayCertificate | None = None,
                     tail: float = 1e-14) -> ComplexField:
    """Numerical cross Wigner transform of vectorized wavefunctions f, g.

    Refuses to run without a decay certificate (the y-window would be a
    guess, and this routine is used as an oracle).  Node density: at least
    12 per wavelength of the fastest kernel oscillation 2 pi eps / |p|
    plus the certified integrand frequency.
    """
    if certificate is None:
        raise CertificateError("wigner_transform requires a decay certificate")
    y_half = certificate.y_halfwidth(tail)
    p_ax = grid.p_axis()
    x_ax = grid.x_axis()
    rate = certificate.max_frequency + float(np.max(np.abs(p_ax))) / eps
    n_panels = max(8, int(math.ceil(2.0 * y_half * rate / (4.0 * math.pi))))

    def compute(npan, xs, ps):
        y, w = panel_nodes(-y_half, y_half, npan, 24)
        fv = np.asarray(f(xs[:, None] + 0.5 * y[None, :]), dtype=complex)
        gv = np.asarray(g(xs[:, None] - 0.5 * y[None, :]), dtype=complex)
        kern = np.exp(-1j * np.outer(y, ps) / eps)
        return ((fv * np.conj(gv)) * w[None, :]) @ kern / (2.0 * math.pi * eps)

    values = compute(n_panels, x_ax, p_ax)
    # spot-check against doubled panels on a subsample
    xs_c = x_ax[:: max(1, grid.nx // 8)]
    ps_c = p_ax[:: max(1, grid.np // 8)]
    coarse = compute(n_panels, xs_c, ps_c)
    fine = compute(2 * n_panels, xs_c, ps_c)
    err = float(np.max(np.abs(fine - coarse)))
    peak = float(np.max(np.abs(values)))
    if err > 1e-7 * max(peak, 1e-300):
        raise AccuracyError(
            f"wigner_transform self-check failed (estimate {err:.2e})", achieved=err)
    return ComplexField(grid, values, error_estimate=err)


# ---------------------------------------------------------------------------
# exact Wigner eigenfunctions (Laguerre closed form)
# ---------------------------------------------------------------------------

def exact_wigner_eigenfunction(geom: EigencurveGeometry, eps: float, x, p):
    """Closed-form cross Wigner eigenfunction of modes (n, m); vectorized.

    For n >= m:
      (-1)^m/(pi eps) sqrt(m!/n!) (sqrt(2/eps)(x - i p))^{n-m}
          e^{-(x^2+p^2)/eps} L_m^{(n-m)}(2 (x^2+p^2)/eps),
    the n < m case is the complex conjugate with (n, m) swapped.  Prefactors
    and the Laguerre value are combined in log scale so large modes at large
    radius stay finite.
    """
    n, m = geom.n, geom.m
    if n >= m:
        return _exact_wigner_ordered(n, m, eps, x, p)
    return np.conj(_exact_wigner_ordered(m, n, eps, x, p))


def _exact_wigner_ordered(n: int, m: int, eps: float, x, p):
    # n >= m
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    x, p = np.broadcast_arrays(x, p)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    p = np.atleast_1d(p)
    a = n - m
    r2 = x * x + p * p
    arg = 2.0 * r2 / eps
    lag, logsc = laguerre_scaled(m, float(a), arg)
    sign = (-1.0) ** m * np.sign(lag)
    with np.errstate(divide="ignore"):
        logabs = np.where(lag == 0.0, -np.inf, np.log(np.abs(np.where(lag == 0.0, 1.0, lag))))
    logmag = (logabs + logsc - r2 / eps
              + 0.5 * (log_gamma(m + 1.0) - log_gamma(n + 1.0))
              - math.log(math.pi * eps))
    if a > 0:
        with np.errstate(divide="ignore"):
            logmag = logmag + 0.5 * a * np.where(r2 == 0.0, -np.inf, np.log(arg))
        phase = np.exp(-1j * a * np.arctan2(p, x))
    else:
        phase = np.ones_like(r2, dtype=complex)
    out = sign * np.exp(logmag) * phase
    out = np.where(np.isfinite(logmag), out, 0.0)
    if scalar:
        return complex(out[0])
    return out


def exact_wigner_field(geom: EigencurveGeometry, eps: float,
                       grid: PhaseSpaceGrid) -> ComplexField:
    xg, pg = grid.mesh()
    return ComplexField(grid, exact_wigner_eigenfunction(geom, eps, xg, pg))


# ---------------------------------------------------------------------------
# Airy-uniformized eigenfunctions
# ---------------------------------------------------------------------------

def airy_diagonal(geom: EigencurveGeometry, eps: float, x, p,
                  n_min: int = N_MIN_ASYMPTOTIC):
    """Turning-point-free diagonal approximation; real, entire; vectorized.

    pi^{-1} eps^{-2/3} (2 E_n)^{-1/3} Ai((p^2+x^2-2E_n)/(eps^{2/3} (2E_n)^{1/3}))
    """
    if geom.n < n_min:
        raise DomainError(f"airy_diagonal requires n >= {n_min} (override n_min to force)")
    e = geom.E_n
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    r2 = x * x + p * p
    h = eps ** (2.0 / 3.0) * (2.0 * e) ** (1.0 / 3.0)
    return (airy_ai_aip((r2 - 2.0 * e) / h)[0]
            / (math.pi * eps ** (2.0 / 3.0) * (2.0 * e) ** (1.0 / 3.0)))


def airy_offdiagonal(geom: EigencurveGeometry, eps: float, x, p,
                     n_min: int = N_MIN_ASYMPTOTIC):
    """Off-diagonal Airy approximation with the angular winding factor.

    pi^{-1} e^{-i(n-m) phi} eps^{-2/3} R^{-4/3} (R^2-rho^2)^{1/3}
        Ai((p^2+x^2-R^2) / (eps^{2/3} R^{4/3} (R^2-rho^2)^{-1/3})),
    phi = atan2(p, x).  Undefined at the origin.
    """
    if geom.n == geom.m:
        return airy_diagonal(geom, eps, x, p, n_min=n_min).astype(complex)
    if min(geom.n, geom.m) < n_min:
        raise DomainError(f"airy_offdiagonal requires min(n, m) >= {n_min}")
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    scalar = x.ndim == 0 and p.ndim == 0
    r2 = x * x + p * p
    if np.any(r2 == 0.0) and scalar:
        raise DomainError("angle undefined at the phase-space origin")
    big_r = geom.R_nm
    rho = geom.rho_nm
    gap2 = big_r ** 2 - rho ** 2
    h = eps ** (2.0 / 3.0) * big_r ** (4.0 / 3.0) * gap2 ** (-1.0 / 3.0)
    pref = gap2 ** (1.0 / 3.0) / (math.pi * eps ** (2.0 / 3.0) * big_r ** (4.0 / 3.0))
    winding = np.exp(-1j * (geom.n - geom.m) * np.arctan2(p, x))
    out = pref * winding * airy_ai_aip((r2 - big_r ** 2) / h)[0]
    # grid arrays: an origin cell takes the azimuthal mean (zero) of the
    # winding factor instead of an arbitrary branch of the angle
    return np.where(r2 == 0.0, 0.0, out)


def airy_diagonal_field(geom, eps, grid, n_min=N_MIN_ASYMPTOTIC) -> ComplexField:
    xg, pg = grid.mesh()
    return ComplexField(grid, airy_diagonal(geom, eps, xg, pg, n_min=n_min).astype(complex))


def airy_offdiagonal_field(geom, eps, grid, n_min=N_MIN_ASYMPTOTIC) -> ComplexField:
    xg, pg = grid.mesh()
    return ComplexField(grid, airy_offdiagonal(geom, eps, xg, pg, n_min=n_min))


def berry_semiclassical(ds0: Callable, d3s0: Callable, a0: Callable,
                        eps: float, x, p, s3_min: float = 1e-8):
    """Single-phase semiclassical Wigner function of A(x) e^{i S(x)/eps}.

    (2^{2/3}/eps^{2/3}) (2/|S'''|)^{1/3} A^2(x)
        Ai(-(2^{2/3}/eps^{2/3}) (2/S''')^{1/3} (p - S'(x)))

    valid near the Lagrangian curve p = S'(x).  The cube root of 2/S''' is
    the real signed root.  Flat phases (|S'''| < s3_min) are refused: the
    Airy scaling collapses and the concentrated-limit representation should
    be used instead.
    """
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    s3 = np.asarray(d3s0(x), dtype=float)
    if np.any(np.abs(s3) < s3_min):
        raise FlatPhaseError("|S0'''| below threshold; Airy scaling undefined")
    c = 2.0 ** (2.0 / 3.0) / eps ** (2.0 / 3.0)
    pref = c * (2.0 / np.abs(s3)) ** (1.0 / 3.0) * np.asarray(a0(x), dtype=float) ** 2
    arg = -c * np.cbrt(2.0 / s3) * (p - np.asarray(ds0(x), dtype=float))
    return pref * airy_ai_aip(arg)[0]


# ---------------------------------------------------------------------------
# stationary-point geometry in phase space
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiagGeometry:
    sigma0: float
    region: str          # meniscus | dual-interior | exterior | on-curve


@dataclass(frozen=True)
class OffdiagGeometry:
    sigma1: float | None
    sigma2: float | None
    sigma_bar: float
    region: str          # ring | inner-disk | on-outer-circle | exterior
    has_real_saddles: bool


def stationary_geometry_diag(geom: EigencurveGeometry, x: float, p: float,
                             curve_tol: float = 1e-12) -> DiagGeometry:
    """Chord half-length sigma0 and region label for the diagonal phase."""
    if geom.n != geom.m:
        raise DomainError("diagonal geometry needs n = m")
    r2 = x * x + p * p
    if r2 == 0.0:
        raise DomainError("geometry undefined at the origin")
    e = geom.E_n
    sigma0 = abs(p) / math.sqrt(r2) * math.sqrt(abs(2.0 * e - r2))
    scale = curve_tol * (1.0 + 2.0 * e)
    if abs(r2 - 2.0 * e) <= scale:
        return DiagGeometry(sigma0, "on-curve")
    if r2 > 2.0 * e:
        return DiagGeometry(sigma0, "exterior")
    c = math.sqrt(e / 2.0)
    in_dual = (p * p + (x - c) ** 2 <= e / 2.0) or (p * p + (x + c) ** 2 <= e / 2.0)
    return DiagGeometry(sigma0, "dual-interior" if in_dual else "meniscus")


def stationary_geometry_offdiag(geom: EigencurveGeometry, x: float, p: float,
                                curve_tol: float = 1e-12) -> OffdiagGeometry:
    """Roots of the off-diagonal chord quadratic with region classification."""
    if geom.n == geom.m:
        raise DomainError("off-diagonal geometry needs n != m")
    r2 = x * x + p * p
    if r2 == 0.0:
        raise DomainError("geometry undefined at the origin")
    e_mean, e_gap = geom.E_mean, geom.e_half_gap
    sigma_bar = x * e_gap / r2
    disc = r2 * (2.0 * e_mean - r2) - e_gap * e_gap
    big_r2 = geom.R_nm ** 2
    rho2 = geom.rho_nm ** 2
    scale = curve_tol * (1.0 + big_r2)
    if abs(r2 - big_r2) <= scale:
        return OffdiagGeometry(sigma_bar, sigma_bar, sigma_bar, "on-outer-circle", True)
    if r2 < rho2:
        return OffdiagGeometry(None, None, sigma_bar, "inner-disk", False)
    if r2 > big_r2:
        return OffdiagGeometry(None, None, sigma_bar, "exterior", False)
    root = abs(p) / r2 * math.sqrt(max(disc, 0.0))
    return OffdiagGeometry(sigma_bar + root, sigma_bar - root, sigma_bar, "ring", True)


# ---------------------------------------------------------------------------
# classical limit and marginals
# ---------------------------------------------------------------------------

def classical_limit_eigenfunction(geom: EigencurveGeometry, test: Callable,
                                  n_theta: int = 4096) -> complex:
    """Pairing of the limit eigenfunction with a test function.

    <e^{-i(n-m) theta} delta(r^2 - (E_n + E_m)), test>
      = (1/2) int_0^{2pi} e^{-i(n-m) theta} test(R cos, R sin) d theta,
    R^2 = E_n + E_m.  Periodic trapezoid (spectrally accurate).
    """
    r = math.sqrt(geom.E_n + geom.E_m)
    theta = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)
    vals = np.exp(-1j * (geom.n - geom.m) * theta) * \
        np.asarray(test(r * np.cos(theta), r * np.sin(theta)), dtype=complex)
    return complex(0.5 * np.mean(vals) * 2.0 * math.pi)


@dataclass(frozen=True)
class Marginals:
    x: np.ndarray
    density: np.ndarray   # int W dp per x column
    flux: np.ndarray      # int p W dp per x column
    total: complex        # full 2-D integral


def marginals(field: ComplexField, tail_tol: float = 1e-8) -> Marginals:
    """Momentum marginals of a field; requires decay at the p-boundary."""
    vals = field.values
    peak = field.peak()
    edge = max(float(np.max(np.abs(vals[:, 0]))), float(np.max(np.abs(vals[:, -1]))))
    if edge > tail_tol * max(peak, 1e-300):
        raise GridError(
            f"field does not decay at the p-boundary (edge/peak = {edge / peak:.2e})")
    p = field.grid.p_axis()
    density = np.trapezoid(vals, p, axis=1)
    flux = np.trapezoid(vals * p[None, :], p, axis=1)
    total = complex(np.trapezoid(density, field.grid.x_axis()))
    return Marginals(field.grid.x_axis(), density, flux, total)
