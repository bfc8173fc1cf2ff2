"""Shared numerical kernels: panel Gauss-Legendre quadrature and root finding."""

from __future__ import annotations

import math

import numpy as np

from .errors import BracketingError

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1], cached."""
    if n not in _GL_CACHE:
        _GL_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GL_CACHE[n]


def panel_nodes(a: float, b: float, n_panels: int, deg: int = 24):
    """Gauss-Legendre nodes/weights for ``n_panels`` equal panels on [a, b]."""
    x, w = gauss_legendre(deg)
    edges = np.linspace(a, b, n_panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])[:, None]
    half = 0.5 * (edges[1] - edges[0])
    nodes = (mid + half * x[None, :]).ravel()
    weights = np.tile(half * w, n_panels)
    return nodes, weights


def panel_integrate(f, a: float, b: float, n_panels: int, deg: int = 24):
    nodes, weights = panel_nodes(a, b, n_panels, deg)
    return np.sum(weights * f(nodes), axis=-1)


def bisect_newton(f, lo: float, hi: float, df=None, tol: float = 1e-12,
                  max_iter: int = 200) -> float:
    """Safeguarded root finder on a sign-changing bracket.

    Newton steps (when ``df`` is given and the step stays inside the bracket)
    accelerated by bisection fallback; without ``df`` falls back to bisection
    with secant polish.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise BracketingError(f"no sign change on [{lo}, {hi}]")
    x = 0.5 * (lo + hi)
    for _ in range(max_iter):
        fx = f(x)
        if fx == 0.0 or (hi - lo) < tol * (1.0 + abs(x)):
            return x
        if flo * fx < 0.0:
            hi = x
        else:
            lo, flo = x, fx
        x_new = None
        if df is not None:
            d = df(x)
            if d != 0.0 and math.isfinite(d):
                cand = x - fx / d
                if lo < cand < hi:
                    x_new = cand
        x = x_new if x_new is not None else 0.5 * (lo + hi)
    return x


def scan_brackets(f, lo: float, hi: float, n: int = 400):
    """Sign-change brackets of ``f`` on [lo, hi] from a uniform scan."""
    xs = np.linspace(lo, hi, n + 1)
    vals = np.array([f(x) for x in xs])
    out = []
    for i in range(n):
        if vals[i] == 0.0:
            out.append((xs[i], xs[i]))
        elif vals[i] * vals[i + 1] < 0.0:
            out.append((xs[i], xs[i + 1]))
    if vals[-1] == 0.0:
        out.append((xs[-1], xs[-1]))
    return out


def find_roots(f, lo: float, hi: float, n: int = 400, df=None):
    """All simple roots of ``f`` on [lo, hi] located by scan + safeguarded Newton."""
    roots = []
    for a, b in scan_brackets(f, lo, hi, n):
        if a == b:
            roots.append(a)
        else:
            roots.append(bisect_newton(f, a, b, df=df))
    # collapse duplicates from scan artifacts
    roots.sort()
    dedup = []
    for r in roots:
        if not dedup or abs(r - dedup[-1]) > 1e-10 * (1.0 + abs(r)):
            dedup.append(r)
    return dedup


def trapezoid_2d(values: np.ndarray, dx: float, dp: float):
    """2-D trapezoid rule on a uniform grid (first axis x, second axis p)."""
    wx = np.ones(values.shape[0])
    wx[0] = wx[-1] = 0.5
    wp = np.ones(values.shape[1])
    wp[0] = wp[-1] = 0.5
    return float(np.einsum("i,ij,j->", wx, np.real(values), wp) * dx * dp) + \
        1j * float(np.einsum("i,ij,j->", wx, np.imag(values), wp) * dx * dp)
