"""Command-line front end: scenario-driven grid jobs, CSV export, verification.

Subcommands
-----------
eigen   per-mode tables: eigenvalues, exact/WKB eigenfunction samples with a
        turning-band sentinel column, exact and Airy phase-space grids
solve   coefficient table, evolved field grids and intensity decompositions
        for the configured times and backend
verify  run a named criteria suite; machine-readable JSONL report, exit 1 on
        any failure
bench   timing micro-benchmarks of the main kernels

All numeric output uses 17 significant digits (binary round-trip exact);
files are written atomically (temp + rename); a sibling ``.meta.json`` echoes
the scenario.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .errors import ConfigError, SemiwigError, TurningBandError
from .oscillator import SemiclassicalParams, eigenvalue, exact_eigenfunction, \
    region, wkb_eigenfunction
from .solver import (InitialDatum, SpectralSolution, amplitude,
                     bump_amplitude, coefficients_exact, evolve,
                     gaussian_amplitude, polynomial_phase, unit_amplitude)
from .verify import SUITES, apply_mutation, run_suite
from .wigner import (EigencurveGeometry, PhaseSpaceGrid, airy_diagonal_field,
                     exact_wigner_field)

_FMT = "%.17g"

_PHASE_KINDS = {
    "quad_plus": [0.0, 0.0, 0.5],
    "quad_minus": [0.0, 0.0, -0.5],
    "cubic": [0.0, 0.0, 0.0, -1.0 / 3.0],
}


@dataclass
class Scenario:
    """Validated job description mirrored field-for-field by the config file."""

    eps: float
    backend: str = "exact"
    modes: list[int] | None = None
    datum: dict | None = None
    grid: dict = field(default_factory=lambda: {"radius": 4.5, "n": 129})
    times: list[float] = field(default_factory=lambda: [0.0])
    n_max: int | None = None
    out: str = "out"

    def __post_init__(self):
        if not 0.0 < self.eps <= 1.0:
            raise ConfigError("eps must lie in (0, 1]")
        if self.backend not in ("exact", "airy", "hybrid"):
            raise ConfigError(f"unknown backend {self.backend!r}")
        if (self.modes is None) == (self.datum is None):
            raise ConfigError("exactly one of 'modes' or 'datum' must be given")
        if self.modes is not None:
            if not self.modes or any(n < 0 for n in self.modes):
                raise ConfigError("modes must be a nonempty list of indices >= 0")
        if self.datum is not None:
            self._build_datum()   # fail fast on bad datum specs
        if any(t < 0.0 for t in self.times):
            raise ConfigError("times must be nonnegative")
        self.phase_space_grid()   # fail fast on bad grid specs

    @classmethod
    def from_dict(cls, d: dict) -> "Scenario":
        known = {"eps", "backend", "modes", "datum", "grid", "times", "n_max", "out"}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown scenario fields: {sorted(extra)}")
        if "eps" not in d:
            raise ConfigError("scenario requires 'eps'")
        return cls(**d)

    def to_dict(self) -> dict:
        return asdict(self)

    def phase_space_grid(self) -> PhaseSpaceGrid:
        g = self.grid
        try:
            if "radius" in g:
                return PhaseSpaceGrid.square(float(g["radius"]), int(g.get("n", 129)))
            return PhaseSpaceGrid(float(g["x_min"]), float(g["x_max"]),
                                  float(g["p_min"]), float(g["p_max"]),
                                  int(g["nx"]), int(g["np"]))
        except (KeyError, ValueError, SemiwigError) as exc:
            raise ConfigError(f"bad grid spec: {exc}") from exc

    def _build_datum(self) -> InitialDatum:
        d = self.datum
        amp_spec = d.get("amplitude", {})
        kind = amp_spec.get("kind")
        if kind == "bump":
            c = float(amp_spec.get("center", 0.0))
            hw = float(amp_spec.get("halfwidth", 1.0))
            a0 = bump_amplitude(c, hw)
            support = (c - hw, c + hw)
        elif kind == "gaussian":
            c = float(amp_spec.get("center", 0.0))
            w = float(amp_spec.get("width", 1.0))
            a0 = gaussian_amplitude(c, w)
            support = (c - 8.0 * w, c + 8.0 * w)
        elif kind == "one":
            a0 = unit_amplitude()
            support = None
        else:
            raise ConfigError(f"unknown amplitude kind {kind!r}")
        if "support" in d:
            support = (float(d["support"][0]), float(d["support"][1]))
        if support is None:
            raise ConfigError("amplitude 'one' requires an explicit support")
        ph = d.get("phase", {})
        pkind = ph.get("kind")
        if pkind in _PHASE_KINDS:
            coeffs = _PHASE_KINDS[pkind]
        elif pkind == "custom":
            coeffs = [float(c) for c in ph.get("coeffs", [])]
            if len(coeffs) > 6:
                raise ConfigError("custom phase polynomials are limited to degree 5")
        else:
            raise ConfigError(f"unknown phase kind {pkind!r}")
        s0, ds0, d2s0, d3s0 = polynomial_phase(coeffs)
        return InitialDatum(a0, s0, ds0, d2s0, d3s0, eps=self.eps, support=support)

    def solution(self) -> SpectralSolution:
        if self.modes is not None:
            top = max(self.modes)
            b = np.zeros(top + 1, dtype=complex)
            for n in self.modes:
                b[n] = 1.0
            b /= np.linalg.norm(b)
            return SpectralSolution(self.eps, np.outer(b, b.conj()),
                                    provenance="mode-list", projections=b)
        return coefficients_exact(self._build_datum(), n_max=self.n_max)


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _atomic_write(path: str, text: str) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path) or ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv(header: list[str], rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for v in row:
            if isinstance(v, float):
                cells.append(_FMT % v)
            else:
                cells.append(str(v))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _write_meta(path: str, scenario: Scenario, extra: dict | None = None) -> None:
    meta = {"scenario": scenario.to_dict(), "semiwig_version": __version__,
            "numpy_version": np.__version__}
    if extra:
        meta.update(extra)
    _atomic_write(path, json.dumps(meta, indent=2, sort_keys=True) + "\n")


def _field_csv(path: str, grid: PhaseSpaceGrid, values: np.ndarray) -> None:
    x = grid.x_axis()
    p = grid.p_axis()
    rows = []
    for i in range(grid.nx):
        for j in range(grid.np):
            v = values[i, j]
            rows.append((float(x[i]), float(p[j]), float(v.real), float(v.imag)))
    _atomic_write(path, _csv(["x", "p", "re", "im"], rows))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_eigen(scenario: Scenario, out_dir: str) -> int:
    if scenario.modes is None:
        raise ConfigError("'eigen' needs a mode list")
    grid = scenario.phase_space_grid()
    rows = []
    for n in scenario.modes:
        par = SemiclassicalParams(scenario.eps, n)
        rows.append((n, eigenvalue(par)))
        x = grid.x_axis()
        table = []
        for xi in x:
            reg = region(par, float(xi))
            in_band = 1 if reg == "turning-band" else 0
            wkb = math.nan
            if not in_band:
                try:
                    wkb = float(wkb_eigenfunction(par, float(xi)))
                except TurningBandError:
                    in_band = 1
            table.append((float(xi),
                          float(exact_eigenfunction(par, float(xi))),
                          wkb, in_band))
        _atomic_write(os.path.join(out_dir, f"mode_{n:03d}_eigenfunction.csv"),
                      _csv(["x", "exact", "wkb", "turning_band"], table))
        geom = EigencurveGeometry.from_modes(scenario.eps, n, n)
        _field_csv(os.path.join(out_dir, f"mode_{n:03d}_wigner_exact.csv"),
                   grid, exact_wigner_field(geom, scenario.eps, grid).values)
        _field_csv(os.path.join(out_dir, f"mode_{n:03d}_wigner_airy.csv"),
                   grid, airy_diagonal_field(geom, scenario.eps, grid,
                                             n_min=0).values)
    _atomic_write(os.path.join(out_dir, "eigenvalues.csv"),
                  _csv(["n", "eigenvalue"], rows))
    _write_meta(os.path.join(out_dir, "eigen.meta.json"), scenario,
                {"command": "eigen"})
    return 0


def cmd_solve(scenario: Scenario, out_dir: str, threads: int = 1) -> int:
    sol = scenario.solution()
    grid = scenario.phase_space_grid()
    rows = []
    for n in range(sol.n_max + 1):
        for m in range(sol.n_max + 1):
            c = sol.coeffs[n, m]
            rows.append((n, m, float(c.real), float(c.imag), sol.provenance))
    _atomic_write(os.path.join(out_dir, "coefficients.csv"),
                  _csv(["n", "m", "re", "im", "provenance"], rows))
    for k, t in enumerate(scenario.times):
        fld = evolve(sol, scenario.backend, grid, float(t), threads=threads)
        _field_csv(os.path.join(out_dir, f"field_t{k:02d}.csv"), grid, fld.values)
        dec = amplitude(sol, scenario.backend, grid, float(t), threads=threads)
        amp_rows = [(float(x), float(c), float(i), float(c + i))
                    for x, c, i in zip(dec.x, dec.coherent, dec.incoherent)]
        _atomic_write(os.path.join(out_dir, f"amplitude_t{k:02d}.csv"),
                      _csv(["x", "coherent", "incoherent", "total"], amp_rows))
    _write_meta(os.path.join(out_dir, "solve.meta.json"), scenario,
                {"command": "solve", "n_max": sol.n_max,
                 "times": list(map(float, scenario.times))})
    return 0


def cmd_verify(suite: str, out_dir: str, mutate: str | None = None) -> int:
    if suite not in SUITES:
        print(f"unknown suite {suite!r}; choose from {sorted(SUITES)}",
              file=sys.stderr)
        return 2
    undo = apply_mutation(mutate) if mutate else None
    try:
        results = run_suite(suite)
    finally:
        if undo:
            undo()
    os.makedirs(out_dir, exist_ok=True)
    stamp = time.strftime("%Y-%m-%dT%H:%M:%S")
    report_path = os.path.join(out_dir, "verify_report.jsonl")
    with open(report_path, "a") as fh:   # append-safe log
        for r in results:
            fh.write(json.dumps({
                "timestamp": stamp, "suite": suite, "criterion": r.name,
                "measured": r.measured, "threshold": r.threshold,
                "passed": r.passed, "seconds": round(r.seconds, 2),
                "mutation": mutate,
            }, sort_keys=True) + "\n")
    for r in results:
        print(r.line())
    n_fail = sum(not r.passed for r in results)
    print(f"{len(results) - n_fail}/{len(results)} criteria passed "
          f"(report: {report_path})")
    return 1 if n_fail else 0


def cmd_bench(out_dir: str) -> int:
    from .specfun import airy_ai_aip
    rows = []
    z = np.linspace(-12.0, 12.0, 1_000_000)
    t0 = time.time()
    airy_ai_aip(z)
    rows.append(("airy-pairs-per-second", z.size / (time.time() - t0)))
    eps = 0.5
    grid = PhaseSpaceGrid.square(5.0, 201)
    geom = EigencurveGeometry.from_modes(eps, 8, 6)
    t0 = time.time()
    exact_wigner_field(geom, eps, grid)
    rows.append(("laguerre-field-points-per-second",
                 grid.nx * grid.np / (time.time() - t0)))
    t0 = time.time()
    airy_diagonal_field(EigencurveGeometry.from_modes(eps, 12, 12), eps, grid)
    rows.append(("airy-field-points-per-second",
                 grid.nx * grid.np / (time.time() - t0)))
    _atomic_write(os.path.join(out_dir, "bench.csv"),
                  _csv(["kernel", "rate"], rows))
    for name, rate in rows:
        print(f"{name}: {rate:.3e}")
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _load_scenario(path: str) -> Scenario:
    try:
        with open(path) as fh:
            return Scenario.from_dict(json.load(fh))
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="semiwig",
        description="phase-space oscillator solver and verification suites")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("eigen", "solve"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="scenario JSON file")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--backend", default=None,
                       choices=["exact", "airy", "hybrid"])
    p = sub.add_parser("verify")
    p.add_argument("--suite", default="all", help=f"one of {sorted(SUITES)}")
    p.add_argument("--out", default="out")
    p.add_argument("--mutate", default=None, help=argparse.SUPPRESS)
    p = sub.add_parser("bench")
    p.add_argument("--out", default="out")

    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args.suite, args.out, args.mutate)
        if args.command == "bench":
            return cmd_bench(args.out)
        scenario = _load_scenario(args.config)
        if args.backend:
            scenario.backend = args.backend
        out_dir = args.out or scenario.out
        if args.command == "eigen":
            return cmd_eigen(scenario, out_dir)
        return cmd_solve(scenario, out_dir, threads=args.threads)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except SemiwigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
