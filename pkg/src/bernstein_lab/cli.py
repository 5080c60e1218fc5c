"""Command-line front end.

Every command reads a set descriptor ``{"intervals": [[a, b], ...]}`` via
``--set`` and writes one artifact to stdout (or ``--out``).

CSV schemas (one header row, 17 significant digits):
  density    x,omega            512 Chebyshev points per interval (--grid)
  green      re,im,g            --grid x --grid rectangle around the hull
  comb       y,re_f,im_f,re_quotient   geometric ray x0 + iy, y in [1e-6, 1]
  extremal   x,p                plotting grid, --grid points per interval
  verify     check,residual,tolerance,result   (default output is a text table)

Exit codes: 0 success, 1 input error, 2 numerical inconsistency,
3 verification failure. Errors go to stderr as one line of JSON.
"""
from __future__ import annotations

import argparse
import dataclasses
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .bernstein import bernstein_report, green_for
from .comb import boundary_value, comb_map
from .config import DEFAULT, Tolerances
from .equilibrium import density
from .errors import LabError, NumericalInconsistency, SetError
from .extremal import extremal_polynomial, lobatto_nodes
from .green import lemma3_integral
from .sets import RealCompactSet, parse_set
from .verify import verify_suite

COMMANDS = ("capacity", "density", "green", "lemma3", "comb", "bernstein", "extremal", "verify")
NEEDS_X0 = frozenset({"comb", "bernstein", "extremal", "lemma3"})


class InputError(LabError, ValueError):
    """Bad command-line arguments or an unreadable set file."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    set_path: Path
    x0: float | None = None
    n: int | None = None
    delta_seq: tuple[float, ...] | None = None
    grid: int | None = None
    output_path: Path | None = None
    format: str = "json"            # "table" is used only by verify
    coeffs: bool = False
    tolerances: Tolerances = DEFAULT

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.command in NEEDS_X0 and self.x0 is None:
            raise InputError(f"command {self.command!r} requires --x0")
        if self.command == "extremal" and (self.n is None or self.n < 0):
            raise InputError("command 'extremal' requires --n >= 0")
        if self.grid is not None and self.grid < 2:
            raise InputError("--grid must be at least 2")

    def load_set(self) -> RealCompactSet:
        try:
            text = Path(self.set_path).read_text()
        except OSError as exc:
            raise InputError(f"cannot read set file: {exc}") from exc
        E = parse_set(text)
        if self.x0 is not None and not E.contains(self.x0):
            raise SetError(f"x0={self.x0!r} is not in E")
        return E


def _fmt(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def to_json(obj) -> str:
    """JSON with every float written to 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if obj is None:
        return "null"
    return json.dumps(str(obj))


def _csv(header: str, columns) -> str:
    rows = np.column_stack([np.asarray(c, dtype=float) for c in columns])
    buf = io.StringIO()
    buf.write(header + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _chebyshev_points(a: float, b: float, count: int) -> np.ndarray:
    theta = (np.arange(count)[::-1] + 0.5) * np.pi / count
    return 0.5 * (a + b) + 0.5 * (b - a) * np.cos(theta)


def _capacity(cfg: RunConfig, E: RealCompactSet) -> str:
    G = green_for(E, cfg.tolerances)
    return to_json({"capacity": G.capacity, "robin": G.robin, "robin_spread": G.robin_crosscheck_spread})


def _density(cfg: RunConfig, E: RealCompactSet) -> str:
    G = green_for(E, cfg.tolerances)
    count = cfg.grid or 512
    x = np.concatenate([_chebyshev_points(a, b, count) for a, b in E.intervals])
    omega = np.array([density(G.eq, xi) for xi in x])
    if cfg.format == "json":
        return to_json({"x": x, "omega": omega})
    return _csv("x,omega", [x, omega])


def _green(cfg: RunConfig, E: RealCompactSet) -> str:
    G = green_for(E, cfg.tolerances)
    lo, hi = E.hull
    pad = 0.5 * (hi - lo)
    count = cfg.grid or 64
    re = np.linspace(lo - pad, hi + pad, count)
    im = np.linspace(-pad, pad, count)
    R, I = np.meshgrid(re, im, indexing="ij")
    g = G(R + 1j * I)
    if cfg.format == "json":
        return to_json({"re": R.ravel(), "im": I.ravel(), "g": g.ravel()})
    return _csv("re,im,g", [R.ravel(), I.ravel(), g.ravel()])


def _lemma3(cfg: RunConfig, E: RealCompactSet) -> str:
    res = lemma3_integral(green_for(E, cfg.tolerances), cfg.x0)
    return to_json({"x0": cfg.x0, "value": res.value, "error_estimate": res.error_estimate})


def _comb(cfg: RunConfig, E: RealCompactSet) -> str:
    G = green_for(E, cfg.tolerances)
    count = cfg.grid or 25
    ys = 10.0 ** np.linspace(0.0, -6.0, count)
    w = comb_map(G, cfg.x0 + 1j * ys)
    quotient = ((w - boundary_value(G.eq, cfg.x0)) / (1j * ys)).real
    if cfg.format == "json":
        return to_json({"x0": cfg.x0, "y": ys, "re_f": w.real, "im_f": w.imag, "re_quotient": quotient})
    return _csv("y,re_f,im_f,re_quotient", [ys, w.real, w.imag, quotient])


def _bernstein(cfg: RunConfig, E: RealCompactSet) -> str:
    report = bernstein_report(E, cfg.x0, cfg.delta_seq, cfg.tolerances)
    return to_json(report.as_dict())


def _extremal(cfg: RunConfig, E: RealCompactSet) -> str:
    res = extremal_polynomial(E, cfg.x0, cfg.n, tol=cfg.tolerances)
    if cfg.format == "csv":
        count = cfg.grid or 200
        x = np.concatenate([lobatto_nodes(a, b, count) for a, b in E.intervals])
        return _csv("x,p", [x, res.poly(x)])
    out = {
        "n": cfg.n,
        "value": res.value,
        "ratio": res.ratio,
        "iterations": res.iterations,
        "h": res.h,
        "certified_norm": res.certified_norm,
        "grid_size": res.grid_size,
        "pivots": res.pivots,
    }
    if cfg.coeffs:
        out["chebyshev_domain"] = list(E.hull)
        out["chebyshev_coefficients"] = res.poly.to_chebyshev(E.hull).coeffs
    return to_json(out)


def _verify(cfg: RunConfig, E: RealCompactSet) -> tuple[str, bool]:
    x0s = None if cfg.x0 is None else [cfg.x0]
    report = verify_suite(E, x0s, cfg.tolerances)
    if cfg.format == "json":
        body = to_json({"passed": report.passed, "checks": [dataclasses.asdict(c) for c in report.checks]})
    elif cfg.format == "csv":
        names = "\n".join(
            f"{json.dumps(c.name)},{_fmt(c.residual)},{_fmt(c.tolerance)},{'pass' if c.passed else 'fail'}"
            for c in report.checks
        )
        body = "check,residual,tolerance,result\n" + names
    else:
        body = report.table() + "\n" + ("ALL PASS" if report.passed else "FAILURES PRESENT")
    return body, report.passed


HANDLERS = {
    "capacity": _capacity,
    "density": _density,
    "green": _green,
    "lemma3": _lemma3,
    "comb": _comb,
    "bernstein": _bernstein,
    "extremal": _extremal,
}


def _emit(cfg: RunConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.output_path is None:
        sys.stdout.write(text)
    else:
        try:
            Path(cfg.output_path).write_text(text)
        except OSError as exc:
            raise InputError(f"cannot write output: {exc}") from exc


def _error(kind: str, exc: BaseException) -> None:
    sys.stderr.write(json.dumps({"error": kind, "type": type(exc).__name__, "message": str(exc)}) + "\n")


def run(cfg: RunConfig) -> int:
    try:
        E = cfg.load_set()
        if cfg.command == "verify":
            body, ok = _verify(cfg, E)
            _emit(cfg, body)
            return 0 if ok else 3
        _emit(cfg, HANDLERS[cfg.command](cfg, E))
        return 0
    except NumericalInconsistency as exc:
        _error("numerical", exc)
        return 2
    except (LabError, ValueError) as exc:
        _error("input", exc)
        return 1


def _delta_seq(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of reals: {text!r}") from exc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="bernstein-lab",
        description="Potential theory and Bernstein factors for finite unions of real intervals.",
        epilog=__doc__.split("\n\n", 1)[1],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--set", dest="set_path", required=True, type=Path, help="JSON set descriptor")
    parser.add_argument("--x0", type=float, help="evaluation point in E")
    parser.add_argument("--n", type=int, help="polynomial degree (extremal)")
    parser.add_argument("--delta-seq", type=_delta_seq, help="comma-separated dilation radii (bernstein)")
    parser.add_argument("--grid", type=int, help="grid size, meaning depends on the command")
    parser.add_argument("--out", dest="output_path", type=Path, help="write the artifact here instead of stdout")
    parser.add_argument("--format", choices=("json", "csv"), default=None)
    parser.add_argument("--coeffs", action="store_true", help="include Chebyshev coefficients (extremal)")
    parser.add_argument("--tol-mass", type=float, default=DEFAULT.mass)
    parser.add_argument("--tol-robin", type=float, default=DEFAULT.robin)
    parser.add_argument("--tol-h", type=float, default=DEFAULT.h)
    return parser


def config_from_args(argv: Sequence[str] | None = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    fmt = args.format
    if fmt is None:
        fmt = {"density": "csv", "green": "csv", "comb": "csv", "verify": "table"}.get(args.command, "json")
    tolerances = dataclasses.replace(DEFAULT, mass=args.tol_mass, robin=args.tol_robin, h=args.tol_h)
    return RunConfig(
        command=args.command,
        set_path=args.set_path,
        x0=args.x0,
        n=args.n,
        delta_seq=args.delta_seq,
        grid=args.grid,
        output_path=args.output_path,
        format=fmt,
        coeffs=args.coeffs,
        tolerances=tolerances,
    )


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
    except InputError as exc:
        _error("input", exc)
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
