"""Command-line interface: ``skewgreen <subcommand> MAPFILE ...``.

Exit codes: 0 success, 1 usage or input error, 2 domain error
(degrees below 2), 3 verify-suite failure.
"""
from __future__ import annotations

import argparse
import struct
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

from . import green as G
from .algebra import DomainError
from .degree import check_degree_growth
from .escape import DominanceUnavailable, OrbitStatus, certified_region, classify_orbit
from .mapfile import MapFile, ParseError, format_map, format_poly2, parse_map
from .stability import (WrongCase as StabilityWrongCase, extend, indeterminacy_on_linf,
                        is_algebraically_stable, linf_dynamics)
from .weights import format_alpha, weight_spec

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3
PIXEL_BUDGET = 16_000_000
RASTER_FUNCTIONS = ("base", "fiber", "fiber-ratio", "weighted", "normalized", "bigG")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str, n: int, what: str) -> List[float]:
    parts = text.split(",")
    if len(parts) != n:
        raise argparse.ArgumentTypeError(f"{what} needs {n} comma-separated numbers")
    try:
        return [float(x) for x in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number in {what}: {text!r}") from None


def point_arg(text: str):
    zr, zi, wr, wi = _floats(text, 4, "--point")
    return complex(zr, zi), complex(wr, wi)


def complex_arg(text: str) -> complex:
    re_, im = _floats(text, 2, "complex value")
    return complex(re_, im)


def window_arg(text: str):
    x0, x1, y0, y1 = _floats(text, 4, "--window")
    if not (x0 < x1 and y0 < y1):
        raise argparse.ArgumentTypeError("--window needs x0 < x1 and y0 < y1")
    return x0, x1, y0, y1


def size_arg(text: str):
    try:
        w, h = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError("--size must look like 640x480") from None
    if w < 1 or h < 1:
        raise argparse.ArgumentTypeError("--size must be positive")
    return w, h


def _load(path: str) -> MapFile:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_map(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


# ---------------------------------------------------------------- commands

def cmd_alpha(args, out):
    f = _load(args.map).f
    spec = weight_spec(f)
    print(f"alpha = {format_alpha(spec.alpha)} (case: {spec.case_tag})", file=out)
    if spec.h is not None:
        print(f"h = {format_poly2(spec.h)}", file=out)


def cmd_classify(args, out):
    mf = _load(args.map)
    g, (s, t) = mf.normalization
    z, w = args.point
    try:
        region = certified_region(g)
    except DominanceUnavailable as exc:
        print(f"no escape region: {exc}", file=out)
        return
    zn, wn = complex(z) / complex(s), complex(w) / complex(t)
    oc = classify_orbit(g, region, zn, wn, args.n_max)
    print(f"R = {region.R!r}, region = {region.region_kind.value}, "
          f"log r = {region.log_r!r}, log r0 = {region.log_r0!r}", file=out)
    msg = f"orbit: {oc.status.value}"
    if oc.status is OrbitStatus.ENTERS_WR:
        msg += f" at step {oc.steps}"
    msg += f"; base: {oc.base_status.value}"
    if oc.fiber_dead:
        msg += "; fiber orbit pinned at w = 0"
    print(msg, file=out)


def cmd_green(args, out):
    f = _load(args.map).f
    z, w = args.point
    v = G.evaluate(args.function, f, z, w, args.tol, args.n_max)
    print(str(v), file=out)


@dataclass(frozen=True)
class RasterJob:
    function: str
    plane: str            # "w": w varies at fixed z; "z": z varies at fixed w
    fixed: complex
    window: tuple
    size: tuple
    tol: float
    n_max: int
    fmt: str

    def pixel(self, i: int, j: int) -> complex:
        x0, x1, y0, y1 = self.window
        wd, ht = self.size
        return complex(x0 + (i + 0.5) * (x1 - x0) / wd, y1 - (j + 0.5) * (y1 - y0) / ht)


def raster_values(job: RasterJob, f, threads: int = 1) -> List[List[G.GreenValue]]:
    """Row-major values, top row first; row order is restored after parallel work."""
    wd, ht = job.size

    def row(j):
        vals = []
        for i in range(wd):
            c = job.pixel(i, j)
            z, w = (job.fixed, c) if job.plane == "w" else (c, job.fixed)
            vals.append(G.evaluate(job.function, f, z, w, job.tol, job.n_max))
        return vals

    if threads <= 1:
        return [row(j) for j in range(ht)]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(row, range(ht)))


def write_csv(job: RasterJob, values, fh):
    fh.write("re,im,value,error,status\n")
    for j, vals in enumerate(values):
        for i, v in enumerate(vals):
            c = job.pixel(i, j)
            fh.write(f"{c.real!r},{c.imag!r},{v.value_text()},{v.error_bound!r},"
                     f"{v.status.value}\n")


def pgm_bytes(values) -> bytes:
    """16-bit binary PGM; finite values map linearly min -> 0, max -> 65535."""
    finite = [v.value for row in values for v in row
              if v.is_finite and v.status is not G.Status.UNDECIDED]
    lo, hi = (min(finite), max(finite)) if finite else (0.0, 0.0)
    span = hi - lo
    ht, wd = len(values), len(values[0])
    pix = []
    for row in values:
        for v in row:
            if v.kind is G.ValueKind.POS_INF:
                pix.append(65535)
            elif v.kind is G.ValueKind.NEG_INF or v.status is G.Status.UNDECIDED:
                pix.append(0)
            else:
                pix.append(round((v.value - lo) / span * 65535) if span > 0 else 0)
    header = f"P5\n# scale: min={lo!r} max={hi!r}\n{wd} {ht}\n65535\n".encode("ascii")
    return header + struct.pack(f">{len(pix)}H", *pix)


def cmd_raster(args, out):
    f = _load(args.map).f
    wd, ht = args.size
    if wd * ht > args.pixel_budget:
        raise UsageError(f"{wd}x{ht} exceeds the pixel budget of {args.pixel_budget}")
    job = RasterJob(args.function, args.plane, args.fixed, args.window, args.size,
                    args.tol, args.n_max, args.format)
    values = raster_values(job, f, args.threads)
    try:
        if job.fmt == "csv":
            with open(args.out, "w", encoding="ascii", newline="") as fh:
                write_csv(job, values, fh)
        else:
            with open(args.out, "wb") as fh:
                fh.write(pgm_bytes(values))
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc.strerror}") from None
    print(f"wrote {args.out} ({wd}x{ht}, {job.fmt})", file=out)


def cmd_degrees(args, out):
    f = _load(args.map).f
    print("n,exact,lower,upper,within_bounds", file=out)
    for rep in check_degree_growth(f, None, args.n_max):
        print(f"{rep.n},{rep.exact},{rep.lower},{rep.upper},{rep.within_bounds}", file=out)
        if rep.weight is not None and not rep.weight.match:
            print(f"# weight of Q^{rep.n}: {rep.weight.actual} != predicted "
                  f"{rep.weight.predicted}", file=out)


def cmd_stability(args, out):
    f = _load(args.map).f
    spec = weight_spec(f)
    verdict = is_algebraically_stable(f, spec, args.r, args.s)
    ext = extend(f, args.r, args.s)
    ind = indeterminacy_on_linf(ext, spec)
    print(f"extension on P({args.r},{args.s},1): "
          f"[{ext.F[0]} : {ext.F[1]} : {ext.F[2]}], t-shift {ext.t_cleared}", file=out)
    print(str(verdict), file=out)
    print(ind.describe(), file=out)
    try:
        print(f"L_inf model: {linf_dynamics(ext, spec)}", file=out)
    except StabilityWrongCase:
        pass


def cmd_verify(args, out):
    from .verify import run_checks

    results = run_checks(quick=args.quick, seed=args.seed,
                         report=lambda r: print(str(r), file=out, flush=True))
    failed = sum(not r.ok for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed", file=out)
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_show(args, out):
    print(format_map(_load(args.map).f), end="", file=out)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="skewgreen",
                 description="Green functions and weights of polynomial skew products.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_map(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("map", help="map file (lines 'p: ...' and 'q: ...')")
        return p

    def numeric(p):
        p.add_argument("--tol", type=float, default=G.DEFAULT_TOL)
        p.add_argument("--n-max", type=int, default=G.DEFAULT_NMAX)

    p = with_map("alpha", "print the weight alpha and the case")
    p.set_defaults(func=cmd_alpha)

    p = with_map("show", "print the parsed map in canonical form")
    p.set_defaults(func=cmd_show)

    p = with_map("classify", "escape region and orbit classification of a point")
    p.add_argument("--point", type=point_arg, required=True, metavar="RE_Z,IM_Z,RE_W,IM_W")
    p.add_argument("--n-max", type=int, default=G.DEFAULT_NMAX)
    p.set_defaults(func=cmd_classify)

    p = with_map("green", "evaluate a Green function at a point")
    p.add_argument("--point", type=point_arg, required=True, metavar="RE_Z,IM_Z,RE_W,IM_W")
    p.add_argument("--function", choices=sorted(G.FUNCTIONS), default="fiber")
    numeric(p)
    p.set_defaults(func=cmd_green)

    p = with_map("raster", "evaluate a Green function on a grid")
    p.add_argument("--function", choices=RASTER_FUNCTIONS, default="fiber")
    p.add_argument("--plane", choices=("w", "z"), default="w",
                   help="w: vary w at fixed z; z: vary z at fixed w")
    p.add_argument("--fixed", type=complex_arg, default=complex(2, 0), metavar="RE,IM")
    p.add_argument("--window", type=window_arg, default=(-2.0, 2.0, -2.0, 2.0),
                   metavar="X0,X1,Y0,Y1")
    p.add_argument("--size", type=size_arg, default=(64, 64), metavar="WxH")
    p.add_argument("--format", choices=("pgm", "csv"), default="pgm")
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--pixel-budget", type=int, default=PIXEL_BUDGET)
    numeric(p)
    p.set_defaults(func=cmd_raster)

    p = with_map("degrees", "degree growth table")
    p.add_argument("--n-max", type=int, default=5)
    p.set_defaults(func=cmd_degrees)

    p = with_map("stability", "weighted extension and algebraic stability")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--s", type=int, default=1)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("verify", help="run the self-verification suite")
    p.add_argument("--quick", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return ap


def run_command(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args, out)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ParseError, UsageError, G.WrongCase, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code or EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
