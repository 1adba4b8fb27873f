"""Command line front end: ``emspinor verify|converge|profile|export``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile

import numpy as np

from . import born_infeld, evolution, plane_waves
from .report import (CONVERGENCE_CHECKS, SUITES, RunConfig, UsageError, convergence_study,
                     exit_status, manifest, render, run_suite)

EXIT_FAIL = 1
EXIT_USAGE = 2

# config-file keys and the argparse destinations they feed
_CONFIG_KEYS = {
    "n": "n", "sizes": "n", "tol": "tol", "seed": "seed", "units": "units",
    "format": "format", "out": "out", "paper-literal": "paper_literal",
    "paper_literal": "paper_literal", "fixed-clock": "fixed_clock",
    "fixed_clock": "fixed_clock", "first-order": "first_order", "first_order": "first_order",
}
_BOOL_KEYS = {"paper_literal", "fixed_clock", "first_order"}


def _parse_sizes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"--n expects comma-separated integers, got {text!r}") from None


def _parse_tols(items) -> dict:
    out = {}
    for item in items or []:
        for part in item.split(","):
            if not part.strip():
                continue
            key, sep, val = part.partition("=")
            if not sep:
                raise UsageError(f"--tol expects check_id=value, got {part!r}")
            try:
                out[key.strip()] = float(val)
            except ValueError:
                raise UsageError(f"bad tolerance value in {part!r}") from None
    return out


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"expected a boolean, got {text!r}")


def load_config(path: str) -> dict:
    """Flat ``key = value`` file; blank lines and ``#`` comments are ignored."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            key = key.strip()
            if not sep or key not in _CONFIG_KEYS:
                raise UsageError(f"{path}:{lineno}: unrecognised line {raw.rstrip()!r}")
            dest = _CONFIG_KEYS[key]
            val = val.strip()
            if dest in _BOOL_KEYS:
                out[dest] = _parse_bool(val)
            elif dest == "seed":
                out[dest] = int(val)
            elif dest == "tol":
                out.setdefault("tol", []).append(val)
            else:
                out[dest] = val
    return out


def _common(p: argparse.ArgumentParser, fmt_default=None):
    p.add_argument("--n", help="grid sizes, comma separated (even, >= 8, increasing)")
    p.add_argument("--tol", action="append", help="tolerance override check_id=value")
    p.add_argument("--seed", type=int)
    p.add_argument("--units", choices=("natural", "gaussian"))
    p.add_argument("--format", choices=("json", "csv"), default=fmt_default)
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--paper-literal", action="store_true", default=None,
                   help="also run the rows that use the as-printed tables")
    p.add_argument("--fixed-clock", action="store_true", default=None,
                   help="freeze the timestamp so reports are byte-identical")
    p.add_argument("--config", help="flat key=value file; command-line flags win")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="emspinor", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help="one of: all, " + ", ".join(SUITES))
    _common(v)

    c = sub.add_parser("converge", help="grid-refinement study for one check")
    c.add_argument("check", help="one of: " + ", ".join(sorted(CONVERGENCE_CHECKS)))
    c.add_argument("--first-order", action="store_true", default=None,
                   help="use one-sided differences (harness self-test, expect order 1)")
    _common(c)

    pr = sub.add_parser("profile", help="radial profile of the Born-Infeld point charge")
    pr.add_argument("what", choices=("born-infeld",))
    pr.add_argument("--charge", type=float, default=1.0)
    pr.add_argument("--e0", type=float, default=1.0, help="limiting field E0")
    pr.add_argument("--points", type=int, default=201)
    pr.add_argument("--rmin", type=float, default=1e-2, help="smallest r / r0")
    pr.add_argument("--rmax", type=float, default=1e2, help="largest r / r0")
    _common(pr, fmt_default=None)

    ex = sub.add_parser("export", help="evolve a plane wave and dump the final grid")
    ex.add_argument("what", choices=("grid",))
    ex.add_argument("--branch", type=int, default=1, choices=(1, 2, 3, 4))
    ex.add_argument("--mass", type=float, default=1.0)
    ex.add_argument("--modes", type=int, default=1, help="wavelengths across the box")
    ex.add_argument("--length", type=float, default=1.0)
    ex.add_argument("--steps", type=int, default=0)
    ex.add_argument("--courant", type=float, default=0.5, help="c dt / dy")
    _common(ex)
    return ap


def _merge(args) -> dict:
    cfg = load_config(args.config) if args.config else {}
    for key in ("n", "seed", "units", "format", "out", "paper_literal", "fixed_clock",
                "first_order"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if args.tol:
        cfg["tol"] = cfg.get("tol", []) + list(args.tol)
    return cfg


def _run_config(merged: dict, suite: str = "all") -> RunConfig:
    cfg = RunConfig(suite=suite)
    if "n" in merged:
        cfg.sizes = _parse_sizes(merged["n"])
    cfg.tolerances = _parse_tols(merged.get("tol"))
    cfg.seed = int(merged.get("seed", 0))
    cfg.units = merged.get("units", "natural")
    cfg.fmt = merged.get("format") or "json"
    cfg.out = merged.get("out")
    cfg.paper_literal = bool(merged.get("paper_literal", False))
    cfg.fixed_clock = bool(merged.get("fixed_clock", False))
    cfg.first_order = bool(merged.get("first_order", False))
    return cfg.validate()


def _emit(text: str, out: str | None) -> None:
    """Write to ``out`` atomically, or to stdout."""
    if not out:
        sys.stdout.write(text)
        return
    d = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".emspinor-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cmd_verify(args, merged) -> int:
    cfg = _run_config(merged, args.suite)
    reports = run_suite(cfg)
    _emit(render(cfg, reports), cfg.out)
    return exit_status(reports)


def _cmd_converge(args, merged) -> int:
    cfg = _run_config(merged)
    rows = convergence_study(cfg, args.check)
    if cfg.fmt == "json":
        doc = {"manifest": manifest(cfg), "check": args.check, "rows": rows}
        text = json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["N", "error", "order"])
        for r in rows:
            o = r["order"]
            w.writerow([r["N"], repr(r["error"]), "" if o is None else
                        (o if isinstance(o, str) else repr(o))])
        text = buf.getvalue()
    _emit(text, cfg.out)
    return 0


def _cmd_profile(args, merged) -> int:
    fmt = merged.get("format") or "csv"
    if args.points < 2 or not 0 < args.rmin < args.rmax:
        raise UsageError("need points >= 2 and 0 < rmin < rmax")
    p = born_infeld.BIParams(e=args.charge, E0=args.e0)
    table = born_infeld.radial_profile(p, np.geomspace(args.rmin, args.rmax, args.points))
    cols = ["r_over_r0", "D", "E", "eps_eff"]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(cols)
        for row in table:
            w.writerow([repr(float(v)) for v in row])
        text = buf.getvalue()
    else:
        doc = {"charge": p.e, "E0": p.E0, "r0": p.r0,
               "rows": [dict(zip(cols, map(float, row))) for row in table]}
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    _emit(text, merged.get("out"))
    return 0


def _cmd_export(args, merged) -> int:
    fmt = merged.get("format") or "csv"
    sizes = _parse_sizes(merged.get("n", "256"))
    if len(sizes) != 1:
        raise UsageError("export takes a single grid size")
    n = sizes[0]
    if n < 8 or n % 2:
        raise UsageError("grid size must be even and >= 8")
    k = 2 * np.pi * args.modes / args.length
    spec = plane_waves.PlaneWaveSpec.consistent(args.branch, (0.0, k, 0.0), args.mass)
    grid = evolution.plane_wave_grid(spec, n, args.length)
    dt = args.courant * grid.dy
    grid = evolution.evolve(grid, args.mass, dt, args.steps)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["y"] + [f"{p}{j}" for j in range(1, 5) for p in ("re", "im")])
        for y, row in zip(grid.y, grid.values):
            w.writerow([repr(float(y))] + [repr(float(x)) for z in row
                                           for x in (z.real, z.imag)])
        text = buf.getvalue()
    else:
        doc = {"t": grid.t, "dy": grid.dy, "y": grid.y.tolist(),
               "re": grid.values.real.tolist(), "im": grid.values.imag.tolist()}
        text = json.dumps(doc, sort_keys=True) + "\n"
    _emit(text, merged.get("out"))
    return 0


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        merged = _merge(args)
        handler = {"verify": _cmd_verify, "converge": _cmd_converge,
                   "profile": _cmd_profile, "export": _cmd_export}[args.command]
        return handler(args, merged)
    except (UsageError, evolution.StabilityError, OSError) as exc:
        print(f"emspinor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
