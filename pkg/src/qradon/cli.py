"""Command-line front end.

Subcommands: gen-tomogram, reconstruct, moments, qfunc, pattern-table,
invert-radon, verify.  All numeric output is decimal with 17 significant
digits and carries the effective configuration, so identical invocations
produce byte-identical files (no timestamps, no locale).

Exit codes: 0 success, 1 gated accuracy failure, 2 usage, 3 I/O.
Configuration precedence: flags > config file (--config or $QRADON_CONFIG)
> defaults.
"""

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, replace

import numpy as np

from .errors import (AccuracyError, ConsistencyError, DomainError,
                     QRadonError, WindowError)
from . import pattern as pat
from . import reconstruct as rec
from . import states as st
from . import verify as ver
from .radon import FilteredBackprojection

CONFIG_ENV = "QRADON_CONFIG"


@dataclass(frozen=True)
class RunConfig:
    hbar: float = 1.0
    nmax: int = 6
    n_phi: int = 181
    n_q: int = 1025
    tol: float = 1e-6
    seed: int = 0
    rep: str = "canonical"

    def __post_init__(self):
        if self.hbar <= 0 or self.n_phi <= 0 or self.n_q <= 1 or self.nmax < 0:
            raise DomainError("config values must be positive")
        if not 0 < self.tol <= 1e-2:
            raise DomainError("tol must lie in (0, 1e-2]")


def _fmt(v):
    return f"{v:.17g}"


def parse_complex(text):
    """Accept 're', 're,im' or 're+imi' / 're-imi'."""
    text = text.strip().replace(" ", "")
    if "," in text:
        re_s, im_s = text.split(",", 1)
        return complex(float(re_s), float(im_s))
    if text.endswith(("i", "j")) and not text[:-1].lstrip("+-").replace(
            ".", "").replace("e", "").replace("E", "").replace("+", "").replace(
            "-", "").isalpha():
        try:
            return complex(text[:-1] + "j")
        except ValueError:
            pass
    return complex(float(text), 0.0)


def _cx(z):
    return [z.real, z.imag]


def _load_config(args):
    cfg = RunConfig()
    path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV)
    if path:
        with open(path) as fh:
            file_vals = json.load(fh)
        cfg = replace(cfg, **{k: v for k, v in file_vals.items()
                              if k in RunConfig.__dataclass_fields__})
    overrides = {}
    for key in ("hbar", "nmax", "n_phi", "n_q", "tol", "seed", "rep"):
        val = getattr(args, key, None)
        if val is not None:
            overrides[key] = val
    return replace(cfg, **overrides)


def _quad_spec(cfg, gate=False):
    return rec.QuadratureSpec(n_phi=cfg.n_phi, n_q=cfg.n_q,
                              check_tol=cfg.tol if gate else None)


def _write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")


def _state_from_args(args, cfg):
    if args.gaussian is not None:
        parts = args.gaussian.split(",")
        if len(parts) != 3:
            raise DomainError("--gaussian wants 'qbar,pbar,zeta' with zeta as re+imi")
        qbar, pbar = float(parts[0]), float(parts[1])
        zeta = parse_complex(parts[2])
        return st.GaussianState(qbar, pbar, zeta, hbar=cfg.hbar), {
            "kind": "gaussian", "qbar": qbar, "pbar": pbar, "zeta": _cx(zeta)}
    if args.fock_matrix is not None:
        with open(args.fock_matrix) as fh:
            doc = json.load(fh)
        entries = np.array([[complex(re, im) for re, im in row]
                            for row in doc["entries"]])
        rho = st.DensityMatrix(entries, trace_tol=doc.get("trace_tol", 1e-8))
        return st.FockSource(rho, hbar=cfg.hbar), {
            "kind": "fock-matrix", "path": args.fock_matrix, "dim": rho.dim}
    raise DomainError("state spec needed: --gaussian or --fock-matrix")


def _load_tomogram(path):
    if path.endswith(".csv"):
        return st.Tomogram.from_csv(path)
    return st.Tomogram.from_json(path)


# ----------------------------------------------------------------------
# subcommands


def cmd_gen_tomogram(args):
    cfg = _load_config(args)
    source, state_meta = _state_from_args(args, cfg)
    if args.window is not None:
        lo, hi = (float(v) for v in args.window.split(","))
        qs = np.linspace(lo, hi, cfg.n_q)
    else:
        center, sigma = source.grid_hints()
        half = center + 8.0 * sigma
        qs = np.linspace(-half, half, cfg.n_q)
    phis = np.arange(cfg.n_phi) * math.pi / cfg.n_phi
    meta = {"config": asdict(cfg), "state": state_meta}
    tomogram = st.sample_tomogram(source, phis, qs, meta=meta)
    tomogram.to_csv(args.out + ".csv")
    tomogram.to_json(args.out + ".json")
    norms = tomogram.row_norms()
    print(f"tomogram {tomogram.n_angles} angles x {len(qs)} positions "
          f"-> {args.out}.csv/.json")
    print(f"normalization: worst |int - 1| = {_fmt(float(np.max(np.abs(norms - 1))))}")
    if args.report_rows:
        for phi, nrm in zip(phis, norms):
            print(f"  phi={_fmt(phi)} norm={_fmt(nrm)}")
    return 0


def cmd_reconstruct(args):
    cfg = _load_config(args)
    tomogram = _load_tomogram(args.tomogram)
    spec = _quad_spec(cfg, gate=args.gate)
    payload = {"config": asdict(cfg), "tomogram": args.tomogram, "mode": args.mode}
    if args.mode == "fock":
        rho, diag = rec.density_matrix_from_tomogram(
            tomogram, cfg.nmax, rep=cfg.rep, spec=spec)
        payload["diagnostics"] = diag
        payload["rho"] = [[_cx(v) for v in row] for row in rho.entries]
        lines = ["m,n,re,im"]
        for m in range(rho.dim):
            for n in range(rho.dim):
                lines.append(f"{m},{n},{_fmt(rho.entries[m, n].real)},"
                             f"{_fmt(rho.entries[m, n].imag)}")
        print(f"rho[0,0] = {_fmt(rho.entries[0, 0].real)}  "
              f"trace = {_fmt(diag['trace'])}  "
              f"hermiticity defect = {_fmt(diag['hermiticity_defect'])}")
    elif args.mode == "moments":
        if args.angles:
            angles = [float(a) for a in args.angles.split(",")]
            values = rec.moments_low_order_custom(tomogram, angles, spec=spec)
        else:
            values = rec.moment_set_from_tomogram(
                tomogram, args.order, spec=spec).values
        payload["moments"] = {f"{k},{l}": _cx(v) for (k, l), v in sorted(values.items())}
        lines = ["k,l,re,im"]
        for (k, l), v in sorted(values.items()):
            lines.append(f"{k},{l},{_fmt(v.real)},{_fmt(v.imag)}")
        for (k, l), v in sorted(values.items()):
            print(f"<adag^{k} a^{l} rho> = {_fmt(v.real)} {'+' if v.imag >= 0 else '-'} "
                  f"{_fmt(abs(v.imag))} i")
    elif args.mode == "qfunc":
        alpha = parse_complex(args.alpha)
        val = rec.qfunction_from_tomogram(tomogram, alpha, spec=spec)
        payload["alpha"] = _cx(alpha)
        payload["q_value"] = val
        lines = ["alpha_re,alpha_im,q", f"{_fmt(alpha.real)},{_fmt(alpha.imag)},{_fmt(val)}"]
        print(f"Q({alpha}) = {_fmt(val)}")
    else:
        raise DomainError(f"unknown mode {args.mode!r}")
    if args.out:
        _write_json(args.out + ".json", payload)
        with open(args.out + ".csv", "w", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
        print(f"wrote {args.out}.json and {args.out}.csv")
    return 0


def cmd_moments(args):
    args.mode = "moments"
    return cmd_reconstruct(args)


def cmd_qfunc(args):
    args.mode = "qfunc"
    return cmd_reconstruct(args)


def cmd_pattern_table(args):
    cfg = _load_config(args)
    rep = cfg.rep
    if rep not in pat.REPRESENTATIONS:
        raise DomainError(f"rep must be one of {pat.REPRESENTATIONS}")
    xs = np.linspace(args.xmin, args.xmax, args.points)
    values = pat.pattern_eval(rep, args.m, args.n, xs, trunc=args.trunc)
    header = (f"# pattern table m={args.m} n={args.n} rep={rep} "
              f"trunc={'adaptive' if args.trunc is None else args.trunc}")
    lines = [header, "x,value"]
    lines += [f"{_fmt(x)},{_fmt(v)}" for x, v in zip(xs, values)]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
        print(f"wrote {args.out} ({args.points} points)")
    else:
        sys.stdout.write(text)
    if args.residual_report and abs(args.m - args.n) > 1:
        grid = pat.EvalGrid(xs) if np.all(np.diff(xs) > 0) else None
        coeffs, resid = pat.pattern_nonuniqueness_residual(
            "hermite-series", "canonical", args.m, args.n, grid)
        print("nonuniqueness fit (series vs canonical): coefficients "
              + ",".join(_fmt(c) for c in coeffs) + f" residual {_fmt(resid)}")
    return 0


def cmd_invert_radon(args):
    cfg = _load_config(args)
    tomogram = _load_tomogram(args.tomogram)
    lo, hi, npts = args.grid.split(",")
    axis = np.linspace(float(lo), float(hi), int(npts))
    fbp = FilteredBackprojection(tomogram)
    qq, pp = np.meshgrid(axis, axis, indexing="ij")
    w = fbp.wigner(qq, pp)
    lines = [f"# wigner grid axis={_fmt(float(lo))}..{_fmt(float(hi))} n={int(npts)}",
             "q\\p," + ",".join(_fmt(p) for p in axis)]
    for i, q in enumerate(axis):
        lines.append(_fmt(q) + "," + ",".join(_fmt(v) for v in w[i]))
    text = "\n".join(lines) + "\n"
    with open(args.out, "w", newline="\n") as fh:
        fh.write(text)
    print(f"wrote {args.out}; W(0,0)-area max {_fmt(float(np.max(w)))}")
    return 0


def cmd_verify(args):
    try:
        results = ver.run_suite(args.suite)
    except ValueError as exc:
        raise DomainError(str(exc))
    for r in results:
        print(r.line())
    n_fail = sum(not r.passed for r in results)
    print(f"{len(results) - n_fail}/{len(results)} checks passed")
    if args.json:
        _write_json(args.json, {
            "suite": args.suite,
            "results": [{"name": r.name, "passed": r.passed,
                         "measured": r.measured, "tol": r.tol} for r in results],
        })
    return 0 if n_fail == 0 else 1


# ----------------------------------------------------------------------


def _add_config_args(p):
    p.add_argument("--config", help="JSON config file (or set $QRADON_CONFIG)")
    p.add_argument("--hbar", type=float)
    p.add_argument("--nmax", type=int)
    p.add_argument("--n-phi", dest="n_phi", type=int)
    p.add_argument("--n-q", dest="n_q", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--rep", choices=list(pat.REPRESENTATIONS))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qradon",
        description="synthesize and invert optical-homodyne tomograms")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-tomogram", help="sample an analytic state onto a grid")
    p.add_argument("--gaussian", help="qbar,pbar,zeta (zeta as re+imi)")
    p.add_argument("--fock-matrix", help="JSON file with a density matrix")
    p.add_argument("--window", help="lo,hi position window override")
    p.add_argument("--report-rows", action="store_true",
                   help="print the per-angle normalization report")
    p.add_argument("--out", required=True, help="output base path")
    _add_config_args(p)
    p.set_defaults(fn=cmd_gen_tomogram)

    p = sub.add_parser("reconstruct", help="invert a tomogram")
    p.add_argument("--tomogram", required=True)
    p.add_argument("--mode", choices=("fock", "moments", "qfunc"), default="fock")
    p.add_argument("--order", type=int, default=2, help="moment order cap")
    p.add_argument("--angles", help="explicit angles for the low-order solver")
    p.add_argument("--alpha", default="0,0", help="Q-function argument")
    p.add_argument("--gate", action="store_true",
                   help="fail (exit 1) when the half-grid check exceeds tol")
    p.add_argument("--out")
    _add_config_args(p)
    p.set_defaults(fn=cmd_reconstruct)

    p = sub.add_parser("moments", help="normally ordered moments from a tomogram")
    p.add_argument("--tomogram", required=True)
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--angles", help="2 or 3 explicit angles")
    p.add_argument("--gate", action="store_true")
    p.add_argument("--out")
    _add_config_args(p)
    p.set_defaults(fn=cmd_moments)

    p = sub.add_parser("qfunc", help="Q-function value from a tomogram")
    p.add_argument("--tomogram", required=True)
    p.add_argument("--alpha", default="0,0")
    p.add_argument("--gate", action="store_true")
    p.add_argument("--out")
    _add_config_args(p)
    p.set_defaults(fn=cmd_qfunc)

    p = sub.add_parser("pattern-table", help="emit a pattern-function table")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--xmin", type=float, default=-5.0)
    p.add_argument("--xmax", type=float, default=5.0)
    p.add_argument("--points", type=int, default=501)
    p.add_argument("--trunc", type=int)
    p.add_argument("--residual-report", action="store_true")
    p.add_argument("--out")
    _add_config_args(p)
    p.set_defaults(fn=cmd_pattern_table)

    p = sub.add_parser("invert-radon", help="filtered back-projection to a Wigner grid")
    p.add_argument("--tomogram", required=True)
    p.add_argument("--grid", default="-4,4,81", help="lo,hi,n for both axes")
    p.add_argument("--out", required=True)
    _add_config_args(p)
    p.set_defaults(fn=cmd_invert_radon)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("suite", nargs="?", default="all",
                   choices=list(ver.SUITE_NAMES))
    p.add_argument("--json", help="write a machine-readable report here")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (AccuracyError, WindowError) as exc:
        print(f"accuracy gate: {exc}", file=sys.stderr)
        return 1
    except (DomainError, ConsistencyError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
