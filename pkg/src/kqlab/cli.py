"""Command-line frontend: setup parsing, experiment orchestration, reports.

Every subcommand writes one machine-readable report (JSON by default, CSV
rows on request) with deterministic serialization: keys sorted, floats at 15
significant digits, rows in input order.  Identical inputs therefore produce
byte-identical reports; wall time goes to stderr only.

Exit codes: 0 pass, 1 fail verdict, 2 invalid input or branch, 3 numerical
non-convergence.  ``KQ_THREADS`` caps the grid-evaluation thread pool.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import bergman, curvature, oracle, profiles
from .errors import (BranchInvalid, EmptyGrid, KQLabError, LogDomain,
                     NegativeInput, NonPositiveArgument, OutOfDomain,
                     PreconditionFailed, QuadratureNonConvergent,
                     SeriesNonConvergent, TruncationInsufficient)

SCHEMA_VERSION = 1

_INVALID = (BranchInvalid, PreconditionFailed, OutOfDomain, NonPositiveArgument,
            NegativeInput, EmptyGrid, LogDomain, ValueError)
_NONCONVERGENT = (QuadratureNonConvergent, SeriesNonConvergent,
                  TruncationInsufficient)


# ---------------------------------------------------------------------------
# deterministic serialization


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    out = format(float(x), ".15g")
    return out


def render_json(obj) -> str:
    """Deterministic JSON: sorted keys, floats at 15 significant digits."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = sorted(obj.items())
        inner = ",".join(f"{json.dumps(k)}:{render_json(v)}" for k, v in items)
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(render_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _point_str(point) -> str:
    if isinstance(point, (list, tuple)):
        return ";".join(format(float(p), ".15g") for p in point)
    return format(float(point), ".15g")


def render_csv(rows: Sequence[dict]) -> str:
    lines = ["point,value"]
    for row in rows:
        lines.append(f"{_point_str(row['point'])},{format(float(row['value']), '.15g')}")
    return "\n".join(lines) + "\n"


def thread_map(fn: Callable, items: Iterable):
    """Order-preserving map honoring the KQ_THREADS cap."""
    items = list(items)
    workers = int(os.environ.get("KQ_THREADS", "1") or "1")
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def parse_grid(spec: str) -> list[float]:
    """Grid syntax start:stop:count."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be start:stop:count, got {spec!r}")
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1:
        raise ValueError("grid count must be >= 1")
    return [float(x) for x in np.linspace(start, stop, count)]


# ---------------------------------------------------------------------------
# setup (de)serialization


def profile_from_dict(d: dict) -> profiles.RadialProfile:
    fam = d["family"]
    if fam == "logball":
        return profiles.log_ball(float(d["A"]))
    if fam == "linear":
        return profiles.linear(float(d.get("c", 1.0)))
    if fam == "logaffine":
        return profiles.log_affine(float(d["A"]), float(d.get("c", 1.0)))
    raise ValueError(f"unknown profile family {fam!r}")


def profile_to_dict(p: profiles.RadialProfile) -> dict:
    out = {"family": p.family}
    if p.family in ("logball", "logaffine"):
        out["A"] = p.A
    if p.family in ("linear", "logaffine"):
        out["c"] = p.c
    return out


def _eps_from_dict(d: dict) -> Callable[[float], float]:
    kind = d["kind"]
    if kind == "affine":
        off = float(d["offset"])
        return lambda a: a + off
    if kind == "product":
        shift, count = float(d["shift"]), int(d["count"])
        return lambda a: bergman.product_shifted(a, shift, count)
    if kind == "power":
        exponent = int(d["exponent"])
        return lambda a: a ** exponent
    raise ValueError(f"unknown eps kind {kind!r}")


def base_from_dict(d: dict, dim: int, twist: float) -> curvature.BaseGeometry:
    preset = d.get("preset")
    if preset == "cp1":
        return curvature.BaseGeometry.fubini_study_cp1(int(d.get("k", 1)), twist)
    if preset == "cpd":
        return curvature.BaseGeometry.fubini_study_cpd(dim, twist)
    if preset == "flat":
        return curvature.BaseGeometry.flat(dim, twist)
    if preset is not None:
        raise ValueError(f"unknown base preset {preset!r}")
    eps = _eps_from_dict(d["eps"]) if "eps" in d else None
    return curvature.BaseGeometry.from_coefficients(
        dim, twist, float(d["a1"]), float(d["a2"]), eps=eps)


def setup_from_dict(d: dict) -> bergman.QuantizationSetup:
    dim = int(d["d"])
    twist = float(d.get("twist", d.get("lambda", 1.0)))
    return bergman.QuantizationSetup(
        d=dim,
        d0=int(d["d0"]),
        twist=twist,
        domain=d["domain"],
        profile=profile_from_dict(d["profile"]),
        base=base_from_dict(d["base"], dim, twist),
        alpha=float(d["alpha"]),
    )


def setup_echo(s: bergman.QuantizationSetup, base_desc: dict) -> dict:
    return {
        "d": s.d, "d0": s.d0, "twist": s.twist, "domain": s.domain,
        "alpha": s.alpha, "profile": profile_to_dict(s.profile),
        "base": base_desc,
    }


# ---------------------------------------------------------------------------
# report assembly


def _emit(args, report: Optional[dict], rows: Sequence[dict], t0: float) -> None:
    if args.output == "csv":
        text = render_csv(rows)
    else:
        text = render_json(report) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"wall_time_s={time.perf_counter() - t0:.3f}", file=sys.stderr)


_EXIT = {"pass": 0, "fail": 1, "inconclusive": 0}


def _report(setup: dict, rows: Sequence[dict], summary: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "setup": setup,
            "rows": list(rows), "summary": summary}


# ---------------------------------------------------------------------------
# shared argument plumbing


def _add_common(sp: argparse.ArgumentParser, tol: float) -> None:
    sp.add_argument("--tol", type=float, default=tol, help="verdict tolerance")
    sp.add_argument("--max-k", type=int, default=10000,
                    help="series / table truncation cap")
    sp.add_argument("--quad-nodes", type=int, default=64,
                    help="quadrature nodes per axis")
    sp.add_argument("--output", choices=("json", "csv"), default="json")
    sp.add_argument("--out", default=None, help="write the report to PATH")


def _add_model(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--family", choices=("logball", "linear", "logaffine"),
                    default="logball")
    sp.add_argument("--A", type=float, default=None,
                    help="momentum-profile curvature parameter")
    sp.add_argument("--c", type=float, default=1.0, help="profile scale parameter")
    sp.add_argument("--lambda", dest="twist", type=float, default=1.0,
                    help="twist of the fibration")
    sp.add_argument("--d", type=int, default=1, help="base dimension")
    sp.add_argument("--d0", type=int, default=1, help="fiber dimension")
    sp.add_argument("--domain", choices=("ball", "fullspace"), default="ball")


def _profile_from_args(args) -> profiles.RadialProfile:
    if args.family == "logball":
        if args.A is None:
            raise ValueError("--A is required for the logball family")
        return profiles.log_ball(args.A)
    if args.family == "linear":
        return profiles.linear(args.c)
    if args.A is None:
        raise ValueError("--A is required for the logaffine family")
    return profiles.log_affine(args.A, args.c)


def _default_branch_base(p: profiles.RadialProfile, d: int, d0: int, lam: float,
                         domain: str) -> curvature.BaseGeometry:
    """The base the branch tables require; family-shaped fallback otherwise."""
    try:
        a1, a2 = curvature.required_base_coefficients(p, d, d0, lam, domain)
    except OutOfDomain:
        if d > 1:
            a1 = -0.5 * d * (d + 1) * lam
            a2 = (d - 1) * d * (d + 1) * (3 * d + 2) * lam ** 2 / 24.0
        elif p.family == "linear":
            a1, a2 = d0 * lam, 0.0
        else:
            a1, a2 = d0 * lam - (d + d0) * p.A, 0.0
    return curvature.BaseGeometry.from_coefficients(d, lam, a1, a2)


def _base_from_args(args, p: profiles.RadialProfile) -> tuple[curvature.BaseGeometry, dict]:
    kind = args.base
    if kind == "cp1":
        return (curvature.BaseGeometry.fubini_study_cp1(args.base_k, args.twist),
                {"preset": "cp1", "k": args.base_k})
    if kind == "cpd":
        return (curvature.BaseGeometry.fubini_study_cpd(args.d, args.twist),
                {"preset": "cpd"})
    if kind == "flat":
        return (curvature.BaseGeometry.flat(args.d, args.twist), {"preset": "flat"})
    if kind == "coeffs":
        b = curvature.BaseGeometry.from_coefficients(args.d, args.twist,
                                                     args.a1_base, args.a2_base)
        return b, {"a1": b.a1, "a2": b.a2}
    b = _default_branch_base(p, args.d, args.d0, args.twist, args.domain)
    return b, {"a1": b.a1, "a2": b.a2, "preset": "branch"}


def _add_base(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--base", choices=("branch", "cp1", "cpd", "flat", "coeffs"),
                    default="branch", help="base geometry preset")
    sp.add_argument("--base-k", type=int, default=1, help="degree for the cp1 preset")
    sp.add_argument("--a1-base", type=float, default=0.0)
    sp.add_argument("--a2-base", type=float, default=0.0)


def _setup_from_args(args, default_eps_required: bool = False) -> tuple[bergman.QuantizationSetup, dict]:
    if getattr(args, "setup", None):
        with open(args.setup) as fh:
            doc = json.load(fh)
        s = setup_from_dict(doc)
        return s, setup_echo(s, doc["base"])
    p = _profile_from_args(args)
    base, bdesc = _base_from_args(args, p)
    if base.eps is None and default_eps_required:
        a1, a2 = base.a1, base.a2
        n = args.d + args.d0
        if args.d == 1:
            off = a1  # required base Bergman law: alpha + a1
            base = base.with_eps(lambda a: a + off)
            bdesc = dict(bdesc, eps={"kind": "affine", "offset": off})
        else:
            shift = args.twist if args.family == "logball" else -1.0
            base = base.with_eps(lambda a: bergman.product_shifted(a, shift, args.d))
            bdesc = dict(bdesc, eps={"kind": "product", "shift": shift, "count": args.d})
    s = bergman.QuantizationSetup(d=args.d, d0=args.d0, twist=args.twist,
                                  domain=args.domain, profile=p, base=base,
                                  alpha=args.alpha)
    return s, setup_echo(s, bdesc)


# ---------------------------------------------------------------------------
# subcommands


def cmd_coeffs(args) -> int:
    t0 = time.perf_counter()
    p = _profile_from_args(args)
    base, bdesc = _base_from_args(args, p)
    grid = parse_grid(args.grid)
    reports = thread_map(lambda t: curvature.curvature_report(base, p, args.d0, t), grid)
    quantity = args.quantity
    rows = [{"point": r.t, "value": getattr(r, quantity)} for r in reports]
    vals = [row["value"] for row in rows]
    mean = sum(vals) / len(vals)
    dev = (max(vals) - min(vals)) / (1.0 + abs(mean))
    summary = {"verdict": "pass", "max_deviation": dev, "target": None,
               "quantity": quantity, "mean": mean, "branch": None}
    setup = {"d": args.d, "d0": args.d0, "twist": args.twist,
             "domain": args.domain, "profile": profile_to_dict(p), "base": bdesc,
             "grid": args.grid}
    _emit(args, _report(setup, rows, summary), rows, t0)
    return 0


def cmd_classify(args) -> int:
    t0 = time.perf_counter()
    p = _profile_from_args(args)
    base, bdesc = _base_from_args(args, p)
    grid = parse_grid(args.grid)
    verdict = curvature.classify_check(base, p, args.d0, args.domain, grid,
                                       tol=args.tol)
    reports = thread_map(lambda t: curvature.curvature_report(base, p, args.d0, t), grid)
    rows = [{"point": r.t, "value": r.a1} for r in reports]
    summary = {
        "verdict": "pass" if verdict.constant else "fail",
        "max_deviation": verdict.max_deviation,
        "target": None,
        "branch": verdict.matched_branch,
        "a1": verdict.a1_value,
        "a2": verdict.a2_value,
        "ricci_constant": verdict.ricci_constant,
    }
    setup = {"d": args.d, "d0": args.d0, "twist": args.twist,
             "domain": args.domain, "profile": profile_to_dict(p), "base": bdesc,
             "grid": args.grid}
    _emit(args, _report(setup, rows, summary), rows, t0)
    return _EXIT[summary["verdict"]]


def cmd_psi(args) -> int:
    t0 = time.perf_counter()
    s, echo = _setup_from_args(args)
    kmax = min(args.max_k, args.table_k)
    rows = []
    worst = 0.0
    for k in range(kmax + 1):
        if args.method in ("closed", "both"):
            closed = bergman.psi_moment(s, k, "closed")
        if args.method in ("quadrature", "both"):
            quad = bergman.psi_moment(s, k, "quadrature", nodes=args.quad_nodes)
        if args.method == "closed":
            val, gap = closed, 0.0
        elif args.method == "quadrature":
            val, gap = quad, 0.0
        else:
            val = closed
            gap = abs(quad - closed) / abs(closed)
        worst = max(worst, gap)
        rows.append({"point": k, "value": val})
    verdict = "pass" if (args.method != "both" or worst <= args.tol) else "fail"
    summary = {"verdict": verdict, "max_deviation": worst, "target": None,
               "method": args.method, "branch": None}
    _emit(args, _report(echo, rows, summary), rows, t0)
    return _EXIT[verdict]


def cmd_bergman(args) -> int:
    t0 = time.perf_counter()
    s, echo = _setup_from_args(args, default_eps_required=True)
    grid = parse_grid(args.grid)
    cache = bergman._PsiCache(s, args.psi_method, args.quad_nodes)
    values = thread_map(lambda r: bergman.bergman_series(s, r, psi=cache,
                                                         k_max=args.max_k), grid)
    rows = [{"point": g, "value": v} for g, v in zip(grid, values)]
    try:
        target = bergman.closed_target(s)
    except BranchInvalid:
        target = None
    if target is not None:
        dev = max(abs(v - target) for v in values) / (1.0 + abs(target))
        verdict = "pass" if dev <= args.tol else "fail"
    else:
        mean = sum(values) / len(values)
        dev = (max(values) - min(values)) / (1.0 + abs(mean))
        verdict = "inconclusive"
    summary = {"verdict": verdict, "max_deviation": dev, "target": target,
               "psi_method": args.psi_method, "branch": None}
    _emit(args, _report(echo, rows, summary), rows, t0)
    return _EXIT[verdict]


def cmd_identity(args) -> int:
    t0 = time.perf_counter()
    s, echo = _setup_from_args(args, default_eps_required=True)
    grid = parse_grid(args.grid)
    rep = bergman.generating_identity_check(s, grid, psi_method=args.psi_method,
                                            nodes=args.quad_nodes, k_max=args.max_k)
    rows = [{"point": r, "value": lhs} for r, lhs, _ in rep.rows]
    verdict = "pass" if rep.max_deviation <= args.tol else "fail"
    summary = {"verdict": verdict, "max_deviation": rep.max_deviation,
               "target": None, "psi_method": args.psi_method, "branch": None}
    _emit(args, _report(echo, rows, summary), rows, t0)
    return _EXIT[verdict]


def cmd_balanced(args) -> int:
    t0 = time.perf_counter()
    grid = parse_grid(args.grid)
    cert = bergman.balanced_certify(args.k, args.r, args.m, part=args.part,
                                    rho_grid=grid, c=args.c,
                                    psi_method=args.psi_method,
                                    nodes=args.quad_nodes, tol=args.tol)
    rows = [{"point": g, "value": v} for g, v in zip(cert.grid, cert.values)]
    verdict = "pass" if cert.balanced else "fail"
    summary = {"verdict": verdict,
               "max_deviation": max(cert.max_spread, cert.max_error),
               "target": cert.target, "value": sum(cert.values) / len(cert.values),
               "A": cert.A, "mu": cert.mu,
               "base_identity_gap": cert.base_identity_gap, "branch": None}
    setup = {"part": args.part, "k": args.k, "r": args.r, "m": args.m, "c": args.c,
             "grid": args.grid, "psi_method": args.psi_method}
    _emit(args, _report(setup, rows, summary), rows, t0)
    return _EXIT[verdict]


def cmd_oracle_cp1(args) -> int:
    t0 = time.perf_counter()
    grid = parse_grid(args.grid)
    rep = oracle.cp1_bergman_oracle(args.k, args.m, grid, nodes=args.quad_nodes)
    rows = [{"point": s, "value": v} for s, v in zip(rep.grid, rep.values)]
    verdict = "pass" if rep.max_abs_error <= args.tol else "fail"
    summary = {"verdict": verdict, "max_deviation": rep.max_abs_error,
               "target": rep.target, "branch": None}
    setup = {"k": args.k, "m": args.m, "grid": args.grid}
    _emit(args, _report(setup, rows, summary), rows, t0)
    return _EXIT[verdict]


def cmd_oracle_hartogs(args) -> int:
    t0 = time.perf_counter()
    samples = []
    for chunk in args.samples.split(";"):
        a, b = chunk.split(",")
        samples.append((float(a), float(b)))
    cfg = oracle.GramOracleConfig(bundle_degree=args.k, power=args.m,
                                  q_cap=args.Q, p_cap=args.P,
                                  s_nodes=args.quad_nodes,
                                  fiber_nodes=args.quad_nodes,
                                  sample_points=tuple(samples),
                                  tail_tol=args.tail_tol)
    setup = bergman.balanced_setup(args.k, args.r, args.m, part=args.part, c=args.c)
    rep = oracle.hartogs_gram_oracle(cfg, setup)
    rows = [{"point": list(pt), "value": v} for pt, v in zip(rep.samples, rep.values)]
    verdict = "pass" if (rep.max_abs_error is not None
                         and rep.max_abs_error <= args.tol) else "fail"
    summary = {"verdict": verdict, "max_deviation": rep.max_abs_error,
               "target": rep.target, "tail_fraction": rep.tail_fraction,
               "basis_size": rep.basis_size, "branch": None}
    setup_doc = {"part": args.part, "k": args.k, "r": args.r, "m": args.m,
                 "c": args.c, "Q": rep.q_cap, "P": rep.p_cap}
    _emit(args, _report(setup_doc, rows, summary), rows, t0)
    return _EXIT[verdict]


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="kq",
        description="Bergman functions and balanced metrics of radial fibrations")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("coeffs", help="expansion coefficients over a t-grid")
    _add_model(sp)
    _add_base(sp)
    sp.add_argument("--grid", default="-4:-0.5:16", help="t-grid start:stop:count")
    sp.add_argument("--quantity", default="a1",
                    choices=("a1", "a2", "scalar", "ric2", "lapk", "riem2"))
    _add_common(sp, tol=1e-8)
    sp.set_defaults(fn=cmd_coeffs)

    sp = sub.add_parser("classify", help="constant-coefficient classification check")
    _add_model(sp)
    _add_base(sp)
    sp.add_argument("--grid", default="-4:-0.5:16")
    _add_common(sp, tol=1e-8)
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("psi", help="fiber moments by closed form and quadrature")
    _add_model(sp)
    _add_base(sp)
    sp.add_argument("--alpha", type=float, default=4.0)
    sp.add_argument("--setup", default=None, help="JSON setup document")
    sp.add_argument("--table-k", type=int, default=12)
    sp.add_argument("--method", choices=("closed", "quadrature", "both"),
                    default="both")
    _add_common(sp, tol=1e-10)
    sp.set_defaults(fn=cmd_psi)

    sp = sub.add_parser("bergman", help="Bergman function over a fiber-radius grid")
    _add_model(sp)
    _add_base(sp)
    sp.add_argument("--alpha", type=float, default=2.0)
    sp.add_argument("--setup", default=None)
    sp.add_argument("--grid", default="0:0.9:10")
    sp.add_argument("--psi-method", choices=("closed", "quadrature"),
                    default="closed")
    _add_common(sp, tol=1e-8)
    sp.set_defaults(fn=cmd_bergman)

    sp = sub.add_parser("identity", help="generating-function identity check")
    _add_model(sp)
    _add_base(sp)
    sp.add_argument("--alpha", type=float, default=2.0)
    sp.add_argument("--setup", default=None)
    sp.add_argument("--grid", default="0:0.9:10")
    sp.add_argument("--psi-method", choices=("closed", "quadrature"),
                    default="closed")
    _add_common(sp, tol=1e-8)
    sp.set_defaults(fn=cmd_identity)

    sp = sub.add_parser("balanced", help="certify the balanced bundle metrics")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--part", choices=("ball", "total"), default="ball")
    sp.add_argument("--c", type=float, default=1.0)
    sp.add_argument("--grid", default="0:0.9:10")
    sp.add_argument("--psi-method", choices=("closed", "quadrature"),
                    default="quadrature")
    _add_common(sp, tol=1e-8)
    sp.set_defaults(fn=cmd_balanced)

    sp = sub.add_parser("oracle-cp1", help="sphere-chart Gram oracle")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--grid", default="0:3:7", help="|z|^2 grid")
    _add_common(sp, tol=1e-6)
    sp.set_defaults(fn=cmd_oracle_cp1, quad_nodes=200)

    sp = sub.add_parser("oracle-hartogs", help="fibered-model Gram oracle")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--part", choices=("ball", "total"), default="ball")
    sp.add_argument("--c", type=float, default=1.0)
    sp.add_argument("--Q", type=int, default=40, help="fiber-degree cap")
    sp.add_argument("--P", type=int, default=None, help="z-exponent cap")
    sp.add_argument("--samples", default="0,0;0.5,0.3;1,0.5;2,0.7",
                    help="semicolon-separated s,rho sample points")
    sp.add_argument("--tail-tol", type=float, default=1e-3)
    _add_common(sp, tol=1e-3)
    sp.set_defaults(fn=cmd_oracle_hartogs, quad_nodes=200)

    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except _NONCONVERGENT as exc:
        _emit_error(args, exc)
        return 3
    except _INVALID as exc:
        _emit_error(args, exc)
        return 2
    except KQLabError as exc:
        _emit_error(args, exc)
        return 2


def _emit_error(args, exc: Exception) -> None:
    doc = {"schema_version": SCHEMA_VERSION,
           "error": {"type": type(exc).__name__, "message": str(exc)}}
    text = render_json(doc) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    sys.exit(main())
