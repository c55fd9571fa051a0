"""Batch front end.

Usage::

    tscalc derive job.json            # CSV of derivatives
    tscalc classify job.json          # CSV of sigma, rho, class
    tscalc verify job.json            # one PASS/FAIL line per check
    tscalc demo-counterexample        # positive derivative, non-monotone f on {1..20}

Exit status: 0 success, 1 bad input, 2 a computation or check failed.

A job file is JSON::

    {
      "scale": [{"kind": "uniform", "start": 0, "step": 1, "k_min": -10, "k_max": 10}],
      "tol": 1e-9,
      "functions": {"f": "t^2"},
      "queries": [
        {"op": "symmetric", "fn": "f", "points": [3]},
        {"op": "classify", "points": {"from": -10, "to": 10, "step": 1}},
        {"op": "verify", "check": "identity_v", "fn": "f", "points": [3]}
      ],
      "numeric": {"levels": 6}
    }

Segment kinds: ``interval`` (a, b), ``uniform`` (start, step and either
k_min/k_max or count/unbounded_below/unbounded_above), ``geometric`` (q,
k_min, k_max, include_zero) and ``points`` (values).  Missing or null
index bounds mean unbounded.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, field, fields
from typing import Dict, List, Optional

from . import verification as ver
from .derivatives import (
    NumericConfig,
    delta_derivative,
    diamond_alpha_result,
    gamma_weights,
    nabla_derivative,
    symmetric_derivative,
)
from .errors import ParseError, TSCalcError
from .expr import parse
from .timescale import (
    DEFAULT_TOL,
    FinitePoints,
    GeometricLattice,
    Interval,
    TimeScale,
    UniformLattice,
    normalize,
)

DERIVE_OPS = ("symmetric", "delta", "nabla", "diamond_alpha", "gamma")
OPS = DERIVE_OPS + ("classify", "verify")
CHECKS = ("identity_v", "gamma_decomposition", "symmetric_continuity", "continuity_implication")

EXIT_OK, EXIT_INPUT, EXIT_FAILED = 0, 1, 2


class JobError(Exception):
    pass


@dataclass
class Query:
    op: str
    points: List[float]
    fn: Optional[str] = None
    alpha: Optional[float] = None
    check: Optional[str] = None
    rtol: Optional[float] = None
    radii: Optional[List[float]] = None


@dataclass
class Job:
    scale: TimeScale
    functions: Dict[str, object]
    queries: List[Query] = field(default_factory=list)
    numeric: NumericConfig = field(default_factory=NumericConfig)
    sources: Dict[str, str] = field(default_factory=dict)


# -- job loading -------------------------------------------------------------


def _real(value, where):
    if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "infinity", "-inf", "-infinity"):
        return float(value)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise JobError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _index(value, where):
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise JobError(f"{where}: expected an integer or null, got {value!r}")
    return value


def _segment(desc, i):
    where = f"scale[{i}]"
    if not isinstance(desc, dict) or "kind" not in desc:
        raise JobError(f"{where}: expected an object with a 'kind'")
    kind = desc["kind"]
    try:
        if kind == "interval":
            return Interval(_real(desc["a"], where), _real(desc["b"], where))
        if kind == "points":
            return FinitePoints(tuple(_real(v, where) for v in desc["values"]))
        if kind == "uniform":
            start, step = _real(desc["start"], where), _real(desc["step"], where)
            if "count" in desc or "unbounded_below" in desc or "unbounded_above" in desc:
                count = _index(desc.get("count"), where)
                return UniformLattice.from_count(
                    start, step, count,
                    bool(desc.get("unbounded_below", False)),
                    bool(desc.get("unbounded_above", False)),
                )
            return UniformLattice(start, step, _index(desc.get("k_min"), where), _index(desc.get("k_max"), where))
        if kind == "geometric":
            return GeometricLattice(
                _real(desc["q"], where),
                _index(desc.get("k_min"), where),
                _index(desc.get("k_max"), where),
                bool(desc.get("include_zero", False)),
            )
    except KeyError as exc:
        raise JobError(f"{where}: missing field {exc.args[0]!r}") from None
    except TSCalcError as exc:
        raise JobError(f"{where}: {exc}") from None
    raise JobError(f"{where}: unknown segment kind {kind!r}")


def _points(spec, where):
    if isinstance(spec, dict):
        try:
            lo, hi, step = (_real(spec[k], where) for k in ("from", "to", "step"))
        except KeyError as exc:
            raise JobError(f"{where}: range needs {exc.args[0]!r}") from None
        if not step > 0 or not math.isfinite(lo) or not math.isfinite(hi):
            raise JobError(f"{where}: range needs finite ends and a positive step")
        n = math.floor((hi - lo) / step + 1e-9) + 1
        pts = [lo + i * step for i in range(max(n, 0))]
    elif isinstance(spec, list):
        pts = [_real(v, where) for v in spec]
    else:
        raise JobError(f"{where}: points must be a list or a {{from, to, step}} range")
    if not pts:
        raise JobError(f"{where}: no points")
    return pts


def build_job(data, tol_override=None) -> Job:
    if not isinstance(data, dict):
        raise JobError("job must be a JSON object")
    tol = tol_override if tol_override is not None else data.get("tol", DEFAULT_TOL)
    scale_desc = data.get("scale")
    if not isinstance(scale_desc, list):
        raise JobError("'scale' must be a list of segments")
    segments = [_segment(d, i) for i, d in enumerate(scale_desc)]
    try:
        scale = normalize(segments, _real(tol, "tol"))
    except TSCalcError as exc:
        raise JobError(f"scale: {exc}") from None

    functions, sources = {}, {}
    for name, text in (data.get("functions") or {}).items():
        if not isinstance(text, str):
            raise JobError(f"function {name!r}: expression must be a string")
        try:
            functions[name] = parse(text)
        except ParseError as exc:
            raise JobError(f"function {name!r}: parse error at offset {exc.position}: {exc.message}") from None
        sources[name] = text

    numeric = data.get("numeric") or {}
    known = {f.name for f in fields(NumericConfig)}
    unknown = set(numeric) - known
    if unknown:
        raise JobError(f"numeric: unknown settings {sorted(unknown)}")
    try:
        cfg = NumericConfig(**numeric)
    except (TypeError, ValueError) as exc:
        raise JobError(f"numeric: {exc}") from None

    queries = []
    for i, q in enumerate(data.get("queries") or []):
        where = f"queries[{i}]"
        if not isinstance(q, dict):
            raise JobError(f"{where}: expected an object")
        op = q.get("op")
        if op not in OPS:
            raise JobError(f"{where}: op must be one of {', '.join(OPS)}")
        query = Query(op, _points(q.get("points"), where), q.get("fn"))
        needs_fn = op not in ("classify", "gamma")
        if needs_fn and query.fn not in functions:
            raise JobError(f"{where}: unknown function {query.fn!r}")
        if op == "diamond_alpha":
            if "alpha" not in q:
                raise JobError(f"{where}: diamond_alpha needs 'alpha'")
            query.alpha = _real(q["alpha"], where)
            if not 0.0 <= query.alpha <= 1.0:
                raise JobError(f"{where}: alpha must lie in [0, 1]")
        if op == "verify":
            query.check = q.get("check")
            if query.check not in CHECKS:
                raise JobError(f"{where}: check must be one of {', '.join(CHECKS)}")
            if q.get("rtol") is not None:
                query.rtol = _real(q["rtol"], where)
            if q.get("radii") is not None:
                query.radii = [_real(r, where) for r in q["radii"]]
        queries.append(query)
    return Job(scale, functions, queries, cfg, sources)


def load_job(path, tol_override=None) -> Job:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise JobError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise JobError(f"{path}: invalid JSON at offset {exc.pos}: {exc.msg}") from None
    return build_job(data, tol_override)


# -- output ------------------------------------------------------------------


def fmt(x) -> str:
    """17 significant digits: round-trips every double."""
    return format(float(x), ".17g")


def _emit(rows, header, out, mode):
    if mode == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return
    table = [list(header)] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    for r in table:
        out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")


# -- commands ----------------------------------------------------------------


def _derive_row(job, q, t):
    T = job.scale
    cls = T.classify(t).value if T.contains(t) else ""
    f = job.functions.get(q.fn)
    try:
        if q.op == "gamma":
            w = gamma_weights(T, t)
            return [fmt(t), cls, q.op, q.fn or "", fmt(w.gamma), "", "", ""], True
        if q.op == "symmetric":
            r = symmetric_derivative(f, T, t, job.numeric)
        elif q.op == "delta":
            r = delta_derivative(f, T, t, job.numeric)
        elif q.op == "nabla":
            r = nabla_derivative(f, T, t, job.numeric)
        else:
            r = diamond_alpha_result(f, T, t, q.alpha, job.numeric)
    except TSCalcError as exc:
        return [fmt(t), cls, q.op, q.fn or "", "", "", "", exc.code], False
    return [fmt(t), cls, q.op, q.fn or "", fmt(r.value), r.method.value, fmt(r.err_estimate), ""], True


def cmd_derive(job: Job, out=sys.stdout, mode="csv") -> int:
    rows, ok = [], True
    for q in job.queries:
        if q.op not in DERIVE_OPS:
            continue
        for t in q.points:
            row, good = _derive_row(job, q, t)
            rows.append(row)
            ok = ok and good
    _emit(rows, ["t", "class", "op", "fn", "value", "method", "err_estimate", "error"], out, mode)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_classify(job: Job, out=sys.stdout, mode="csv", err=sys.stderr) -> int:
    T = job.scale
    chosen = [q for q in job.queries if q.op == "classify"] or job.queries
    rows, ok = [], True
    for q in chosen:
        for t in q.points:
            if not T.contains(t):
                err.write(f"{fmt(t)} is not a point of the time scale\n")
                ok = False
                continue
            kk = "true" if T.in_kappa_kappa(t) else "false"
            rows.append([fmt(t), fmt(T.sigma(t)), fmt(T.rho(t)), T.classify(t).value, kk])
    _emit(rows, ["t", "sigma", "rho", "class", "in_kappa_kappa"], out, mode)
    return EXIT_OK if ok else EXIT_FAILED


def _run_check(job, q):
    f = job.functions[q.fn]
    T, cfg = job.scale, job.numeric
    if q.check == "identity_v":
        kw = {} if q.rtol is None else {"rtol": q.rtol}
        return ver.check_identity_v(f, T, q.points, cfg=cfg, **kw)
    if q.check == "gamma_decomposition":
        return ver.check_gamma_decomposition(f, T, q.points, rtol=q.rtol, cfg=cfg)
    radii = q.radii or ver.DEFAULT_RADII
    if q.check == "continuity_implication":
        return ver.check_symmetric_continuity_implication(f, T, q.points, radii, cfg)
    reports = [ver.check_symmetric_continuity(f, T, t, radii) for t in q.points]
    witnesses = [w for r in reports for w in r.witnesses]
    notes = "; ".join(f"{fmt(t)}: {r.notes}" for t, r in zip(q.points, reports))
    return ver.CheckReport("symmetric_continuity", all(r.passed for r in reports), witnesses, notes)


def _describe(w):
    if w is None:
        return "no witnesses"
    text = f"worst t={fmt(w.point)} observed={fmt(w.observed)} expected={fmt(w.expected)} tol={fmt(w.tolerance)}"
    return f"{text} ({w.label})" if w.label else text


def cmd_verify(job: Job, out=sys.stdout) -> int:
    ok = True
    for q in job.queries:
        if q.op != "verify":
            continue
        try:
            report = _run_check(job, q)
        except TSCalcError as exc:
            out.write(f"{q.check} {q.fn} FAIL error={exc.code}: {exc}\n")
            ok = False
            continue
        status = "PASS" if report.passed else "FAIL"
        out.write(f"{report.name} {q.fn} {status} {_describe(report.worst())}\n")
        ok = ok and report.passed
    return EXIT_OK if ok else EXIT_FAILED


def cmd_demo_counterexample(out=sys.stdout, mode="table") -> int:
    report = ver.run_counterexample()
    rows = [[str(n), fmt(fn), fmt(d)] for n, fn, d in ver.counterexample_rows()]
    _emit(rows, ["n", "f(n)", "f_sym(n)"], out, mode)
    positive = all(float(r[2]) > 0 for r in rows)
    monotone = not any(w.label.startswith("f(") and w.ok for w in report.witnesses)
    out.write(
        f"positive derivative everywhere: {'yes' if positive else 'no'}; "
        f"monotone: {'yes' if monotone else 'no'}\n"
    )
    return EXIT_OK if report.passed else EXIT_FAILED


# -- entry point ---------------------------------------------------------------


def make_parser():
    p = argparse.ArgumentParser(prog="tscalc", description="Derivatives on time scales.")
    p.add_argument("command", choices=["derive", "classify", "verify", "demo-counterexample"])
    p.add_argument("jobfile", nargs="?", help="JSON job file (not needed for demo-counterexample)")
    p.add_argument("--tol", type=float, default=None, help="override the scale membership tolerance")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--csv", dest="mode", action="store_const", const="csv")
    mode.add_argument("--table", dest="mode", action="store_const", const="table")
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = make_parser().parse_args(argv)
    if args.command == "demo-counterexample":
        return cmd_demo_counterexample(out, args.mode or "table")
    if not args.jobfile:
        err.write(f"tscalc {args.command}: a job file is required\n")
        return EXIT_INPUT
    try:
        job = load_job(args.jobfile, args.tol)
    except JobError as exc:
        err.write(f"tscalc: {exc}\n")
        return EXIT_INPUT
    mode = args.mode or "csv"
    if args.command == "derive":
        return cmd_derive(job, out, mode)
    if args.command == "classify":
        return cmd_classify(job, out, mode, err)
    return cmd_verify(job, out)


if __name__ == "__main__":
    sys.exit(main())
