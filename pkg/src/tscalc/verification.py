"""Executable checks of the symmetric-derivative theory.

Each check returns a :class:`CheckReport`: a list of witnesses
``(point, observed, expected, tolerance)`` and ``passed`` iff every
witness is within tolerance.  The continuity checks are sampling
diagnostics on finitely many points, not proofs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional

from .derivatives import (
    delta_derivative,
    gamma_weights,
    nabla_derivative,
    symmetric_derivative,
)
from .errors import PointNotInScale, TSCalcError
from .expr import as_expr, evaluate
from .timescale import UniformLattice, normalize

SCATTERED_RTOL = 1e-8
DENSE_RTOL = 1e-6
DEFAULT_RADII = (1e-1, 1e-2, 1e-3, 1e-4)
# sampled differences at or below this count as zero
ZERO_FLOOR = 1e-9
MONOTONE_SLACK = 1.1
DECAY_FACTOR = 0.1

COUNTEREXAMPLE_FUNCTION = "if mod(t,2)==1 then t else 10*t"
COUNTEREXAMPLE_RANGE = (1, 20)


@dataclass(frozen=True)
class Witness:
    point: float
    observed: float
    expected: float
    tolerance: float
    label: str = ""

    @property
    def deviation(self) -> float:
        return abs(self.observed - self.expected)

    @property
    def ok(self) -> bool:
        return self.deviation <= self.tolerance  # False for NaN

    @property
    def excess(self) -> float:
        """Deviation in units of the tolerance; the worst witness maximizes it."""
        d = self.deviation
        if math.isnan(d):
            return math.inf
        if d == 0:
            return 0.0
        return d / self.tolerance if self.tolerance > 0 else math.inf


@dataclass
class CheckReport:
    name: str
    passed: bool
    witnesses: List[Witness] = field(default_factory=list)
    notes: str = ""

    def worst(self) -> Optional[Witness]:
        if not self.witnesses:
            return None
        return max(self.witnesses, key=lambda w: w.excess)


def _report(name, witnesses, notes):
    return CheckReport(name, all(w.ok for w in witnesses), witnesses, "; ".join(notes))


def _rel_tol(rtol, value):
    return rtol * (1.0 + abs(value))


# -- continuity ------------------------------------------------------------


def _sampled_max(samples):
    return max(samples) if samples else 0.0


def check_symmetric_continuity(f, T, t, radii=DEFAULT_RADII) -> CheckReport:
    """Sample ``|f(s) - f(2t - s)|`` over admissible ``s`` within each radius.

    Passes when the sampled maxima do not grow as the radius shrinks (10 %
    slack) and the last one is at most a tenth of the first, or
    negligible.  The notes also say whether plain continuity looked
    violated in the same windows.
    """
    f = as_expr(f)
    if not T.contains(t):
        raise PointNotInScale(f"{t!r} is not a point of the time scale")
    radii = sorted(radii, reverse=True)
    notes = []
    try:
        ft = evaluate(f, t, T.tol)
    except TSCalcError:
        ft = None
        notes.append(f"f is undefined at {t!r}")

    sym, plain = [], []
    bad_samples = 0
    for r in radii:
        window = set(T.window(t - r, t + r))
        window.add(t)
        diffs, jumps = [], []
        for s in sorted(window):
            try:
                fs = evaluate(f, s, T.tol)
            except TSCalcError:
                bad_samples += 1
                continue
            if ft is not None:
                jumps.append(abs(fs - ft))
            if s != t and T.reflect_in_scale(t, s):
                try:
                    diffs.append(abs(fs - evaluate(f, 2 * t - s, T.tol)))
                except TSCalcError:
                    bad_samples += 1
        sym.append(_sampled_max(diffs))
        plain.append(_sampled_max(jumps))
    if bad_samples:
        notes.append(f"{bad_samples} samples skipped (f undefined)")

    witnesses = []
    for i in range(1, len(radii)):
        witnesses.append(Witness(t, sym[i], 0.0, MONOTONE_SLACK * sym[i - 1] + ZERO_FLOOR,
                                 f"r={radii[i]:g} no growth"))
    witnesses.append(Witness(t, sym[-1], 0.0, max(ZERO_FLOOR, DECAY_FACTOR * sym[0]),
                             f"r={radii[-1]:g} decay"))

    if ft is not None:
        if plain[-1] <= max(ZERO_FLOOR, DECAY_FACTOR * plain[0]):
            notes.append(f"continuous at {t!r} (sampled)")
        else:
            notes.append(
                f"not continuous at {t!r}: |f(s) - f(t)| still {plain[-1]:.6g} at radius {radii[-1]:g}"
            )
    notes.append("sampling diagnostic, not a proof")
    return _report("symmetric_continuity", witnesses, notes)


def check_symmetric_continuity_implication(f, T, points, radii=DEFAULT_RADII, cfg=None) -> CheckReport:
    """Wherever the symmetric derivative exists, symmetric continuity must hold."""
    f = as_expr(f)
    witnesses, notes = [], []
    for t in points:
        try:
            symmetric_derivative(f, T, t, cfg)
        except TSCalcError as exc:
            notes.append(f"skipped {t!r}: {exc.code}")
            continue
        sub = check_symmetric_continuity(f, T, t, radii)
        witnesses.extend(sub.witnesses)
    return _report("continuity_implication", witnesses, notes)


# -- identities ------------------------------------------------------------


def check_identity_v(f, T, points, rtol=SCATTERED_RTOL, cfg=None) -> CheckReport:
    """``f(sigma(t)) = f(rho(t)) + f_sym(t) * (sigma(t) - rho(t))`` at each point."""
    f = as_expr(f)
    witnesses, notes = [], []
    for t in points:
        try:
            d = symmetric_derivative(f, T, t, cfg).value
            fs = evaluate(f, T.sigma(t), T.tol)
            fr = evaluate(f, T.rho(t), T.tol)
        except TSCalcError as exc:
            notes.append(f"skipped {t!r}: {exc.code}")
            continue
        expected = fr + d * (T.mu(t) + T.nu(t))
        witnesses.append(Witness(t, fs, expected, _rel_tol(rtol, expected)))
    return _report("identity_v", witnesses, notes)


def check_gamma_decomposition(f, T, points, rtol=None, cfg=None) -> CheckReport:
    """``f_sym = gamma f_delta + (1 - gamma) f_nabla`` at each point.

    ``rtol`` defaults to 1e-8 at scattered points and 1e-6 at dense ones.
    Engine errors count as failures.
    """
    f = as_expr(f)
    witnesses, notes = [], []
    for t in points:
        try:
            sym = symmetric_derivative(f, T, t, cfg)
            w = gamma_weights(T, t)
            fd = delta_derivative(f, T, t, cfg).value
            fn = nabla_derivative(f, T, t, cfg).value
        except TSCalcError as exc:
            notes.append(f"failed at {t!r}: {exc.code}")
            witnesses.append(Witness(t, math.nan, math.nan, 0.0, exc.code))
            continue
        if rtol is not None:
            tol = rtol
        else:
            tol = DENSE_RTOL if sym.point_class.is_dense else SCATTERED_RTOL
        expected = w.gamma * fd + (1.0 - w.gamma) * fn
        witnesses.append(Witness(t, sym.value, expected, _rel_tol(tol, sym.value),
                                 f"gamma={w.gamma:g}"))
    return _report("gamma_decomposition", witnesses, notes)


# -- the monotonicity counterexample on N ------------------------------------


def counterexample_scale():
    lo, hi = COUNTEREXAMPLE_RANGE
    return normalize([UniformLattice(lo, 1, 0, hi - lo)])


def counterexample_rows():
    """``(n, f(n), f_sym(n))`` for the interior points of ``{1, ..., 20}``."""
    T = counterexample_scale()
    f = as_expr(COUNTEREXAMPLE_FUNCTION)
    lo, hi = COUNTEREXAMPLE_RANGE
    rows = []
    for n in range(lo, hi + 1):
        t = float(n)
        if not T.in_kappa_kappa(t):
            continue
        rows.append((n, evaluate(f, t, T.tol), symmetric_derivative(f, T, t).value))
    return rows


def run_counterexample() -> CheckReport:
    """A function on ``{1..20}`` with positive symmetric derivative that is not monotone.

    ``f(n) = n`` for odd and ``10 n`` for even ``n``; its symmetric
    derivative is 10 at odd and 1 at even interior points.
    """
    T = counterexample_scale()
    f = as_expr(COUNTEREXAMPLE_FUNCTION)
    rows = counterexample_rows()
    witnesses = [Witness(float(n), d, 10.0 if n % 2 else 1.0, 0.0, "f_sym(n)") for n, _, d in rows]

    n_min, _, d_min = min(rows, key=lambda r: r[2])
    witnesses.append(Witness(float(n_min), float(d_min > 0), 1.0, 0.0, f"min f_sym = {d_min:g} > 0"))

    lo, hi = COUNTEREXAMPLE_RANGE
    values = [(n, evaluate(f, float(n), T.tol)) for n in range(lo, hi + 1)]
    drop = next(((a, fa, b, fb) for (a, fa), (b, fb) in zip(values, values[1:]) if fb < fa), None)
    if drop is None:
        witnesses.append(Witness(float(lo), 0.0, 1.0, 0.0, "f is monotone"))
    else:
        a, fa, b, fb = drop
        witnesses.append(Witness(float(a), 1.0, 1.0, 0.0, f"f({a})={fa:g} > f({b})={fb:g}"))
    return _report("counterexample", witnesses, [f"T = {{{lo}..{hi}}}, f = {COUNTEREXAMPLE_FUNCTION}"])


__all__ = [
    "CheckReport",
    "Witness",
    "check_gamma_decomposition",
    "check_identity_v",
    "check_symmetric_continuity",
    "check_symmetric_continuity_implication",
    "counterexample_rows",
    "run_counterexample",
]
