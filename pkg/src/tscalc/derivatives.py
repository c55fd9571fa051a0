"""Symmetric, delta, nabla and diamond-alpha derivatives on a time scale.

At a point that is not dense the symmetric derivative has the closed form
``(f(sigma(t)) - f(rho(t))) / (sigma(t) - rho(t))``.  At a dense point it
is the limit of the central quotient ``(f(t+h) - f(t-h)) / (2h)`` over
steps ``h`` with both ``t+h`` and ``t-h`` in the scale, evaluated on a
geometric sequence of steps and extrapolated to ``h = 0``.  ``f(t)``
itself is never needed there, so ``1/t**2`` has derivative ``0`` at ``0``.

    >>> from tscalc.timescale import normalize, UniformLattice, Interval
    >>> Z = normalize([UniformLattice(0, 1)])
    >>> symmetric_derivative("t^2", Z, 3.0).value
    6.0
    >>> R = normalize([Interval(-1, 1)])
    >>> symmetric_derivative("abs(t)", R, 0.0).value
    0.0
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    NoConvergence,
    NotInKappaKappa,
    OneSidedInadmissible,
    PointNotInScale,
    ReflectionInadmissible,
    ZeroPoint,
)
from .expr import as_expr, evaluate, evaluate_many
from .timescale import DEFAULT_TOL, PointClass, TimeScale, _fuzz

DEFAULT_H0 = 1e-2


@dataclass(frozen=True)
class NumericConfig:
    """Step schedule and stopping rule for limits at dense points.

    ``h0=None`` picks ``min(1e-2, width/4)`` of the enclosing interval;
    any ``h0`` is clamped so the samples stay inside the scale.
    ``richardson_order`` is the power of ``h`` in the leading error term of
    the central quotient; one-sided quotients always use 1.
    """

    h0: Optional[float] = None
    shrink: float = 2.0
    levels: int = 6
    richardson_order: int = 2
    target_rtol: float = 1e-8

    def __post_init__(self):
        if self.h0 is not None and not self.h0 > 0:
            raise ValueError(f"h0 must be positive, got {self.h0}")
        if not self.shrink > 1:
            raise ValueError(f"shrink must exceed 1, got {self.shrink}")
        if self.levels < 2:
            raise ValueError(f"levels must be at least 2, got {self.levels}")
        if self.richardson_order < 1:
            raise ValueError("richardson_order must be positive")
        if not self.target_rtol > 0:
            raise ValueError("target_rtol must be positive")


class Method(enum.Enum):
    CLOSED_FORM_SCATTERED = "closed_form"
    NUMERIC_DENSE_LIMIT = "numeric_limit"


@dataclass(frozen=True)
class DerivativeResult:
    value: float
    method: Method
    err_estimate: float
    point_class: PointClass


@dataclass(frozen=True)
class Weights:
    gamma: float
    gamma_tilde: float


_DEFAULT_CFG = NumericConfig()


def _check_point(T: TimeScale, t):
    if not T.contains(t):
        raise PointNotInScale(f"{t!r} is not a point of the time scale")


def extrapolate(hs, values, power, rtol):
    """Polynomial extrapolation of ``values(h)`` to ``h = 0`` in the variable ``h**power``.

    Builds the Neville tableau row by row; with a geometric step sequence
    this is Richardson extrapolation.  Returns ``(value, delta)`` where
    ``delta`` is the last change of the diagonal.  Convergence means a
    diagonal change within ``rtol * max(1, |value|)``; when the changes
    stop shrinking without converging, :class:`NoConvergence` is raised.
    """
    xs = [float(h) ** power for h in hs]
    prev = [float(values[0])]
    diag = [prev[0]]
    deltas = []
    first_check = 2 if len(xs) >= 3 else 1
    for i in range(1, len(xs)):
        row = [float(values[i])]
        for j in range(1, i + 1):
            xa, xb = xs[i - j], xs[i]
            row.append(row[j - 1] + (row[j - 1] - prev[j - 1]) * xb / (xa - xb))
        prev = row
        diag.append(row[-1])
        d = abs(diag[-1] - diag[-2])
        if not math.isfinite(d):
            raise NoConvergence("extrapolation produced a non-finite value")
        deltas.append(d)
        if i >= first_check and d <= rtol * max(1.0, abs(diag[-1])):
            return diag[-1], d
    if len(deltas) >= 2 and deltas[-1] >= deltas[-2]:
        raise NoConvergence(
            f"extrapolation did not settle (last changes {deltas[-2]:.3g}, {deltas[-1]:.3g})"
        )
    return diag[-1], deltas[-1]


def _continuum_h0(approach, cfg):
    h0 = cfg.h0 if cfg.h0 is not None else min(DEFAULT_H0, approach.width / 4)
    return h0


def _symmetric_steps(T: TimeScale, t, cfg):
    right, left = T.approach(t, +1), T.approach(t, -1)
    if right is None or left is None:
        raise ReflectionInadmissible(f"no points on both sides of {t!r} to reflect through it")
    if right.kind == "continuum" and left.kind == "continuum":
        h0 = min(_continuum_h0(right, cfg), _continuum_h0(left, cfg), right.extent, left.extent)
        hs = [h0 / cfg.shrink ** k for k in range(cfg.levels)]
    elif right.kind == "continuum" or left.kind == "continuum":
        cont, lat = (right, left) if right.kind == "continuum" else (left, right)
        cap = min(_continuum_h0(cont, cfg), cont.extent)
        hs = lat.lattice.distances(cap, cfg.levels)
    else:
        hs = []
    hs = [h for h in hs if h > 0 and T.reflect_in_scale(t, t + h)]
    if len(hs) < 2:
        raise ReflectionInadmissible(f"no admissible reflected samples around {t!r}")
    return np.array(hs)


def _one_sided_steps(T: TimeScale, t, side, cfg):
    """Steps for a one-sided limit, preferring ``side``; returns ``(hs, side_used)``."""
    for s in (side, -side):
        a = T.approach(t, s)
        if a is None:
            continue
        if a.kind == "continuum":
            h0 = min(_continuum_h0(a, cfg), a.extent)
            hs = [h0 / cfg.shrink ** k for k in range(cfg.levels)]
        else:
            hs = a.lattice.distances(cfg.h0 if cfg.h0 is not None else DEFAULT_H0, cfg.levels)
        return np.array(hs), s
    raise OneSidedInadmissible(f"no scale points approach {t!r}")


def symmetric_derivative(f, T: TimeScale, t: float, cfg: NumericConfig = None) -> DerivativeResult:
    """Symmetric derivative of ``f`` at ``t``.

    Raises
    ------
    NotInKappaKappa
        ``t`` is a scattered endpoint of the scale.
    ReflectionInadmissible
        ``t`` is dense but no step ``h`` keeps both ``t+h`` and ``t-h`` in
        the scale (for example ``0`` in the closure of ``q**Z``).
    NoConvergence
        The dense-point limit does not settle.
    DomainError, NonFinite
        ``f`` cannot be evaluated at a required sample.
    """
    f = as_expr(f)
    cfg = cfg or _DEFAULT_CFG
    _check_point(T, t)
    if not T.in_kappa_kappa(t):
        raise NotInKappaKappa(f"{t!r} is a scattered endpoint of the time scale")
    cls = T.classify(t)
    if not cls.is_dense:
        fs = evaluate(f, T.sigma(t), T.tol)
        fr = evaluate(f, T.rho(t), T.tol)
        value = (fs - fr) / (T.mu(t) + T.nu(t))
        return DerivativeResult(value, Method.CLOSED_FORM_SCATTERED, 0.0, cls)
    hs = _symmetric_steps(T, t, cfg)
    vals = evaluate_many(f, np.concatenate([t + hs, t - hs]), T.tol)
    n = len(hs)
    quotients = (vals[:n] - vals[n:]) / (2 * hs)
    value, err = extrapolate(hs, quotients, cfg.richardson_order, cfg.target_rtol)
    return DerivativeResult(value, Method.NUMERIC_DENSE_LIMIT, err, cls)


def _one_sided(f, T, t, cfg, side):
    f = as_expr(f)
    cfg = cfg or _DEFAULT_CFG
    _check_point(T, t)
    if side > 0 and not T.in_kappa(t):
        raise NotInKappaKappa(f"{t!r} is a left-scattered maximum; no delta derivative")
    if side < 0 and not T.in_kappa_lower(t):
        raise NotInKappaKappa(f"{t!r} is a right-scattered minimum; no nabla derivative")
    cls = T.classify(t)
    gap = T.mu(t) if side > 0 else T.nu(t)
    ft = evaluate(f, t, T.tol)
    if gap > _fuzz(t, T.tol):
        other = evaluate(f, T.sigma(t) if side > 0 else T.rho(t), T.tol)
        value = (other - ft) / gap if side > 0 else (ft - other) / gap
        return DerivativeResult(value, Method.CLOSED_FORM_SCATTERED, 0.0, cls)
    hs, used = _one_sided_steps(T, t, side, cfg)
    samples = evaluate_many(f, t + used * hs, T.tol)
    quotients = (samples - ft) / (used * hs)
    value, err = extrapolate(hs, quotients, 1, cfg.target_rtol)
    return DerivativeResult(value, Method.NUMERIC_DENSE_LIMIT, err, cls)


def delta_derivative(f, T: TimeScale, t: float, cfg: NumericConfig = None) -> DerivativeResult:
    """Delta (forward) derivative.

    Right-scattered ``t``: ``(f(sigma(t)) - f(t)) / mu(t)``.  Right-dense
    ``t``: the limit of ``(f(s) - f(t)) / (s - t)`` as ``s`` approaches
    ``t`` through the scale from the right, or from the left when ``t`` is
    a left-dense maximum.
    """
    return _one_sided(f, T, t, cfg, +1)


def nabla_derivative(f, T: TimeScale, t: float, cfg: NumericConfig = None) -> DerivativeResult:
    """Nabla (backward) derivative; mirror image of :func:`delta_derivative`."""
    return _one_sided(f, T, t, cfg, -1)


def gamma_weights(T: TimeScale, t: float) -> Weights:
    """Weights with ``f_sym = gamma*f_delta + gamma_tilde*f_nabla``.

    ``(1/2, 1/2)`` at dense points, otherwise
    ``gamma = (sigma(t) - t) / (sigma(t) - rho(t))``.
    """
    _check_point(T, t)
    if not T.in_kappa_kappa(t):
        raise NotInKappaKappa(f"{t!r} is a scattered endpoint of the time scale")
    if T.classify(t).is_dense:
        return Weights(0.5, 0.5)
    mu, nu = T.mu(t), T.nu(t)
    g = mu / (mu + nu)
    return Weights(g, 1.0 - g)


def diamond_alpha_result(f, T, t, alpha, cfg=None):
    """Diamond-alpha derivative with method and error bookkeeping (used by the CLI)."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    d = delta_derivative(f, T, t, cfg)
    n = nabla_derivative(f, T, t, cfg)
    value = alpha * d.value + (1.0 - alpha) * n.value
    closed = d.method is n.method is Method.CLOSED_FORM_SCATTERED
    method = Method.CLOSED_FORM_SCATTERED if closed else Method.NUMERIC_DENSE_LIMIT
    err = alpha * d.err_estimate + (1.0 - alpha) * n.err_estimate
    return DerivativeResult(value, method, err, d.point_class)


def diamond_alpha_derivative(f, T: TimeScale, t: float, alpha: float, cfg: NumericConfig = None) -> float:
    """``alpha * f_delta(t) + (1 - alpha) * f_nabla(t)``."""
    return diamond_alpha_result(f, T, t, alpha, cfg).value


def h_symmetric_quotient(f, t: float, h: float, tol: float = DEFAULT_TOL) -> float:
    """``(f(t+h) - f(t-h)) / (2h)``."""
    if not h > 0:
        raise ValueError(f"h must be positive, got {h}")
    f = as_expr(f)
    return (evaluate(f, t + h, tol) - evaluate(f, t - h, tol)) / (2 * h)


def q_symmetric_quotient(f, t: float, q: float, tol: float = DEFAULT_TOL) -> float:
    """``(f(qt) - f(t/q)) / ((q - 1/q) t)`` for ``t != 0``."""
    if t == 0:
        raise ZeroPoint("the q-symmetric quotient is undefined at t = 0")
    if not 0 < q < 1:
        raise ValueError(f"q must lie in (0, 1), got {q}")
    f = as_expr(f)
    return (evaluate(f, q * t, tol) - evaluate(f, t / q, tol)) / ((q - 1 / q) * t)
