"""Symmetric derivatives of sums, multiples, products and quotients.

The rules take only point data -- values at ``sigma(t)`` and ``rho(t)`` and
the component derivatives -- so they can be checked against direct
differentiation of the combined expression.
"""
from __future__ import annotations

from dataclasses import dataclass

from .derivatives import symmetric_derivative
from .errors import ZeroDenominator
from .expr import as_expr, evaluate
from .timescale import DEFAULT_TOL


@dataclass(frozen=True)
class PointData:
    f_sigma: float
    f_rho: float
    f_diamond: float
    g_sigma: float = 0.0
    g_rho: float = 0.0
    g_diamond: float = 0.0
    lam: float = 1.0
    tol: float = DEFAULT_TOL

    @classmethod
    def collect(cls, f, g, T, t, lam=1.0, cfg=None):
        """Gather the data for ``f`` and ``g`` at ``t`` from the derivative engine."""
        s, r = T.sigma(t), T.rho(t)
        out = {}
        for name, h in (("f", f), ("g", g)):
            h = as_expr(h if h is not None else "0")
            out[f"{name}_sigma"] = evaluate(h, s, T.tol)
            out[f"{name}_rho"] = evaluate(h, r, T.tol)
            out[f"{name}_diamond"] = symmetric_derivative(h, T, t, cfg).value
        return cls(lam=lam, tol=T.tol, **out)


def rule_sum(d: PointData) -> float:
    return d.f_diamond + d.g_diamond


def rule_scalar(d: PointData) -> float:
    return d.lam * d.f_diamond


def rule_product(d: PointData) -> float:
    """``(fg)' = f' g(sigma) + f(rho) g'``; needs ``f`` and ``g`` continuous at ``t``."""
    return d.f_diamond * d.g_sigma + d.f_rho * d.g_diamond


def _nonzero(a, b, tol, what):
    if abs(a) <= tol or abs(b) <= tol:
        raise ZeroDenominator(f"{what}(sigma) * {what}(rho) vanishes ({a!r} * {b!r})")


def rule_reciprocal(d: PointData) -> float:
    """``(1/f)' = -f' / (f(sigma) f(rho))``."""
    _nonzero(d.f_sigma, d.f_rho, d.tol, "f")
    return -d.f_diamond / (d.f_sigma * d.f_rho)


def rule_quotient(d: PointData) -> float:
    """``(f/g)' = (f' g(rho) - f(rho) g') / (g(sigma) g(rho))``."""
    _nonzero(d.g_sigma, d.g_rho, d.tol, "g")
    return (d.f_diamond * d.g_rho - d.f_rho * d.g_diamond) / (d.g_sigma * d.g_rho)
