"""Lower expression trees to stack-machine programs and run them."""
from __future__ import annotations

import functools

import numpy as np

from .. import _kernel
from .._kernel import opcodes as oc
from ..errors import DomainError, NonFinite
from ..timescale import DEFAULT_TOL
from .nodes import BinOp, Call, Compare, Cond, Neg, Num, Var

_BINARY = {"+": oc.ADD, "-": oc.SUB, "*": oc.MUL, "/": oc.DIV, "^": oc.POW}
_UNARY = {"abs": oc.ABS, "sin": oc.SIN, "cos": oc.COS, "exp": oc.EXP, "ln": oc.LN, "sqrt": oc.SQRT}
_COMPARE = {"==": oc.EQ, "!=": oc.NE, "<": oc.LT, "<=": oc.LE, ">": oc.GT, ">=": oc.GE}


class _Emitter:
    def __init__(self):
        self.ops = []
        self.args = []
        self.depth = 0
        self.max_depth = 0

    def emit(self, op, arg=0.0, delta=0):
        self.ops.append(op)
        self.args.append(arg)
        self.depth += delta
        self.max_depth = max(self.max_depth, self.depth)
        return len(self.ops) - 1

    def visit(self, e):
        if isinstance(e, Num):
            self.emit(oc.CONST, e.value, +1)
        elif isinstance(e, Var):
            self.emit(oc.VAR, 0.0, +1)
        elif isinstance(e, Neg):
            self.visit(e.operand)
            self.emit(oc.NEG)
        elif isinstance(e, BinOp):
            self.visit(e.left)
            self.visit(e.right)
            self.emit(_BINARY[e.op], 0.0, -1)
        elif isinstance(e, Compare):
            self.visit(e.left)
            self.visit(e.right)
            self.emit(_COMPARE[e.op], 0.0, -1)
        elif isinstance(e, Call):
            for a in e.args:
                self.visit(a)
            if e.func == "mod":
                self.emit(oc.MOD, 0.0, -1)
            else:
                self.emit(_UNARY[e.func])
        elif isinstance(e, Cond):
            self.visit(e.test)
            jump_else = self.emit(oc.JUMP_IF_FALSE, 0.0, -1)
            base = self.depth
            self.visit(e.then)
            jump_end = self.emit(oc.JUMP)
            self.depth = base
            self.args[jump_else] = float(len(self.ops))
            self.visit(e.orelse)
            self.args[jump_end] = float(len(self.ops))
        else:
            raise TypeError(f"not an expression node: {e!r}")


@functools.lru_cache(maxsize=512)
def compile_expr(e) -> _kernel.Program:
    em = _Emitter()
    em.visit(e)
    return _kernel.Program(em.ops, em.args, em.max_depth)


def _raise(status, t):
    message = f"{oc.STATUS_MESSAGES[status]} at t={t!r}"
    if status == oc.NONFINITE:
        raise NonFinite(message)
    raise DomainError(message)


def evaluate(e, t: float, tol: float = DEFAULT_TOL, backend=None) -> float:
    """Evaluate ``e`` at ``t`` in double precision.

    ``==`` and ``!=`` compare within the relative tolerance ``tol``; other
    comparisons are exact.  Only the taken branch of a conditional runs.

    Raises :class:`DomainError` for ln/sqrt/pow outside the real domain,
    division by zero or a zero modulus, and :class:`NonFinite` when a
    result overflows.
    """
    value, status = _kernel.run_point(compile_expr(e), t, tol, backend)
    if status:
        _raise(status, t)
    return value


def evaluate_many(e, ts, tol: float = DEFAULT_TOL, backend=None) -> np.ndarray:
    """Vectorized :func:`evaluate`; raises for the first failing point."""
    ts = np.asarray(ts, dtype=np.float64)
    out, status, first = _kernel.run_batch(compile_expr(e), ts, tol, backend)
    if first >= 0:
        _raise(int(status[first]), float(ts[first]))
    return out
