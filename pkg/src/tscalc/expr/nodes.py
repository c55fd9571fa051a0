"""Abstract syntax for functions of one variable ``t``, and a printer.

``to_text`` emits the minimum parentheses needed for the parser to
rebuild the identical tree.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple, Union

FUNCTIONS = {"abs": 1, "sin": 1, "cos": 1, "exp": 1, "ln": 1, "sqrt": 1, "mod": 2}
RELOPS = ("==", "!=", "<=", ">=", "<", ">")


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    args: Tuple["Expr", ...]


@dataclass(frozen=True)
class Compare:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Cond:
    test: Compare
    then: "Expr"
    orelse: "Expr"


Expr = Union[Num, Var, Neg, BinOp, Call, Compare, Cond]

# binding strength, loosest first
_COND, _CMP, _ADD, _MUL, _UNARY, _POW, _ATOM = range(7)


def _prec(e) -> int:
    if isinstance(e, Cond):
        return _COND
    if isinstance(e, Compare):
        return _CMP
    if isinstance(e, BinOp):
        return {"+": _ADD, "-": _ADD, "*": _MUL, "/": _MUL, "^": _POW}[e.op]
    if isinstance(e, Neg):
        return _UNARY
    return _ATOM


def _num_text(v: float) -> str:
    if math.isinf(v):
        return "1e999"
    v = float(v)
    if v.is_integer() and abs(v) < 1e15:
        return str(int(v))
    return repr(float(v))


def to_text(e, min_prec: int = _COND) -> str:
    """Render ``e`` as parseable text."""
    if isinstance(e, Num):
        s = _num_text(e.value)
    elif isinstance(e, Var):
        s = "t"
    elif isinstance(e, Neg):
        s = "-" + to_text(e.operand, _UNARY)
    elif isinstance(e, BinOp):
        p = _prec(e)
        if e.op == "^":
            s = f"{to_text(e.left, _ATOM)}^{to_text(e.right, _UNARY)}"
        else:
            s = f"{to_text(e.left, p)} {e.op} {to_text(e.right, p + 1)}"
    elif isinstance(e, Call):
        s = f"{e.func}({', '.join(to_text(a) for a in e.args)})"
    elif isinstance(e, Compare):
        s = f"{to_text(e.left, _ADD)} {e.op} {to_text(e.right, _ADD)}"
    elif isinstance(e, Cond):
        s = f"if {to_text(e.test, _CMP)} then {to_text(e.then)} else {to_text(e.orelse)}"
    else:
        raise TypeError(f"not an expression node: {e!r}")
    if _prec(e) < min_prec:
        s = f"({s})"
    return s
