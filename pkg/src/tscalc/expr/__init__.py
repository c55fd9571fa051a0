"""Real functions of one variable ``t`` given as text.

    >>> f = parse("if mod(t,2)==1 then t else 10*t")
    >>> evaluate(f, 3.0), evaluate(f, 4.0)
    (3.0, 40.0)
"""
from .compiler import compile_expr, evaluate, evaluate_many
from .nodes import BinOp, Call, Compare, Cond, Expr, Neg, Num, Var, to_text
from .parser import parse, tokenize


def as_expr(f):
    """Accept either an expression tree or its text."""
    return parse(f) if isinstance(f, str) else f


__all__ = [
    "BinOp", "Call", "Compare", "Cond", "Expr", "Neg", "Num", "Var",
    "as_expr", "compile_expr", "evaluate", "evaluate_many", "parse", "to_text", "tokenize",
]
