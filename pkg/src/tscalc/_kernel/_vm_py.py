"""Pure-Python stack machine; the fallback when the compiled kernel is absent.

Must stay bit-for-bit identical to ``_vm_c.pyx``: every operation goes
through the same libm routine the C version calls.
"""
import math

from .opcodes import (
    ABS, ADD, CONST, COS, DIV, DIV_ZERO, EQ, EXP, GE, GT, JUMP, JUMP_IF_FALSE,
    LE, LN, LN_DOMAIN, LT, MOD, MOD_ZERO, MUL, NE, NEG, NONFINITE, OK, POW,
    POW_DOMAIN, SIN, SQRT, SQRT_DOMAIN, SUB, VAR,
)

_isfinite = math.isfinite


def run_point(ops, args, t, tol):
    """Run one program at ``t``; return ``(value, status)``."""
    if not _isfinite(t):
        return math.nan, NONFINITE
    stack = []
    push = stack.append
    pop = stack.pop
    pc = 0
    n = len(ops)
    while pc < n:
        op = ops[pc]
        if op == CONST:
            x = args[pc]
            if not _isfinite(x):
                return math.nan, NONFINITE
            push(x)
        elif op == VAR:
            push(t)
        elif op == JUMP_IF_FALSE:
            if pop() == 0.0:
                pc = int(args[pc])
                continue
        elif op == JUMP:
            pc = int(args[pc])
            continue
        elif op <= DIV or op == POW or op == MOD or op >= EQ:
            if op == NEG:
                stack[-1] = -stack[-1]
                pc += 1
                continue
            b = pop()
            a = pop()
            if op == ADD:
                r = a + b
            elif op == SUB:
                r = a - b
            elif op == MUL:
                r = a * b
            elif op == DIV:
                if b == 0.0:
                    return math.nan, DIV_ZERO
                r = a / b
            elif op == POW:
                if (a < 0.0 and b != math.floor(b)) or (a == 0.0 and b < 0.0):
                    return math.nan, POW_DOMAIN
                try:
                    r = math.pow(a, b)
                except OverflowError:
                    return math.nan, NONFINITE
            elif op == MOD:
                if b == 0.0:
                    return math.nan, MOD_ZERO
                m = abs(b)
                r = math.fmod(a, m)
                if r < 0.0:
                    r += m
                if r >= m:
                    r = 0.0
            elif op == EQ or op == NE:
                close = abs(a - b) <= tol * max(1.0, abs(a), abs(b))
                r = 1.0 if close == (op == EQ) else 0.0
            elif op == LT:
                r = 1.0 if a < b else 0.0
            elif op == LE:
                r = 1.0 if a <= b else 0.0
            elif op == GT:
                r = 1.0 if a > b else 0.0
            else:
                r = 1.0 if a >= b else 0.0
            if not _isfinite(r):
                return math.nan, NONFINITE
            push(r)
        else:
            a = stack[-1]
            if op == ABS:
                r = abs(a)
            elif op == SIN:
                r = math.sin(a)
            elif op == COS:
                r = math.cos(a)
            elif op == EXP:
                try:
                    r = math.exp(a)
                except OverflowError:
                    return math.nan, NONFINITE
            elif op == LN:
                if a <= 0.0:
                    return math.nan, LN_DOMAIN
                r = math.log(a)
            else:
                if a < 0.0:
                    return math.nan, SQRT_DOMAIN
                r = math.sqrt(a)
            if not _isfinite(r):
                return math.nan, NONFINITE
            stack[-1] = r
        pc += 1
    return stack[-1], OK


def run_batch(ops, args, ts, tol, out, status):
    """Fill ``out``/``status`` for every point; return the first failing index or -1."""
    first = -1
    for i in range(len(ts)):
        v, s = run_point(ops, args, float(ts[i]), tol)
        out[i] = v
        status[i] = s
        if s != OK and first < 0:
            first = i
    return first
