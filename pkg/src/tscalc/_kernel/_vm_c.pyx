# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled stack machine for expression programs.

Semantics mirror ``_vm_py.py`` exactly; the opcode and status numbers
below must match ``opcodes.py``.
"""
from libc.math cimport sin, cos, exp, log, sqrt, fmod, pow, fabs, floor, isfinite, NAN
from libc.stdlib cimport malloc, free

cdef enum:
    CONST = 0
    VAR = 1
    NEG = 2
    ADD = 3
    SUB = 4
    MUL = 5
    DIV = 6
    POW = 7
    ABS = 8
    SIN = 9
    COS = 10
    EXP = 11
    LN = 12
    SQRT = 13
    MOD = 14
    EQ = 15
    NE = 16
    LT = 17
    LE = 18
    GT = 19
    GE = 20
    JUMP_IF_FALSE = 21
    JUMP = 22

cdef enum:
    OK = 0
    DIV_ZERO = 1
    LN_DOMAIN = 2
    SQRT_DOMAIN = 3
    MOD_ZERO = 4
    POW_DOMAIN = 5
    NONFINITE = 6


cdef inline double _max3(double a, double b, double c) nogil:
    cdef double m = a
    if b > m:
        m = b
    if c > m:
        m = c
    return m


cdef int _run(const int[:] ops, const double[:] args, double* stack,
              double t, double tol, double* result) noexcept nogil:
    cdef Py_ssize_t pc = 0, n = ops.shape[0]
    cdef Py_ssize_t sp = 0
    cdef int op
    cdef double a, b, r, m
    if not isfinite(t):
        result[0] = NAN
        return NONFINITE
    while pc < n:
        op = ops[pc]
        if op == CONST:
            a = args[pc]
            if not isfinite(a):
                return NONFINITE
            stack[sp] = a
            sp += 1
        elif op == VAR:
            stack[sp] = t
            sp += 1
        elif op == JUMP_IF_FALSE:
            sp -= 1
            if stack[sp] == 0.0:
                pc = <Py_ssize_t>args[pc]
                continue
        elif op == JUMP:
            pc = <Py_ssize_t>args[pc]
            continue
        elif op == NEG:
            stack[sp - 1] = -stack[sp - 1]
        elif op <= DIV or op == POW or op == MOD or op >= EQ:
            sp -= 1
            b = stack[sp]
            a = stack[sp - 1]
            if op == ADD:
                r = a + b
            elif op == SUB:
                r = a - b
            elif op == MUL:
                r = a * b
            elif op == DIV:
                if b == 0.0:
                    return DIV_ZERO
                r = a / b
            elif op == POW:
                if (a < 0.0 and b != floor(b)) or (a == 0.0 and b < 0.0):
                    return POW_DOMAIN
                r = pow(a, b)
            elif op == MOD:
                if b == 0.0:
                    return MOD_ZERO
                m = fabs(b)
                r = fmod(a, m)
                if r < 0.0:
                    r += m
                if r >= m:
                    r = 0.0
            elif op == EQ or op == NE:
                if (fabs(a - b) <= tol * _max3(1.0, fabs(a), fabs(b))) == (op == EQ):
                    r = 1.0
                else:
                    r = 0.0
            elif op == LT:
                r = 1.0 if a < b else 0.0
            elif op == LE:
                r = 1.0 if a <= b else 0.0
            elif op == GT:
                r = 1.0 if a > b else 0.0
            else:
                r = 1.0 if a >= b else 0.0
            if not isfinite(r):
                return NONFINITE
            stack[sp - 1] = r
        else:
            a = stack[sp - 1]
            if op == ABS:
                r = fabs(a)
            elif op == SIN:
                r = sin(a)
            elif op == COS:
                r = cos(a)
            elif op == EXP:
                r = exp(a)
            elif op == LN:
                if a <= 0.0:
                    return LN_DOMAIN
                r = log(a)
            else:
                if a < 0.0:
                    return SQRT_DOMAIN
                r = sqrt(a)
            if not isfinite(r):
                return NONFINITE
            stack[sp - 1] = r
        pc += 1
    result[0] = stack[sp - 1]
    return OK


def run_point(const int[:] ops, const double[:] args, double t, double tol, Py_ssize_t stack_size):
    """Run one program at ``t``; return ``(value, status)``."""
    cdef double* stack = <double*>malloc((stack_size + 1) * sizeof(double))
    cdef double r = NAN
    cdef int status
    if stack == NULL:
        raise MemoryError()
    try:
        status = _run(ops, args, stack, t, tol, &r)
    finally:
        free(stack)
    if status != OK:
        r = NAN
    return r, status


def run_batch(const int[:] ops, const double[:] args, const double[:] ts, double tol,
              double[:] out, int[:] status, Py_ssize_t stack_size):
    """Fill ``out``/``status`` for every point; return the first failing index or -1."""
    cdef Py_ssize_t i, n = ts.shape[0], first = -1
    cdef double r
    cdef int s
    cdef double* stack = <double*>malloc((stack_size + 1) * sizeof(double))
    if stack == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(n):
                r = NAN
                s = _run(ops, args, stack, ts[i], tol, &r)
                if s != OK:
                    r = NAN
                    if first < 0:
                        first = i
                out[i] = r
                status[i] = s
    finally:
        free(stack)
    return first
