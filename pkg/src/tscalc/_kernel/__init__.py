"""Expression evaluation kernel.

The compiled Cython stack machine is used when it was built; otherwise the
pure-Python one.  Set ``TSCALC_PURE_PYTHON=1`` to force the fallback.
Both produce bit-identical results.
"""
import os

import numpy as np

from . import _vm_py

_c = None
if not os.environ.get("TSCALC_PURE_PYTHON"):
    try:
        from . import _vm_c as _c
    except ImportError:
        _c = None

BACKEND = "cython" if _c is not None else "python"


class Program:
    """A compiled expression: opcode and argument vectors plus stack depth."""

    __slots__ = ("ops", "args", "stack_size", "ops_arr", "args_arr")

    def __init__(self, ops, args, stack_size):
        self.ops = tuple(ops)
        self.args = tuple(float(a) for a in args)
        self.stack_size = stack_size
        self.ops_arr = np.asarray(self.ops, dtype=np.intc)
        self.args_arr = np.asarray(self.args, dtype=np.float64)

    def __len__(self):
        return len(self.ops)


def run_point(program, t, tol, backend=None):
    if (backend or BACKEND) == "cython":
        return _c.run_point(program.ops_arr, program.args_arr, float(t), tol, program.stack_size)
    return _vm_py.run_point(program.ops, program.args, float(t), tol)


def run_batch(program, ts, tol, backend=None):
    """Evaluate at every point of ``ts``; return ``(values, status, first_failure)``."""
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    out = np.empty(ts.shape[0], dtype=np.float64)
    status = np.empty(ts.shape[0], dtype=np.intc)
    if (backend or BACKEND) == "cython":
        first = _c.run_batch(program.ops_arr, program.args_arr, ts, tol, out, status, program.stack_size)
    else:
        first = _vm_py.run_batch(program.ops, program.args, ts.tolist(), tol, out, status)
    return out, status, first


def available_backends():
    return ["python"] + (["cython"] if _c is not None else [])
