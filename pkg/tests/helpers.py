"""Scales and tolerances shared by the test modules."""

from tscalc import FinitePoints, GeometricLattice, Interval, UniformLattice, normalize


def z_window():
    return normalize([UniformLattice(-10, 1, 0, 20)])


def h_scale(h=0.5):
    return normalize([UniformLattice(0, h)])


def q_window():
    return normalize([GeometricLattice(0.5, -8, 8)])


def q_closure():
    return normalize([GeometricLattice(0.5, -8, None, include_zero=True)])


def unit_interval():
    return normalize([Interval(-1, 1)])


def mixed():
    return normalize([Interval(0, 1), FinitePoints((1.5,))])


# the five scales used throughout the acceptance suite, with the points probed on each
SCALES = {
    "Z[-10,10]": (z_window, [float(k) for k in range(-10, 11)]),
    "0.5Z": (h_scale, [0.5 * k for k in range(-12, 13)]),
    "q=0.5,k in [-8,8]": (q_window, [0.5 ** k for k in range(-8, 9)]),
    "[-1,1]": (unit_interval, [-1.0 + 0.125 * k for k in range(17)]),
    "[0,1]u{1.5}": (mixed, [0.125 * k for k in range(9)] + [1.5]),
}


def close(a, b, rtol):
    return abs(a - b) <= rtol * max(1.0, abs(b))



# acceptance lines keyed by criterion number, printed at the end of the run
RESULTS = {}
