"""Time scales as finite unions of intervals, lattices and point sets.

A time scale is a nonempty closed subset of the real line.  The
representable ones here are unions of four segment kinds:

* :class:`Interval` -- a closed interval ``[a, b]`` (endpoints may be infinite),
* :class:`UniformLattice` -- points ``start + k*step`` for ``k`` in an index range,
* :class:`GeometricLattice` -- points ``q**k`` (``0 < q < 1``), optionally with
  the accumulation point ``0``,
* :class:`FinitePoints` -- an explicit sorted list.

Jump operators are computed segment by segment with index arithmetic, so
unbounded lattices are never enumerated.

    >>> T = normalize([UniformLattice(0.0, 1.0)])
    >>> T.sigma(3.0), T.rho(3.0)
    (4.0, 2.0)
    >>> T = normalize([Interval(0, 1), FinitePoints((1.5,))])
    >>> T.sigma(1.0), T.classify(1.0).value
    (1.5, 'left_dense_right_scattered')
"""
from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .errors import EmptyScale, InvalidSegment, PointNotInScale

DEFAULT_TOL = 1e-9

_INF = math.inf


def _fuzz(x: float, tol: float) -> float:
    return tol * max(1.0, abs(x))


class PointClass(enum.Enum):
    DENSE = "dense"
    ISOLATED = "isolated"
    LEFT_DENSE_RIGHT_SCATTERED = "left_dense_right_scattered"
    RIGHT_DENSE_LEFT_SCATTERED = "right_dense_left_scattered"

    @property
    def is_dense(self) -> bool:
        return self is PointClass.DENSE


@dataclass(frozen=True)
class Approach:
    """How the scale accumulates at a point from one side.

    ``kind == "continuum"``: every point within ``extent`` of ``t`` on that
    side belongs to the scale; ``width`` is the length of the enclosing
    interval.  ``kind == "lattice"``: only the points of ``lattice`` (a
    geometric lattice accumulating at ``t``) approach it.
    """

    kind: str
    extent: float = 0.0
    width: float = 0.0
    lattice: Optional["GeometricLattice"] = None


# --------------------------------------------------------------------------
# segments
#
# Each segment answers, for a query point x and tolerance tol:
#   contains(x)  membership within tol*max(1, |x|)
#   succ(x)      (value, gap) of inf{s in seg : s > x}, or None if empty.
#                value == x with gap 0.0 when the segment accumulates at x.
#   pred(x)      mirror image of succ.
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))

    def validate(self):
        if math.isnan(self.a) or math.isnan(self.b) or not self.a <= self.b:
            raise InvalidSegment(f"interval needs a <= b, got [{self.a}, {self.b}]")
        if self.a == _INF or self.b == -_INF:
            raise InvalidSegment("interval must contain a real number")

    @property
    def inf(self) -> float:
        return self.a

    @property
    def sup(self) -> float:
        return self.b

    def contains(self, x, tol):
        f = _fuzz(x, tol)
        return self.a - f <= x <= self.b + f

    def succ(self, x, tol):
        f = _fuzz(x, tol)
        if x < self.a - f:
            return self.a, self.a - x
        if x < self.b - f:
            return x, 0.0
        return None

    def pred(self, x, tol):
        f = _fuzz(x, tol)
        if x > self.b + f:
            return self.b, x - self.b
        if x > self.a + f:
            return x, 0.0
        return None

    def approach(self, x, tol, side):
        f = _fuzz(x, tol)
        if side > 0 and self.a - f <= x < self.b - f:
            return Approach("continuum", self.b - x, self.b - self.a)
        if side < 0 and self.a + f < x <= self.b + f:
            return Approach("continuum", x - self.a, self.b - self.a)
        return None

    def window(self, lo, hi, limit):
        lo, hi = max(lo, self.a), min(hi, self.b)
        if lo > hi:
            return []
        if lo == hi:
            return [lo]
        n = max(2, min(limit, 33))
        return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


@dataclass(frozen=True)
class UniformLattice:
    """Points ``start + k*step`` for ``k_min <= k <= k_max``.

    ``None`` bounds mean the lattice is unbounded on that side, so
    ``UniformLattice(0, 1)`` is the integers.
    """

    start: float
    step: float
    k_min: Optional[int] = None
    k_max: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "start", float(self.start))
        object.__setattr__(self, "step", float(self.step))

    @classmethod
    def from_count(cls, start, step, count=None, unbounded_below=False, unbounded_above=False):
        """Lattice of ``count`` points from ``start``, optionally open-ended."""
        if count is None and not unbounded_above:
            raise InvalidSegment("uniform lattice needs a count or unbounded_above")
        if count is not None and count < 1:
            raise InvalidSegment("uniform lattice count must be positive")
        k_max = None if unbounded_above else count - 1
        return cls(start, step, None if unbounded_below else 0, k_max)

    def validate(self):
        if not (math.isfinite(self.step) and self.step > 0):
            raise InvalidSegment(f"uniform lattice step must be > 0, got {self.step}")
        if not math.isfinite(self.start):
            raise InvalidSegment("uniform lattice start must be finite")
        if self.k_min is not None and self.k_max is not None and self.k_min > self.k_max:
            raise InvalidSegment("uniform lattice has an empty index range")

    def point(self, k):
        return self.start + k * self.step

    def _in_range(self, k):
        return (self.k_min is None or k >= self.k_min) and (self.k_max is None or k <= self.k_max)

    @property
    def inf(self):
        return -_INF if self.k_min is None else self.point(self.k_min)

    @property
    def sup(self):
        return _INF if self.k_max is None else self.point(self.k_max)

    def index_of(self, x, tol):
        k = round((x - self.start) / self.step)
        if self.k_min is not None:
            k = max(k, self.k_min)
        if self.k_max is not None:
            k = min(k, self.k_max)
        if abs(self.point(k) - x) <= _fuzz(x, tol):
            return k
        return None

    def contains(self, x, tol):
        return math.isfinite(x) and self.index_of(x, tol) is not None

    def succ(self, x, tol):
        j = self.index_of(x, tol)
        if j is not None:
            if self._in_range(j + 1):
                return x + self.step, self.step
            return None
        f = _fuzz(x, tol)
        k = math.floor((x - self.start) / self.step) + 1
        if self.k_min is not None and k < self.k_min:
            k = self.k_min
        while self.point(k) <= x + f:
            k += 1
        if not self._in_range(k):
            return None
        v = self.point(k)
        return v, v - x

    def pred(self, x, tol):
        j = self.index_of(x, tol)
        if j is not None:
            if self._in_range(j - 1):
                return x - self.step, self.step
            return None
        f = _fuzz(x, tol)
        k = math.ceil((x - self.start) / self.step) - 1
        if self.k_max is not None and k > self.k_max:
            k = self.k_max
        while self.point(k) >= x - f:
            k -= 1
        if not self._in_range(k):
            return None
        v = self.point(k)
        return v, x - v

    def approach(self, x, tol, side):
        return None

    def window(self, lo, hi, limit):
        k0 = math.ceil((lo - self.start) / self.step)
        k1 = math.floor((hi - self.start) / self.step)
        if self.k_min is not None:
            k0 = max(k0, self.k_min)
        if self.k_max is not None:
            k1 = min(k1, self.k_max)
        if k1 - k0 + 1 > limit:
            k1 = k0 + limit - 1
        return [self.point(k) for k in range(k0, k1 + 1)]

    def _index_span(self, lo, hi):
        """Indices of lattice points in ``[lo, hi]`` (closed, no fuzz)."""
        k0 = math.ceil((lo - self.start) / self.step)
        k1 = math.floor((hi - self.start) / self.step)
        return k0, k1


@dataclass(frozen=True)
class GeometricLattice:
    """Points ``q**k`` for ``k_min <= k <= k_max``, plus ``0`` if requested.

    ``k_max=None`` (points accumulating at zero) requires ``include_zero``
    so that the set is closed.
    """

    q: float
    k_min: Optional[int] = None
    k_max: Optional[int] = None
    include_zero: bool = False

    def __post_init__(self):
        object.__setattr__(self, "q", float(self.q))

    def validate(self):
        if not 0.0 < self.q < 1.0:
            raise InvalidSegment(f"geometric lattice needs 0 < q < 1, got {self.q}")
        if self.k_max is None and not self.include_zero:
            raise InvalidSegment("geometric lattice with k_max = +inf must include 0 to be closed")
        if self.k_min is not None and self.k_max is not None and self.k_min > self.k_max:
            raise InvalidSegment("geometric lattice has an empty index range")

    def point(self, k):
        try:
            return self.q ** k
        except OverflowError:
            return _INF

    def _in_range(self, k):
        return (self.k_min is None or k >= self.k_min) and (self.k_max is None or k <= self.k_max)

    def _log_index(self, x):
        return math.log(x) / math.log(self.q)

    @property
    def inf(self):
        if self.include_zero:
            return 0.0
        return self.point(self.k_max)

    @property
    def sup(self):
        return _INF if self.k_min is None else self.point(self.k_min)

    def index_of(self, x, tol):
        if not x > 0 or not math.isfinite(x):
            return None
        k0 = round(self._log_index(x))
        best = None
        for k in (k0 - 1, k0, k0 + 1):
            if self._in_range(k):
                d = abs(self.point(k) - x)
                if best is None or d < best[0]:
                    best = (d, k)
        if best is None:
            # x lies beyond the index range; check the nearest end
            k = self.k_min if self.k_min is not None and k0 < self.k_min else self.k_max
            if k is None:
                return None
            best = (abs(self.point(k) - x), k)
        return best[1] if best[0] <= _fuzz(x, tol) else None

    def is_zero(self, x, tol):
        return self.include_zero and abs(x) <= _fuzz(x, tol)

    def contains(self, x, tol):
        return self.is_zero(x, tol) or self.index_of(x, tol) is not None

    def succ(self, x, tol):
        if self.is_zero(x, tol):
            if self.k_max is None:
                return x, 0.0
            v = self.point(self.k_max)
            return v, v - x
        j = self.index_of(x, tol)
        if j is not None:
            if self._in_range(j - 1):
                v = x / self.q
                return v, v - x
            return None
        f = _fuzz(x, tol)
        if x <= 0:
            v = 0.0 if self.include_zero else self.point(self.k_max)
            return v, v - x
        # points grow as k decreases; walk down from an index whose point is below x
        k = math.floor(self._log_index(x)) + 2
        if self.k_max is not None:
            k = min(k, self.k_max)
        while self.k_min is None or k >= self.k_min:
            v = self.point(k)
            if v > x + f:
                return v, v - x
            k -= 1
        return None

    def pred(self, x, tol):
        if self.is_zero(x, tol):
            return None
        j = self.index_of(x, tol)
        if j is not None:
            if self._in_range(j + 1):
                v = x * self.q
                return v, x - v
            if self.include_zero:
                return 0.0, x
            return None
        f = _fuzz(x, tol)
        if x <= 0:
            return None
        k = math.ceil(self._log_index(x)) - 2
        if self.k_min is not None:
            k = max(k, self.k_min)
        while self.k_max is None or k <= self.k_max:
            v = self.point(k)
            if v < x - f:
                return v, x - v
            k += 1
        if self.include_zero:
            return 0.0, x
        return None

    def approach(self, x, tol, side):
        if side > 0 and self.k_max is None and self.is_zero(x, tol):
            return Approach("lattice", lattice=self)
        return None

    def distances(self, cap, n):
        """The ``n`` largest lattice points not exceeding ``cap``."""
        if self.k_max is not None:
            return []
        k = math.floor(self._log_index(cap)) if cap > 0 else 0
        if self.k_min is not None:
            k = max(k, self.k_min)
        while self.point(k) > cap:
            k += 1
        return [self.point(k + i) for i in range(n)]

    def window(self, lo, hi, limit):
        out = []
        if self.include_zero and lo <= 0.0 <= hi:
            out.append(0.0)
        if hi <= 0:
            return out
        k_hi = self.k_max
        k_lo = self.k_min
        # index bounds for points in (lo, hi]
        k_start = math.ceil(self._log_index(hi))
        if k_lo is not None:
            k_start = max(k_start, k_lo)
        k = k_start
        while len(out) < limit and (k_hi is None or k <= k_hi):
            v = self.point(k)
            if v < lo:
                break
            if v <= hi:
                out.append(v)
            k += 1
        return sorted(out)


@dataclass(frozen=True)
class FinitePoints:
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def validate(self):
        if not self.values:
            raise InvalidSegment("finite point set is empty")
        if not all(math.isfinite(v) for v in self.values):
            raise InvalidSegment("finite points must be finite")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise InvalidSegment("finite points must be strictly increasing")

    @property
    def inf(self):
        return self.values[0]

    @property
    def sup(self):
        return self.values[-1]

    def contains(self, x, tol):
        f = _fuzz(x, tol)
        i = bisect.bisect_left(self.values, x - f)
        return i < len(self.values) and self.values[i] <= x + f

    def succ(self, x, tol):
        i = bisect.bisect_right(self.values, x + _fuzz(x, tol))
        if i < len(self.values):
            v = self.values[i]
            return v, v - x
        return None

    def pred(self, x, tol):
        i = bisect.bisect_left(self.values, x - _fuzz(x, tol)) - 1
        if i >= 0:
            v = self.values[i]
            return v, x - v
        return None

    def approach(self, x, tol, side):
        return None

    def window(self, lo, hi, limit):
        i = bisect.bisect_left(self.values, lo)
        j = bisect.bisect_right(self.values, hi)
        return list(self.values[i:min(j, i + limit)])


Segment = Union[Interval, UniformLattice, GeometricLattice, FinitePoints]


# --------------------------------------------------------------------------
# the time scale
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TimeScale:
    """Canonical union of segments; build it with :func:`normalize`."""

    segments: tuple
    tol: float = DEFAULT_TOL
    min: float = field(init=False, compare=False)
    max: float = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "min", min(s.inf for s in self.segments))
        object.__setattr__(self, "max", max(s.sup for s in self.segments))

    def contains(self, x: float) -> bool:
        if not math.isfinite(x):
            return False
        return any(s.contains(x, self.tol) for s in self.segments)

    def _require(self, t):
        if not self.contains(t):
            raise PointNotInScale(f"{t!r} is not a point of the time scale")

    def _succ(self, t):
        best = None
        for s in self.segments:
            r = s.succ(t, self.tol)
            if r is not None and (best is None or r[0] < best[0]):
                best = r
        return best

    def _pred(self, t):
        best = None
        for s in self.segments:
            r = s.pred(t, self.tol)
            if r is not None and (best is None or r[0] > best[0]):
                best = r
        return best

    def sigma(self, t: float) -> float:
        """Forward jump: the infimum of scale points above ``t``."""
        self._require(t)
        r = self._succ(t)
        return t if r is None else r[0]

    def rho(self, t: float) -> float:
        """Backward jump: the supremum of scale points below ``t``."""
        self._require(t)
        r = self._pred(t)
        return t if r is None else r[0]

    def mu(self, t: float) -> float:
        """Forward graininess ``sigma(t) - t``; exactly ``step`` inside a uniform lattice."""
        self._require(t)
        r = self._succ(t)
        return 0.0 if r is None else r[1]

    def nu(self, t: float) -> float:
        """Backward graininess ``t - rho(t)``."""
        self._require(t)
        r = self._pred(t)
        return 0.0 if r is None else r[1]

    def _same(self, a, b):
        return abs(a - b) <= _fuzz(a, self.tol)

    def classify(self, t: float) -> PointClass:
        self._require(t)
        right_dense = self.mu(t) <= _fuzz(t, self.tol)
        left_dense = self.nu(t) <= _fuzz(t, self.tol)
        if right_dense and left_dense:
            return PointClass.DENSE
        if not right_dense and not left_dense:
            return PointClass.ISOLATED
        if left_dense:
            return PointClass.LEFT_DENSE_RIGHT_SCATTERED
        return PointClass.RIGHT_DENSE_LEFT_SCATTERED

    def in_kappa(self, t: float) -> bool:
        """``t`` belongs to T^kappa (a left-scattered finite maximum is removed)."""
        self._require(t)
        if math.isfinite(self.max) and self._same(t, self.max):
            return self.nu(t) <= _fuzz(t, self.tol)
        return True

    def in_kappa_lower(self, t: float) -> bool:
        """``t`` belongs to T_kappa (a right-scattered finite minimum is removed)."""
        self._require(t)
        if math.isfinite(self.min) and self._same(t, self.min):
            return self.mu(t) <= _fuzz(t, self.tol)
        return True

    def in_kappa_kappa(self, t: float) -> bool:
        return self.in_kappa(t) and self.in_kappa_lower(t)

    def reflect_in_scale(self, t: float, s: float) -> bool:
        """Whether both ``s`` and its mirror image ``2t - s`` lie in the scale."""
        return self.contains(s) and self.contains(2 * t - s)

    def approach(self, t: float, side: int) -> Optional[Approach]:
        """Describe how the scale accumulates at ``t`` from the right (side=+1) or left (-1)."""
        found = None
        for s in self.segments:
            a = s.approach(t, self.tol, side)
            if a is not None and (found is None or a.kind == "continuum"):
                found = a
        return found

    def window(self, lo: float, hi: float, limit: int = 64) -> list:
        """A sorted sample of scale points in ``[lo, hi]``.

        Lattices and finite sets contribute their actual points (at most
        ``limit`` per segment); intervals contribute an even grid.
        """
        pts = set()
        for s in self.segments:
            pts.update(s.window(lo, hi, limit))
        return sorted(pts)


# --------------------------------------------------------------------------
# normalization
# --------------------------------------------------------------------------


def _trim_uniform(lat: UniformLattice, a, b, tol):
    k0, k1 = lat._index_span(a - _fuzz(a, tol), b + _fuzz(b, tol))
    if lat.k_min is not None:
        k0 = max(k0, lat.k_min)
    if lat.k_max is not None:
        k1 = min(k1, lat.k_max)
    if k0 > k1:
        return [lat]
    pieces = []
    if lat.k_min is None or lat.k_min <= k0 - 1:
        pieces.append(UniformLattice(lat.start, lat.step, lat.k_min, k0 - 1))
    if lat.k_max is None or k1 + 1 <= lat.k_max:
        pieces.append(UniformLattice(lat.start, lat.step, k1 + 1, lat.k_max))
    return pieces


def _trim_geometric(lat: GeometricLattice, a, b, tol):
    lo, hi = a - _fuzz(a, tol), b + _fuzz(b, tol)
    zero_inside = lo <= 0.0 <= hi
    if b <= 0 or (lat.k_max is not None and hi < lat.point(lat.k_max)) or lo > lat.sup:
        # no positive lattice point inside [a, b]
        if zero_inside and lat.include_zero and lat.k_max is not None:
            return [GeometricLattice(lat.q, lat.k_min, lat.k_max, False)]
        return [lat]
    # first index with q**k <= hi
    k0 = math.ceil(lat._log_index(hi))
    while lat.point(k0 - 1) <= hi:
        k0 -= 1
    while lat.point(k0) > hi:
        k0 += 1
    # last index with q**k >= lo (None: every smaller point is inside)
    if lo <= 0:
        k1 = None
    else:
        k1 = math.floor(lat._log_index(lo))
        while lat.point(k1 + 1) >= lo:
            k1 += 1
        while lat.point(k1) < lo:
            k1 -= 1
    if lat.k_min is not None:
        k0 = max(k0, lat.k_min)
    if lat.k_max is not None:
        k1 = lat.k_max if k1 is None else min(k1, lat.k_max)
    if k1 is not None and k0 > k1:
        return [lat]
    pieces = []
    if lat.k_min is None or lat.k_min <= k0 - 1:
        pieces.append(GeometricLattice(lat.q, lat.k_min, k0 - 1, False))
    if k1 is not None and (lat.k_max is None or k1 + 1 <= lat.k_max):
        pieces.append(GeometricLattice(lat.q, k1 + 1, lat.k_max, lat.include_zero and not zero_inside))
    elif lat.include_zero and not zero_inside:
        pieces.append(FinitePoints((0.0,)))
    return pieces


def _lattice_to_points(seg):
    """Collapse a single-point or zero-only lattice into a point set."""
    if isinstance(seg, UniformLattice) and seg.k_min is not None and seg.k_min == seg.k_max:
        return FinitePoints((seg.point(seg.k_min),))
    if isinstance(seg, GeometricLattice) and seg.k_min is not None and seg.k_min == seg.k_max:
        vals = (0.0, seg.point(seg.k_min)) if seg.include_zero else (seg.point(seg.k_min),)
        return FinitePoints(vals)
    return seg


def _kind_rank(seg):
    return (Interval, FinitePoints, UniformLattice, GeometricLattice).index(type(seg))


def normalize(segments: Sequence[Segment], tol: float = DEFAULT_TOL) -> TimeScale:
    """Validate, merge and sort segments into a canonical :class:`TimeScale`.

    Intervals whose closures meet (within ``tol``) are merged; lattice and
    point-set members covered by an interval are dropped.  Overlaps between
    two lattices are left alone -- jump operators remain exact regardless.
    """
    segments = list(segments)
    if not segments:
        raise EmptyScale("a time scale needs at least one segment")
    if not (tol >= 0 and math.isfinite(tol)):
        raise InvalidSegment(f"tolerance must be a finite non-negative number, got {tol}")
    for s in segments:
        if not isinstance(s, (Interval, UniformLattice, GeometricLattice, FinitePoints)):
            raise InvalidSegment(f"unknown segment {s!r}")
        s.validate()

    spans = sorted((s.a, s.b) for s in segments if isinstance(s, Interval))
    merged = []
    for a, b in spans:
        if merged and a <= merged[-1][1] + _fuzz(merged[-1][1], tol):
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    intervals = [Interval(a, b) for a, b in merged if a < b]
    points = [a for a, b in merged if a == b]

    lattices = [s for s in segments if isinstance(s, (UniformLattice, GeometricLattice))]
    for iv in intervals:
        trimmed = []
        for lat in lattices:
            if isinstance(lat, UniformLattice):
                trimmed.extend(_trim_uniform(lat, iv.a, iv.b, tol))
            else:
                trimmed.extend(_trim_geometric(lat, iv.a, iv.b, tol))
        lattices = []
        for lat in trimmed:
            if isinstance(lat, FinitePoints):
                points.extend(lat.values)
            else:
                lattices.append(lat)
    kept = []
    for lat in lattices:
        lat = _lattice_to_points(lat)
        if isinstance(lat, FinitePoints):
            points.extend(lat.values)
        else:
            kept.append(lat)
    lattices = kept

    for s in segments:
        if isinstance(s, FinitePoints):
            points.extend(s.values)
    points = sorted(
        p for p in points
        if not any(iv.contains(p, tol) for iv in intervals)
        and not any(lat.contains(p, tol) for lat in lattices)
    )
    deduped = []
    for p in points:
        if not deduped or p - deduped[-1] > _fuzz(p, tol):
            deduped.append(p)

    # group consecutive points into runs not separated by an interval
    groups = []
    for p in deduped:
        if groups and not any(groups[-1][-1] < iv.a and iv.b < p for iv in intervals):
            groups[-1].append(p)
        else:
            groups.append([p])

    out = intervals + lattices + [FinitePoints(tuple(g)) for g in groups]
    out.sort(key=lambda s: (s.inf, s.sup, _kind_rank(s), repr(s)))
    return TimeScale(tuple(out), tol)
