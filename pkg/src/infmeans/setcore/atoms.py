"""Building blocks of bounded real sets.

Every atom denotes a bounded subset of the real line with exactly computable
inf and sup:

* ``FinitePoints`` -- a finite sorted list of rationals
* ``Interval``     -- a closed interval ``[lo, hi]`` with ``lo < hi``
* ``Seq``          -- the terms of a sequence converging monotonically to ``limit``
* ``CantorPiece``  -- ``offset + width * C`` with ``C`` the middle-thirds Cantor set
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import IntEnum
from fractions import Fraction
from typing import Optional, Union

from infmeans.errors import InvalidAtom

Rat = Fraction

ONE_THIRD = Fraction(1, 3)
TWO_THIRDS = Fraction(2, 3)

HARMONIC = "harmonic"
GEOMETRIC = "geometric"
HARMGEOM = "harmonic-geometric"
SEQ_KINDS = (HARMONIC, GEOMETRIC, HARMGEOM)

# exact powers q**n above this exponent are avoided where a bound decides
_EXACT_POWER_LIMIT = 2048


def rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def _log(x: Fraction) -> float:
    # math.log on big ints is exact enough and never underflows
    return math.log(x.numerator) - math.log(x.denominator)


class Dim(IntEnum):
    """Hausdorff dimension tag: 0 < log2/log3 < 1."""

    D0 = 0
    DC = 1
    D1 = 2

    @property
    def value_float(self) -> float:
        return (0.0, math.log(2) / math.log(3), 1.0)[int(self)]


@dataclass(frozen=True)
class FinitePoints:
    points: tuple

    def __post_init__(self):
        pts = tuple(rat(p) for p in self.points)
        if not pts:
            raise InvalidAtom("FinitePoints needs at least one point")
        if any(a >= b for a, b in zip(pts, pts[1:])):
            raise InvalidAtom("FinitePoints must be sorted and distinct")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, *points) -> "FinitePoints":
        return cls(tuple(sorted(set(rat(p) for p in points))))

    dim = Dim.D0

    @property
    def inf(self) -> Fraction:
        return self.points[0]

    @property
    def sup(self) -> Fraction:
        return self.points[-1]

    def contains(self, x: Fraction) -> bool:
        return x in self.points


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = rat(self.lo), rat(self.hi)
        if not lo < hi:
            raise InvalidAtom(f"interval needs lo < hi, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    dim = Dim.D1

    @property
    def inf(self) -> Fraction:
        return self.lo

    @property
    def sup(self) -> Fraction:
        return self.hi

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class Seq:
    """Terms ``limit + offset(n)`` for ``n >= start``.

    ``offset(n)`` is ``c/n`` (harmonic), ``c*q**n`` (geometric) or
    ``c/n + c2*q**n`` (harmonic-geometric).  All kinds approach ``limit`` strictly
    monotonically from the side given by the sign of ``c``, so the term index is
    recoverable from the distance to the limit.
    """

    limit: Fraction
    kind: str
    c: Fraction
    c2: Fraction = Fraction(0)
    q: Fraction = Fraction(0)
    start: int = 1

    def __post_init__(self):
        for name in ("limit", "c", "c2", "q"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if self.kind not in SEQ_KINDS:
            raise InvalidAtom(f"unknown sequence kind {self.kind!r}")
        if not isinstance(self.start, int) or self.start < 1:
            raise InvalidAtom("sequence start must be a positive integer")
        if self.c == 0:
            raise InvalidAtom("sequence coefficient c must be nonzero")
        if self.kind == HARMONIC:
            if self.c2 != 0 or self.q != 0:
                raise InvalidAtom("harmonic sequences take no c2/q")
        else:
            if not 0 < self.q < 1:
                raise InvalidAtom("geometric ratio q must satisfy 0 < q < 1")
        if self.kind == GEOMETRIC and self.c2 != 0:
            raise InvalidAtom("geometric sequences take no c2")
        if self.kind == HARMGEOM and (self.c2 == 0 or (self.c2 > 0) != (self.c > 0)):
            raise InvalidAtom("harmonic-geometric needs c and c2 nonzero with the same sign")

    dim = Dim.D0

    @property
    def side(self) -> int:
        return 1 if self.c > 0 else -1

    def offset(self, n: int) -> Fraction:
        if self.kind == HARMONIC:
            return self.c / n
        if self.kind == GEOMETRIC:
            return self.c * self.q ** n
        return self.c / n + self.c2 * self.q ** n

    def term(self, n: int) -> Fraction:
        return self.limit + self.offset(n)

    def dist(self, n: int) -> Fraction:
        return abs(self.offset(n))

    def _dist_below(self, n: int, d: Fraction, strict: bool) -> bool:
        """``dist(n) < d`` (strict) or ``dist(n) <= d``."""
        if self.kind == HARMGEOM and n > _EXACT_POWER_LIMIT:
            h = abs(self.c) / n
            if h >= d:
                return False
            bound = abs(self.c2) * self.q ** _EXACT_POWER_LIMIT
            if h + bound < d:
                return True
        if self.kind == GEOMETRIC and n > _EXACT_POWER_LIMIT:
            # compare logs first; fall back to exact arithmetic only when close
            lhs = _log(abs(self.c)) + n * _log(self.q)
            rhs = _log(d)
            if lhs < rhs - 1e-6:
                return True
            if lhs > rhs + 1e-6:
                return False
        dn = self.dist(n)
        return dn < d if strict else dn <= d

    def first_within(self, d: Fraction, strict: bool = False) -> Optional[int]:
        """Smallest ``n >= start`` with ``dist(n) <= d`` (``< d`` if strict); None if no such n."""
        d = rat(d)
        if d < 0 or (d == 0):
            return None
        if self.kind == HARMONIC:
            ratio = abs(self.c) / d
            n = math.floor(ratio) + 1 if strict else math.ceil(ratio)
            return max(n, self.start)
        lo = self.start
        if self.kind == HARMGEOM:
            ratio = abs(self.c) / d
            lo = max(lo, math.floor(ratio) + 1 if strict else math.ceil(ratio))
        if self._dist_below(lo, d, strict):
            return lo
        step = 1
        hi = lo + step
        while not self._dist_below(hi, d, strict):
            lo = hi
            step *= 2
            hi = lo + step
        # invariant: lo fails, hi succeeds
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self._dist_below(mid, d, strict):
                hi = mid
            else:
                lo = mid
        return hi

    def index_of(self, x: Fraction) -> Optional[int]:
        off = rat(x) - self.limit
        if off == 0 or (off > 0) != (self.side > 0):
            return None
        n = self.first_within(abs(off))
        if n is not None and self.dist(n) == abs(off):
            return n
        return None

    def contains(self, x: Fraction) -> bool:
        return self.index_of(x) is not None

    def index_range(self, lo: Optional[Fraction], hi: Optional[Fraction]):
        """Indices of terms lying in ``[lo, hi]`` (None = unbounded) as ``(first, last)``.

        ``last`` is None when every later term also lies in the range.  Returns
        None when no term lies in the range.
        """
        lim = self.limit
        if self.side > 0:
            dlo = Fraction(0) if lo is None else lo - lim
            dhi = None if hi is None else hi - lim
        else:
            dlo = Fraction(0) if hi is None else lim - hi
            dhi = None if lo is None else lim - lo
        if dhi is not None and dhi <= 0:
            return None
        first = self.start if dhi is None else self.first_within(dhi)
        if dlo <= 0:
            return (first, None)
        after = self.first_within(dlo, strict=True)
        last = after - 1
        if last < first:
            return None
        return (first, last)

    @property
    def inf(self) -> Fraction:
        return self.limit if self.side > 0 else self.term(self.start)

    @property
    def sup(self) -> Fraction:
        return self.term(self.start) if self.side > 0 else self.limit

    def with_start(self, start: int) -> "Seq":
        return replace(self, start=start)

    def normalized(self) -> "Seq":
        """Geometric tails are shift-invariant; fold ``start`` into ``c``."""
        if self.kind == GEOMETRIC and self.start != 1:
            return replace(self, c=self.c * self.q ** (self.start - 1), start=1)
        return self


@dataclass(frozen=True, eq=False)
class CantorPiece:
    """``offset + (base_width / 3**depth) * C``.

    Equality and hashing go through ``(offset, width)``: two pieces with the same
    hull denote the same point set regardless of how the width was factored.
    """

    offset: Fraction
    base_width: Fraction
    depth: int = 0

    def __post_init__(self):
        object.__setattr__(self, "offset", rat(self.offset))
        object.__setattr__(self, "base_width", rat(self.base_width))
        if self.base_width <= 0:
            raise InvalidAtom("Cantor base_width must be positive")
        if not isinstance(self.depth, int) or self.depth < 0:
            raise InvalidAtom("Cantor depth must be a nonnegative integer")

    dim = Dim.DC

    @property
    def width(self) -> Fraction:
        return self.base_width / 3 ** self.depth

    @property
    def lo(self) -> Fraction:
        return self.offset

    @property
    def hi(self) -> Fraction:
        return self.offset + self.width

    inf = lo
    sup = hi

    def children(self):
        w = self.width
        return (
            CantorPiece(self.offset, self.base_width, self.depth + 1),
            CantorPiece(self.offset + 2 * w / 3, self.base_width, self.depth + 1),
        )

    def _key(self):
        return (self.offset, self.width)

    def __eq__(self, other):
        if not isinstance(other, CantorPiece):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(("cantor",) + self._key())

    def __repr__(self):
        return f"CantorPiece(offset={self.offset}, width={self.width})"

    def contains(self, x: Fraction) -> bool:
        from infmeans.setcore.cantor import cantor_member

        return cantor_member(self, rat(x))


Atom = Union[FinitePoints, Interval, Seq, CantorPiece]

KIND_ORDER = {FinitePoints: 0, Seq: 1, CantorPiece: 2, Interval: 3}


def atom_sort_key(a: Atom):
    extra: tuple
    if isinstance(a, Interval):
        extra = (a.hi,)
    elif isinstance(a, CantorPiece):
        extra = (a.width,)
    elif isinstance(a, Seq):
        extra = (a.limit, a.side, SEQ_KINDS.index(a.kind), a.c, a.c2, a.q, a.start)
    else:
        extra = a.points
    return (a.inf, KIND_ORDER[type(a)], extra)
