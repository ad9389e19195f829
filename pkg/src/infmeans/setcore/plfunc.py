"""Continuous piecewise-linear maps with rational breakpoints, and set images."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Sequence

from infmeans.errors import ApproximationDepthExceeded, InvalidAtom, NonPLBreakOnCantor
from infmeans.setcore.atoms import FinitePoints, rat
from infmeans.setcore.canonical import CanonicalSet, affine_map, cut, union


@dataclass(frozen=True)
class PLFunc:
    """Interpolates ``values`` at ``breakpoints``; constant beyond both ends."""

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        b = tuple(rat(x) for x in self.breakpoints)
        v = tuple(rat(x) for x in self.values)
        if not b or len(b) != len(v):
            raise InvalidAtom("PLFunc needs matching, nonempty breakpoint and value lists")
        if any(x >= y for x, y in zip(b, b[1:])):
            raise InvalidAtom("PLFunc breakpoints must be strictly increasing")
        object.__setattr__(self, "breakpoints", b)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_pieces(cls, knots: Sequence, fn: Callable[[Fraction], Fraction]) -> "PLFunc":
        ks = [rat(k) for k in knots]
        return cls(tuple(ks), tuple(fn(k) for k in ks))

    @classmethod
    def identity(cls, lo=0, hi=1) -> "PLFunc":
        # identity on [lo, hi] only; callers pick a range covering their set
        return cls((lo, hi), (lo, hi))

    def __call__(self, x) -> Fraction:
        x = rat(x)
        b, v = self.breakpoints, self.values
        if x <= b[0]:
            return v[0]
        if x >= b[-1]:
            return v[-1]
        lo, hi = 0, len(b) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if b[mid] <= x:
                lo = mid
            else:
                hi = mid
        return v[lo] + (v[hi] - v[lo]) * (x - b[lo]) / (b[hi] - b[lo])

    def segments(self):
        """``(lo, hi, slope, intercept)`` per linear piece, ``None`` = unbounded."""
        b, v = self.breakpoints, self.values
        out = [(None, b[0], Fraction(0), v[0])]
        for i in range(len(b) - 1):
            slope = (v[i + 1] - v[i]) / (b[i + 1] - b[i])
            out.append((b[i], b[i + 1], slope, v[i] - slope * b[i]))
        out.append((b[-1], None, Fraction(0), v[-1]))
        return out


def sup_distance(f: PLFunc, g: PLFunc) -> Fraction:
    """``sup |f - g|``; attained at a breakpoint of either function."""
    knots = sorted(set(f.breakpoints) | set(g.breakpoints))
    return max(abs(f(x) - g(x)) for x in knots)


def apply_pl(a: CanonicalSet, f: PLFunc) -> CanonicalSet:
    """The image ``f(a)``.

    ``a`` is split at every breakpoint with exact closed cuts; each part is then
    mapped by its affine piece (a constant piece sends it to one point).
    """
    parts: List[CanonicalSet] = []
    for lo, hi, slope, icpt in f.segments():
        try:
            piece = cut(a, lo, hi, exact=True)
        except ApproximationDepthExceeded as exc:
            raise NonPLBreakOnCantor(str(exc)) from exc
        if piece.is_empty:
            continue
        if slope == 0:
            parts.append(CanonicalSet((FinitePoints((icpt,)),)))
        else:
            parts.append(affine_map(piece, slope, icpt))
    return union(*parts) if parts else CanonicalSet()
