"""Hausdorff measure and first moment of the top-dimensional part of a set.

Normalization: the unit middle-thirds Cantor set has measure 1 in dimension
log2/log3.  A piece of width ``3**j`` then weighs ``2**j``.  When all Cantor widths
share one such power-of-three family the weights are exact rationals; otherwise
``w**s`` is enclosed with 64-digit interval arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import mpmath

from infmeans.errors import EmptySet, NotAnSSet
from infmeans.setcore.atoms import Dim
from infmeans.setcore.canonical import CanonicalSet


@dataclass(frozen=True)
class Bounds:
    """A closed enclosure ``[lo, hi]`` of a value that is not known exactly."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError("Bounds need lo <= hi")

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x):
        return self.lo <= x <= self.hi


Value = Union[Fraction, Bounds]


@dataclass(frozen=True)
class MeasureResult:
    dim: Dim
    measure: Value
    moment: Value
    exact: bool
    unit: Fraction = Fraction(1)  # measures are in units of unit**dim


def _power_of_three(r: Fraction) -> Optional[int]:
    """``j`` with ``r == 3**j``, or None."""
    if r <= 0:
        return None
    j = 0
    num, den = r.numerator, r.denominator
    while num % 3 == 0:
        num //= 3
        j += 1
    while den % 3 == 0:
        den //= 3
        j -= 1
    return j if num == den == 1 else None


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x
    v = Fraction(man) * (Fraction(2) ** exp)
    return -v if sign else v


def cantor_weights(widths: List[Fraction]) -> Tuple[List[Value], bool, Fraction]:
    """Per-piece Hausdorff weights, exactness flag and the unit width."""
    if not widths:
        return [], True, Fraction(1)
    unit = None
    for w in widths:
        if _power_of_three(w) is not None:
            unit = Fraction(1)
            break
    if unit is None:
        unit = widths[0]
    exps = [_power_of_three(w / unit) for w in widths]
    if all(j is not None for j in exps):
        return [Fraction(2) ** j for j in exps], True, unit
    out: List[Value] = []
    iv = mpmath.iv
    saved = iv.prec
    iv.dps = 64  # the interval context keeps its own precision
    try:
        s = iv.log(2) / iv.log(3)
        for w in widths:
            val = (iv.mpf(w.numerator) / w.denominator) ** s
            lo, hi = val._mpi_
            out.append(Bounds(_mpf_to_fraction(lo), _mpf_to_fraction(hi)))
    finally:
        iv.prec = saved
    return out, False, Fraction(1)


def _add(a: Value, b: Value) -> Value:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a + b
    al, ah = (a.lo, a.hi) if isinstance(a, Bounds) else (a, a)
    bl, bh = (b.lo, b.hi) if isinstance(b, Bounds) else (b, b)
    return Bounds(al + bl, ah + bh)


def _scale(w: Value, c: Fraction) -> Value:
    if isinstance(w, Fraction):
        return w * c
    lo, hi = sorted((w.lo * c, w.hi * c))
    return Bounds(lo, hi)


def geometry(a: CanonicalSet) -> MeasureResult:
    """Dimension, measure and first moment of the top-dimensional part."""
    if a.is_empty:
        raise EmptySet("geometry of the empty set")
    dims = [x.dim for x in a.atoms] + [Dim.DC for _ in a.residual]
    dim = max(dims)
    if dim == Dim.D1:
        ivs = a.intervals
        measure = sum((iv.length for iv in ivs), Fraction(0))
        moment = sum(((iv.hi ** 2 - iv.lo ** 2) / 2 for iv in ivs), Fraction(0))
        return MeasureResult(dim, measure, moment, True)
    if dim == Dim.DC:
        pieces = a.pieces
        res = list(a.residual)
        weights, exact, unit = cantor_weights([p.width for p in pieces + res])
        measure: Value = Fraction(0)
        moment: Value = Fraction(0)
        for p, w in zip(pieces, weights):
            measure = _add(measure, w)
            moment = _add(moment, _scale(w, p.offset + p.width / 2))
        for r, w in zip(res, weights[len(pieces):]):
            whi = w if isinstance(w, Fraction) else w.hi
            measure = _add(measure, Bounds(Fraction(0), whi))
            moment = _add(moment, Bounds(min(Fraction(0), whi * r.lo), max(Fraction(0), whi * r.hi)))
        exact = exact and not res
        return MeasureResult(dim, measure, moment, exact, unit)
    if a.seqs:
        raise NotAnSSet("countably infinite set: the counting measure is infinite")
    pts = a.points
    return MeasureResult(dim, Fraction(len(pts)), sum(pts, Fraction(0)), True)


def ratio(moment: Value, measure: Value) -> Value:
    """Enclosure of ``moment / measure`` (measure strictly positive)."""
    if isinstance(moment, Fraction) and isinstance(measure, Fraction):
        return moment / measure
    nl, nh = (moment.lo, moment.hi) if isinstance(moment, Bounds) else (moment, moment)
    dl, dh = (measure.lo, measure.hi) if isinstance(measure, Bounds) else (measure, measure)
    if dl <= 0:
        raise ZeroDivisionError("measure enclosure touches zero")
    cands = [nl / dl, nl / dh, nh / dl, nh / dh]
    return Bounds(min(cands), max(cands))
