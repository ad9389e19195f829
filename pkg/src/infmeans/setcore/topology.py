"""Order bounds, derived sets, closure, isolated and condensation points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Union

from infmeans.errors import EmptySet
from infmeans.setcore.atoms import CantorPiece, FinitePoints, Interval, Seq
from infmeans.setcore.canonical import (
    CanonicalSet,
    canonicalize,
    removed_ranges,
    split_sequence,
)


@dataclass(frozen=True)
class SetBounds:
    inf: Fraction
    sup: Fraction
    liminf: Optional[Fraction]
    limsup: Optional[Fraction]


@dataclass(frozen=True)
class CardTag:
    kind: str  # "finite" | "countably-infinite" | "uncountable"
    n: Optional[int] = None

    def __str__(self):
        return f"finite({self.n})" if self.kind == "finite" else self.kind


@dataclass(frozen=True)
class DerivedResult:
    set: CanonicalSet
    rank: Optional[int]
    final: Optional[CanonicalSet]  # H^(rank), the last nonempty derived set


@dataclass(frozen=True)
class StructurePoints:
    closure: CanonicalSet
    isolated: CanonicalSet
    isolated_card: CardTag
    condensation: CanonicalSet


def extent(a: CanonicalSet):
    if a.is_empty:
        raise EmptySet("empty set has no bounds")
    items = list(a.atoms) + list(a.residual)
    return min(x.inf for x in items), max(x.sup for x in items)


def derived_once(a: CanonicalSet) -> CanonicalSet:
    out = []
    for atom in a.atoms:
        if isinstance(atom, (Interval, CantorPiece)):
            out.append(atom)
        elif isinstance(atom, Seq):
            out.append(FinitePoints((atom.limit,)))
    return canonicalize(out, a.residual)


def bounds(a: CanonicalSet) -> SetBounds:
    lo, hi = extent(a)
    d = derived_once(a)
    if d.is_empty:
        return SetBounds(lo, hi, None, None)
    dlo, dhi = extent(d)
    return SetBounds(lo, hi, dlo, dhi)


def derived(a: CanonicalSet, iterations: Union[int, str] = 1) -> DerivedResult:
    """``H^(iterations)`` (or the fixpoint) together with the derived rank.

    The rank is the least ``l`` with ``H^(l+1)`` empty (``H^(0) = H``); None when a
    perfect atom keeps the chain from ever emptying.
    """
    if iterations != "to-fixpoint" and (not isinstance(iterations, int) or iterations < 0):
        raise ValueError("iterations must be a nonnegative int or 'to-fixpoint'")
    chain = [a]
    while not chain[-1].is_empty:
        nxt = derived_once(chain[-1])
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    last = chain[-1]
    if last.is_empty:
        rank = len(chain) - 2 if len(chain) > 1 else None
        final = chain[-2] if len(chain) > 1 else None
    else:
        rank, final = None, None
    if iterations == "to-fixpoint":
        result = last
    else:
        result = chain[iterations] if iterations < len(chain) else last
    return DerivedResult(result, rank, final)


def closure(a: CanonicalSet) -> CanonicalSet:
    limits = [FinitePoints((s.limit,)) for s in a.seqs]
    return canonicalize(list(a.atoms) + limits, a.residual)


def isolated_points(a: CanonicalSet) -> CanonicalSet:
    d = derived_once(a)
    out: List = []
    pts = [x for x in a.points if not any(atom.contains(x) for atom in d.atoms)]
    if pts:
        out.append(FinitePoints(tuple(pts)))
    for s in a.seqs:
        ranges, _ = removed_ranges(s, d.intervals, d.pieces, (), d.points)
        head, tail = split_sequence(s, ranges)
        if head:
            out.append(FinitePoints.of(*head))
        if tail is not None:
            out.append(tail)
    return canonicalize(out)


def condensation(a: CanonicalSet) -> CanonicalSet:
    return canonicalize([x for x in a.atoms if isinstance(x, (Interval, CantorPiece))], a.residual)


def structure_points(a: CanonicalSet) -> StructurePoints:
    iso = isolated_points(a)
    if iso.seqs:
        card = CardTag("countably-infinite")
    else:
        card = CardTag("finite", len(iso.points))
    return StructurePoints(closure(a), iso, card, condensation(a))


def cardinality(a: CanonicalSet) -> CardTag:
    if a.pieces or a.intervals or a.residual:
        return CardTag("uncountable")
    if a.seqs:
        return CardTag("countably-infinite")
    return CardTag("finite", len(a.points))
