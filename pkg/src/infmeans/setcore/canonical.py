"""Canonical normal form of bounded real sets and the exact set operations on it."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from infmeans.errors import ApproximationDepthExceeded, InvalidAtom, RepresentationLimit
from infmeans.setcore.atoms import (
    GEOMETRIC,
    Atom,
    CantorPiece,
    FinitePoints,
    Interval,
    Seq,
    atom_sort_key,
    rat,
)
from infmeans.setcore.cantor import cantor_cut, cantor_member, clear_radius, resolve_pieces

# cap on how many individual sequence terms an operation may spell out as points
HEAD_LIMIT = 200_000


class DegenerateMapWarning(UserWarning):
    """``affine_map`` with alpha == 0 collapsed a set to a single point."""


@dataclass(frozen=True)
class Ball:
    """The open interval ``(center - radius, center + radius)``."""

    center: Fraction
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", rat(self.center))
        object.__setattr__(self, "radius", rat(self.radius))
        if self.radius <= 0:
            raise InvalidAtom("ball radius must be positive")


@dataclass(frozen=True)
class CanonicalSet:
    """A bounded set as a sorted tuple of pairwise disjoint atoms.

    ``residual`` holds Cantor pieces left undecided by an approximate cut.  They
    are *not* part of the set proper; the true set lies between ``atoms`` and
    ``atoms + residual``.  Exact operations never produce residuals.
    """

    atoms: Tuple[Atom, ...] = ()
    residual: Tuple[CantorPiece, ...] = ()

    @property
    def exact(self) -> bool:
        return not self.residual

    @property
    def is_empty(self) -> bool:
        return not self.atoms and not self.residual

    def __bool__(self):
        return not self.is_empty

    @property
    def intervals(self) -> List[Interval]:
        return [a for a in self.atoms if isinstance(a, Interval)]

    @property
    def pieces(self) -> List[CantorPiece]:
        return [a for a in self.atoms if isinstance(a, CantorPiece)]

    @property
    def seqs(self) -> List[Seq]:
        return [a for a in self.atoms if isinstance(a, Seq)]

    @property
    def points(self) -> Tuple[Fraction, ...]:
        for a in self.atoms:
            if isinstance(a, FinitePoints):
                return a.points
        return ()

    @property
    def is_finite(self) -> bool:
        return all(isinstance(a, FinitePoints) for a in self.atoms) and not self.residual

    @property
    def is_countable(self) -> bool:
        return all(isinstance(a, (FinitePoints, Seq)) for a in self.atoms) and not self.residual

    def __contains__(self, x) -> bool:
        return member(self, x)

    def __or__(self, other: "CanonicalSet") -> "CanonicalSet":
        return union(self, other)

    def __add__(self, x) -> "CanonicalSet":
        return affine_map(self, 1, x)

    def __str__(self):
        from infmeans.shell.dsl import format_set

        return format_set(self)


EMPTY = CanonicalSet()


# ---------------------------------------------------------------------------
# normal form
# ---------------------------------------------------------------------------


def _merge_intervals(intervals: Iterable[Interval]) -> List[Interval]:
    out: List[Interval] = []
    for iv in sorted(intervals, key=lambda i: i.lo):
        if out and iv.lo <= out[-1].hi:
            if iv.hi > out[-1].hi:
                out[-1] = Interval(out[-1].lo, iv.hi)
        else:
            out.append(iv)
    return out


def _cut_out_intervals(pieces, intervals, points: set) -> List[CantorPiece]:
    """Remove the parts of Cantor pieces covered by intervals (closed cuts).

    A piece whose cut point is an interior Cantor point stays whole; the
    overlap then has measure zero at its own dimension and is harmless.
    """
    out = []
    work = list(pieces)
    while work:
        p = work.pop()
        hit = None
        for iv in intervals:
            if iv.lo < p.hi and iv.hi > p.lo:
                hit = iv
                break
        if hit is None:
            out.append(p)
            continue
        if hit.lo <= p.lo and hit.hi >= p.hi:
            continue
        try:
            left = cantor_cut(p, hit.lo, "le")
            right = cantor_cut(p, hit.hi, "ge")
        except ApproximationDepthExceeded:
            out.append(p)
            continue
        points.update(left.points)
        points.update(right.points)
        work.extend(left.pieces + right.pieces)
    return out


def _merge_ranges(ranges) -> List[Tuple[int, Optional[int]]]:
    """Merge closed index ranges; an end of None means unbounded."""
    big = 1 << 62
    norm = sorted((a, big if b is None else b) for a, b in ranges)
    out: List[list] = []
    for a, b in norm:
        if out and a <= out[-1][1] + 1:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return [(a, None if b == big else b) for a, b in out]


def removed_ranges(s: Seq, intervals=(), pieces=(), seqs=(), points=()):
    """Index ranges of terms of ``s`` that lie in the given atoms.

    Returns ``(ranges, entangled)``; ``entangled`` is True when some atom shares
    infinitely many terms with ``s`` in a pattern the index arithmetic cannot
    enumerate (a limit inside a Cantor piece, or two sequences with one limit).
    """
    ranges = []
    entangled = False
    for iv in intervals:
        r = s.index_range(iv.lo, iv.hi)
        if r:
            ranges.append(r)
    for x in points:
        n = s.index_of(x)
        if n is not None:
            ranges.append((n, n))
    for p in pieces:
        r = s.index_range(p.lo, p.hi)
        if not r:
            continue
        a, b = r
        if b is None:
            rad = clear_radius(p, s.limit, s.side)
            if not rad:
                entangled = True
                continue
            b = s.first_within(rad, strict=True) - 1
        if b - a + 1 > HEAD_LIMIT:
            entangled = True
            continue
        for n in range(a, b + 1):
            if cantor_member(p, s.term(n)):
                ranges.append((n, n))
    for o in seqs:
        if o.limit == s.limit:
            if o.side == s.side:
                k = _shared_tail(o, s)
                if k is None:
                    entangled = True
                elif k > 0:
                    ranges.append((k, None))
            continue
        delta = abs(o.limit - s.limit) / 2
        s_end = s.first_within(delta, strict=True)
        o_end = o.first_within(delta, strict=True)
        if s_end - s.start > HEAD_LIMIT or o_end - o.start > HEAD_LIMIT:
            raise RepresentationLimit("too many sequence terms to compare")
        for n in range(s.start, s_end):
            if o.contains(s.term(n)):
                ranges.append((n, n))
        for m in range(o.start, o_end):
            n = s.index_of(o.term(m))
            if n is not None:
                ranges.append((n, n))
    return _merge_ranges(ranges), entangled


def _shared_tail(o: Seq, s: Seq) -> Optional[int]:
    """First index of ``s`` from which every term of ``s`` is a term of ``o``.

    Returns 0 when the two provably share no term and None when undecided.
    """
    if (o.kind, o.c2, o.q) != (s.kind, s.c2, s.q):
        return None
    if o.kind == GEOMETRIC:
        # c*q**n == c'*q**m with c'/c = q**k shifts the index by k
        k = s.index_of(o.term(o.start))
        if k is None:
            k0 = o.index_of(s.term(s.start))
            # c'/c is not a power of q, so no term is shared
            return s.start if k0 is not None else 0
        return k
    if o.c != s.c:
        return None
    return max(o.start, s.start)


def split_sequence(s: Seq, ranges) -> Tuple[List[Fraction], Optional[Seq]]:
    """Remove the terms with indices in ``ranges``; return (head points, tail)."""
    ranges = [(a, b) for a, b in ranges if b is None or b >= s.start]
    if not ranges:
        return [], s
    infinite = [a for a, b in ranges if b is None]
    if infinite:
        end = max(min(infinite), s.start)
        tail = None
    else:
        end = max(b for _, b in ranges) + 1
        tail = s.with_start(end)
    head: List[Fraction] = []
    n = s.start
    for a, b in ranges:
        stop = min(a, end)
        if stop - n + len(head) > HEAD_LIMIT:
            raise RepresentationLimit(
                f"removing terms from {s!r} would leave more than {HEAD_LIMIT} isolated points")
        head.extend(s.term(k) for k in range(n, stop))
        if b is None:
            n = end
            break
        n = max(n, b + 1)
    if end - n > HEAD_LIMIT:
        raise RepresentationLimit("sequence head too long")
    head.extend(s.term(k) for k in range(n, end))
    return head, tail


def _absorb_points(s: Seq, points: set) -> Seq:
    """Grow the tail downwards while the preceding term is a stray point."""
    while True:
        if s.start > 1:
            prev = s.term(s.start - 1)
            if prev in points:
                points.discard(prev)
                s = s.with_start(s.start - 1)
                continue
        elif s.kind == GEOMETRIC:
            prev = s.limit + s.c
            if prev in points:
                points.discard(prev)
                s = replace(s, c=s.c / s.q)
                continue
        return s


def _covered(x, intervals, pieces, seqs) -> bool:
    return (any(iv.contains(x) for iv in intervals)
            or any(cantor_member(p, x) for p in pieces)
            or any(s.contains(x) for s in seqs))


def canonicalize(atoms: Iterable, residual: Iterable[CantorPiece] = ()) -> CanonicalSet:
    """Normal form of a finite union of atoms."""
    points: set = set()
    intervals, seqs, pieces = [], [], []
    for a in atoms:
        if isinstance(a, FinitePoints):
            points.update(a.points)
        elif isinstance(a, Interval):
            intervals.append(a)
        elif isinstance(a, Seq):
            seqs.append(a.normalized())
        elif isinstance(a, CantorPiece):
            pieces.append(a)
        else:
            raise InvalidAtom(f"not an atom: {a!r}")
    intervals = _merge_intervals(intervals)
    pieces = resolve_pieces(_cut_out_intervals(pieces, intervals, points))

    kept: List[Seq] = []
    for s in sorted(set(seqs), key=atom_sort_key):
        ranges, _ = removed_ranges(s, intervals, pieces, kept)
        head, tail = split_sequence(s, ranges)
        points.update(head)
        if tail is not None:
            kept.append(tail)
    points = {x for x in points if not _covered(x, intervals, pieces, kept)}
    kept = [_absorb_points(s, points).normalized() for s in kept]

    out: List[Atom] = [*intervals, *pieces, *kept]
    if points:
        out.append(FinitePoints(tuple(sorted(points))))
    out.sort(key=atom_sort_key)

    res = []
    for r in set(residual):
        if any(iv.lo <= r.lo and r.hi <= iv.hi for iv in intervals):
            continue
        if any(cantor_member(p, r.lo) and cantor_member(p, r.hi) and p.width >= r.width
               and _is_inside(r, p) for p in pieces):
            continue
        res.append(r)
    res.sort(key=lambda p: (p.offset, p.width))
    return CanonicalSet(tuple(out), tuple(res))


def _is_inside(r: CantorPiece, p: CantorPiece) -> bool:
    from infmeans.setcore.cantor import is_subpiece

    return r == p or is_subpiece(r, p)


def from_atoms(*atoms) -> CanonicalSet:
    return canonicalize(atoms)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def union(*sets: CanonicalSet) -> CanonicalSet:
    atoms, res = [], []
    for s in sets:
        atoms.extend(s.atoms)
        res.extend(s.residual)
    return canonicalize(atoms, res)


def member(a: CanonicalSet, x) -> bool:
    x = rat(x)
    return any(atom.contains(x) for atom in a.atoms)


def _cut_piece(p: CantorPiece, lo, hi, exact: bool):
    pieces, points, residual = [p], [], []
    if lo is not None:
        r = cantor_cut(p, lo, "ge", exact=exact)
        pieces, points, residual = r.pieces, list(r.points), list(r.residual)
    if hi is not None:
        out_pieces = []
        for q in pieces:
            r = cantor_cut(q, hi, "le", exact=exact)
            out_pieces.extend(r.pieces)
            points.extend(r.points)
            residual.extend(r.residual)
        pieces = out_pieces
        points = [x for x in points if x <= hi]
        residual = [q for q in residual if q.lo <= hi]
    return pieces, points, residual


def cut(a: CanonicalSet, lo: Optional[Fraction], hi: Optional[Fraction],
        exact: bool = True) -> CanonicalSet:
    """``a ∩ [lo, hi]`` where a bound of None is unbounded."""
    lo = None if lo is None else rat(lo)
    hi = None if hi is None else rat(hi)
    out: List[Atom] = []
    residual: List[CantorPiece] = []

    def inside(x):
        return (lo is None or x >= lo) and (hi is None or x <= hi)

    for atom in a.atoms:
        if isinstance(atom, FinitePoints):
            pts = [x for x in atom.points if inside(x)]
            if pts:
                out.append(FinitePoints(tuple(pts)))
        elif isinstance(atom, Interval):
            l = atom.lo if lo is None else max(lo, atom.lo)
            h = atom.hi if hi is None else min(hi, atom.hi)
            if l < h:
                out.append(Interval(l, h))
            elif l == h:
                out.append(FinitePoints((l,)))
        elif isinstance(atom, Seq):
            r = atom.index_range(lo, hi)
            if r is None:
                continue
            first, last = r
            if last is None:
                out.append(atom.with_start(first))
            else:
                if last - first + 1 > HEAD_LIMIT:
                    raise RepresentationLimit("cut would spell out too many sequence terms")
                out.append(FinitePoints(tuple(sorted(atom.term(n) for n in range(first, last + 1)))))
        else:
            pieces, points, res = _cut_piece(atom, lo, hi, exact)
            out.extend(pieces)
            if points:
                out.append(FinitePoints.of(*points))
            residual.extend(res)
    for r in a.residual:
        if (lo is None or r.hi >= lo) and (hi is None or r.lo <= hi):
            residual.append(r)
    return canonicalize(out, residual)


def intersect_interval(a: CanonicalSet, i, exact: bool = True) -> CanonicalSet:
    if isinstance(i, Interval):
        return cut(a, i.lo, i.hi, exact)
    lo, hi = i
    return cut(a, lo, hi, exact)


def slice_set(a: CanonicalSet, x, side: str, exact: bool = True) -> CanonicalSet:
    """``a ∩ (-inf, x]`` for side 'le', ``a ∩ [x, +inf)`` for side 'ge'."""
    if side == "le":
        return cut(a, None, x, exact)
    if side == "ge":
        return cut(a, x, None, exact)
    raise ValueError(f"side must be 'le' or 'ge', not {side!r}")


def subtract_ball(a: CanonicalSet, b: Ball, exact: bool = True) -> CanonicalSet:
    return union(slice_set(a, b.center - b.radius, "le", exact),
                 slice_set(a, b.center + b.radius, "ge", exact))


def _map_piece(p: CantorPiece, alpha: Fraction, beta: Fraction) -> CantorPiece:
    if alpha > 0:
        return CantorPiece(alpha * p.offset + beta, alpha * p.base_width, p.depth)
    return CantorPiece(alpha * p.hi + beta, -alpha * p.base_width, p.depth)


def affine_map(a: CanonicalSet, alpha, beta) -> CanonicalSet:
    """The image ``alpha * a + beta``."""
    alpha, beta = rat(alpha), rat(beta)
    if alpha == 0:
        warnings.warn("affine_map with alpha = 0 collapses the set to a point",
                      DegenerateMapWarning, stacklevel=2)
        return EMPTY if a.is_empty else CanonicalSet((FinitePoints((beta,)),))
    out: List[Atom] = []
    for atom in a.atoms:
        if isinstance(atom, FinitePoints):
            out.append(FinitePoints.of(*(alpha * x + beta for x in atom.points)))
        elif isinstance(atom, Interval):
            ends = sorted((alpha * atom.lo + beta, alpha * atom.hi + beta))
            out.append(Interval(*ends))
        elif isinstance(atom, Seq):
            out.append(replace(atom, limit=alpha * atom.limit + beta, c=alpha * atom.c,
                               c2=alpha * atom.c2))
        else:
            out.append(_map_piece(atom, alpha, beta))
    return canonicalize(out, [_map_piece(r, alpha, beta) for r in a.residual])


def reflect(a: CanonicalSet, s) -> CanonicalSet:
    """``T_s``: reflection through the point ``s``."""
    return affine_map(a, -1, 2 * rat(s))


def remove_points(a: CanonicalSet, pts: Sequence[Fraction]) -> CanonicalSet:
    """Drop finitely many points from the countable atoms.

    Interval and Cantor atoms keep their closed normal form; removing finitely
    many points from them changes neither measure nor accumulation points.
    """
    pts = [rat(x) for x in pts]
    out: List[Atom] = []
    for atom in a.atoms:
        if isinstance(atom, FinitePoints):
            keep = [x for x in atom.points if x not in pts]
            if keep:
                out.append(FinitePoints(tuple(keep)))
        elif isinstance(atom, Seq):
            ranges, _ = removed_ranges(atom, points=pts)
            head, tail = split_sequence(atom, ranges)
            if head:
                out.append(FinitePoints.of(*head))
            if tail is not None:
                out.append(tail)
        else:
            out.append(atom)
    return canonicalize(out, a.residual)
