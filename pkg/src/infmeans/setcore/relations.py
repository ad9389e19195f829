"""Exact set relations between canonical sets: disjointness, inclusion, intersection.

Relations return ``None`` when the representation cannot decide them (two
sequences sharing a limit in an unrecognized pattern, or off-lattice Cantor
pieces).  Callers treat ``None`` as "hypothesis not verified".
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Tuple

from infmeans.errors import ApproximationDepthExceeded, CantorOverlapError, RepresentationLimit
from infmeans.setcore.atoms import HARMGEOM, HARMONIC, CantorPiece, FinitePoints, Interval, Seq
from infmeans.setcore.canonical import (
    HEAD_LIMIT,
    CanonicalSet,
    _shared_tail,
    canonicalize,
    cut,
    member,
    removed_ranges,
    split_sequence,
)
from infmeans.setcore.cantor import cantor_cut, cantor_member, is_subpiece

_DECIDE_DEPTH = 10 ** 5


def piece_meet(p: CantorPiece, q: CantorPiece, depth: int = 0
               ) -> Tuple[List[CantorPiece], List[Fraction]]:
    """Exact ``p ∩ q`` as (pieces, points) for lattice-compatible pieces."""
    if p.width < q.width:
        p, q = q, p
    if q.hi < p.lo or q.lo > p.hi:
        return [], []
    if q.hi == p.lo:
        return [], [p.lo]
    if q.lo == p.hi:
        return [], [p.hi]
    if q == p or is_subpiece(q, p):
        return [q], []
    if depth > 40:
        raise CantorOverlapError(f"cannot intersect {p!r} and {q!r} exactly")
    pieces: List[CantorPiece] = []
    points: List[Fraction] = []
    split = q.children() if q.width == p.width else p.children()
    other = p if q.width == p.width else q
    for child in split:
        pc, pt = piece_meet(child, other, depth + 1)
        pieces += pc
        points += pt
    return pieces, points


def _interval_meets_piece(iv: Interval, p: CantorPiece) -> bool:
    if iv.hi < p.lo or iv.lo > p.hi:
        return False
    if iv.lo <= p.lo <= iv.hi or iv.lo <= p.hi <= iv.hi:
        return True
    if cantor_member(p, iv.lo) or cantor_member(p, iv.hi):
        return True
    # both ends sit in gaps, so the descent terminates
    r = cantor_cut(p, iv.lo, "ge", depth_limit=_DECIDE_DEPTH)
    return any(x.lo <= iv.hi for x in r.pieces) or any(x <= iv.hi for x in r.points)


def _harmonic_vs_perturbed(s: Seq, o: Seq) -> Optional[bool]:
    """Disjointness of ``l + c/n`` and ``l + c/m + c2*q**m`` (same ``c``).

    Once ``|c2| q**m m (m-1) < |c|`` the perturbed term sits strictly between two
    consecutive harmonic terms, so only the terms before that index can collide.
    """
    if o.c != s.c:
        return None
    c, c2, q = abs(s.c), abs(o.c2), o.q
    m = max(o.start, 2)
    # m (m-1) q**m is falling once (m+1) q < m-1
    while not (c2 * q ** m * m * (m - 1) < c and (m + 1) * q < m - 1):
        m += 1
        if m - o.start > HEAD_LIMIT:
            return None
    return not any(s.contains(o.term(k)) for k in range(o.start, m))


def _seq_seq_disjoint(s: Seq, o: Seq) -> Optional[bool]:
    if s.limit == o.limit:
        if s.side != o.side:
            return True
        k = _shared_tail(o, s)
        if k is None:
            if s.kind == HARMONIC and o.kind == HARMONIC:
                return False  # c1/n == c2/m has infinitely many solutions
            if {s.kind, o.kind} == {HARMONIC, HARMGEOM}:
                return _harmonic_vs_perturbed(*((s, o) if s.kind == HARMONIC else (o, s)))
            return None
        return k == 0
    ranges, _ = removed_ranges(s, seqs=[o])
    return not ranges


def _atoms_disjoint(x, y) -> Optional[bool]:
    if isinstance(y, FinitePoints):
        x, y = y, x
    if isinstance(x, FinitePoints):
        return not any(y.contains(p) for p in x.points)
    if isinstance(y, Interval):
        x, y = y, x
    if isinstance(x, Interval):
        if isinstance(y, Interval):
            return x.hi < y.lo or y.hi < x.lo
        if isinstance(y, Seq):
            return y.index_range(x.lo, x.hi) is None
        return not _interval_meets_piece(x, y)
    if isinstance(x, Seq) and isinstance(y, Seq):
        return _seq_seq_disjoint(x, y)
    if isinstance(y, Seq):
        x, y = y, x
    if isinstance(x, Seq):
        ranges, entangled = removed_ranges(x, pieces=[y])
        if ranges:
            return False
        return None if entangled else True
    try:
        pieces, points = piece_meet(x, y)
    except CantorOverlapError:
        return None
    return not pieces and not points


def are_disjoint(a: CanonicalSet, b: CanonicalSet) -> Optional[bool]:
    if a.residual or b.residual:
        return None
    unknown = False
    for x in a.atoms:
        for y in b.atoms:
            r = _atoms_disjoint(x, y)
            if r is False:
                return False
            if r is None:
                unknown = True
    return None if unknown else True


def _piece_subset(p: CantorPiece, b: CanonicalSet, depth: int = 0) -> Optional[bool]:
    if any(iv.lo <= p.lo and p.hi <= iv.hi for iv in b.intervals):
        return True
    if any(q == p or is_subpiece(p, q) for q in b.pieces):
        return True
    touches = any(_interval_meets_piece(iv, p) for iv in b.intervals)
    for q in b.pieces:
        try:
            pc, _ = piece_meet(p, q)
        except CantorOverlapError:
            return None
        touches = touches or bool(pc)
    if not touches:
        return False
    if depth >= 12:
        return None
    results = [_piece_subset(c, b, depth + 1) for c in p.children()]
    if all(r is True for r in results):
        return True
    if any(r is False for r in results):
        return False
    return None


def is_subset(a: CanonicalSet, b: CanonicalSet) -> Optional[bool]:
    if a.residual or b.residual:
        return None
    unknown = False
    for x in a.atoms:
        if isinstance(x, FinitePoints):
            ok: Optional[bool] = all(member(b, p) for p in x.points)
        elif isinstance(x, Interval):
            ok = any(iv.lo <= x.lo and x.hi <= iv.hi for iv in b.intervals)
        elif isinstance(x, CantorPiece):
            ok = _piece_subset(x, b)
        else:
            ranges, entangled = removed_ranges(x, b.intervals, b.pieces, b.seqs, b.points)
            covered = bool(ranges) and ranges[0][0] <= x.start and ranges[0][1] is None
            ok = True if covered else (None if entangled else False)
        if ok is False:
            return False
        if ok is None:
            unknown = True
    return None if unknown else True


def _terms_in(s: Seq, ranges) -> list:
    out = []
    for lo, hi in ranges:
        lo = max(lo, s.start)
        if hi is None:
            out.append(s.with_start(lo))
            continue
        if hi < lo:
            continue
        if hi - lo + 1 > HEAD_LIMIT:
            raise RepresentationLimit("intersection would spell out too many terms")
        out.append(FinitePoints.of(*(s.term(n) for n in range(lo, hi + 1))))
    return out


def intersect(a: CanonicalSet, b: CanonicalSet) -> CanonicalSet:
    """Exact ``a ∩ b``; raises when a sequence or Cantor overlap is undecidable here."""
    if a.residual or b.residual:
        raise ApproximationDepthExceeded("intersection of approximate sets")
    out: list = []
    for beta in b.atoms:
        if isinstance(beta, Interval):
            out.extend(cut(a, beta.lo, beta.hi).atoms)
        elif isinstance(beta, FinitePoints):
            pts = [x for x in beta.points if member(a, x)]
            if pts:
                out.append(FinitePoints(tuple(pts)))
        elif isinstance(beta, Seq):
            ranges, entangled = removed_ranges(beta, a.intervals, a.pieces, a.seqs, a.points)
            if entangled:
                raise RepresentationLimit(f"cannot intersect {beta!r} exactly")
            out.extend(_terms_in(beta, ranges))
        else:
            piece_set = CanonicalSet((beta,))
            for iv in a.intervals:
                out.extend(cut(piece_set, iv.lo, iv.hi).atoms)
            pts = [x for x in a.points if cantor_member(beta, x)]
            if pts:
                out.append(FinitePoints(tuple(pts)))
            for s in a.seqs:
                ranges, entangled = removed_ranges(s, pieces=[beta])
                if entangled:
                    raise RepresentationLimit(f"cannot intersect {s!r} with {beta!r}")
                out.extend(_terms_in(s, ranges))
            for q in a.pieces:
                pc, pt = piece_meet(beta, q)
                out.extend(pc)
                if pt:
                    out.append(FinitePoints.of(*pt))
    return canonicalize(out)


def remove_countable(a: CanonicalSet, v: CanonicalSet) -> CanonicalSet:
    """``a - v`` for a countable ``v``, in closed normal form.

    Interval and Cantor atoms are kept whole: taking countably many points out of
    them changes neither their measure nor their accumulation points.
    """
    if not v.is_countable:
        raise ValueError("remove_countable needs a countable set to remove")
    out: list = []
    for atom in a.atoms:
        if isinstance(atom, FinitePoints):
            keep = [x for x in atom.points if not member(v, x)]
            if keep:
                out.append(FinitePoints(tuple(keep)))
        elif isinstance(atom, Seq):
            ranges, entangled = removed_ranges(atom, (), (), v.seqs, v.points)
            if entangled:
                raise RepresentationLimit(f"cannot remove {v} from {atom!r} exactly")
            head, tail = split_sequence(atom, ranges)
            if head:
                out.append(FinitePoints.of(*head))
            if tail is not None:
                out.append(tail)
        else:
            out.append(atom)
    return canonicalize(out, a.residual)
