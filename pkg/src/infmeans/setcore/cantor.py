"""Ternary descent on Cantor pieces: membership, cuts, gap radii, piece relations.

All routines work on the normalized position ``t = (x - offset) / width`` and use
``C = (1/3)C  U  ((1/3)C + 2/3)``.  A rational ``t`` has an eventually periodic
ternary expansion, so descents that never hit a gap revisit a position; that
cycle is how membership terminates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from infmeans.errors import ApproximationDepthExceeded, CantorOverlapError
from infmeans.setcore.atoms import ONE_THIRD, TWO_THIRDS, CantorPiece

DEFAULT_DEPTH = 64


def cantor_member(piece: CantorPiece, x: Fraction) -> bool:
    if x < piece.lo or x > piece.hi:
        return False
    t = (x - piece.offset) / piece.width
    seen = set()
    while t not in seen:
        seen.add(t)
        if ONE_THIRD < t < TWO_THIRDS:
            return False
        t = 3 * t if t <= ONE_THIRD else 3 * t - 2
    return True


@dataclass
class CutResult:
    pieces: List[CantorPiece] = field(default_factory=list)
    points: List[Fraction] = field(default_factory=list)
    residual: List[CantorPiece] = field(default_factory=list)


def cantor_cut(piece: CantorPiece, y: Fraction, keep: str, exact: bool = True,
               depth_limit: int = DEFAULT_DEPTH) -> CutResult:
    """``piece ∩ (-inf, y]`` (keep='le') or ``piece ∩ [y, +inf)`` (keep='ge')."""
    out = CutResult()
    cur = piece
    seen = set()
    for _ in range(depth_limit + 1):
        t = (y - cur.offset) / cur.width
        if keep == "le":
            if t < 0:
                return out
            if t == 0:
                out.points.append(cur.offset)
                return out
            if t >= 1:
                out.pieces.append(cur)
                return out
        else:
            if t > 1:
                return out
            if t == 1:
                out.points.append(cur.hi)
                return out
            if t <= 0:
                out.pieces.append(cur)
                return out
        if t in seen:
            break  # y is an interior Cantor point: no finite descent decides it
        seen.add(t)
        left, right = cur.children()
        if keep == "le":
            if t < ONE_THIRD:
                cur = left
                continue
            out.pieces.append(left)
            if t < TWO_THIRDS:
                return out
            cur = right
        else:
            if t > TWO_THIRDS:
                cur = right
                continue
            out.pieces.append(right)
            if t > ONE_THIRD:
                return out
            cur = left
    if exact:
        raise ApproximationDepthExceeded(
            f"cut point {y} does not meet a gap of {piece!r} within depth {depth_limit}")
    # undecided remainder; descend to the depth limit so its weight is tiny
    while cur.depth - piece.depth < depth_limit:
        left, right = cur.children()
        t = (y - cur.offset) / cur.width
        if keep == "le":
            if t < ONE_THIRD:
                cur = left
            else:
                out.pieces.append(left)
                cur = right
        else:
            if t > TWO_THIRDS:
                cur = right
            else:
                out.pieces.append(right)
                cur = left
    out.residual.append(cur)
    return out


def clear_radius(piece: CantorPiece, x: Fraction, side: int) -> Optional[Fraction]:
    """Largest known ``r`` with ``(x, x + side*r)`` free of the piece.

    Returns None when the piece has no points at all on that side of ``x`` and 0
    when points of the piece accumulate at ``x`` from that side.
    """
    if side > 0:
        if x >= piece.hi:
            return None
        if x < piece.lo:
            return piece.lo - x
    else:
        if x <= piece.lo:
            return None
        if x > piece.hi:
            return x - piece.hi
    cur = piece
    seen = set()
    while True:
        w = cur.width
        t = (x - cur.offset) / w
        if t in seen:
            return Fraction(0)
        seen.add(t)
        if ONE_THIRD < t < TWO_THIRDS:
            return (cur.offset + 2 * w / 3 - x) if side > 0 else (x - cur.offset - w / 3)
        if side > 0 and t == ONE_THIRD:
            return w / 3
        if side < 0 and t == TWO_THIRDS:
            return w / 3
        if side > 0 and t == 1 or side < 0 and t == 0:
            # only reachable at the top level, handled above
            return None
        left, right = cur.children()
        cur = left if t < ONE_THIRD or (t == ONE_THIRD) else right


def is_subpiece(small: CantorPiece, big: CantorPiece) -> bool:
    """True when ``small`` is one of the self-similar pieces of ``big``."""
    if small.width > big.width:
        return False
    ratio = big.width / small.width
    k = 0
    while ratio > 1:
        if ratio.denominator != 1 or ratio.numerator % 3:
            return False
        ratio /= 3
        k += 1
    if ratio != 1:
        return False
    pos = (small.offset - big.offset) / small.width
    if pos.denominator != 1 or pos < 0:
        return False
    m = pos.numerator
    for _ in range(k):
        if m % 3 == 1:
            return False
        m //= 3
    return m == 0


def piece_relation(p: CantorPiece, q: CantorPiece, strict: bool = False,
                   depth_limit: int = DEFAULT_DEPTH) -> str:
    """One of 'disjoint', 'equal', 'p_in_q', 'q_in_p', 'overlap'.

    With ``strict=False`` pieces sharing only boundary points count as disjoint
    (measure-level); with ``strict=True`` any shared point is an overlap.
    'overlap' means the descent could not separate them at the current level;
    callers split the narrower piece and retry.
    """
    if p == q:
        return "equal"
    swapped = p.width < q.width
    if swapped:
        p, q = q, p
    cur = p
    for _ in range(depth_limit):
        if strict:
            apart = q.hi < cur.lo or q.lo > cur.hi
        else:
            apart = q.hi <= cur.lo or q.lo >= cur.hi
        if apart:
            return "disjoint"
        if q == cur or is_subpiece(q, cur):
            return "p_in_q" if swapped else "q_in_p"
        if q.width >= cur.width:
            return "overlap"
        left, right = cur.children()
        if strict:
            in_gap = q.lo > left.hi and q.hi < right.lo
        else:
            in_gap = q.lo >= left.hi and q.hi <= right.lo
        if in_gap:
            return "disjoint"
        if q.hi <= left.hi:
            cur = left
        elif q.lo >= right.lo:
            cur = right
        else:
            return "overlap"
    return "overlap"


def resolve_pieces(pieces, max_split: int = 40) -> List[CantorPiece]:
    """Drop nested pieces and split partial overlaps until the list is disjoint."""
    work = [(p, 0) for p in sorted(set(pieces), key=lambda p: (-p.width, p.offset))]
    accepted: List[CantorPiece] = []
    while work:
        q, level = work.pop(0)
        keep = True
        swallowed = []
        for p in accepted:
            rel = piece_relation(p, q)
            if rel in ("equal", "q_in_p"):
                keep = False
                break
            if rel == "p_in_q":
                swallowed.append(p)
                continue
            if rel == "overlap":
                if level >= max_split:
                    raise CantorOverlapError(f"cannot separate {p!r} and {q!r}")
                work[:0] = [(child, level + 1) for child in q.children()]
                keep = False
                break
        if keep:
            accepted = [p for p in accepted if p not in swallowed]
            accepted.append(q)
    return merge_siblings(accepted)


def merge_siblings(pieces) -> List[CantorPiece]:
    pieces = set(pieces)
    changed = True
    while changed:
        changed = False
        for p in sorted(pieces, key=lambda p: (p.offset, p.width)):
            partner = CantorPiece(p.offset + 2 * p.width, p.width)
            if partner in pieces:
                pieces.discard(p)
                pieces.discard(partner)
                pieces.add(CantorPiece(p.offset, p.base_width, p.depth - 1)
                           if p.depth > 0 else CantorPiece(p.offset, 3 * p.width))
                changed = True
                break
    return sorted(pieces, key=lambda p: (p.offset, p.width))
