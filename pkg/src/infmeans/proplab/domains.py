"""Closure of a mean's domain under set operations, checked on seeded instances."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from infmeans.errors import InfMeansError
from infmeans.means import get_mean
from infmeans.proplab.generators import Profile, gen_random_set, random_rational
from infmeans.setcore.atoms import HARMONIC, Interval, Seq
from infmeans.setcore.canonical import (
    CanonicalSet,
    affine_map,
    canonicalize,
    intersect_interval,
    reflect,
    slice_set,
    union,
)
from infmeans.setcore.relations import intersect
from infmeans.setcore.topology import closure, derived, extent

CLOSED = "closed-on-instances"
NOT_CLOSED = "not-closed"
UNSUPPORTED = "unsupported-by-class"


@dataclass
class ClosureItem:
    item: int
    label: str
    status: str
    checked: int = 0
    witness: List[str] = field(default_factory=list)
    note: str = ""

    def to_dict(self) -> dict:
        return {"item": self.item, "label": self.label, "status": self.status,
                "checked": self.checked, "witness": self.witness, "note": self.note}


@dataclass
class ClosureReport:
    mean: str
    seed: int
    items: List[ClosureItem]

    def status(self, item: int) -> str:
        return next(i.status for i in self.items if i.item == item)

    def to_dict(self) -> dict:
        return {"mean": self.mean, "seed": self.seed, "items": [i.to_dict() for i in self.items]}


_PROFILES = (
    Profile(intervals=2),
    Profile(intervals=1, points=2, seqs=1),
    Profile(intervals=0, cantor=2, points=1),
    Profile(intervals=0, seqs=2, points=1),
    Profile(intervals=0, points=3),
    Profile(intervals=1, cantor=1, seqs=1),
)


def _draw(rng: random.Random) -> CanonicalSet:
    return gen_random_set(rng.randrange(2 ** 32), rng.choice(_PROFILES))


def _interval_near(rng: random.Random, h: CanonicalSet) -> Interval:
    lo, hi = extent(h)
    a = random_rational(rng, lo - 1, hi, den=6)
    b = random_rational(rng, a + Fraction(1, 6), hi + 1, den=6)
    return Interval(a, b)


def _complement_closure(i: Interval, h: CanonicalSet) -> Optional[CanonicalSet]:
    """``cl(I - H)``; only the interval atoms of ``H`` matter, Cantor atoms are out of reach."""
    if h.pieces or h.residual:
        return None
    pieces, cur = [], i.lo
    for iv in sorted(h.intervals, key=lambda v: v.lo):
        if iv.hi < cur or iv.lo > i.hi:
            continue
        if iv.lo > cur:
            pieces.append(Interval(cur, iv.lo))
        cur = max(cur, iv.hi)
    if cur < i.hi:
        pieces.append(Interval(cur, i.hi))
    if not pieces and h.is_countable:
        pieces.append(i)
    return canonicalize(pieces)


# each test takes (rng, in_domain, h) and returns (premise met, conclusion holds, witness sets)
Test = Callable[[random.Random, Callable, CanonicalSet], Tuple[bool, bool, list]]


def _t_union_intersection(rng, dom, h):
    g = _draw(rng)
    if not dom(g):
        return False, True, []
    u = union(h, g)
    if not dom(u):
        return True, False, [h, g, u]
    m = intersect(h, g)
    if m.is_empty or dom(m):
        return True, True, []
    return True, False, [h, g, m]


def _t_interval_slice(rng, dom, h):
    i = _interval_near(rng, h)
    part = intersect_interval(h, i, exact=True)
    if part.is_empty:
        return False, True, []
    return True, dom(part), [h, canonicalize([i]), part]


def _t_halves(rng, dom, h):
    lo, hi = extent(h)
    x = random_rational(rng, lo, hi, den=6)
    left, right = slice_set(h, x, "le"), slice_set(h, x, "ge")
    if not (dom(left) and dom(right)):
        return False, True, []
    return True, dom(h), [h, left, right]


def _t_affine(rng, dom, h):
    s = random_rational(rng, -4, 4, den=3)
    a = random_rational(rng, -3, 3, den=4, nonzero=True)
    images = [affine_map(h, 1, s), reflect(h, s), affine_map(h, a, 0)]
    bad = [g for g in images if not dom(g)]
    return True, not bad, [h] + bad[:1]


def _t_closure(rng, dom, h):
    c = closure(h)
    return True, dom(c), [h, c]


def _t_complement(rng, dom, h):
    i = _interval_near(rng, h)
    rest = _complement_closure(i, h)
    if rest is None or rest.is_empty:
        return False, True, []
    return True, dom(rest), [h, canonicalize([i]), rest]


def _t_derived(rng, dom, h):
    # like item 2, only a nonempty result is asked to lie in the domain
    d = derived(h).set
    return not d.is_empty, dom(d), [h, d]


_ITEMS: List[Tuple[int, str, Optional[Test]]] = [
    (1, "finite union and intersection", _t_union_intersection),
    (2, "intersection with an interval (nonempty)", _t_interval_slice),
    (3, "both half-line slices in the domain imply the set is", _t_halves),
    (4, "translation, reflection, contraction and dilation", _t_affine),
    (5, "closure", _t_closure),
    (6, "interval minus the set (closed hull)", _t_complement),
    (7, "derived set", _t_derived),
    (8, "countable union and intersection", None),
    (9, "images under continuous maps", None),
]

# a fixed probe per item, tried before the random instances
_AVG_INTERSECTION = (
    canonicalize([Interval(0, 1), Seq(5, HARMONIC, 1)]),
    canonicalize([Interval(2, 3), Seq(5, HARMONIC, 1)]),
)


def dom_closure_report(mean: str, seed: int = 0, trials: int = 60) -> ClosureReport:
    """Items 1 to 7 on seeded in-domain sets; items 8 and 9 lie outside the class."""
    spec = get_mean(mean)

    def dom(g: CanonicalSet) -> bool:
        return not g.is_empty and bool(spec.dom(g))

    items = []
    for number, label, test in _ITEMS:
        if test is None:
            items.append(ClosureItem(number, label, UNSUPPORTED,
                                     note="countable families and non-piecewise-linear images "
                                          "leave the representable sets"))
            continue
        rng = random.Random(f"{mean}/{number}/{seed}")
        checked, witness, note = 0, [], ""
        if number == 1:
            a, b = _AVG_INTERSECTION
            if dom(a) and dom(b):
                m = intersect(a, b)
                checked += 1
                if not m.is_empty and not dom(m):
                    witness = [str(a), str(b), str(m)]
                    note = spec.dom(m).reason
        draws = 0
        while not witness and checked < trials and draws < 20 * trials:
            draws += 1
            h = _draw(rng)
            if not dom(h):
                continue
            try:
                met, ok, sets = test(rng, dom, h)
            except InfMeansError:
                continue  # e.g. Cantor pieces on unrelated lattices
            if not met:
                continue
            checked += 1
            if not ok:
                witness = [str(s) for s in sets]
                note = spec.dom(sets[-1]).reason
        status = NOT_CLOSED if witness else CLOSED
        items.append(ClosureItem(number, label, status, checked, witness, note))
    return ClosureReport(mean, seed, items)
