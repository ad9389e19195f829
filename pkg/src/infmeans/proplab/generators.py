"""Seeded random instances.

Atoms are placed in disjoint slots of the coordinate range, so a generated set
is canonical without overlap resolution, and the atoms can be dealt out into
pairwise disjoint parts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from infmeans.setcore.atoms import (
    GEOMETRIC,
    HARMONIC,
    CantorPiece,
    FinitePoints,
    Interval,
    Seq,
)
from infmeans.setcore.canonical import CanonicalSet, canonicalize


@dataclass(frozen=True)
class Profile:
    intervals: int = 2
    points: int = 0
    seqs: int = 0
    cantor: int = 0
    lo: Fraction = Fraction(-12)
    hi: Fraction = Fraction(12)
    denominator: int = 6
    cantor_base: Fraction = Fraction(1)

    @property
    def atom_count(self) -> int:
        return self.intervals + self.points + self.seqs + self.cantor


def _rat_in(rng: random.Random, lo: Fraction, hi: Fraction, den: int) -> Fraction:
    """Random multiple of ``1/den`` in the closed range (falls back to the midpoint)."""
    a = -((-lo * den) // 1)
    b = (hi * den) // 1
    if a > b:
        return (lo + hi) / 2
    return Fraction(rng.randint(int(a), int(b)), den)


def _atom_in_slot(rng: random.Random, kind: str, lo: Fraction, hi: Fraction, p: Profile):
    width = hi - lo
    den = p.denominator
    if kind == "interval":
        a = _rat_in(rng, lo, lo + width / 3, den)
        b = _rat_in(rng, hi - width / 3, hi, den)
        return Interval(a, b)
    if kind == "point":
        return FinitePoints.of(_rat_in(rng, lo, hi, den))
    if kind == "cantor":
        depth = 0
        w = p.cantor_base
        while w > width:
            w /= 3
            depth += 1
        depth += rng.randint(0, 2)
        w = p.cantor_base / 3 ** depth
        off = _rat_in(rng, lo, hi - w, den * 3 ** depth)
        return CantorPiece(off, p.cantor_base, depth)
    # a sequence converging to an interior point of the slot
    limit = _rat_in(rng, lo + width / 3, hi - width / 3, den)
    room = min(limit - lo, hi - limit)
    side = rng.choice((-1, 1))
    if rng.random() < 0.5:
        c = side * room * Fraction(rng.randint(1, 4), 4)
        return Seq(limit, HARMONIC, c)
    q = Fraction(1, rng.randint(2, 4))
    c = side * room * Fraction(rng.randint(1, 4), 4)
    return Seq(limit, GEOMETRIC, c / q, q=q)


def random_atoms(seed: int, profile: Profile) -> List:
    """Atoms of a random set, in slot order."""
    rng = random.Random(seed)
    kinds = (["interval"] * profile.intervals + ["point"] * profile.points
             + ["seq"] * profile.seqs + ["cantor"] * profile.cantor)
    if not kinds:
        raise ValueError("profile must ask for at least one atom")
    rng.shuffle(kinds)
    n = len(kinds)
    slot = (profile.hi - profile.lo) / n
    out = []
    for i, kind in enumerate(kinds):
        lo = profile.lo + i * slot
        # keep a gap between neighbouring slots so atoms never touch
        out.append(_atom_in_slot(rng, kind, lo + slot / 8, lo + slot - slot / 8, profile))
    return out


def gen_random_set(seed: int, profile: Optional[Profile] = None) -> CanonicalSet:
    """Deterministic random bounded set for a fixed ``(seed, profile)``."""
    return canonicalize(random_atoms(seed, profile or Profile()))


def gen_partition(seed: int, profile: Profile, parts: int = 2,
                  rng_seed: Optional[int] = None) -> List[CanonicalSet]:
    """Pairwise disjoint nonempty sets dealt from one random layout."""
    atoms = random_atoms(seed, profile)
    if len(atoms) < parts:
        raise ValueError("profile has fewer atoms than requested parts")
    rng = random.Random(seed if rng_seed is None else rng_seed)
    order = list(range(len(atoms)))
    rng.shuffle(order)
    buckets: List[list] = [[] for _ in range(parts)]
    for k, i in enumerate(order):
        target = k if k < parts else rng.randrange(parts)
        buckets[target].append(atoms[i])
    return [canonicalize(b) for b in buckets]


def random_rational(rng: random.Random, lo, hi, den: int = 4, nonzero: bool = False) -> Fraction:
    while True:
        x = _rat_in(rng, Fraction(lo), Fraction(hi), den)
        if not nonzero or x != 0:
            return x
