"""Named fixture families: set chains, map sequences and counterexample sets."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple

from infmeans.setcore.atoms import HARMGEOM, HARMONIC, CantorPiece, FinitePoints, Interval, Seq
from infmeans.setcore.canonical import CanonicalSet, canonicalize, from_atoms
from infmeans.setcore.plfunc import PLFunc


def _ivs(*pairs) -> CanonicalSet:
    return canonicalize([Interval(Fraction(a), Fraction(b)) for a, b in pairs])


# --- two-cluster chains whose averages oscillate -----------------------------

def oscillating_chain(n_max: int) -> Tuple[List[CanonicalSet], CanonicalSet, int]:
    """``H_2n = [0,2/n] ∪ [1,1+1/n]`` and ``H_2n+1 = [0,1/n] ∪ [1,1+2/n]`` for ``n = 1..n_max``.

    Returns ``(members, intersection, first index)``.  Consecutive members are
    not nested (``H_3`` reaches further right than ``H_2``).
    """
    chain = []
    for n in range(1, n_max + 1):
        r = Fraction(1, n)
        chain.append(_ivs((0, 2 * r), (1, 1 + r)))
        chain.append(_ivs((0, r), (1, 1 + 2 * r)))
    return chain, from_atoms(FinitePoints.of(0, 1)), 2


def nested_oscillating_chain(n_max: int) -> Tuple[List[CanonicalSet], CanonicalSet, int]:
    """Nested variant: ``H_2n = [0,2t] ∪ [1,1+t]``, ``H_2n+1 = [0,t/2] ∪ [1,1+t]``, ``t = 4**-n``.

    Even averages tend to 1/3 and odd ones to 2/3 while the intersection is {0, 1}.
    """
    chain = []
    for n in range(1, n_max + 1):
        t = Fraction(1, 4 ** n)
        chain.append(_ivs((0, 2 * t), (1, 1 + t)))
        chain.append(_ivs((0, t / 2), (1, 1 + t)))
    return chain, from_atoms(FinitePoints.of(0, 1)), 2


def accumulation_chain(n_max: int) -> Tuple[List[CanonicalSet], CanonicalSet, int]:
    """``H_n = {1, 1-1/k, 4, 4+1/k : k >= n} ∪ {2, 2-1/k : k >= 1}``."""
    chain = []
    for n in range(1, n_max + 1):
        chain.append(canonicalize([
            FinitePoints.of(1, 2, 4),
            Seq(1, HARMONIC, -1, start=n),
            Seq(4, HARMONIC, 1, start=n),
            Seq(2, HARMONIC, -1),
        ]))
    tail = canonicalize([FinitePoints.of(1, 2, 4), Seq(2, HARMONIC, -1)])
    return chain, tail, 1


# --- map sequences -----------------------------------------------------------

def folding_maps(n_max: int) -> Tuple[List[PLFunc], PLFunc, int]:
    """Maps ``f_2n, f_2n+1`` squeezing ``[0,1] ∪ [2,3]`` onto two shrinking clusters.

    ``f_2n`` takes the values 0, 1/n, 1-1/(2n), 1 at 0, 1, 2, 3 and ``f_2n+1`` the
    values 0, 1/(2n), 1-1/n, 1.  Both tend uniformly to the map that is 0 left
    of 1, 1 right of 2 and linear in between.
    """
    maps = []
    for n in range(1, n_max + 1):
        r = Fraction(1, n)
        maps.append(PLFunc((0, 1, 2, 3), (0, r, 1 - r / 2, 1)))
        maps.append(PLFunc((0, 1, 2, 3), (0, r / 2, 1 - r, 1)))
    return maps, PLFunc((1, 2), (0, 1)), 2


def cantor_step_map(n: int) -> PLFunc:
    """Continuous map constant on each level-``n`` Cantor interval.

    On the interval where the Cantor function runs from ``k/2**n`` to
    ``(k+1)/2**n`` the map takes the middle value ``(2k+1)/2**(n+1)``, and it is
    linear across the removed gaps.  The Cantor set goes to ``2**n`` points, the
    map is within ``2**-(n+1)`` of the Cantor function, and ``[0, 1/3]`` goes onto
    an interval centred at 1/4.
    """
    cells = [(Fraction(0), Fraction(0))]  # (left end, lowest Cantor-function value)
    width = Fraction(1)
    for level in range(n):
        width /= 3
        step = Fraction(1, 2 ** (level + 1))
        cells = [c for a, v in cells for c in ((a, v), (a + 2 * width, v + step))]
    half = Fraction(1, 2 ** (n + 1))
    xs, ys = [], []
    for a, v in cells:
        xs += [a, a + width]
        ys += [v + half, v + half]
    return PLFunc(tuple(xs), tuple(ys))


def cantor_step_maps(n_max: int) -> List[PLFunc]:
    """``f_n = cantor_step_map(n + 1)`` for ``n = 1..n_max``.

    Level ``n + 1`` keeps at least two cells inside ``[0, 1/3]``, so its image
    has positive length for every ``n``.
    """
    return [cantor_step_map(n + 1) for n in range(1, n_max + 1)]


def cantor_with_interval() -> CanonicalSet:
    """``[0, 1/3] ∪ C``."""
    return canonicalize([Interval(0, Fraction(1, 3)), CantorPiece(0, 1)])


# --- isolated counterexample sets --------------------------------------------

def three_clusters() -> CanonicalSet:
    """``{1/n, 1+1/n, 2+1/n : n >= 1}``."""
    return canonicalize([Seq(0, HARMONIC, 1), Seq(1, HARMONIC, 1), Seq(2, HARMONIC, 1)])


def base_counterexample_pair() -> Tuple[CanonicalSet, CanonicalSet]:
    """``{1/n, 5+1/n}`` and ``{1+1/n, 5+1/n+2**-n}``: disjoint countable sets."""
    h1 = canonicalize([Seq(0, HARMONIC, 1), Seq(5, HARMONIC, 1)])
    h2 = canonicalize([Seq(1, HARMONIC, 1), Seq(5, HARMGEOM, 1, 1, Fraction(1, 2))])
    return h1, h2


def midrange_witness() -> CanonicalSet:
    """``{0} ∪ {1 - 1/n : n >= 2}``: one accumulation point, far from the midrange."""
    return canonicalize([FinitePoints.of(0), Seq(1, HARMONIC, -1, start=2)])
