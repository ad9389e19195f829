"""Seeded law suites and the implication meta-suite.

A suite draws instances from a seed until it has the requested number of
admissible instances (those whose hypotheses hold).  Instances whose
hypotheses fail are drawn again, never counted as passes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from infmeans.errors import InfMeansError
from infmeans.means import mean_eval
from infmeans.proplab.generators import Profile, gen_partition, gen_random_set, random_rational
from infmeans.proplab.laws import (
    STRICT_STRONG,
    STRONG,
    condensed_check,
    convexity_check,
    internality_check,
    invariance_check,
    monotonicity_check,
    point_symmetry_check,
    shift_invariance_check,
)
from infmeans.proplab.report import HOLDS, INAPPLICABLE, VIOLATED, PropertyReport
from infmeans.setcore.atoms import GEOMETRIC, HARMONIC, FinitePoints, Interval, Seq
from infmeans.setcore.canonical import CanonicalSet, affine_map, canonicalize, reflect, union
from infmeans.setcore.relations import are_disjoint, remove_countable
from infmeans.setcore.topology import derived, extent


@dataclass
class SuiteResult:
    property: str
    mean: str
    verdict: str
    trials: int
    applicable: int
    seed: int
    failures: List[PropertyReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.verdict != VIOLATED

    def as_report(self) -> PropertyReport:
        w = self.failures[0] if self.failures else None
        return PropertyReport(self.property, self.mean, self.verdict,
                              w.witness_sets if w else [], w.witness_values if w else {},
                              trials=self.trials, seed=self.seed, applicable=self.applicable)


# ---------------------------------------------------------------------------
# instance profiles
# ---------------------------------------------------------------------------

def _profile(rng: random.Random, mean: str, parts: int = 1) -> Profile:
    """A random atom mix suited to ``mean``'s domain."""
    if mean == "avg":
        kind = rng.choice(("intervals", "cantor", "mixed"))
        if kind == "intervals":
            return Profile(intervals=rng.randint(parts, parts + 2), points=rng.randint(0, 2),
                           seqs=rng.randint(0, 1))
        if kind == "cantor":
            return Profile(cantor=rng.randint(parts, parts + 2), points=rng.randint(0, 1),
                           seqs=rng.randint(0, 1))
        return Profile(intervals=rng.randint(0, 2), cantor=rng.randint(1, 2),
                       points=rng.randint(0, 2), seqs=rng.randint(0, 2))
    if mean == "mlis":
        return Profile(intervals=rng.randint(0, 2), seqs=rng.randint(parts, parts + 2),
                       points=rng.randint(0, 2), cantor=rng.randint(0, 1))
    if mean == "macc_fds":
        return Profile(intervals=0, seqs=rng.randint(parts, parts + 2), points=rng.randint(0, 3))
    return Profile(intervals=rng.randint(0, 2), seqs=rng.randint(0, 2),
                   points=rng.randint(1, 3))


def _parts(rng: random.Random, mean: str, parts: int, seed: int) -> List[CanonicalSet]:
    prof = _profile(rng, mean, parts)
    while prof.atom_count < parts:
        prof = _profile(rng, mean, parts)
    return gen_partition(seed, prof, parts)


def _one(rng: random.Random, mean: str, seed: int) -> CanonicalSet:
    return gen_random_set(seed, _profile(rng, mean))


def _alpha(rng: random.Random) -> Fraction:
    return random_rational(rng, -3, 3, den=rng.choice((1, 2, 3, 4)), nonzero=True)


# ---------------------------------------------------------------------------
# one instance per call: (rng, mean, seed) -> PropertyReport
# ---------------------------------------------------------------------------

def _law_strict_internal(rng, mean, seed):
    return internality_check(mean, _one(rng, mean, seed), STRICT_STRONG)


def _law_disjoint(rng, mean, seed):
    h1, h2 = _parts(rng, mean, 2, seed)
    return monotonicity_check("disjoint", mean, {"H1": h1, "H2": h2})


def _law_base(rng, mean, seed):
    h1, h2 = _parts(rng, mean, 2, seed)
    return monotonicity_check("base", mean, {"H1": h1, "H2": h2})


def _law_countable_base(rng, mean, seed):
    k = rng.randint(2, 8)
    prof = Profile(intervals=rng.randint(1, 3), cantor=rng.randint(0, 2),
                   points=rng.randint(0, 2), seqs=rng.randint(0, 1))
    while prof.atom_count < k:
        prof = Profile(intervals=prof.intervals + 1, cantor=prof.cantor,
                       points=prof.points, seqs=prof.seqs)
    return monotonicity_check("countable-base", mean, {"sets": gen_partition(seed, prof, k)})


def _law_part_shift(rng, mean, seed):
    h1, h2 = _parts(rng, mean, 2, seed)
    x = random_rational(rng, 0, 6, den=rng.choice((1, 2, 3, 6)), nonzero=True)
    return monotonicity_check("part-shift", mean, {"H1": h1, "H2": h2, "x": x})


def _law_union(rng, mean, seed):
    a, b, c = _parts(rng, mean, 3, seed)
    if rng.random() < 0.3:
        a = union(a, b)  # A may overlap B and C; only B ∩ C = ∅ is required
    return monotonicity_check("union", mean, {"A": a, "B": b, "C": c})


def _law_d_monotone(rng, mean, seed):
    low, blk = _parts(rng, mean, 2, seed)
    try:
        kl = mean_eval(mean, low).value
        klb = mean_eval(mean, union(low, blk)).value
    except InfMeansError:
        kl = klb = None
    direction = 1 if (kl is None or klb is None or kl <= klb) else -1
    lo, hi = extent(union(low, blk))
    x = direction * (hi - lo + random_rational(rng, 0, 3, den=4, nonzero=True))
    return monotonicity_check("d-monotone", mean, {"L": low, "B": blk, "x": x})


def _law_part_shift_invariant(rng, mean, seed):
    # both parts in the top dimension: intervals only, or Cantor pieces only
    n = rng.randint(2, 5)
    prof = Profile(intervals=n) if rng.random() < 0.5 else Profile(intervals=0, cantor=n)
    h1, h2 = gen_partition(seed, prof, 2)
    x = random_rational(rng, -3, 3, den=rng.choice((1, 2, 3)), nonzero=True)
    return shift_invariance_check("part", mean, {"H1": h1, "H2": h2, "x": x})


def _law_condensed(rng, mean, seed):
    prof = Profile(intervals=rng.randint(0, 2), cantor=rng.randint(0, 2),
                   points=rng.randint(0, 3), seqs=rng.randint(1, 2))
    return condensed_check(mean, gen_random_set(seed, prof))


def _law_affine(rng, mean, seed):
    return invariance_check(mean, _one(rng, mean, seed), _alpha(rng),
                            random_rational(rng, -5, 5, den=rng.choice((1, 2, 3))))


def _symmetric_set(rng, mean, seed) -> CanonicalSet:
    prof = _profile(rng, mean)
    g = gen_random_set(seed, Profile(prof.intervals, prof.points, prof.seqs, prof.cantor,
                                     lo=Fraction(-14), hi=Fraction(-1)))
    s = random_rational(rng, 0, 2, den=rng.choice((1, 2, 3)))
    return union(g, reflect(g, s))


def _law_point_symmetric(rng, mean, seed):
    return point_symmetry_check(mean, _symmetric_set(rng, mean, seed))


LAWS: Dict[str, Callable] = {
    "strict-strong-internal": _law_strict_internal,
    "disjoint-monotone": _law_disjoint,
    "part-shift-monotone": _law_part_shift,
    "union-monotone": _law_union,
    "d-monotone": _law_d_monotone,
    "part-shift-invariant": _law_part_shift_invariant,
    "condensed": _law_condensed,
    "affine-equivariant": _law_affine,
    "point-symmetric": _law_point_symmetric,
    "base-monotone": _law_base,
    "countable-base-monotone": _law_countable_base,
}

AVG_LAWS = ("strict-strong-internal", "disjoint-monotone", "part-shift-monotone",
            "union-monotone", "d-monotone", "part-shift-invariant", "condensed",
            "affine-equivariant", "point-symmetric", "countable-base-monotone")
MLIS_LAWS = ("strict-strong-internal", "base-monotone", "affine-equivariant")


def _run(prop: str, mean: str, make: Callable, seed: int, trials: int,
         max_draws: Optional[int] = None) -> SuiteResult:
    rng = random.Random(f"{prop}/{mean}/{seed}")
    max_draws = max_draws or 20 * trials
    applicable = draws = 0
    failures: List[PropertyReport] = []
    while applicable < trials and draws < max_draws:
        inst_seed = rng.randrange(2 ** 32)
        draws += 1
        rep = make(random.Random(inst_seed), mean, inst_seed)
        if rep.verdict == INAPPLICABLE:
            continue
        applicable += 1
        if rep.verdict == VIOLATED:
            rep.seed = inst_seed
            failures.append(rep)
    if failures:
        verdict = VIOLATED
    elif applicable < trials:
        verdict = INAPPLICABLE
    else:
        verdict = HOLDS
    return SuiteResult(prop, mean, verdict, draws, applicable, seed, failures)


def run_law(prop: str, mean: str, seed: int = 0, trials: int = 200) -> SuiteResult:
    """Check ``prop`` for ``mean`` on ``trials`` admissible seeded instances."""
    if prop not in LAWS:
        raise KeyError(f"unknown law {prop!r}; known: {', '.join(sorted(LAWS))}")
    return _run(prop, mean, LAWS[prop], seed, trials)


# ---------------------------------------------------------------------------
# implications: premise measured per instance, conclusion asserted when it holds
# ---------------------------------------------------------------------------

def _far_symmetric(rng, mean, centre: Fraction, offset: Fraction, seed: int) -> CanonicalSet:
    """A set symmetric about ``centre`` with everything at distance >= ``offset``."""
    prof = _profile(rng, mean)
    g = gen_random_set(seed, Profile(prof.intervals, prof.points, prof.seqs, prof.cantor,
                                     lo=Fraction(0), hi=Fraction(6)))
    g = affine_map(g, 1, centre + offset)
    return union(g, reflect(g, centre))


def _meta_report(prop, mean, verdict, sets=(), values=None) -> PropertyReport:
    return PropertyReport(prop, mean, verdict, [str(s) for s in sets], dict(values or {}))


def _meta_disjoint_equal(rng, mean, seed):
    """Disjoint-monotone on an instance with ``K(H1) = K(H2) = k`` gives ``K(H1 ∪ H2) = k``."""
    prop = "disjoint-equal-mean"
    h1 = _one(rng, mean, seed)
    r = mean_eval(mean, h1)
    if not r.in_domain or not isinstance(r.value, Fraction):
        return _meta_report(prop, mean, INAPPLICABLE)
    k = r.value
    lo, hi = extent(h1)
    h2 = _far_symmetric(rng, mean, k, max(hi - k, k - lo) + 1, seed + 1)
    premise = monotonicity_check("disjoint", mean, {"H1": h1, "H2": h2})
    k2 = mean_eval(mean, h2)
    if premise.verdict != HOLDS or not k2.in_domain or k2.value != k:
        return _meta_report(prop, mean, INAPPLICABLE)
    both = mean_eval(mean, union(h1, h2)).value
    values = {"k": k, "K(H1∪H2)": both}
    return _meta_report(prop, mean, HOLDS if both == k else VIOLATED, [h1, h2], values)


def _meta_union_equal(rng, mean, seed):
    """``K(A) = K(A∪B) = K(A∪C)`` with ``B ∩ C = ∅`` gives ``K(A∪B∪C) = K(A)``."""
    prop = "union-equality"
    a = _one(rng, mean, seed)
    r = mean_eval(mean, a)
    if not r.in_domain or not isinstance(r.value, Fraction):
        return _meta_report(prop, mean, INAPPLICABLE)
    k = r.value
    lo, hi = extent(a)
    reach = max(hi - k, k - lo) + 1
    b = _far_symmetric(rng, mean, k, reach, seed + 1)
    c = _far_symmetric(rng, mean, k, reach + 8, seed + 2)
    if rng.random() < 0.3:
        # a finite set in the lower dimension leaves the mean unchanged whatever it is
        c = canonicalize([Seq(k + reach + 20, HARMONIC, 1)]) if mean == "mlis" else \
            gen_random_set(seed + 3, Profile(intervals=0, points=3, lo=k + reach + 16, hi=k + reach + 30))
    if are_disjoint(b, c) is not True:
        return _meta_report(prop, mean, INAPPLICABLE)
    vals = [mean_eval(mean, s) for s in (union(a, b), union(a, c))]
    if any(not v.in_domain or v.value != k for v in vals):
        return _meta_report(prop, mean, INAPPLICABLE)
    premise = monotonicity_check("union", mean, {"A": a, "B": b, "C": c})
    if premise.verdict != HOLDS:
        return _meta_report(prop, mean, INAPPLICABLE)
    total = mean_eval(mean, union(a, b, c)).value
    values = {"K(A)": k, "K(A∪B∪C)": total}
    return _meta_report(prop, mean, HOLDS if total == k else VIOLATED, [a, b, c], values)


def _meta_base_convex(rng, mean, seed):
    """Base-monotone on ``(H, L)`` with ``L ⊆ I ∋ K(H)`` gives ``K(H ∪ L) ∈ I``."""
    prop = "base-monotone-convex"
    h = _one(rng, mean, seed)
    r = mean_eval(mean, h)
    if not r.in_domain:
        return _meta_report(prop, mean, INAPPLICABLE)
    k = r.value
    i = Interval(k - random_rational(rng, 1, 6, den=2), k + random_rational(rng, 1, 6, den=2))
    # L: a convergent sequence (sometimes plus an interval) inside I, off the lattice of H
    limit = random_rational(rng, i.lo + Fraction(1, 2), i.hi - Fraction(1, 2), den=997)
    room = min(limit - i.lo, i.hi - limit)
    if rng.random() < 0.5:
        l_atoms = [Seq(limit, HARMONIC, room * rng.choice((1, -1)) / rng.randint(1, 3))]
    else:
        q = Fraction(1, rng.randint(2, 4))
        l_atoms = [Seq(limit, GEOMETRIC, room * rng.choice((1, -1)) / q / 2, q=q)]
    lset = canonicalize(l_atoms)
    if are_disjoint(h, lset) is not True:
        return _meta_report(prop, mean, INAPPLICABLE)
    premise = monotonicity_check("base", mean, {"H1": h, "H2": lset})
    if premise.verdict != HOLDS:
        return _meta_report(prop, mean, INAPPLICABLE)
    return convexity_check(mean, h, lset, i)


def _meta_fk_closure(rng, mean, seed):
    """Affine ``f, g`` equivariant on the instance give ``g∘f`` and ``f⁻¹`` equivariant."""
    prop = "fk-composition"
    h = _one(rng, mean, seed)
    a1, b1 = _alpha(rng), random_rational(rng, -4, 4, den=3)
    a2, b2 = _alpha(rng), random_rational(rng, -4, 4, den=3)
    first = invariance_check(mean, h, a1, b1)
    second = invariance_check(mean, affine_map(h, a1, b1), a2, b2)
    if first.verdict != HOLDS or second.verdict != HOLDS:
        return _meta_report(prop, mean, INAPPLICABLE)
    comp = invariance_check(mean, h, a2 * a1, a2 * b1 + b2)
    inverse = invariance_check(mean, affine_map(h, a1, b1), 1 / a1, -b1 / a1)
    ok = comp.verdict == HOLDS and inverse.verdict == HOLDS
    values = {"K(g∘f(H))": comp.witness_values.get("K(aH+b)"),
              "K(H)": inverse.witness_values.get("K(aH+b)")}
    return _meta_report(prop, mean, HOLDS if ok else VIOLATED, [h], values)


def _meta_strong_mean_to_strong(rng, mean, seed):
    """Strong internality plus strong mean-monotonicity on both sides gives strong monotonicity."""
    prop = "strong-mean-to-strong-monotone"
    prof = _profile(rng, mean)
    left = gen_random_set(seed, Profile(prof.intervals, prof.points, prof.seqs, prof.cantor,
                                        lo=Fraction(-13), hi=Fraction(-1)))
    prof = _profile(rng, mean)
    right = gen_random_set(seed + 1, Profile(prof.intervals, prof.points, prof.seqs, prof.cantor,
                                             lo=Fraction(1), hi=Fraction(13)))
    premises = [
        internality_check(mean, left, STRONG),
        internality_check(mean, right, STRONG),
        monotonicity_check("strong-mean-monotone", mean,
                           {"H": left, "K1": affine_map(left, 1, -30), "K2": right}),
        monotonicity_check("strong-mean-monotone", mean,
                           {"H": right, "K1": left, "K2": affine_map(right, 1, 30)}),
    ]
    if any(p.verdict != HOLDS for p in premises):
        return _meta_report(prop, mean, INAPPLICABLE)
    return monotonicity_check("strong-monotone", mean, {"H1": left, "H2": right})


def _meta_accumulated_condensed(rng, mean, seed):
    """``K(H^(i)) = K(H^(i+1))`` along the derived chain gives ``K(H) = K(H*)``."""
    prop = "accumulated-condensed"
    prof = Profile(intervals=rng.randint(0, 2), cantor=rng.randint(0, 2),
                   points=rng.randint(0, 3), seqs=rng.randint(0, 3))
    if prof.intervals + prof.cantor == 0:
        prof = Profile(intervals=1, points=prof.points, seqs=prof.seqs)
    h = gen_random_set(seed, prof)
    chain = [h]
    while True:
        nxt = derived(chain[-1]).set
        if nxt == chain[-1] or nxt.is_empty:
            break
        chain.append(nxt)
    vals = [mean_eval(mean, c) for c in chain]
    if any(not v.in_domain or not isinstance(v.value, Fraction) for v in vals):
        return _meta_report(prop, mean, INAPPLICABLE)
    if len({v.value for v in vals}) != 1:
        return _meta_report(prop, mean, INAPPLICABLE)
    return condensed_check(mean, h)


def _meta_finite_removal(rng, mean, seed):
    """For finite ``V``: ``K(H ∪ V) = K(H)`` exactly when ``K(H - V) = K(H)``."""
    prop = "finite-independence-removal"
    h = _one(rng, mean, seed)
    lo, hi = extent(h)
    pts = [random_rational(rng, lo - 2, hi + 2, den=6) for _ in range(rng.randint(1, 4))]
    # include some points of H itself so the removal form removes something
    pts += [p for p in h.points[:2]]
    for s in h.seqs[:1]:
        pts.append(s.term(s.start))
    v = canonicalize([FinitePoints.of(*pts)])
    try:
        k = mean_eval(mean, h)
        ku = mean_eval(mean, union(h, v))
        kr = mean_eval(mean, remove_countable(h, v))
    except InfMeansError:
        return _meta_report(prop, mean, INAPPLICABLE)
    if not (k.in_domain and ku.in_domain and kr.in_domain):
        return _meta_report(prop, mean, INAPPLICABLE)
    same = (ku.value == k.value) == (kr.value == k.value)
    values = {"K(H)": k.value, "K(H∪V)": ku.value, "K(H-V)": kr.value}
    return _meta_report(prop, mean, HOLDS if same else VIOLATED, [h, v], values)


META: Dict[str, Callable] = {
    "disjoint-equal-mean": _meta_disjoint_equal,
    "union-equality": _meta_union_equal,
    "base-monotone-convex": _meta_base_convex,
    "fk-composition": _meta_fk_closure,
    "strong-mean-to-strong-monotone": _meta_strong_mean_to_strong,
    "accumulated-condensed": _meta_accumulated_condensed,
    "finite-independence-removal": _meta_finite_removal,
}

META_PLAN = (("disjoint-equal-mean", "avg"), ("disjoint-equal-mean", "mlis"),
             ("union-equality", "avg"), ("base-monotone-convex", "mlis"),
             ("fk-composition", "avg"), ("strong-mean-to-strong-monotone", "avg"),
             ("strong-mean-to-strong-monotone", "mlis"), ("accumulated-condensed", "avg"),
             ("finite-independence-removal", "avg"))


def run_meta(prop: str, mean: str, seed: int = 0, trials: int = 100) -> SuiteResult:
    if prop not in META:
        raise KeyError(f"unknown implication {prop!r}")
    return _run(prop, mean, META[prop], seed, trials)
