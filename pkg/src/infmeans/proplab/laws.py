"""Instance-level checks of mean properties.

Every check first verifies the property's hypotheses exactly.  A failed
hypothesis or an out-of-domain evaluation gives ``inapplicable``; only a failed
conclusion on an admissible instance gives ``violated``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from infmeans.errors import InfMeansError
from infmeans.proplab.report import (
    HOLDS,
    INAPPLICABLE,
    VIOLATED,
    Ideal,
    Inapplicable,
    PropertyReport,
    compare,
    exact_value,
    sign,
    value_of,
)
from infmeans.setcore.atoms import Interval
from infmeans.setcore.canonical import (
    CanonicalSet,
    affine_map,
    reflect,
    union,
)
from infmeans.setcore.relations import are_disjoint, is_subset, remove_countable
from infmeans.setcore.topology import bounds, condensation

INTERNAL = "internal"
STRONG = "strong"
STRICT_STRONG = "strict-strong"
_LEVELS = (INTERNAL, STRONG, STRICT_STRONG)


def _report(prop, mean, verdict, sets=(), values=None, note="") -> PropertyReport:
    return PropertyReport(prop, mean, verdict, [str(s) for s in sets], dict(values or {}),
                          note=note, applicable=int(verdict != INAPPLICABLE))


def _inapplicable(prop, mean, exc, sets=(), values=None) -> PropertyReport:
    return _report(prop, mean, INAPPLICABLE, sets, values, note=str(exc))


# ---------------------------------------------------------------------------
# internality
# ---------------------------------------------------------------------------

def internality_grade(mean: str, h: CanonicalSet) -> str:
    """Highest internality level met by ``mean`` on ``h``.

    Returns ``internal``, ``strong`` or ``strict-strong``, or ``fails(level)``.
    The strong levels only constrain infinite sets; the strict level only sets
    with at least two accumulation points.
    """
    v = exact_value(mean, h)
    b = bounds(h)
    if not b.inf <= v <= b.sup:
        return f"fails({INTERNAL})"
    if b.liminf is None:
        return INTERNAL
    if not b.liminf <= v <= b.limsup:
        return f"fails({STRONG})"
    if b.liminf < b.limsup and not b.liminf < v < b.limsup:
        return f"fails({STRICT_STRONG})"
    return STRICT_STRONG


def internality_check(mean: str, h: CanonicalSet, level: str = STRICT_STRONG) -> PropertyReport:
    prop = "strict-strong-internal" if level == STRICT_STRONG else (
        "strong-internal" if level == STRONG else "internal")
    try:
        grade = internality_grade(mean, h)
        v = exact_value(mean, h)
    except (Inapplicable, InfMeansError) as exc:
        return _inapplicable(prop, mean, exc, [h])
    b = bounds(h)
    values = {"K(H)": v, "inf": b.inf, "sup": b.sup}
    if b.liminf is not None:
        values.update({"liminf": b.liminf, "limsup": b.limsup})
    want = _LEVELS.index(level)
    if grade.startswith("fails("):
        failed = _LEVELS.index(grade[6:-1])
        if failed <= want:
            return _report(prop, mean, VIOLATED, [h], values, note=grade)
        return _report(prop, mean, HOLDS, [h], values, note=grade)
    if want >= 1 and b.liminf is None:
        return _report(prop, mean, INAPPLICABLE, [h], values, note="finite set")
    if want == 2 and b.liminf == b.limsup:
        return _report(prop, mean, INAPPLICABLE, [h], values, note="one accumulation point")
    return _report(prop, mean, HOLDS, [h], values, note=grade)


# ---------------------------------------------------------------------------
# functional invariance
# ---------------------------------------------------------------------------

def invariance_check(mean: str, h: CanonicalSet, alpha, beta) -> PropertyReport:
    """``K(alpha*H + beta) == alpha*K(H) + beta`` exactly."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    prop = "affine-equivariant"
    if alpha == 0:
        return _report(prop, mean, INAPPLICABLE, [h], note="alpha must be nonzero")
    try:
        image = affine_map(h, alpha, beta)
        lhs = exact_value(mean, image)
        rhs = alpha * exact_value(mean, h) + beta
    except (Inapplicable, InfMeansError) as exc:
        return _inapplicable(prop, mean, exc, [h])
    values = {"K(aH+b)": lhs, "aK(H)+b": rhs, "alpha": alpha, "beta": beta}
    return _report(prop, mean, HOLDS if lhs == rhs else VIOLATED, [h, image], values)


def symmetry_center(h: CanonicalSet) -> Optional[Fraction]:
    """The ``s`` with ``T_s(H) == H``, or None."""
    if h.is_empty:
        return None
    b = bounds(h)
    s = (b.inf + b.sup) / 2
    return s if reflect(h, s) == h else None


def point_symmetry_check(mean: str, h: CanonicalSet) -> PropertyReport:
    prop = "point-symmetric"
    s = symmetry_center(h)
    if s is None:
        return _report(prop, mean, INAPPLICABLE, [h], note="set is not point-symmetric")
    try:
        v = exact_value(mean, h)
    except (Inapplicable, InfMeansError) as exc:
        return _inapplicable(prop, mean, exc, [h])
    return _report(prop, mean, HOLDS if v == s else VIOLATED, [h], {"K(H)": v, "s": s})


# ---------------------------------------------------------------------------
# monotonicity family
# ---------------------------------------------------------------------------

MONOTONICITY_KINDS = (
    "monotone", "strong-monotone", "disjoint", "part-shift", "mean-monotone",
    "strong-mean-monotone", "base", "countable-base", "union", "d-monotone",
)


class _Ctx:
    """Collects the values evaluated by a check for the witness."""

    def __init__(self, mean: str):
        self.mean = mean
        self.values: Dict[str, Fraction] = {}

    def k(self, label: str, h: CanonicalSet) -> Fraction:
        v = exact_value(self.mean, h)
        self.values[label] = v
        return v


def _require(cond: Optional[bool], what: str):
    if cond is None:
        raise Inapplicable(f"could not decide: {what}")
    if not cond:
        raise Inapplicable(f"hypothesis fails: {what}")


def monotonicity_check(kind: str, mean: str, bundle: dict,
                       enforce_hypotheses: bool = True) -> PropertyReport:
    """Check one instance of a monotonicity property.

    ``bundle`` keys depend on ``kind``: ``H1, H2`` (monotone, strong-monotone,
    disjoint, base), ``H1, H2, x`` (part-shift), ``H, K1, K2`` (mean-monotone),
    ``sets`` (countable-base), ``A, B, C`` (union) and ``L, B, x`` (d-monotone).
    With ``enforce_hypotheses=False`` failed hypotheses are ignored and the
    conclusion is tested on the raw values.
    """
    if kind not in MONOTONICITY_KINDS:
        raise ValueError(f"unknown monotonicity kind {kind!r}")
    prop = kind if kind.endswith("monotone") else f"{kind}-monotone"
    ctx = _Ctx(mean)
    sets = [v for v in bundle.values() if isinstance(v, CanonicalSet)] + list(bundle.get("sets", ()))
    skipped: List[str] = []

    def require(cond, what):
        try:
            _require(cond, what)
        except Inapplicable:
            if enforce_hypotheses:
                raise
            skipped.append(what)

    try:
        ok = _MONO[kind](ctx, bundle, require)
    except (Inapplicable, InfMeansError) as exc:
        # keep the raw values in the witness so weakened hypotheses can be inspected
        raw = _Ctx(mean)
        try:
            _MONO[kind](raw, bundle, lambda cond, what: None)
        except (Inapplicable, InfMeansError):
            pass
        return _inapplicable(prop, mean, exc, sets, {**raw.values, **ctx.values})
    if ok is None:
        return _report(prop, mean, INAPPLICABLE, sets, ctx.values, note="premise not met")
    note = ("hypotheses ignored: " + "; ".join(skipped)) if skipped else ""
    return _report(prop, mean, HOLDS if ok else VIOLATED, sets, ctx.values, note=note)


def _between(lo, x, hi) -> bool:
    return lo <= x <= hi


def _mono_plain(strong: bool):
    def run(ctx, b, require):
        h1, h2 = b["H1"], b["H2"]
        if strong:
            b1, b2 = bounds(h1), bounds(h2)
            if b1.limsup is None or b2.liminf is None:
                raise Inapplicable("strong monotonicity needs infinite sets")
            require(b1.limsup <= b2.liminf, "limsup H1 <= liminf H2")
        else:
            require(bounds(h1).sup <= bounds(h2).inf, "sup H1 <= inf H2")
        k1, k2 = ctx.k("K(H1)", h1), ctx.k("K(H2)", h2)
        k12 = ctx.k("K(H1∪H2)", union(h1, h2))
        return _between(k1, k12, k2)
    return run


def _mono_disjoint(ctx, b, require):
    h1, h2 = b["H1"], b["H2"]
    require(are_disjoint(h1, h2), "H1 ∩ H2 = ∅")
    k1, k2 = ctx.k("K(H1)", h1), ctx.k("K(H2)", h2)
    k12 = ctx.k("K(H1∪H2)", union(h1, h2))
    lo, hi = min(k1, k2), max(k1, k2)
    return _between(lo, k12, hi)


def _mono_part_shift(ctx, b, require):
    h1, h2, x = b["H1"], b["H2"], Fraction(b["x"])
    if x <= 0:
        raise Inapplicable("part-shift needs x > 0")
    shifted = affine_map(h2, 1, x)
    require(are_disjoint(h1, h2), "H1 ∩ H2 = ∅")
    require(are_disjoint(h1, shifted), "H1 ∩ (H2+x) = ∅")
    before = ctx.k("K(H1∪H2)", union(h1, h2))
    after = ctx.k("K(H1∪(H2+x))", union(h1, shifted))
    return before <= after


def _mono_mean(strong: bool):
    def run(ctx, b, require):
        h, k1s, k2s = b["H"], b["K1"], b["K2"]
        k = ctx.k("K(H)", h)
        if strong:
            c1, c2 = bounds(k1s), bounds(k2s)
            if c1.limsup is None or c2.liminf is None:
                raise Inapplicable("strong mean-monotonicity needs infinite K1, K2")
            require(c1.limsup <= k <= c2.liminf, "limsup K1 <= K(H) <= liminf K2")
        else:
            require(bounds(k1s).sup <= k <= bounds(k2s).inf, "sup K1 <= K(H) <= inf K2")
        ctx.k("K(K1)", k1s)
        ctx.k("K(K2)", k2s)
        lo = ctx.k("K(H∪K1)", union(h, k1s))
        hi = ctx.k("K(H∪K2)", union(h, k2s))
        return lo <= k <= hi
    return run


def _mono_base(ctx, b, require):
    h1, h2 = b["H1"], b["H2"]
    require(are_disjoint(h1, h2), "H1 ∩ H2 = ∅")
    k1, k2 = ctx.k("K(H1)", h1), ctx.k("K(H2)", h2)
    k12 = ctx.k("K(H1∪H2)", union(h1, h2))
    return _between(min(k1, k2), k12, max(k1, k2))


def _mono_countable_base(ctx, b, require):
    parts: Sequence[CanonicalSet] = b["sets"]
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            require(are_disjoint(parts[i], parts[j]), f"H{i + 1} ∩ H{j + 1} = ∅")
    ks = [ctx.k(f"K(H{i + 1})", p) for i, p in enumerate(parts)]
    total = ctx.k("K(∪Hi)", union(*parts))
    return _between(min(ks), total, max(ks))


def _mono_union(ctx, b, require):
    a, bb, c = b["A"], b["B"], b["C"]
    require(are_disjoint(bb, c), "B ∩ C = ∅")
    ka = ctx.k("K(A)", a)
    kab = ctx.k("K(A∪B)", union(a, bb))
    kac = ctx.k("K(A∪C)", union(a, c))
    kabc = ctx.k("K(A∪B∪C)", union(a, bb, c))
    if ka <= kab and ka <= kac:
        if ka < kab or ka < kac:
            return ka < kabc
        return ka <= kabc
    if kab <= ka and kac <= ka:
        if kab < ka or kac < ka:
            return kabc < ka
        return kabc <= ka
    return None


def _mono_d(ctx, b, require):
    low, blk, x = b["L"], b["B"], Fraction(b["x"])
    if x == 0:
        raise Inapplicable("d-monotonicity needs x != 0")
    shifted = affine_map(blk, 1, x)
    lb = union(low, blk)
    require(are_disjoint(low, blk), "L ∩ B = ∅")
    require(are_disjoint(lb, shifted), "(L∪B) ∩ (B+x) = ∅")
    kl = ctx.k("K(L)", low)
    klb = ctx.k("K(L∪B)", lb)
    if x > 0 and kl < klb:
        return klb < ctx.k("K(L∪B∪(B+x))", union(lb, shifted))
    if x < 0 and kl > klb:
        return klb > ctx.k("K(L∪B∪(B+x))", union(lb, shifted))
    return None


_MONO = {
    "monotone": _mono_plain(False),
    "strong-monotone": _mono_plain(True),
    "disjoint": _mono_disjoint,
    "part-shift": _mono_part_shift,
    "mean-monotone": _mono_mean(False),
    "strong-mean-monotone": _mono_mean(True),
    "base": _mono_base,
    "countable-base": _mono_countable_base,
    "union": _mono_union,
    "d-monotone": _mono_d,
}


# ---------------------------------------------------------------------------
# independence, shift invariance, condensedness, convexity
# ---------------------------------------------------------------------------

def independence_check(mean: str, h: CanonicalSet, v: CanonicalSet, ideal: Ideal) -> PropertyReport:
    """Union form ``K(H ∪ V) == K(H)`` and removal form ``K(H - V) == K(H)``."""
    prop = f"{ideal.tag}-independent"
    if h in ideal:
        return _report(prop, mean, INAPPLICABLE, [h, v], note="H lies in the ideal")
    if v not in ideal:
        return _report(prop, mean, INAPPLICABLE, [h, v], note="V is not in the ideal")
    ctx = _Ctx(mean)
    try:
        k = ctx.k("K(H)", h)
        ku = ctx.k("K(H∪V)", union(h, v))
        kr = ctx.k("K(H-V)", remove_countable(h, v))
    except (Inapplicable, InfMeansError) as exc:
        return _inapplicable(prop, mean, exc, [h, v], ctx.values)
    ok = ku == k and kr == k
    return _report(prop, mean, HOLDS if ok else VIOLATED, [h, v], ctx.values)


def shift_invariance_check(variant: str, mean: str, instance: dict) -> PropertyReport:
    """``self``: ``K(H ∪ (H+x)) == K(H) + x/2``; ``part``: sign and size of the move."""
    x = Fraction(instance["x"])
    ctx = _Ctx(mean)
    if variant == "self":
        prop = "self-shift-invariant"
        h = instance["H"]
        sets = [h]
        try:
            b = bounds(h)
            if b.liminf is None:
                raise Inapplicable("H has no accumulation points")
            _require(b.limsup <= b.liminf + x or b.limsup + x <= b.liminf,
                     "shift separates the accumulation ranges")
            k = ctx.k("K(H)", h)
            ks = ctx.k("K(H∪(H+x))", union(h, affine_map(h, 1, x)))
        except (Inapplicable, InfMeansError) as exc:
            return _inapplicable(prop, mean, exc, sets, ctx.values)
        return _report(prop, mean, HOLDS if ks == k + x / 2 else VIOLATED, sets, ctx.values)
    if variant != "part":
        raise ValueError("variant must be 'self' or 'part'")
    prop = "part-shift-invariant"
    h1, h2 = instance["H1"], instance["H2"]
    sets = [h1, h2]
    enforce = instance.get("enforce_hypotheses", True)
    try:
        shifted = affine_map(h2, 1, x)
        before = ctx.k("K(H1∪H2)", union(h1, h2))
        after = ctx.k("K(H1∪(H2+x))", union(h1, shifted))
        if enforce:
            _require(are_disjoint(h1, h2), "H1 ∩ H2 = ∅")
            _require(are_disjoint(h1, shifted), "H1 ∩ (H2+x) = ∅")
    except (Inapplicable, InfMeansError) as exc:
        return _inapplicable(prop, mean, exc, sets, ctx.values)
    delta = after - before
    ok = sign(delta) == sign(x) and abs(delta) <= abs(x)
    return _report(prop, mean, HOLDS if ok else VIOLATED, sets, ctx.values)


def condensed_check(mean: str, h: CanonicalSet) -> PropertyReport:
    prop = "condensed"
    star = condensation(h)
    ctx = _Ctx(mean)
    try:
        if star.is_empty:
            raise Inapplicable("H has no condensation points")
        k = ctx.k("K(H)", h)
        ks = ctx.k("K(H*)", star)
    except (Inapplicable, InfMeansError) as exc:
        return _inapplicable(prop, mean, exc, [h, star], ctx.values)
    return _report(prop, mean, HOLDS if k == ks else VIOLATED, [h, star], ctx.values)


def convexity_check(mean: str, h: CanonicalSet, l: CanonicalSet, i: Interval) -> PropertyReport:
    """``K(H) ∈ I`` and ``L ⊆ I`` imply ``K(H ∪ L) ∈ I``."""
    prop = "convex"
    ctx = _Ctx(mean)
    iset = CanonicalSet((i,))
    try:
        k = ctx.k("K(H)", h)
        _require(i.lo <= k <= i.hi, "K(H) ∈ I")
        _require(is_subset(l, iset), "L ⊆ I")
        kk = ctx.k("K(H∪L)", union(h, l))
    except (Inapplicable, InfMeansError) as exc:
        return _inapplicable(prop, mean, exc, [h, l, iset], ctx.values)
    return _report(prop, mean, HOLDS if i.lo <= kk <= i.hi else VIOLATED, [h, l, iset], ctx.values)


__all__ = [
    "INTERNAL", "MONOTONICITY_KINDS", "STRICT_STRONG", "STRONG", "compare",
    "condensed_check", "convexity_check", "independence_check", "internality_check",
    "internality_grade", "invariance_check", "monotonicity_check", "point_symmetry_check",
    "shift_invariance_check", "symmetry_center", "value_of",
]
