"""Concrete means of bounded real sets behind one registry.

Each entry pairs a domain predicate with an evaluator.  ``mean_eval`` always asks
the predicate first, so an out-of-domain set yields a reason and never a value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

from infmeans.errors import EmptySet, NotAnSSet, OutOfDomain, UnknownMean
from infmeans.setcore.canonical import CanonicalSet
from infmeans.setcore.geometry import Bounds, Value, geometry, ratio
from infmeans.setcore.topology import bounds, derived

# out-of-domain reasons
NOT_AN_S_SET = "NotAnSSet"
FINITE_SET = "FiniteSetOutOfDomain"
PERFECT_PART = "PerfectPartOutOfDomain"
EMPTY_SET = "EmptySet"
NOT_LEBESGUE_POSITIVE = "NotLebesguePositive"


@dataclass(frozen=True)
class DomainVerdict:
    ok: bool
    reason: Optional[str] = None
    message: str = ""

    def __bool__(self):
        return self.ok


IN_DOMAIN = DomainVerdict(True)


@dataclass(frozen=True)
class MeanSpec:
    id: str
    dom: Callable[[CanonicalSet], DomainVerdict]
    eval: Callable[[CanonicalSet], Value]
    declared: Tuple[str, ...] = ()
    description: str = ""


@dataclass(frozen=True)
class MeanResult:
    mean: str
    value: Optional[Value]
    exact: bool
    domain: DomainVerdict = field(default=IN_DOMAIN)

    @property
    def in_domain(self) -> bool:
        return self.domain.ok


def _nonempty(h: CanonicalSet) -> Optional[DomainVerdict]:
    if h.is_empty:
        return DomainVerdict(False, EMPTY_SET, "the empty set has no mean")
    return None


# --- Avg: moment over measure in the top Hausdorff dimension ---------------

def avg_dom(h: CanonicalSet) -> DomainVerdict:
    bad = _nonempty(h)
    if bad is not None:
        return bad
    if not h.intervals and not h.pieces and not h.residual and h.seqs:
        return DomainVerdict(False, NOT_AN_S_SET,
                             "countably infinite set has infinite counting measure")
    return IN_DOMAIN


def avg(h: CanonicalSet) -> Value:
    if h.is_empty:
        raise EmptySet("avg of the empty set")
    g = geometry(h)
    return ratio(g.moment, g.measure)


# --- Avg restricted to sets of positive Lebesgue measure ---------------------

def avg1_dom(h: CanonicalSet) -> DomainVerdict:
    bad = _nonempty(h)
    if bad is not None:
        return bad
    if not h.intervals:
        return DomainVerdict(False, NOT_LEBESGUE_POSITIVE, "Lebesgue measure is zero")
    return IN_DOMAIN


def avg1(h: CanonicalSet) -> Fraction:
    ivs = h.intervals
    if not ivs:
        raise NotAnSSet("Lebesgue measure is zero")
    measure = sum((iv.length for iv in ivs), Fraction(0))
    moment = sum(((iv.hi ** 2 - iv.lo ** 2) / 2 for iv in ivs), Fraction(0))
    return moment / measure


# --- midpoint of the accumulation range --------------------------------------

def mlis_dom(h: CanonicalSet) -> DomainVerdict:
    bad = _nonempty(h)
    if bad is not None:
        return bad
    if h.is_finite:
        return DomainVerdict(False, FINITE_SET, "finite sets have no accumulation points")
    return IN_DOMAIN


def mlis(h: CanonicalSet) -> Fraction:
    b = bounds(h)
    if b.liminf is None:
        raise OutOfDomain(FINITE_SET, "finite sets have no accumulation points")
    return (b.liminf + b.limsup) / 2


# --- arithmetic mean of the last nonempty derived set ------------------------

def macc_fds_dom(h: CanonicalSet) -> DomainVerdict:
    bad = _nonempty(h)
    if bad is not None:
        return bad
    if h.intervals or h.pieces or h.residual:
        return DomainVerdict(False, PERFECT_PART, "a perfect part never derives away")
    return IN_DOMAIN


def macc_fds(h: CanonicalSet) -> Fraction:
    r = derived(h, "to-fixpoint")
    if r.final is None:
        raise OutOfDomain(PERFECT_PART, "a perfect part never derives away")
    pts = r.final.points
    return sum(pts, Fraction(0)) / len(pts)


# --- midrange -----------------------------------------------------------------

def midrange_dom(h: CanonicalSet) -> DomainVerdict:
    bad = _nonempty(h)
    return IN_DOMAIN if bad is None else bad


def midrange(h: CanonicalSet) -> Fraction:
    b = bounds(h)
    return (b.inf + b.sup) / 2


REGISTRY: Dict[str, MeanSpec] = {
    m.id: m
    for m in (
        MeanSpec(
            "avg", avg_dom, avg,
            ("internal", "strict-strong-internal", "translation-invariant",
             "homogeneous", "reflection-invariant", "point-symmetric",
             "disjoint-monotone", "part-shift-monotone", "union-monotone", "d-monotone",
             "countable-base-monotone", "condensed", "point-continuous-infinite"),
            "moment over measure in the top Hausdorff dimension",
        ),
        MeanSpec(
            "avg1", avg1_dom, avg1,
            ("internal", "translation-invariant", "homogeneous", "reflection-invariant",
             "point-symmetric", "bi-slice-continuous"),
            "Lebesgue average, sets of positive length only",
        ),
        MeanSpec(
            "mlis", mlis_dom, mlis,
            ("internal", "strict-strong-internal", "translation-invariant", "homogeneous",
             "reflection-invariant", "point-symmetric", "disjoint-monotone",
             "base-monotone", "f-continuous"),
            "midpoint of liminf and limsup",
        ),
        MeanSpec(
            "macc_fds", macc_fds_dom, macc_fds,
            ("internal", "translation-invariant", "homogeneous", "reflection-invariant",
             "point-symmetric", "disjoint-monotone", "union-monotone", "base-monotone",
             "cantor-continuous"),
            "arithmetic mean of the last nonempty derived set",
        ),
        MeanSpec(
            "midrange", midrange_dom, midrange,
            ("internal", "translation-invariant", "homogeneous", "reflection-invariant",
             "point-symmetric"),
            "midpoint of inf and sup",
        ),
    )
}


def get_mean(mean_id: str) -> MeanSpec:
    try:
        return REGISTRY[mean_id]
    except KeyError:
        raise UnknownMean(mean_id) from None


def mean_eval(mean_id: str, h: CanonicalSet) -> MeanResult:
    spec = get_mean(mean_id)
    verdict = spec.dom(h)
    if not verdict:
        return MeanResult(mean_id, None, False, verdict)
    value = spec.eval(h)
    exact = isinstance(value, Fraction) and h.exact
    if not h.exact and isinstance(value, Fraction) and mean_id in ("mlis", "midrange"):
        # order bounds of an outer approximation are themselves only enclosures
        exact = False
    return MeanResult(mean_id, value, exact, verdict)


def mean_value(mean_id: str, h: CanonicalSet) -> Value:
    """The value, raising ``OutOfDomain`` instead of returning a verdict."""
    r = mean_eval(mean_id, h)
    if not r.in_domain:
        raise OutOfDomain(r.domain.reason, r.domain.message)
    return r.value


__all__ = [
    "Bounds", "DomainVerdict", "MeanResult", "MeanSpec", "REGISTRY", "avg", "avg1",
    "get_mean", "macc_fds", "mean_eval", "mean_value", "midrange", "mlis",
]
