"""Verdicts, reports and exact comparisons shared by the checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from infmeans.means import mean_eval
from infmeans.setcore.canonical import CanonicalSet
from infmeans.setcore.geometry import Bounds, Value

HOLDS = "holds-on-instances"
VIOLATED = "violated"
INAPPLICABLE = "inapplicable"

FINITE_SETS = "FiniteSets"
COUNTABLE_SETS = "CountableSets"


@dataclass(frozen=True)
class Ideal:
    tag: str

    def __post_init__(self):
        if self.tag not in (FINITE_SETS, COUNTABLE_SETS):
            raise ValueError(f"unknown ideal {self.tag!r}")

    def __contains__(self, h: CanonicalSet) -> bool:
        return h.is_finite if self.tag == FINITE_SETS else h.is_countable


@dataclass
class PropertyReport:
    property: str
    mean: str
    verdict: str
    witness_sets: List[str] = field(default_factory=list)
    witness_values: Dict[str, Value] = field(default_factory=dict)
    trials: int = 1
    seed: Optional[int] = None
    note: str = ""
    applicable: int = 0

    @property
    def ok(self) -> bool:
        return self.verdict != VIOLATED

    def to_dict(self) -> dict:
        from infmeans.shell.fmt import value_text

        return {
            "property": self.property,
            "mean": self.mean,
            "verdict": self.verdict,
            "trials": self.trials,
            "seed": self.seed,
            "witness": {
                "sets": list(self.witness_sets),
                "values": {k: value_text(v) for k, v in self.witness_values.items()},
            },
        }


class Inapplicable(Exception):
    """Raised inside a check when a hypothesis or domain condition fails."""


def value_of(mean: str, h: CanonicalSet) -> Value:
    r = mean_eval(mean, h)
    if not r.in_domain:
        raise Inapplicable(f"{r.domain.reason}: {h}")
    return r.value


def exact_value(mean: str, h: CanonicalSet) -> Fraction:
    v = value_of(mean, h)
    if not isinstance(v, Fraction):
        raise Inapplicable(f"value is only known as an enclosure on {h}")
    return v


def compare(a: Value, b: Value) -> Optional[int]:
    """-1, 0 or 1 when the order of ``a`` and ``b`` is certain, else None."""
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return (a > b) - (a < b)
    al, ah = (a.lo, a.hi) if isinstance(a, Bounds) else (a, a)
    bl, bh = (b.lo, b.hi) if isinstance(b, Bounds) else (b, b)
    if ah < bl:
        return -1
    if al > bh:
        return 1
    return None


def sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)
