"""Text renderings of exact and enclosed values."""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction

from infmeans.setcore.geometry import Bounds


def decimal_text(x: Fraction, places: int = 11) -> str:
    """``x`` rounded half-even to ``places`` digits after the point."""
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(x.numerator) / Decimal(x.denominator)
        return format(d.quantize(Decimal(1).scaleb(-places)), "f")


def value_text(v) -> str:
    """Exact machine-readable text: ``p/q`` or ``lo..hi`` for an enclosure."""
    if isinstance(v, Bounds):
        return f"{v.lo}..{v.hi}"
    return str(v)


def format_value(v) -> str:
    """Human text: ``29/6 (4.83333333333)`` or ``[lo, hi] approx``."""
    if v is None:
        return "undefined"
    if isinstance(v, Bounds):
        return f"[{decimal_text(v.lo)}, {decimal_text(v.hi)}] approx"
    return f"{v} ({decimal_text(v)})"
