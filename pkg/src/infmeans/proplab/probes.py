"""Continuity probes, slice scans and the slice-mean root finder."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from infmeans.errors import InfMeansError, NoSignChange, OutOfDomain
from infmeans.means import mean_eval
from infmeans.proplab.report import HOLDS, INAPPLICABLE, VIOLATED
from infmeans.setcore.canonical import Ball, CanonicalSet, slice_set, subtract_ball
from infmeans.setcore.geometry import Bounds, Value
from infmeans.setcore.plfunc import PLFunc, apply_pl, sup_distance
from infmeans.setcore.relations import is_subset
from infmeans.setcore.topology import bounds, extent

CONVERGING = "converging"
DIVERGING = "diverging"

# agreement tolerance for limits that are extrapolated from enclosures
LIMIT_TOL = Fraction(1, 10 ** 9)


def _point(v: Value) -> Fraction:
    return v.mid if isinstance(v, Bounds) else v


def _try_value(mean: str, h: CanonicalSet) -> Tuple[Optional[Value], str]:
    try:
        r = mean_eval(mean, h)
    except InfMeansError as exc:
        return None, type(exc).__name__
    if not r.in_domain:
        return None, r.domain.reason
    return r.value, ""


def _solve3(rows):
    """Solve a 3x3 linear system over the rationals; None when singular."""
    m = [list(r) for r in rows]
    for col in range(3):
        piv = next((r for r in range(col, 3) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        for r in range(3):
            if r != col and m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [m[i][3] / m[i][i] for i in range(3)]


def extrapolate(hs: Sequence[Fraction], vs: Sequence[Fraction]) -> Optional[Fraction]:
    """Value at ``h = 0`` of the curve ``(a + b h) / (1 + d h)`` through the last points.

    Such a curve is exact for a ratio of two quantities that are affine in ``h``,
    which is how slice and ball-removal averages of interval unions behave.
    Falls back to a line through two points, or the last value.
    """
    pts = [(Fraction(h), Fraction(v)) for h, v in zip(hs, vs)]
    if not pts:
        return None
    if len(pts) >= 3:
        sol = _solve3([(Fraction(1), h, -h * v, v) for h, v in pts[-3:]])
        if sol is not None:
            return sol[0]
    if len(pts) >= 2:
        (h1, v1), (h2, v2) = pts[-2:]
        if h1 != h2:
            return v2 - (v2 - v1) / (h2 - h1) * h2
    return pts[-1][1]


def _fits_exactly(hs, vs) -> bool:
    """True when the curve through the last three points also passes the one before."""
    if len(hs) < 4:
        return False
    sol = _solve3([(Fraction(1), h, -h * v, v) for h, v in zip(hs[-3:], vs[-3:])])
    if sol is None:
        return False
    a, b, d = sol
    h, v = hs[-4], vs[-4]
    return (a + b * h) == v * (1 + d * h)


def _limit_estimate(hs, vals) -> Tuple[Optional[Fraction], bool]:
    """(limit, exact): the tail value when the last three agree, else extrapolated.

    The estimate counts as exact when the values are exact and lie on one
    ratio-of-affine curve; otherwise it is only good to ``LIMIT_TOL``.
    """
    usable = [(Fraction(h), v) for h, v in zip(hs, vals) if v is not None]
    if not usable:
        return None, False
    exact_vals = all(isinstance(v, Fraction) for _, v in usable)
    pts = [(h, _point(v)) for h, v in usable]
    tail = [v for _, v in pts[-3:]]
    if len(tail) >= 2 and all(t == tail[-1] for t in tail):
        return tail[-1], exact_vals
    xs, ys = [h for h, _ in pts], [v for _, v in pts]
    return extrapolate(xs, ys), exact_vals and _fits_exactly(xs, ys)


def _same_limit(a: Optional[Fraction], b: Optional[Value], exact: bool) -> bool:
    if a is None or b is None:
        return False
    if exact and isinstance(b, Fraction):
        return a == b
    return abs(a - _point(b)) <= LIMIT_TOL


# ---------------------------------------------------------------------------
# slice scans
# ---------------------------------------------------------------------------

@dataclass
class ScanRow:
    x: Fraction
    value: Optional[Value]
    exact: bool
    in_domain: bool
    reason: str = ""


@dataclass
class ScanResult:
    mean: str
    side: str
    rows: List[ScanRow]
    jumps: List[Tuple[Fraction, Fraction, Fraction]]
    one_sided: dict = field(default_factory=dict)


def slice_value(mean: str, h: CanonicalSet, x, side: str) -> ScanRow:
    x = Fraction(x)
    try:
        part = slice_set(h, x, side, exact=False)
    except InfMeansError as exc:
        return ScanRow(x, None, False, False, type(exc).__name__)
    v, reason = _try_value(mean, part)
    if v is None:
        return ScanRow(x, None, False, False, reason)
    return ScanRow(x, v, isinstance(v, Fraction) and part.exact, True)


def one_sided_limit(mean: str, h: CanonicalSet, x, side: str, direction: int,
                    steps: int = 10) -> Optional[Fraction]:
    """Limit of the slice mean as the cut point tends to ``x`` from ``direction`` (±1)."""
    x = Fraction(x)
    hs, vals = [], []
    for k in range(4, 4 + steps):
        eps = Fraction(1, 2 ** k)
        row = slice_value(mean, h, x + direction * eps, side)
        hs.append(eps)
        vals.append(row.value)
    return _limit_estimate(hs, vals)[0]


def slice_scan(mean: str, h: CanonicalSet, start, stop, step, side: str = "le",
               jump_threshold=None, flagged: Sequence = ()) -> ScanResult:
    """Slice means ``K(H ∩ (-inf, x])`` (or ``[x, inf)``) on a rational grid."""
    start, stop, step = Fraction(start), Fraction(stop), Fraction(step)
    if step <= 0 or stop < start:
        raise ValueError("need step > 0 and start <= stop")
    threshold = step if jump_threshold is None else Fraction(jump_threshold)
    rows = []
    x = start
    while x <= stop:
        rows.append(slice_value(mean, h, x, side))
        x += step
    jumps = []
    for a, b in zip(rows, rows[1:]):
        if a.value is None or b.value is None:
            continue
        gap = abs(_point(b.value) - _point(a.value))
        if gap > threshold:
            jumps.append((a.x, b.x, gap))
    one_sided = {}
    for fx in flagged:
        fx = Fraction(fx)
        one_sided[fx] = {
            "value": slice_value(mean, h, fx, side).value,
            "left": one_sided_limit(mean, h, fx, side, -1),
            "right": one_sided_limit(mean, h, fx, side, +1),
        }
    return ScanResult(mean, side, rows, jumps, one_sided)


# ---------------------------------------------------------------------------
# point continuity
# ---------------------------------------------------------------------------

# removing a ball of radius 2**-k can spell out ~2**k sequence terms, so stop at 2**-12
DEFAULT_EPS = tuple(Fraction(1, 2 ** k) for k in range(1, 13))


@dataclass
class ProbeResult:
    mean: str
    verdict: str
    values: List[Optional[Value]]
    limit: Optional[Fraction]
    target: Optional[Value]
    stabilized: bool = False
    note: str = ""
    eps: List[Fraction] = field(default_factory=list)


def point_cont_probe(mean: str, h: CanonicalSet, x, eps: Optional[Sequence] = None) -> ProbeResult:
    """Does ``K(H - S(x, eps))`` tend to ``K(H)`` as ``eps -> 0+``?"""
    x = Fraction(x)
    eps = [Fraction(e) for e in (eps or DEFAULT_EPS)]
    target, reason = _try_value(mean, h)
    if target is None:
        return ProbeResult(mean, INAPPLICABLE, [], None, None, note=reason, eps=eps)
    vals = []
    for e in eps:
        try:
            part = subtract_ball(h, Ball(x, e), exact=False)
        except InfMeansError:
            vals.append(None)
            continue
        vals.append(_try_value(mean, part)[0])
    limit, exact = _limit_estimate(eps, vals)
    stable = len(vals) >= 3 and None not in vals[-3:] and len(set(vals[-3:])) == 1
    if limit is None:
        return ProbeResult(mean, INAPPLICABLE, vals, None, target, note="no ball removal in domain",
                           eps=eps)
    verdict = HOLDS if _same_limit(limit, target, exact) else VIOLATED
    return ProbeResult(mean, verdict, vals, limit, target, stable, eps=eps)


# ---------------------------------------------------------------------------
# sequences of sets: nested chains and images under converging maps
# ---------------------------------------------------------------------------

@dataclass
class SequenceResult:
    mean: str
    verdict: str
    values: List[Optional[Value]]
    limit_value: Optional[Value]
    even_limit: Optional[Fraction]
    odd_limit: Optional[Fraction]
    indices: List[int]
    trend: str = ""
    nested: Optional[bool] = None
    distances: List[Fraction] = field(default_factory=list)
    note: str = ""

    def value_at(self, n: int) -> Optional[Value]:
        return self.values[self.indices.index(n)]


def harmonic_scale(i: int) -> Fraction:
    return Fraction(1, i)


def _parity_limits(indices, values, scale=harmonic_scale):
    """Even- and odd-index limit estimates in ``h = scale(n)``, plus joint exactness."""
    out, exact = [], True
    for parity in (0, 1):
        hs = [scale(i) for i, v in zip(indices, values) if i % 2 == parity and v is not None]
        vs = [v for i, v in zip(indices, values) if i % 2 == parity and v is not None]
        lim, ex = _limit_estimate(hs, vs)
        out.append(lim)
        exact = exact and ex
    return out[0], out[1], exact


def _trend(limit_value, even, odd, exact) -> str:
    if limit_value is None:
        return DIVERGING if even is None or odd is None or even != odd else CONVERGING
    ok = _same_limit(even, limit_value, exact) and _same_limit(odd, limit_value, exact)
    return CONVERGING if ok else DIVERGING


def cantor_chain_probe(mean: str, chain: Sequence[CanonicalSet], tail: CanonicalSet,
                       start_index: int = 1, scale=harmonic_scale) -> SequenceResult:
    """Mean along a descending chain against the mean of its intersection.

    The chain must be nested (checked exactly) and ``tail`` must lie in every
    member; otherwise the verdict is ``inapplicable`` and the computed trend is
    still reported.  Sublimits are extrapolated in ``h = scale(n)``.
    """
    indices = list(range(start_index, start_index + len(chain)))
    values = [_try_value(mean, h)[0] for h in chain]
    tail_value, _ = _try_value(mean, tail)
    even, odd, exact = _parity_limits(indices, values, scale)
    trend = _trend(tail_value, even, odd, exact)
    nested: Optional[bool] = True
    note = ""
    for i in range(len(chain) - 1):
        r = is_subset(chain[i + 1], chain[i])
        if r is not True:
            nested = r
            note = f"member {indices[i + 1]} is not inside member {indices[i]}"
            break
    if nested and not all(is_subset(tail, h) for h in chain):
        nested = False
        note = "declared intersection is not inside every member"
    verdict = trend if nested else INAPPLICABLE
    return SequenceResult(mean, verdict, values, tail_value, even, odd, indices, trend, nested,
                          note=note)


def fcont_probe(mean: str, h: CanonicalSet, fs: Sequence[PLFunc],
                f_limit: Union[PLFunc, CanonicalSet], start_index: int = 1,
                scale=harmonic_scale) -> SequenceResult:
    """Mean of ``f_n(H)`` against the mean of the limit image.

    ``f_limit`` is either the limit map (its image is computed and the sup
    distances are reported) or a declared limit image, for limits that are not
    piecewise linear.
    """
    indices = list(range(start_index, start_index + len(fs)))
    values = []
    notes = []
    for n, f in zip(indices, fs):
        try:
            values.append(_try_value(mean, apply_pl(h, f))[0])
        except InfMeansError as exc:
            values.append(None)
            notes.append(f"f_{n}: {type(exc).__name__}")
    distances: List[Fraction] = []
    if isinstance(f_limit, PLFunc):
        distances = [sup_distance(f, f_limit) for f in fs]
        limit_image = apply_pl(h, f_limit)
    else:
        limit_image = f_limit
    limit_value, reason = _try_value(mean, limit_image)
    if limit_value is None:
        notes.append(f"limit image out of domain: {reason}")
    even, odd, exact = _parity_limits(indices, values, scale)
    trend = _trend(limit_value, even, odd, exact)
    verdict = trend if limit_value is not None else INAPPLICABLE
    return SequenceResult(mean, verdict, values, limit_value, even, odd, indices, trend,
                          distances=distances, note="; ".join(notes))


def shrink_to_point_probe(mean: str, sets: Sequence[CanonicalSet], x,
                          start_index: int = 1) -> ProbeResult:
    """``H_n ⊂ (x - 1/n, x + 1/n)`` forces ``|K(H_n) - x| <= 1/n``."""
    x = Fraction(x)
    vals = []
    for n, h in enumerate(sets, start_index):
        lo, hi = extent(h)
        r = Fraction(1, n)
        if not (x - r < lo and hi < x + r):
            return ProbeResult(mean, INAPPLICABLE, vals, None, x, note=f"H_{n} not within 1/{n} of x")
        v, reason = _try_value(mean, h)
        if v is None:
            return ProbeResult(mean, INAPPLICABLE, vals, None, x, note=reason)
        vals.append(v)
        lo_v, hi_v = (v.lo, v.hi) if isinstance(v, Bounds) else (v, v)
        if not (x - r <= lo_v and hi_v <= x + r):
            return ProbeResult(mean, VIOLATED, vals, None, x, note=f"H_{n} mean too far from x")
    return ProbeResult(mean, HOLDS, vals, _point(vals[-1]) if vals else None, x)


# ---------------------------------------------------------------------------
# slice-mean root finding
# ---------------------------------------------------------------------------

@dataclass
class RootResult:
    x: Fraction
    lo: Fraction
    hi: Fraction
    residual: Value
    kind: str  # "root" or "jump"
    iterations: int = 0


MEAN_VALUE = "mean-value"
FIXED_POINT = "fixed-point"


def slice_residual(mean: str, h: CanonicalSet, x, mode: str, target=None) -> Optional[Value]:
    """``(K(H^-x) + K(H^+x)) / 2`` minus ``K(H)`` (mean-value) or minus ``x`` (fixed-point)."""
    x = Fraction(x)
    left = slice_value(mean, h, x, "le").value
    right = slice_value(mean, h, x, "ge").value
    if left is None or right is None:
        return None
    if mode == FIXED_POINT:
        goal = x
    else:
        goal = target if target is not None else mean_eval(mean, h).value
    if all(isinstance(v, Fraction) for v in (left, right, goal)):
        return (left + right) / 2 - goal
    parts = [(v.lo, v.hi) if isinstance(v, Bounds) else (v, v) for v in (left, right, goal)]
    return Bounds((parts[0][0] + parts[1][0]) / 2 - parts[2][1],
                  (parts[0][1] + parts[1][1]) / 2 - parts[2][0])


def _sgn(v: Value) -> Optional[int]:
    if isinstance(v, Bounds):
        if v.lo > 0:
            return 1
        if v.hi < 0:
            return -1
        return None
    return (v > 0) - (v < 0)


def slice_mean_root(mean: str, h: CanonicalSet, mode: str = MEAN_VALUE, tol=Fraction(1, 10 ** 9),
                    max_iter: int = 400) -> RootResult:
    """Bisect the slice residual on ``[liminf H, limsup H]``.

    Endpoint signs are exact.  The result is a root when the residual's change
    over the final bracket is negligible next to its change over the whole
    range, and a jump (a bracketing pair around a discontinuity) otherwise.
    """
    if mode not in (MEAN_VALUE, FIXED_POINT):
        raise ValueError(f"unknown mode {mode!r}")
    tol = Fraction(tol)
    b = bounds(h)
    if b.liminf is None:
        raise NoSignChange("set has no accumulation points")
    target = None
    if mode == MEAN_VALUE:
        r = mean_eval(mean, h)
        if not r.in_domain:
            raise OutOfDomain(r.domain.reason, r.domain.message)
        target = r.value
        t = _point(target)
        if not b.liminf < t < b.limsup:
            raise NoSignChange("mean-value mode needs liminf H < K(H) < limsup H")
    lo, hi = b.liminf, b.limsup

    def res(x):
        return slice_residual(mean, h, x, mode, target)

    # step inside the range where an end slice falls out of the domain
    r_lo, r_hi = res(lo), res(hi)
    span = hi - lo
    k = 1
    while (r_lo is None or r_hi is None) and k < 64:
        if r_lo is None:
            lo = b.liminf + span / 2 ** (64 - k)
            r_lo = res(lo)
        if r_hi is None:
            hi = b.limsup - span / 2 ** (64 - k)
            r_hi = res(hi)
        k += 1
    if r_lo is None or r_hi is None:
        raise NoSignChange("slice means undefined near the ends of the range")
    for x, r in ((lo, r_lo), (hi, r_hi)):
        if _sgn(r) == 0:
            return RootResult(x, x, x, r, "root")
    s_lo, s_hi = _sgn(r_lo), _sgn(r_hi)
    if s_lo is None or s_hi is None or s_lo == s_hi:
        raise NoSignChange("residual has the same sign at both ends")
    total_change = abs(_point(r_hi) - _point(r_lo))
    it = 0
    while hi - lo > tol and it < max_iter:
        it += 1
        mid = (lo + hi) / 2
        r_mid = res(mid)
        s = None if r_mid is None else _sgn(r_mid)
        if s == 0:
            return RootResult(mid, mid, mid, r_mid, "root", it)
        if s is None:
            # undecided sign: the bracket cannot be refined further
            break
        if s == s_lo:
            lo, r_lo = mid, r_mid
        else:
            hi, r_hi = mid, r_mid
    x = (lo + hi) / 2
    r_x = res(x)
    final_change = abs(_point(r_hi) - _point(r_lo))
    kind = "jump" if final_change > total_change / 1000 else "root"
    return RootResult(x, lo, hi, r_x if r_x is not None else r_lo, kind, it)
