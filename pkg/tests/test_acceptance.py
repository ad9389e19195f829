"""Acceptance criteria, each at its stated tolerance.

Every test carries a ``criterion`` marker; conftest prints one PASS/FAIL line
per criterion after the run.
"""

import random
import time
from fractions import Fraction as F

import pytest

from infmeans.means import mean_eval, mean_value
from infmeans.proplab import fixtures as fx
from infmeans.proplab.generators import Profile, gen_random_set
from infmeans.proplab.laws import internality_check, monotonicity_check, shift_invariance_check, STRONG
from infmeans.proplab.probes import (
    FIXED_POINT,
    MEAN_VALUE,
    cantor_chain_probe,
    fcont_probe,
    slice_mean_root,
    slice_value,
)
from infmeans.proplab.report import HOLDS, INAPPLICABLE, VIOLATED
from infmeans.proplab.suites import AVG_LAWS, META_PLAN, MLIS_LAWS, run_law, run_meta
from infmeans.setcore import CantorPiece, Interval, canonicalize, from_atoms, member
from infmeans.shell.dsl import format_set, parse_dsl

from cli_cases import GOLDEN_RUNS, check_golden
from oracles import (
    definitional_member,
    grid_scan_root,
    membership_probes,
    random_interval_union,
    random_roundtrip_set,
    riemann_avg,
)

criterion = pytest.mark.criterion
LAW_TRIALS = 200


def ivs(*pairs):
    return canonicalize([Interval(F(a), F(b)) for a, b in pairs])


CANTOR_PLUS = canonicalize([CantorPiece(0, 1), Interval(1, 2)])


# --- 1 --------------------------------------------------------------------------

C1 = "exact avg values on worked examples"


@criterion(1, C1)
@pytest.mark.parametrize("pairs, want", [
    (((0, 1), (11, 12)), F(6)),
    (((0, 2), (12, 13)), F(29, 6)),
    (((5, 13),), F(9)),
    (((2, 17),), F(19, 2)),
    (((0, 2), (5, 17)), F(67, 7)),
    (((0, 17),), F(17, 2)),
    (((0, 4),), F(2)),
    (((0, 2), (3, 4)), F(11, 6)),
])
def test_c1_interval_unions(pairs, want):
    r = mean_eval("avg", ivs(*pairs))
    assert r.exact and r.value == want


@criterion(1, C1)
def test_c1_cantor():
    r = mean_eval("avg", from_atoms(CantorPiece(0, 1)))
    assert r.exact and r.value == F(1, 2)


@criterion(1, C1)
def test_c1_cantor_plus_interval_slices():
    assert slice_value("avg", CANTOR_PLUS, 1, "le").value == F(1, 2)
    for k in (10, 100):
        assert slice_value("avg", CANTOR_PLUS, 1 + F(1, k), "le").value == 1 + F(1, 2 * k)


# --- 2 --------------------------------------------------------------------------

C2 = "non-convergence reproductions"


@criterion(2, C2)
def test_c2_oscillating_chain():
    chain, tail, start = fx.oscillating_chain(1000)
    r = cantor_chain_probe("avg", chain, tail, start)
    even, odd = r.values[-2], r.values[-1]  # H_2000 and H_2001
    assert abs(even - F(1, 3)) <= F(1, 1000)
    assert abs(odd - F(2, 3)) <= F(1, 1000)
    assert r.limit_value == F(1, 2)
    assert (r.even_limit, r.odd_limit) == (F(1, 3), F(2, 3))


@criterion(2, C2)
def test_c2_folding_maps():
    maps, limit, start = fx.folding_maps(1000)
    r = fcont_probe("avg", ivs((0, 1), (2, 3)), maps, limit, start)
    assert abs(r.values[-2] - F(1, 3)) <= F(1, 1000)
    assert abs(r.values[-1] - F(2, 3)) <= F(1, 1000)
    assert (r.even_limit, r.odd_limit, r.limit_value) == (F(1, 3), F(2, 3), F(1, 2))
    assert r.distances[-1] <= F(1, 1000)


@criterion(2, C2)
def test_c2_interval_only_avg_under_cantor_function_maps():
    r = fcont_probe("avg1", fx.cantor_with_interval(), fx.cantor_step_maps(6), ivs((0, 1)))
    assert r.values == [F(1, 4)] * 6
    assert r.limit_value == F(1, 2)


# --- 3 --------------------------------------------------------------------------

@criterion(3, "mlis accumulation chain")
def test_c3_mlis_chain():
    chain, tail, _ = fx.accumulation_chain(5)
    assert [mean_value("mlis", h) for h in chain] == [F(5, 2)] * 5
    assert mean_value("mlis", tail) == 2


# --- 4 --------------------------------------------------------------------------

C4 = "seeded law suites, deterministic, midrange witness"
LAW_CASES = [("avg", law) for law in AVG_LAWS] + [("mlis", law) for law in MLIS_LAWS]


@criterion(4, C4)
@pytest.mark.parametrize("mean, law", LAW_CASES, ids=[f"{m}-{p}" for m, p in LAW_CASES])
def test_c4_law_suite(mean, law):
    first = run_law(law, mean, seed=0, trials=LAW_TRIALS)
    assert first.applicable >= LAW_TRIALS
    assert first.failures == [] and first.verdict == HOLDS
    again = run_law(law, mean, seed=0, trials=LAW_TRIALS)
    assert again.as_report().to_dict() == first.as_report().to_dict()
    assert (again.trials, again.applicable) == (first.trials, first.applicable)


@criterion(4, C4)
def test_c4_midrange_fails_strong_internality():
    rep = internality_check("midrange", fx.midrange_witness(), STRONG)
    assert rep.verdict == VIOLATED
    assert rep.witness_values["K(H)"] == F(1, 2)
    assert rep.witness_values["liminf"] == 1


# --- 5 --------------------------------------------------------------------------

C5 = "hypothesis gating on weakening fixtures"


@criterion(5, C5)
def test_c5_part_shift_monotone():
    rep = monotonicity_check("part-shift", "avg", {"H1": ivs((0, 1)), "H2": ivs((0, 1), (11, 12)), "x": 1})
    assert rep.verdict == INAPPLICABLE
    assert rep.witness_values == {"K(H1∪H2)": F(6), "K(H1∪(H2+x))": F(29, 6)}


@criterion(5, C5)
def test_c5_union_monotone():
    rep = monotonicity_check("union", "avg", {"A": ivs((5, 13)), "B": ivs((2, 5), (13, 17)),
                                              "C": ivs((0, 2), (13, 17))})
    assert rep.verdict == INAPPLICABLE
    assert rep.witness_values == {"K(A)": F(9), "K(A∪B)": F(19, 2), "K(A∪C)": F(67, 7),
                                  "K(A∪B∪C)": F(17, 2)}


@criterion(5, C5)
def test_c5_part_shift_invariance():
    rep = shift_invariance_check("part", "avg", {"H1": ivs((0, 2), (3, 4)), "H2": ivs((2, 3)), "x": 1})
    assert rep.verdict == INAPPLICABLE
    assert rep.witness_values == {"K(H1∪H2)": F(2), "K(H1∪(H2+x))": F(11, 6)}


# --- 6 --------------------------------------------------------------------------

C6 = "slice-mean root finder"
TOL = F(1, 10 ** 9)


@criterion(6, C6)
@pytest.mark.parametrize("mode", [FIXED_POINT, MEAN_VALUE])
def test_c6_unit_interval(mode):
    r = slice_mean_root("avg", ivs((0, 1)), mode)
    assert r.x == F(1, 2)


@criterion(6, C6)
@pytest.mark.parametrize("pairs", [((0, 1), (2, 4)), ((0, 1), (F(7, 3), F(41, 10)))])
def test_c6_two_intervals_against_grid_scan(pairs):
    r = slice_mean_root("avg", ivs(*pairs), MEAN_VALUE, TOL)
    assert r.kind == "root"
    assert r.hi - r.lo <= TOL
    o_lo, o_hi = grid_scan_root(pairs, MEAN_VALUE)
    assert abs(float((r.lo + r.hi) / 2) - (o_lo + o_hi) / 2) <= 1e-9


# --- 7 --------------------------------------------------------------------------

C7 = "oracle equivalence"


@criterion(7, C7)
def test_c7_riemann_oracle():
    rng = random.Random(20240607)
    for _ in range(100):
        pairs = random_interval_union(rng, rng.randint(1, 6))
        got = mean_value("avg", canonicalize([Interval(a, b) for a, b in pairs]))
        assert abs(float(got) - riemann_avg(pairs, 10 ** 6)) <= 1e-9, pairs


def _membership_sets():
    rng = random.Random(77)
    for i in range(20):
        prof = Profile(intervals=rng.randint(0, 2), points=rng.randint(0, 2),
                       seqs=rng.randint(1, 3), cantor=rng.randint(0, 2))
        yield gen_random_set(500 + i, prof)
    for _ in range(20):
        yield random_roundtrip_set(rng)


@criterion(7, C7)
def test_c7_membership_oracle():
    rng = random.Random(8)
    for h in _membership_sets():
        for x in membership_probes(rng, h, 1000):
            assert member(h, x) == definitional_member(h, x), (format_set(h), x)


# --- 8 --------------------------------------------------------------------------

C8 = "implication meta-suite"
REQUIRED_META = {("disjoint-equal-mean", "avg"), ("disjoint-equal-mean", "mlis"),
                 ("union-equality", "avg"), ("base-monotone-convex", "mlis")}


@criterion(8, C8)
@pytest.mark.parametrize("prop, mean", META_PLAN, ids=[f"{p}-{m}" for p, m in META_PLAN])
def test_c8_meta(prop, mean):
    res = run_meta(prop, mean, seed=0, trials=LAW_TRIALS)
    assert res.failures == [] and res.verdict == HOLDS
    if (prop, mean) in REQUIRED_META:
        assert res.applicable >= LAW_TRIALS


# --- 9 --------------------------------------------------------------------------

C9 = "parser round trip and golden CLI output"


@criterion(9, C9)
def test_c9_round_trip():
    rng = random.Random(500)
    for _ in range(500):
        s = random_roundtrip_set(rng)
        text = format_set(s)
        assert parse_dsl(text) == s, text


@criterion(9, C9)
@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_c9_golden(name):
    check_golden(name)


# --- 10 -------------------------------------------------------------------------

@criterion(10, "whole suite under two minutes")
@pytest.mark.run_last
def test_c10_suite_time(request):
    elapsed = time.monotonic() - request.config.session_started
    print(f"suite time so far: {elapsed:.1f}s")
    assert elapsed < 120
