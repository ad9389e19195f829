import argparse
import json
import random
from fractions import Fraction as F

import pytest

from infmeans.errors import DSLSyntaxError, InvalidAtom
from infmeans.setcore import (
    EMPTY,
    HARMGEOM,
    HARMONIC,
    Bounds,
    CantorPiece,
    FinitePoints,
    Interval,
    Seq,
    canonicalize,
)
from infmeans.shell.cli import rational
from infmeans.shell.dsl import format_set, parse_dsl
from infmeans.shell.fmt import decimal_text, format_value, value_text

from cli_cases import GOLDEN_RUNS, check_golden, run_cli, run_cli_full
from oracles import random_roundtrip_set


# --- DSL -----------------------------------------------------------------------

def test_parse_atoms():
    assert parse_dsl("[0,1]") == canonicalize([Interval(0, 1)])
    assert parse_dsl("{3, -1/2}") == canonicalize([FinitePoints.of(3, F(-1, 2))])
    assert parse_dsl("{}") == EMPTY
    assert parse_dsl("seq(1;harm;-1/2;3)") == canonicalize([Seq(1, HARMONIC, F(-1, 2), start=3)])
    h = parse_dsl("seq(0;harmgeom;1,2;1/3)")
    assert h == canonicalize([Seq(0, HARMGEOM, 1, 2, F(1, 3))])
    assert parse_dsl("cantor(2,1/3)") == canonicalize([CantorPiece(2, F(1, 3))])


def test_parse_operations():
    assert parse_dsl("shift([0,1],2)") == parse_dsl("[2,3]")
    assert parse_dsl("refl([0,1],3)") == parse_dsl("[5,6]")
    assert parse_dsl("affine([0,1],-2,1)") == parse_dsl("[-1,1]")
    assert parse_dsl("cut_le([0,4],1)") == parse_dsl("[0,1]")
    assert parse_dsl("clip([0,4] | [6,7],1,6)") == parse_dsl("[1,4] | {6}")
    assert parse_dsl("delball([0,4],2,1)") == parse_dsl("[0,1] | [3,4]")
    assert parse_dsl("([0,1] | [1,2])") == parse_dsl("[0,2]")


@pytest.mark.parametrize("text, pos", [
    ("[0,1", 4),
    ("[0;1]", 2),
    ("seq(0;wave;1)", 6),
    ("frob([0,1],2)", 0),
    ("[0,1] |", 7),
])
def test_syntax_errors_carry_positions(text, pos):
    with pytest.raises(DSLSyntaxError) as info:
        parse_dsl(text)
    assert info.value.position == pos
    assert f"position {pos}" in str(info.value)


def test_invalid_atoms_carry_reason_and_position():
    with pytest.raises(InvalidAtom) as info:
        parse_dsl("[0,1] | [2,1]")
    assert info.value.position == 8
    with pytest.raises(InvalidAtom):
        parse_dsl("seq(0;geom;1;2)")
    with pytest.raises(DSLSyntaxError):
        parse_dsl("[0,1/0]")


def test_round_trip_sample():
    rng = random.Random(11)
    for _ in range(50):
        s = random_roundtrip_set(rng)
        text = format_set(s)
        assert parse_dsl(text) == s
        assert format_set(parse_dsl(text)) == text


def test_residual_marked_with_tilde():
    s = canonicalize([Interval(5, 6)], [CantorPiece(0, 1)])
    assert format_set(s) == "[5,6] ~ cantor(0,1)"


# --- value formatting --------------------------------------------------------------

def test_format_value():
    assert format_value(F(29, 6)) == "29/6 (4.83333333333)"
    assert format_value(F(6)) == "6 (6.00000000000)"
    assert format_value(F(0)) == "0 (0.00000000000)"
    assert format_value(Bounds(F(1, 3), F(1, 2))) == "[0.33333333333, 0.50000000000] approx"
    assert format_value(None) == "undefined"
    assert value_text(Bounds(F(1), F(2))) == "1..2"
    assert decimal_text(F(-2, 3), 3) == "-0.667"


def test_rational_argument():
    assert rational("-3/4") == F(-3, 4)
    for bad in ("0.5", "1/0", "x"):
        with pytest.raises(argparse.ArgumentTypeError):
            rational(bad)


# --- CLI ------------------------------------------------------------------------

def test_eval_human():
    code, text = run_cli("eval", "--mean", "avg", "--set", "[0,1] | [11,12]")
    assert code == 0 and text == "6 (6.00000000000)\n"


def test_eval_out_of_domain():
    code, text, err = run_cli_full("eval", "--mean", "avg", "--set", "seq(0;harm;1)")
    assert code == 1 and text == ""
    assert err.startswith("out of domain: NotAnSSet")


def test_usage_errors():
    assert run_cli()[0] == 1
    assert run_cli("eval", "--mean", "nope", "--set", "[0,1]")[0] == 1
    assert run_cli("eval", "--mean", "avg", "--set", "[0,")[0] == 1
    assert run_cli("scan", "--mean", "avg", "--set", "[0,1]", "--from", "0.5", "--to", "1",
                   "--step", "1/4")[0] == 1
    assert run_cli("check", "--property", "condensed", "--mean", "avg")[0] == 1
    assert run_cli("check", "--property", "condensed", "--mean", "avg", "--fixture", "zzz")[0] == 1
    code, _, err = run_cli_full("eval", "--mean", "avg", "--set", "[0,")
    assert code == 1 and err == "error: DSLSyntaxError: expected an integer at end of input at position 3\n"


def test_check_exit_codes():
    code, text = run_cli("check", "--property", "strict-strong-internal", "--mean", "midrange",
                         "--fixture", "midrange-witness")
    assert code == 2 and "violated" in text
    code, text = run_cli("check", "--property", "base-monotone", "--mean", "avg",
                         "--fixture", "base-counterexample")
    assert code == 0 and "inapplicable" in text
    code, text = run_cli("check", "--property", "union-monotone", "--mean", "avg",
                         "--seed", "1", "--trials", "20", "--json")
    doc = json.loads(text)
    assert code == 0 and doc["verdict"] == "holds-on-instances" and doc["seed"] == 1


def test_root_command():
    code, text = run_cli("root", "--mean", "avg", "--set", "[0,1]", "--mode", "fixed-point")
    assert code == 0
    assert text.splitlines()[0] == "x = 1/2 (0.50000000000)"
    assert "kind = root" in text


def test_scan_to_file(tmp_path):
    target = tmp_path / "scan.csv"
    code, text = run_cli("scan", "--mean", "avg", "--set", "[0,2]", "--from", "1", "--to", "2",
                         "--step", "1/2", "--out", str(target))
    assert code == 0 and text == ""
    assert target.read_text().splitlines() == [
        "x,value,exact,in_domain", "1,1/2,true,true", "3/2,3/4,true,true", "2,1,true,true"]


def test_suite_command(tmp_path):
    report = tmp_path / "r.json"
    code, text = run_cli("suite", "paper", "--report", str(report))
    assert code == 0
    assert text.strip().splitlines()[-1].endswith("0 failed, 2 flagged")
    assert json.loads(report.read_text())["failed"] == 0


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_golden_outputs(name):
    check_golden(name)
