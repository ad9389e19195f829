import random
import warnings
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infmeans.errors import EmptySet, InvalidAtom
from infmeans.setcore import (
    EMPTY,
    GEOMETRIC,
    HARMGEOM,
    HARMONIC,
    Ball,
    CantorPiece,
    DegenerateMapWarning,
    Dim,
    FinitePoints,
    Interval,
    PLFunc,
    Seq,
    affine_map,
    apply_pl,
    are_disjoint,
    bounds,
    canonicalize,
    cardinality,
    closure,
    condensation,
    cut,
    derived,
    from_atoms,
    geometry,
    intersect,
    is_subset,
    isolated_points,
    member,
    reflect,
    remove_countable,
    slice_set,
    subtract_ball,
    sup_distance,
    union,
)
from infmeans.proplab.generators import Profile, gen_random_set
from infmeans.setcore.relations import piece_meet

from oracles import definitional_member, membership_probes


def ivs(*pairs):
    return canonicalize([Interval(F(a), F(b)) for a, b in pairs])


# --- atoms -------------------------------------------------------------------

class TestAtoms:
    def test_interval_needs_order(self):
        with pytest.raises(InvalidAtom):
            Interval(1, 1)
        with pytest.raises(InvalidAtom):
            Interval(2, 1)

    def test_seq_validation(self):
        with pytest.raises(InvalidAtom):
            Seq(0, HARMONIC, 0)
        with pytest.raises(InvalidAtom):
            Seq(0, GEOMETRIC, 1, q=F(3, 2))
        with pytest.raises(InvalidAtom):
            Seq(0, HARMGEOM, 1, -1, F(1, 2))
        with pytest.raises(InvalidAtom):
            Seq(0, "other", 1)
        with pytest.raises(InvalidAtom):
            Seq(0, HARMONIC, 1, start=0)

    def test_seq_terms_and_index(self):
        s = Seq(5, HARMONIC, -2, start=3)
        assert s.term(3) == 5 - F(2, 3)
        assert s.index_of(5 - F(2, 7)) == 7
        assert s.index_of(5 - F(2, 2)) is None  # before start
        assert not s.contains(5)  # the limit is not a term
        assert s.inf == 5 - F(2, 3) and s.sup == 5

    def test_geometric_terms(self):
        s = Seq(1, GEOMETRIC, 4, q=F(1, 2))
        assert [s.term(n) for n in (1, 2, 3)] == [3, 2, F(3, 2)]
        assert s.contains(1 + F(4, 2 ** 10))

    def test_index_range(self):
        s = Seq(0, HARMONIC, 1)
        assert s.index_range(F(1, 10), F(1, 2)) == (2, 10)
        assert s.index_range(None, F(1, 3)) == (3, None)
        assert s.index_range(2, 3) is None

    def test_cantor_piece_equality_by_hull(self):
        assert CantorPiece(0, 1, 1) == CantorPiece(0, F(1, 3))
        a, b = CantorPiece(0, 1).children()
        assert (a.lo, a.hi, b.lo, b.hi) == (0, F(1, 3), F(2, 3), 1)

    def test_cantor_membership(self):
        c = CantorPiece(0, 1)
        assert c.contains(F(1, 4)) and c.contains(F(3, 4)) and c.contains(F(2, 3))
        assert not c.contains(F(1, 2)) and not c.contains(F(5, 9))


# --- canonical form ------------------------------------------------------------

class TestCanonical:
    def test_intervals_merge(self):
        assert ivs((0, 1), (1, 2), (F(3, 2), 3)) == ivs((0, 3))

    def test_points_absorbed(self):
        s = canonicalize([Interval(0, 1), FinitePoints.of(F(1, 2), 1, 2)])
        assert s.points == (F(2),)

    def test_seq_terms_inside_interval_dropped(self):
        s = canonicalize([Interval(0, F(1, 3)), Seq(0, HARMONIC, 1)])
        assert s.seqs == [] and s.points == (F(1, 2), F(1))

    def test_point_extends_sequence(self):
        s = canonicalize([FinitePoints.of(0), Seq(1, HARMONIC, -1, start=2)])
        assert s.seqs == [Seq(1, HARMONIC, -1)]

    def test_cantor_pieces_merge_siblings(self):
        a, b = CantorPiece(0, 1).children()
        assert canonicalize([a, b]) == from_atoms(CantorPiece(0, 1))

    def test_cantor_inside_interval(self):
        s = canonicalize([CantorPiece(0, 1), Interval(0, F(1, 3))])
        assert s.pieces == [CantorPiece(F(2, 3), F(1, 3))]

    def test_empty(self):
        assert canonicalize([]).is_empty and not EMPTY
        assert str(EMPTY) == "{}"

    def test_union_commutes(self):
        a = canonicalize([Interval(0, 1), Seq(3, HARMONIC, 1)])
        b = canonicalize([CantorPiece(4, 1), FinitePoints.of(-1)])
        assert union(a, b) == union(b, a) == a | b

    def test_cut_and_slice(self):
        h = ivs((0, 1), (2, 3))
        assert cut(h, F(1, 2), F(5, 2)) == ivs((F(1, 2), 1), (2, F(5, 2)))
        assert slice_set(h, 2, "le") == canonicalize([Interval(0, 1), FinitePoints.of(2)])
        assert slice_set(h, 2, "ge") == ivs((2, 3))

    def test_cut_sequence_keeps_tail(self):
        s = canonicalize([Seq(0, HARMONIC, 1)])
        assert slice_set(s, F(1, 3), "le") == canonicalize([Seq(0, HARMONIC, 1, start=3)])
        assert slice_set(s, F(1, 3), "ge") == canonicalize([FinitePoints.of(1, F(1, 2), F(1, 3))])

    def test_subtract_ball(self):
        assert subtract_ball(ivs((0, 1)), Ball(F(1, 2), F(1, 4))) == ivs((0, F(1, 4)), (F(3, 4), 1))

    def test_subtract_ball_drops_sequence_terms(self):
        h = canonicalize([Seq(0, HARMONIC, 1), Seq(1, HARMONIC, 1), Seq(2, HARMONIC, 1)])
        out = subtract_ball(h, Ball(0, F(1, 10)))
        # 1/n with n >= 11 is removed (the ball is open), 1/10 stays
        assert member(out, F(1, 10)) and not member(out, F(1, 11))
        assert member(out, 1 + F(1, 1000))

    def test_affine_and_reflect(self):
        h = canonicalize([Interval(0, 1), Seq(3, HARMONIC, 1), CantorPiece(5, 1)])
        g = affine_map(h, -2, 1)
        # 1 -> -1, 3 + 1/7 -> -5 - 2/7, 5 -> -9
        assert member(g, F(-1)) and member(g, F(-5) - F(2, 7)) and member(g, F(-9))
        assert not member(g, F(-5))
        assert reflect(reflect(h, F(7, 3)), F(7, 3)) == h
        assert reflect(from_atoms(CantorPiece(0, 1)), F(1, 2)) == from_atoms(CantorPiece(0, 1))

    def test_degenerate_affine_warns(self):
        with warnings.catch_warnings(record=True) as w:
            warnings.simplefilter("always")
            out = affine_map(ivs((0, 1)), 0, 3)
        assert out == canonicalize([FinitePoints.of(3)])
        assert any(issubclass(x.category, DegenerateMapWarning) for x in w)


# --- topology -----------------------------------------------------------------

class TestTopology:
    three = canonicalize([Seq(0, HARMONIC, 1), Seq(1, HARMONIC, 1), Seq(2, HARMONIC, 1)])

    def test_bounds_of_three_clusters(self):
        b = bounds(self.three)
        # inf is not attained: the terms 1/n only approach 0
        assert (b.inf, b.sup, b.liminf, b.limsup) == (0, 3, 0, 2)

    def test_derived_set(self):
        assert derived(self.three).set == canonicalize([FinitePoints.of(0, 1, 2)])
        d = derived(self.three, "to-fixpoint")
        assert d.rank == 1 and d.set.is_empty

    def test_derived_keeps_perfect_part(self):
        h = canonicalize([Interval(0, 1), FinitePoints.of(3), CantorPiece(5, 1)])
        assert derived(h).set == condensation(h) == canonicalize([Interval(0, 1), CantorPiece(5, 1)])
        assert derived(h, "to-fixpoint").rank is None

    def test_closure_adds_limits(self):
        h = canonicalize([Seq(0, HARMONIC, 1)])
        assert member(closure(h), 0) and not member(h, 0)

    def test_isolated_points(self):
        h = canonicalize([Interval(0, 1), FinitePoints.of(2), Seq(1, HARMONIC, 1)])
        iso = isolated_points(h)
        assert member(iso, F(2)) and member(iso, F(3, 2)) and not member(iso, F(1, 2))

    def test_cardinality(self):
        assert str(cardinality(canonicalize([FinitePoints.of(1, 2)]))) == "finite(2)"
        assert cardinality(self.three).kind == "countably-infinite"
        assert cardinality(from_atoms(CantorPiece(0, 1))).kind == "uncountable"

    def test_empty_bounds(self):
        with pytest.raises(EmptySet):
            bounds(EMPTY)


# --- geometry -----------------------------------------------------------------

class TestGeometry:
    def test_dimension_order(self):
        assert Dim.D0 < Dim.DC < Dim.D1

    def test_interval_measure(self):
        g = geometry(ivs((0, 2), (12, 13)))
        assert g.dim == Dim.D1 and g.measure == 3 and g.moment == F(29, 2)

    def test_top_dimension_only(self):
        g = geometry(canonicalize([Interval(0, 1), CantorPiece(4, 1), FinitePoints.of(9)]))
        assert g.measure == 1 and g.moment == F(1, 2)

    def test_cantor_measure(self):
        g = geometry(from_atoms(CantorPiece(0, 3)))
        assert g.dim == Dim.DC and g.exact


# --- relations ----------------------------------------------------------------

class TestRelations:
    def test_disjoint(self):
        assert are_disjoint(ivs((0, 1)), ivs((2, 3))) is True
        assert are_disjoint(ivs((0, 1)), ivs((1, 3))) is False
        assert are_disjoint(canonicalize([Seq(0, HARMONIC, 1)]),
                            canonicalize([Seq(0, HARMONIC, -1)])) is True
        assert are_disjoint(canonicalize([Seq(0, HARMONIC, 1)]),
                            canonicalize([Seq(0, HARMONIC, 2)])) is False

    def test_harmonic_vs_perturbed(self):
        a = canonicalize([Seq(5, HARMONIC, 1)])
        b = canonicalize([Seq(5, HARMGEOM, 1, 1, F(1, 2))])
        assert are_disjoint(a, b) is True

    def test_cantor_disjointness(self):
        c = from_atoms(CantorPiece(0, 1))
        assert are_disjoint(c, ivs((F(1, 3) + F(1, 100), F(2, 3) - F(1, 100)))) is True
        assert are_disjoint(c, ivs((F(1, 2), F(3, 4)))) is False

    def test_subset(self):
        assert is_subset(ivs((1, 2)), ivs((0, 3))) is True
        assert is_subset(from_atoms(CantorPiece(0, F(1, 3))), from_atoms(CantorPiece(0, 1))) is True
        assert is_subset(ivs((0, 3)), ivs((1, 2))) is False
        assert is_subset(canonicalize([Seq(0, HARMONIC, 1, start=4)]),
                         canonicalize([Seq(0, HARMONIC, 1)])) is True

    def test_intersect(self):
        a = canonicalize([Interval(0, 1), Seq(5, HARMONIC, 1)])
        b = canonicalize([Interval(2, 3), Seq(5, HARMONIC, 1)])
        assert intersect(a, b) == canonicalize([Seq(5, HARMONIC, 1)])
        assert intersect(ivs((0, 2)), ivs((1, 3))) == ivs((1, 2))

    def test_piece_meet(self):
        whole = CantorPiece(0, 1)
        right = CantorPiece(F(2, 3), 1, 1)
        assert piece_meet(whole, right) == ([right], [])
        # [0, 1/3] and its translate by 1/3 share only the point 1/3
        assert piece_meet(CantorPiece(0, 1, 1), CantorPiece(F(1, 3), 1, 1)) == ([], [F(1, 3)])

    def test_remove_countable(self):
        h = canonicalize([Interval(0, 1), Seq(3, HARMONIC, 1), FinitePoints.of(7)])
        v = canonicalize([FinitePoints.of(7, 4, F(1, 2))])
        out = remove_countable(h, v)
        assert not member(out, 7) and not member(out, 4) and member(out, F(7, 2))
        assert member(out, F(1, 2))  # intervals stay whole


# --- piecewise-linear maps ----------------------------------------------------

class TestPL:
    def test_image_of_intervals(self):
        f = PLFunc((0, 1, 2, 3), (0, 1, 1, 3))
        assert apply_pl(ivs((0, 3)), f) == ivs((0, 3))
        assert apply_pl(ivs((1, 2)), f) == canonicalize([FinitePoints.of(1)])

    def test_sup_distance(self):
        assert sup_distance(PLFunc((0, 1), (0, 1)), PLFunc((0, 1), (0, F(1, 2)))) == F(1, 2)


# --- property-based ------------------------------------------------------------

rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero = rats.filter(lambda x: x != 0)
profiles = st.builds(Profile, intervals=st.integers(0, 2), points=st.integers(0, 2),
                     seqs=st.integers(0, 2), cantor=st.integers(0, 1)).filter(
    lambda p: p.atom_count > 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), profiles, nonzero, rats, nonzero, rats)
def test_affine_maps_compose(seed, prof, a1, b1, a2, b2):
    h = gen_random_set(seed, prof)
    assert affine_map(affine_map(h, a1, b1), a2, b2) == affine_map(h, a2 * a1, a2 * b1 + b2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), profiles, rats)
def test_reflection_is_an_involution(seed, prof, s):
    h = gen_random_set(seed, prof)
    assert reflect(reflect(h, s), s) == h


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), profiles)
def test_union_idempotent_and_canonical(seed, prof):
    h = gen_random_set(seed, prof)
    assert union(h, h) == h
    assert canonicalize(h.atoms, h.residual) == h


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), profiles, rats)
def test_slices_cover_the_set(seed, prof, x):
    h = gen_random_set(seed, prof)
    left, right = slice_set(h, x, "le"), slice_set(h, x, "ge")
    assert union(left, right) == h
    assert is_subset(left, h) is not False and is_subset(right, h) is not False


def test_membership_matches_definitions():
    """Definitional membership on 1000 probes for each of 25 generated sets."""
    rng = random.Random(5)
    for trial in range(25):
        prof = Profile(intervals=rng.randint(0, 2), points=rng.randint(0, 2),
                       seqs=rng.randint(1, 2), cantor=rng.randint(0, 2))
        h = gen_random_set(1000 + trial, prof)
        for x in membership_probes(rng, h, 1000):
            assert member(h, x) == definitional_member(h, x), (str(h), x)
