"""Exact representation of real subsets and the operations on them."""

from infmeans.setcore.atoms import (
    GEOMETRIC,
    HARMGEOM,
    HARMONIC,
    CantorPiece,
    Dim,
    FinitePoints,
    Interval,
    Rat,
    Seq,
    rat,
)
from infmeans.setcore.canonical import (
    EMPTY,
    Ball,
    CanonicalSet,
    DegenerateMapWarning,
    affine_map,
    canonicalize,
    cut,
    from_atoms,
    intersect_interval,
    member,
    reflect,
    remove_points,
    slice_set,
    subtract_ball,
    union,
)
from infmeans.setcore.geometry import Bounds, MeasureResult, geometry, ratio
from infmeans.setcore.plfunc import PLFunc, apply_pl, sup_distance
from infmeans.setcore.relations import are_disjoint, intersect, is_subset, remove_countable
from infmeans.setcore.topology import (
    CardTag,
    SetBounds,
    bounds,
    cardinality,
    closure,
    condensation,
    derived,
    isolated_points,
    structure_points,
)

__all__ = [name for name in dir() if not name.startswith("_")]
