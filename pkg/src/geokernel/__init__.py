"""Exact constructive plane geometry: reals, relations, constructions, axiom checks."""
from .errors import GeoError
from .exact import DEFAULT_FUEL, Fuel, Real, Surd
from .kernel import AngleTriple, Point, RelationKind, Segment, relation
from .verdict import State, Verdict, WitnessIndex

__version__ = "0.1.0"

__all__ = [
    "AngleTriple", "DEFAULT_FUEL", "Fuel", "GeoError", "Point", "Real", "RelationKind",
    "Segment", "State", "Surd", "Verdict", "WitnessIndex", "relation",
]
