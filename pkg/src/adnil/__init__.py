"""Ad-nilpotent ideals of type A_n: basic moves, nilpotent orbits and enumeration."""

from .core import (
    BallotSequence, ConsistencyError, Partition, Root, RootIdeal,
    ballot_to_ideal, closure, enumerate_ideals, ideal_to_ballot,
    parse_ideal, format_ideal,
)
from .jordan import gerstenhaber_partition, generic_orbit_partition, kreweras_partition
from .moves import equivalence_classes, normalize_to_parabolic

__version__ = "0.1.0"

__all__ = [
    "BallotSequence", "ConsistencyError", "Partition", "Root", "RootIdeal",
    "ballot_to_ideal", "closure", "enumerate_ideals", "ideal_to_ballot",
    "parse_ideal", "format_ideal", "gerstenhaber_partition",
    "generic_orbit_partition", "kreweras_partition", "equivalence_classes",
    "normalize_to_parabolic", "__version__",
]
