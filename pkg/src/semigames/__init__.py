"""Exact-arithmetic online semimeasures, enumeration games, and certified
mixed-norm constructions."""

from .semimeasure import (
    EVEN,
    MassAssignment,
    ODD,
    OnlineConstraint,
    OnlineMassAssignment,
    Violation,
    factorize_computable,
    min_online_from_leaves,
    pad_leaves_to_power_of_two,
    validate,
)
from .streams import EnumerationStream, StreamFault, StreamUpdate

__all__ = [
    "EVEN",
    "MassAssignment",
    "ODD",
    "OnlineConstraint",
    "OnlineMassAssignment",
    "Violation",
    "factorize_computable",
    "min_online_from_leaves",
    "pad_leaves_to_power_of_two",
    "validate",
    "EnumerationStream",
    "StreamFault",
    "StreamUpdate",
]
