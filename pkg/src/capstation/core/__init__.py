"""Domain-agnostic formula, time, space, map and graph constructs."""

from .bemap import BeMapKV, ComponentId, ComponentValue, ValueKind, build_bemap
from .geometry import Box3D, intersection_volume
from .graph import (
    AnnotatedGraph,
    EdgeAnn,
    StateChangeEvent,
    TemporalConstraint,
    TemporalCorrelation,
)
from .terms import Atom, BigAnd, Implies, InvariantTerm, Xor, term_key, term_sorted, xor_check
from .timing import (
    Addition,
    Constant,
    SymbolicScalar,
    TimeDuration,
    TimeDurationRange,
    TimeInterval,
    TimePoint,
    Variable,
    evaluate,
    relative_duration,
    variables,
)

__all__ = [
    "Addition",
    "AnnotatedGraph",
    "Atom",
    "BeMapKV",
    "BigAnd",
    "Box3D",
    "ComponentId",
    "ComponentValue",
    "Constant",
    "EdgeAnn",
    "Implies",
    "InvariantTerm",
    "StateChangeEvent",
    "SymbolicScalar",
    "TemporalConstraint",
    "TemporalCorrelation",
    "TimeDuration",
    "TimeDurationRange",
    "TimeInterval",
    "TimePoint",
    "ValueKind",
    "Variable",
    "Xor",
    "build_bemap",
    "evaluate",
    "intersection_volume",
    "relative_duration",
    "term_key",
    "term_sorted",
    "variables",
    "xor_check",
]
