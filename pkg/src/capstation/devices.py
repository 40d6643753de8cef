"""Device taxonomy, signal semantics, states, live events and topology kinds.

Devices are parts, actuators or sensors.  Every device in the modelled
station uses binary signalling, so a signal is High, Low, or the
don't-care placeholder used only inside abstract state specifications.
A state is identified by (name, signal); two states specification-match
when the names agree and either the signals agree or the specification
side doesn't care.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

from .core.bemap import ComponentId, ComponentValue
from .core.geometry import Box3D
from .core.graph import AnnotatedGraph, TemporalConstraint, TemporalCorrelation
from .core.terms import Atom, Xor
from .core.timing import TimeDuration, TimePoint
from .errors import (
    AbstractStateInEventError,
    DontCareInputError,
    MissingAnnotationError,
    UnsupportedAnnotationError,
)


class DeviceKind(enum.Enum):
    PART = "Part"
    ACTUATOR = "Actuator"
    SENSOR = "Sensor"


@dataclass(frozen=True)
class DiscreteMaterial:
    """Atomic material unit, optionally individually identified."""

    identity: Optional[str] = None


@dataclass(frozen=True)
class AnalogMaterial:
    """Divisible material measured as a non-negative quantity of some unit."""

    unit: str
    quantity: float

    def __post_init__(self):
        if self.quantity < 0:
            raise ValueError("analog quantity must be non-negative")


MaterialKind = Union[DiscreteMaterial, AnalogMaterial]


class Signal(enum.Enum):
    HIGH = "High"
    LOW = "Low"
    DONT_CARE = "Don't Care"


@dataclass(frozen=True)
class DeviceState:
    name: str
    signal: Signal

    def __post_init__(self):
        if not self.name:
            raise ValueError("state name must be non-empty")

    @property
    def is_abstract(self) -> bool:
        return self.signal is Signal.DONT_CARE


def abstract_state(name: str) -> DeviceState:
    return DeviceState(name, Signal.DONT_CARE)


# Solenoid actuator states
ACTIVE = abstract_state("Active")
ACTIVE_HIGH = DeviceState("Active", Signal.HIGH)
ACTIVE_LOW = DeviceState("Active", Signal.LOW)
PASSIVE = abstract_state("Passive")
PASSIVE_HIGH = DeviceState("Passive", Signal.HIGH)
PASSIVE_LOW = DeviceState("Passive", Signal.LOW)

# Light and contact sensor states
OBSTRUCTED = abstract_state("Obstructed")
OBSTRUCTED_HIGH = DeviceState("Obstructed", Signal.HIGH)
OBSTRUCTED_LOW = DeviceState("Obstructed", Signal.LOW)
UNOBSTRUCTED = abstract_state("Unobstructed")
UNOBSTRUCTED_HIGH = DeviceState("Unobstructed", Signal.HIGH)
UNOBSTRUCTED_LOW = DeviceState("Unobstructed", Signal.LOW)

# Vacuum sensor states
GRIPPED = abstract_state("Gripped")
GRIPPED_HIGH = DeviceState("Gripped", Signal.HIGH)
RELEASED = abstract_state("Released")
RELEASED_LOW = DeviceState("Released", Signal.LOW)

KNOWN_STATE_NAMES = frozenset(
    {"Active", "Passive", "Obstructed", "Unobstructed", "Gripped", "Released"}
)


@dataclass(frozen=True)
class SignalMapping:
    """Per-device meaning of the two voltage levels.

    Total on {High, Low}; the two mapped states carry the matching concrete
    signal and distinct names.
    """

    high: DeviceState
    low: DeviceState

    def __post_init__(self):
        if self.high.signal is not Signal.HIGH or self.low.signal is not Signal.LOW:
            raise ValueError("mapped states must carry their own signal level")
        if self.high.name == self.low.name:
            raise ValueError("mapped states must have distinct names")

    def __call__(self, signal: Signal) -> DeviceState:
        """Concrete state meant by a voltage level."""
        if signal is Signal.HIGH:
            return self.high
        if signal is Signal.LOW:
            return self.low
        raise DontCareInputError("cannot map the don't-care signal")

    def state_named(self, name: str) -> DeviceState:
        """Concrete state of this mapping with the given name."""
        if self.high.name == name:
            return self.high
        if self.low.name == name:
            return self.low
        raise ValueError(f"state {name!r} is not mapped by this device")


HIGH_SOLENOID_MAPPING = SignalMapping(high=ACTIVE_HIGH, low=PASSIVE_LOW)
LOW_SOLENOID_MAPPING = SignalMapping(high=PASSIVE_HIGH, low=ACTIVE_LOW)
OBSTRUCTED_ON_HIGH = SignalMapping(high=OBSTRUCTED_HIGH, low=UNOBSTRUCTED_LOW)
OBSTRUCTED_ON_LOW = SignalMapping(high=UNOBSTRUCTED_HIGH, low=OBSTRUCTED_LOW)
GRIP_SENSOR_MAPPING = SignalMapping(high=GRIPPED_HIGH, low=RELEASED_LOW)


def state_matches(spec: DeviceState, actual: DeviceState) -> bool:
    """Specification match: names equal, don't-care absorbs either signal."""
    if spec.name != actual.name:
        return False
    return spec.signal is Signal.DONT_CARE or spec.signal is actual.signal


@dataclass(frozen=True)
class SpatialVariationSet:
    """Mutually exclusive discrete positions a movable part can be in."""

    name: str
    positions: tuple

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(self.positions))
        if len(self.positions) < 2:
            raise ValueError("a variation set needs at least two positions")
        if len(set(self.positions)) != len(self.positions):
            raise ValueError("positions must be pairwise distinct")

    def to_xor(self) -> Xor:
        return Xor(tuple(Atom(ComponentValue(p)) for p in self.positions))


@dataclass(frozen=True)
class PhysicalEvent:
    """A device changed to a concrete state at an instant in time."""

    device: ComponentId
    kind: DeviceKind
    timepoint: TimePoint
    state: DeviceState

    def __post_init__(self):
        if self.state.is_abstract:
            raise AbstractStateInEventError(
                f"live event for {self.device} carries a don't-care state"
            )

    @property
    def owner(self) -> ComponentId:
        return self.device


def make_event(
    device: ComponentId, kind: DeviceKind, timepoint: TimePoint, state: DeviceState
) -> PhysicalEvent:
    """Construct a live event; the state must carry a real signal."""
    return PhysicalEvent(device, kind, timepoint, state)


class RelationshipKind(enum.Enum):
    SPATIAL = "Spatial"
    TEMPORAL = "Temporal"
    SPATIO_TEMPORAL = "SpatioTemporal"


def annotation_kind(annotation: object) -> RelationshipKind:
    if isinstance(annotation, (TemporalCorrelation, TemporalConstraint, TimeDuration)):
        return RelationshipKind.TEMPORAL
    if isinstance(annotation, Box3D):
        return RelationshipKind.SPATIAL
    raise UnsupportedAnnotationError(f"unsupported annotation: {annotation!r}")


@dataclass(frozen=True)
class Relationship:
    """A classified edge annotation; the kind must fit the payload.

    Spatio-temporal relationships accept either payload category, since a
    dual-natured value is not structurally distinguishable here.
    """

    kind: RelationshipKind
    payload: object

    def __post_init__(self):
        actual = annotation_kind(self.payload)
        if self.kind is not RelationshipKind.SPATIO_TEMPORAL and self.kind is not actual:
            raise ValueError(f"{self.kind.value} relationship with a {actual.value} payload")


def classify_topology(graph: AnnotatedGraph) -> RelationshipKind:
    """Uniformly temporal, uniformly spatial, or mixed (spatio-temporal).

    Every edge must be annotated; a bare edge raises MissingAnnotationError.
    """
    if not graph.edges:
        raise ValueError("cannot classify an empty topology")
    kinds = set()
    for edge in graph.edges:
        if edge.annotation is None:
            raise MissingAnnotationError(edge)
        kinds.add(annotation_kind(edge.annotation))
    if kinds == {RelationshipKind.TEMPORAL}:
        return RelationshipKind.TEMPORAL
    if kinds == {RelationshipKind.SPATIAL}:
        return RelationshipKind.SPATIAL
    return RelationshipKind.SPATIO_TEMPORAL
