"""The Cap Dispenser station: device inventory, descriptions and topologies.

The station has two subsystems: a cap stack tube with an ejector that
pushes the bottom cap out, and a swing arm with a vacuum gripper that
carries caps from the pickup spot to the drop-off area.

Geometry constants are layered: station edges anchor part edges, part
edges anchor sensor edges, and sizes are shared between the two ejector
position sensors.  Constants not stated by the source measurements are
placeholders and are flagged, along with synthesized topology edges and
pin assignments, in the catalog's `synthetic_*` sets so tests and tools
can separate documented fixtures from glue.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Tuple

from .core.bemap import BeMapKV, ComponentId, ComponentValue
from .core.geometry import Box3D
from .core.graph import AnnotatedGraph, EdgeAnn, TemporalConstraint, TemporalCorrelation
from .core.timing import TimeDurationRange, relative_duration
from .devices import (
    ACTIVE,
    DeviceKind,
    DeviceState,
    GRIP_SENSOR_MAPPING,
    GRIPPED,
    HIGH_SOLENOID_MAPPING,
    OBSTRUCTED,
    OBSTRUCTED_ON_HIGH,
    OBSTRUCTED_ON_LOW,
    PASSIVE,
    RELEASED,
    SignalMapping,
    SpatialVariationSet,
    UNOBSTRUCTED,
)
from .errors import UnknownDeviceError

# ---------------------------------------------------------------------------
# Device identities
# ---------------------------------------------------------------------------

STACK_EJECTOR = ComponentId("Stack Ejector")
CAP_STACK_TUBE = ComponentId("Cap Stack Tube")
LOADER = ComponentId("Loader")
VACUUM_GRIPPER = ComponentId("Vacuum Gripper")

STACK_EJECTOR_EXTEND = ComponentId("Stack Ejector Extend")
LOADER_PICKUP = ComponentId("Loader Pickup")
LOADER_DROPOFF = ComponentId("Loader Dropoff")
VACUUM_GRIP = ComponentId("Vacuum Grip")
EJECT_AIR_PULSE = ComponentId("Eject Air Pulse")

STACK_EMPTY = ComponentId("Stack Empty")
STACK_EJECTOR_EXTENDED = ComponentId("Stack Ejector Extended")
STACK_EJECTOR_RETRACTED = ComponentId("Stack Ejector Retracted")
LOADER_PICKED_UP = ComponentId("Loader Picked Up")
LOADER_DROPPED_OFF = ComponentId("Loader Dropped Off")
WORKPIECE_GRIPPED = ComponentId("Workpiece Gripped")

PARTS = (STACK_EJECTOR, CAP_STACK_TUBE, LOADER, VACUUM_GRIPPER)
ACTUATORS = (STACK_EJECTOR_EXTEND, LOADER_PICKUP, LOADER_DROPOFF, VACUUM_GRIP, EJECT_AIR_PULSE)
SENSORS = (
    STACK_EMPTY,
    STACK_EJECTOR_EXTENDED,
    STACK_EJECTOR_RETRACTED,
    LOADER_PICKED_UP,
    LOADER_DROPPED_OFF,
    WORKPIECE_GRIPPED,
)

# Description keys
KEY_DEVICE_CATEGORY = ComponentId("Device Category")
KEY_DEVICE_TYPE = ComponentId("Device Type")
KEY_GPIO = ComponentId("GPIO")
KEY_PART_ASSOCIATION = ComponentId("Part Association")
KEY_SIGNAL_MAPPING = ComponentId("Signal Mapping")
KEY_SPATIAL_LOCATION = ComponentId("Spatial Location")
KEY_SPATIAL_VARIATIONS = ComponentId("Spatial Variations")


class TopologyName(enum.Enum):
    PROCESS_SEQUENCE = "ProcessSequence"
    CAUSALITY = "Causality"
    AVOIDANCE = "Avoidance"


# ---------------------------------------------------------------------------
# Measurement table (integer millimetres, layered symbolic referencing)
# ---------------------------------------------------------------------------


class Width:
    EXTEND_RETRACT_SENSOR = 32
    STACK_EJECTOR = 85          # synthetic placeholder
    CAP_STACK_TUBE = 45         # synthetic
    STACK_EMPTY_SENSOR = 32     # synthetic
    CONTACT_SENSOR = 20         # synthetic


class Depth:
    EXTEND_RETRACT_SENSOR = 10
    STACK_EJECTOR = 250         # synthetic placeholder
    CAP_STACK_TUBE = 45         # synthetic
    STACK_EMPTY_SENSOR = 10     # synthetic
    CONTACT_SENSOR = 20         # synthetic


class Z:
    BASE = 0
    STACK_EJECTOR_BOTTOM = BASE
    EXTEND_RETRACT_SENSOR_BOTTOM = BASE + 4
    EXTEND_RETRACT_SENSOR_TOP = BASE + 20
    CAP_STACK_TUBE_BOTTOM = BASE + 30                       # synthetic
    STACK_EMPTY_SENSOR_BOTTOM = EXTEND_RETRACT_SENSOR_TOP   # synthetic
    CONTACT_SENSOR_BOTTOM = BASE + 40                       # synthetic


class Height:
    EXTEND_RETRACT_SENSOR = Z.EXTEND_RETRACT_SENSOR_TOP - Z.EXTEND_RETRACT_SENSOR_BOTTOM
    STACK_EJECTOR = Z.CAP_STACK_TUBE_BOTTOM - Z.STACK_EJECTOR_BOTTOM  # synthetic
    CAP_STACK_TUBE = 150        # synthetic
    STACK_EMPTY_SENSOR = 10     # synthetic
    CONTACT_SENSOR = 10         # synthetic


class X:
    STATION1_EDGE_LEFT = 0
    STACK_EJECTOR_RIGHT = STATION1_EDGE_LEFT + 85
    STACK_EJECTOR_LEFT = STACK_EJECTOR_RIGHT - Width.STACK_EJECTOR
    EXTEND_RETRACT_SENSOR_RIGHT = STACK_EJECTOR_RIGHT
    EXTEND_RETRACT_SENSOR_LEFT = EXTEND_RETRACT_SENSOR_RIGHT - Width.EXTEND_RETRACT_SENSOR
    CAP_STACK_TUBE_LEFT = STATION1_EDGE_LEFT + 20           # synthetic
    STACK_EMPTY_SENSOR_LEFT = CAP_STACK_TUBE_LEFT           # synthetic
    LOADER_PICKED_UP_LEFT = STATION1_EDGE_LEFT + 100        # synthetic
    LOADER_DROPPED_OFF_LEFT = STATION1_EDGE_LEFT + 300      # synthetic


class Y:
    STATION1_EDGE_FRONT = 0
    STACK_EJECTOR_FRONT = STATION1_EDGE_FRONT + 76
    EXTEND_SENSOR_FRONT = STACK_EJECTOR_FRONT + 122
    EXTEND_SENSOR_BACK = EXTEND_SENSOR_FRONT + Depth.EXTEND_RETRACT_SENSOR
    RETRACT_SENSOR_FRONT = STACK_EJECTOR_FRONT + 236
    RETRACT_SENSOR_BACK = RETRACT_SENSOR_FRONT + Depth.EXTEND_RETRACT_SENSOR
    CAP_STACK_TUBE_FRONT = STATION1_EDGE_FRONT + 250        # synthetic
    STACK_EMPTY_SENSOR_FRONT = CAP_STACK_TUBE_FRONT + 5     # synthetic
    LOADER_PICKED_UP_FRONT = STACK_EJECTOR_FRONT            # synthetic
    LOADER_DROPPED_OFF_FRONT = STACK_EJECTOR_FRONT          # synthetic


SYNTHETIC_MEASUREMENTS = frozenset(
    {
        "Width.STACK_EJECTOR", "Width.CAP_STACK_TUBE", "Width.STACK_EMPTY_SENSOR",
        "Width.CONTACT_SENSOR",
        "Depth.STACK_EJECTOR", "Depth.CAP_STACK_TUBE", "Depth.STACK_EMPTY_SENSOR",
        "Depth.CONTACT_SENSOR",
        "Z.CAP_STACK_TUBE_BOTTOM", "Z.STACK_EMPTY_SENSOR_BOTTOM", "Z.CONTACT_SENSOR_BOTTOM",
        "Height.STACK_EJECTOR", "Height.CAP_STACK_TUBE", "Height.STACK_EMPTY_SENSOR",
        "Height.CONTACT_SENSOR",
        "X.CAP_STACK_TUBE_LEFT", "X.STACK_EMPTY_SENSOR_LEFT", "X.LOADER_PICKED_UP_LEFT",
        "X.LOADER_DROPPED_OFF_LEFT",
        "Y.CAP_STACK_TUBE_FRONT", "Y.STACK_EMPTY_SENSOR_FRONT", "Y.LOADER_PICKED_UP_FRONT",
        "Y.LOADER_DROPPED_OFF_FRONT",
    }
)

# Spatial variation positions
STACK_EJECTOR_RETRACTED_POSITION = "Stack Ejector Retracted Position"
STACK_EJECTOR_EXTENDED_POSITION = "Stack Ejector Extended Position"
LOADER_PICKUP_POSITION = "Loader Pickup Position"
LOADER_DROPOFF_POSITION = "Loader Dropoff Position"
GRIPPER_PICKUP_POSITION = "Gripper Pickup Position"
GRIPPER_DROPOFF_POSITION = "Gripper Dropoff Position"

STACK_EJECTOR_POSITIONS = SpatialVariationSet(
    "Stack Ejector Positions",
    (STACK_EJECTOR_RETRACTED_POSITION, STACK_EJECTOR_EXTENDED_POSITION),
)
LOADER_POSITIONS = SpatialVariationSet(
    "Loader Positions", (LOADER_PICKUP_POSITION, LOADER_DROPOFF_POSITION)
)
GRIPPER_POSITIONS = SpatialVariationSet(
    "Gripper Positions", (GRIPPER_PICKUP_POSITION, GRIPPER_DROPOFF_POSITION)
)


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StationCatalog:
    """Immutable station model: device kinds, descriptions, topologies.

    `synthetic_edges` holds (topology, source, target) triples of edges not
    backed by the documented fixtures; `synthetic_entries` holds
    (device, description key) pairs whose values are placeholders.
    """

    devices: Mapping[ComponentId, DeviceKind]
    descriptions: Mapping[ComponentId, BeMapKV]
    topologies: Mapping[TopologyName, AnnotatedGraph]
    synthetic_edges: frozenset
    synthetic_entries: frozenset

    def kind(self, device: ComponentId) -> DeviceKind:
        try:
            return self.devices[device]
        except KeyError:
            raise UnknownDeviceError(device) from None

    def description(self, device: ComponentId) -> BeMapKV:
        try:
            return self.descriptions[device]
        except KeyError:
            raise UnknownDeviceError(device) from None

    def of_kind(self, kind: DeviceKind) -> Tuple[ComponentId, ...]:
        return tuple(d for d, k in self.devices.items() if k is kind)

    @property
    def parts(self) -> Tuple[ComponentId, ...]:
        return self.of_kind(DeviceKind.PART)

    @property
    def actuators(self) -> Tuple[ComponentId, ...]:
        return self.of_kind(DeviceKind.ACTUATOR)

    @property
    def sensors(self) -> Tuple[ComponentId, ...]:
        return self.of_kind(DeviceKind.SENSOR)

    def signal_mapping(self, device: ComponentId) -> SignalMapping:
        value = self.description(device).get(KEY_SIGNAL_MAPPING)
        if value is None:
            raise UnknownDeviceError(f"{device} has no signal mapping")
        return value.value

    def gpio(self, device: ComponentId) -> int:
        value = self.description(device).get(KEY_GPIO)
        if value is None:
            raise UnknownDeviceError(f"{device} has no GPIO pin")
        return value.value

    def box(self, device: ComponentId) -> Optional[Box3D]:
        value = self.description(device).get(KEY_SPATIAL_LOCATION)
        return None if value is None else value.value

    def is_synthetic_edge(self, topology: TopologyName, edge: EdgeAnn) -> bool:
        return _edge_key(topology, edge) in self.synthetic_edges


def _occupy(x: int, y: int, z: int, w: int, d: int, h: int) -> ComponentValue:
    return ComponentValue(Box3D.from_anchor(x, y, z, w, d, h))


def _constraint(
    cause: DeviceState, lo_ms: int, hi_ms: int, effect: DeviceState, inverse: bool = False
) -> TemporalConstraint:
    window = TimeDurationRange(
        minimum=relative_duration(cause, lo_ms), maximum=relative_duration(cause, hi_ms)
    )
    return TemporalConstraint(cause=cause, range=window, effect=effect, inverse=inverse)


def _correlation(cause: DeviceState, delta: int, effect: DeviceState) -> TemporalCorrelation:
    return TemporalCorrelation(cause=cause, duration=relative_duration(cause, delta), effect=effect)


# The documented process-sequence delay constant is stored raw; its unit
# defaults to seconds and is decided by the monitor configuration.
PROCESS_SEQUENCE_DELTA = 3
PROCESS_SEQUENCE_DEFAULT_UNIT = "seconds"

# Window constants for the documented actuator-to-sensor rule (milliseconds).
EJECTOR_WINDOW_MIN_MS = 200
EJECTOR_WINDOW_MAX_MS = 300

# Window for the documented actuator-to-actuator safety rule (milliseconds).
AVOIDANCE_WINDOW_MIN_MS = -500
AVOIDANCE_WINDOW_MAX_MS = 1000

# Synthetic windows sized around the simulator's default latencies.
_SWING_WINDOW = (700, 900)
_GRIP_WINDOW = (100, 200)
_EJECT_WINDOW = (0, 100)


def build_process_sequence() -> AnnotatedGraph:
    """Expected order of sensor state changes during normal processing."""
    return AnnotatedGraph(
        (
            EdgeAnn(
                LOADER_PICKED_UP,
                LOADER_DROPPED_OFF,
                _correlation(OBSTRUCTED, PROCESS_SEQUENCE_DELTA, OBSTRUCTED),
            ),
        )
    )


def build_causality() -> AnnotatedGraph:
    """Actuator state changes that must lead to sensor state changes."""
    lo, hi = EJECTOR_WINDOW_MIN_MS, EJECTOR_WINDOW_MAX_MS
    edges = (
        EdgeAnn(
            STACK_EJECTOR_EXTEND,
            STACK_EJECTOR_RETRACTED,
            _constraint(ACTIVE, lo, hi, UNOBSTRUCTED),
        ),
        EdgeAnn(
            STACK_EJECTOR_EXTEND,
            STACK_EJECTOR_EXTENDED,
            _constraint(PASSIVE, lo, hi, UNOBSTRUCTED),
        ),
        EdgeAnn(
            STACK_EJECTOR_EXTEND,
            STACK_EJECTOR_EXTENDED,
            _constraint(ACTIVE, lo, hi, OBSTRUCTED),
        ),
        EdgeAnn(
            STACK_EJECTOR_EXTEND,
            STACK_EJECTOR_RETRACTED,
            _constraint(PASSIVE, lo, hi, OBSTRUCTED),
        ),
        EdgeAnn(LOADER_PICKUP, LOADER_PICKED_UP, _constraint(ACTIVE, *_SWING_WINDOW, OBSTRUCTED)),
        EdgeAnn(LOADER_DROPOFF, LOADER_DROPPED_OFF, _constraint(ACTIVE, *_SWING_WINDOW, OBSTRUCTED)),
        EdgeAnn(VACUUM_GRIP, WORKPIECE_GRIPPED, _constraint(ACTIVE, *_GRIP_WINDOW, GRIPPED)),
        EdgeAnn(EJECT_AIR_PULSE, WORKPIECE_GRIPPED, _constraint(ACTIVE, *_EJECT_WINDOW, RELEASED)),
    )
    return AnnotatedGraph(edges)


def build_avoidance() -> AnnotatedGraph:
    """Temporal safety margin between the ejector and the pickup swing."""
    return AnnotatedGraph(
        (
            EdgeAnn(
                STACK_EJECTOR_EXTEND,
                LOADER_PICKUP,
                _constraint(ACTIVE, AVOIDANCE_WINDOW_MIN_MS, AVOIDANCE_WINDOW_MAX_MS, PASSIVE),
            ),
        )
    )


def _edge_key(topology: TopologyName, edge: EdgeAnn) -> tuple:
    # endpoints alone do not identify an edge: the ejector edges share them
    ann = edge.annotation
    cause = ann.cause.name if ann is not None else None
    effect = ann.effect.name if ann is not None else None
    return (topology, edge.source, edge.target, cause, effect)


# Edges backed by the documented JSON fixtures, one per topology.
_DOCUMENTED_EDGES = frozenset(
    {
        (TopologyName.PROCESS_SEQUENCE, LOADER_PICKED_UP, LOADER_DROPPED_OFF,
         "Obstructed", "Obstructed"),
        (TopologyName.CAUSALITY, STACK_EJECTOR_EXTEND, STACK_EJECTOR_RETRACTED,
         "Active", "Unobstructed"),
        (TopologyName.AVOIDANCE, STACK_EJECTOR_EXTEND, LOADER_PICKUP,
         "Active", "Passive"),
    }
)


def documented_edge(catalog: "StationCatalog", topology: TopologyName) -> EdgeAnn:
    """The single documented fixture edge of a topology."""
    for edge in catalog.topologies[topology].edges:
        if not catalog.is_synthetic_edge(topology, edge):
            return edge
    raise ValueError(f"no documented edge in {topology}")


def build_catalog() -> StationCatalog:
    """Construct the full station catalog from the embedded constants."""
    devices: Dict[ComponentId, DeviceKind] = {}
    for part in PARTS:
        devices[part] = DeviceKind.PART
    for actuator in ACTUATORS:
        devices[actuator] = DeviceKind.ACTUATOR
    for sensor in SENSORS:
        devices[sensor] = DeviceKind.SENSOR

    synthetic_entries = set()

    def desc(device, *entries, synthetic=()):
        for key in synthetic:
            synthetic_entries.add((device, key))
        return BeMapKV(tuple((k, v) for k, v in entries))

    cat = lambda kind: (KEY_DEVICE_CATEGORY, ComponentValue(kind.value))
    typ = lambda name: (KEY_DEVICE_TYPE, ComponentValue(name))
    gpio = lambda pin: (KEY_GPIO, ComponentValue(pin))
    assoc = lambda part: (KEY_PART_ASSOCIATION, ComponentValue(part.id))
    sigmap = lambda m: (KEY_SIGNAL_MAPPING, ComponentValue(m))
    variations = lambda vs: (KEY_SPATIAL_VARIATIONS, ComponentValue(vs.to_xor()))

    descriptions: Dict[ComponentId, BeMapKV] = {
        # Parts
        STACK_EJECTOR: desc(
            STACK_EJECTOR,
            cat(DeviceKind.PART),
            typ("Horizontal Pusher"),
            variations(STACK_EJECTOR_POSITIONS),
            (
                KEY_SPATIAL_LOCATION,
                _occupy(
                    X.STACK_EJECTOR_LEFT, Y.STACK_EJECTOR_FRONT, Z.STACK_EJECTOR_BOTTOM,
                    Width.STACK_EJECTOR, Depth.STACK_EJECTOR, Height.STACK_EJECTOR,
                ),
            ),
            synthetic=(KEY_SPATIAL_LOCATION,),
        ),
        CAP_STACK_TUBE: desc(
            CAP_STACK_TUBE,
            cat(DeviceKind.PART),
            typ("Tube"),
            (
                KEY_SPATIAL_LOCATION,
                _occupy(
                    X.CAP_STACK_TUBE_LEFT, Y.CAP_STACK_TUBE_FRONT, Z.CAP_STACK_TUBE_BOTTOM,
                    Width.CAP_STACK_TUBE, Depth.CAP_STACK_TUBE, Height.CAP_STACK_TUBE,
                ),
            ),
            synthetic=(KEY_SPATIAL_LOCATION,),
        ),
        LOADER: desc(
            LOADER,
            cat(DeviceKind.PART),
            typ("Swing Arm"),
            variations(LOADER_POSITIONS),
            synthetic=(KEY_SPATIAL_VARIATIONS,),
        ),
        VACUUM_GRIPPER: desc(
            VACUUM_GRIPPER,
            cat(DeviceKind.PART),
            typ("Suction Cup"),
            variations(GRIPPER_POSITIONS),
            synthetic=(KEY_SPATIAL_VARIATIONS,),
        ),
        # Actuators
        STACK_EJECTOR_EXTEND: desc(
            STACK_EJECTOR_EXTEND,
            cat(DeviceKind.ACTUATOR),
            typ("Solenoid"),
            gpio(1),
            sigmap(HIGH_SOLENOID_MAPPING),
            assoc(STACK_EJECTOR),
            synthetic=(KEY_GPIO, KEY_SIGNAL_MAPPING),
        ),
        LOADER_PICKUP: desc(
            LOADER_PICKUP,
            cat(DeviceKind.ACTUATOR),
            typ("Solenoid"),
            gpio(26),
            sigmap(HIGH_SOLENOID_MAPPING),
            assoc(LOADER),
            synthetic=(KEY_GPIO, KEY_SIGNAL_MAPPING),
        ),
        LOADER_DROPOFF: desc(
            LOADER_DROPOFF,
            cat(DeviceKind.ACTUATOR),
            typ("Solenoid"),
            gpio(13),
            sigmap(HIGH_SOLENOID_MAPPING),
            assoc(LOADER),
            synthetic=(KEY_GPIO, KEY_SIGNAL_MAPPING),
        ),
        VACUUM_GRIP: desc(
            VACUUM_GRIP,
            cat(DeviceKind.ACTUATOR),
            typ("Solenoid"),
            gpio(5),
            sigmap(HIGH_SOLENOID_MAPPING),
            assoc(LOADER),
        ),
        EJECT_AIR_PULSE: desc(
            EJECT_AIR_PULSE,
            cat(DeviceKind.ACTUATOR),
            typ("Solenoid"),
            gpio(19),
            sigmap(HIGH_SOLENOID_MAPPING),
            assoc(VACUUM_GRIPPER),
            synthetic=(KEY_GPIO, KEY_SIGNAL_MAPPING),
        ),
        # Sensors
        STACK_EMPTY: desc(
            STACK_EMPTY,
            cat(DeviceKind.SENSOR),
            typ("Light Sensor"),
            gpio(7),
            sigmap(OBSTRUCTED_ON_LOW),
            assoc(CAP_STACK_TUBE),
            (
                KEY_SPATIAL_LOCATION,
                _occupy(
                    X.STACK_EMPTY_SENSOR_LEFT, Y.STACK_EMPTY_SENSOR_FRONT,
                    Z.STACK_EMPTY_SENSOR_BOTTOM,
                    Width.STACK_EMPTY_SENSOR, Depth.STACK_EMPTY_SENSOR, Height.STACK_EMPTY_SENSOR,
                ),
            ),
            synthetic=(KEY_GPIO, KEY_SIGNAL_MAPPING, KEY_SPATIAL_LOCATION),
        ),
        STACK_EJECTOR_EXTENDED: desc(
            STACK_EJECTOR_EXTENDED,
            cat(DeviceKind.SENSOR),
            typ("Light Sensor"),
            gpio(0),
            sigmap(OBSTRUCTED_ON_HIGH),
            assoc(STACK_EJECTOR),
            (
                KEY_SPATIAL_LOCATION,
                _occupy(
                    X.EXTEND_RETRACT_SENSOR_LEFT, Y.EXTEND_SENSOR_FRONT,
                    Z.EXTEND_RETRACT_SENSOR_BOTTOM,
                    Width.EXTEND_RETRACT_SENSOR, Depth.EXTEND_RETRACT_SENSOR,
                    Height.EXTEND_RETRACT_SENSOR,
                ),
            ),
        ),
        STACK_EJECTOR_RETRACTED: desc(
            STACK_EJECTOR_RETRACTED,
            cat(DeviceKind.SENSOR),
            typ("Light Sensor"),
            gpio(3),
            sigmap(OBSTRUCTED_ON_HIGH),
            assoc(STACK_EJECTOR),
            (
                KEY_SPATIAL_LOCATION,
                _occupy(
                    X.EXTEND_RETRACT_SENSOR_LEFT, Y.RETRACT_SENSOR_FRONT,
                    Z.EXTEND_RETRACT_SENSOR_BOTTOM,
                    Width.EXTEND_RETRACT_SENSOR, Depth.EXTEND_RETRACT_SENSOR,
                    Height.EXTEND_RETRACT_SENSOR,
                ),
            ),
        ),
        LOADER_PICKED_UP: desc(
            LOADER_PICKED_UP,
            cat(DeviceKind.SENSOR),
            typ("Contact Sensor"),
            gpio(25),
            sigmap(OBSTRUCTED_ON_HIGH),
            assoc(LOADER),
            (
                KEY_SPATIAL_LOCATION,
                _occupy(
                    X.LOADER_PICKED_UP_LEFT, Y.LOADER_PICKED_UP_FRONT, Z.CONTACT_SENSOR_BOTTOM,
                    Width.CONTACT_SENSOR, Depth.CONTACT_SENSOR, Height.CONTACT_SENSOR,
                ),
            ),
            synthetic=(KEY_GPIO, KEY_SIGNAL_MAPPING, KEY_SPATIAL_LOCATION),
        ),
        LOADER_DROPPED_OFF: desc(
            LOADER_DROPPED_OFF,
            cat(DeviceKind.SENSOR),
            typ("Contact Sensor"),
            gpio(8),
            sigmap(OBSTRUCTED_ON_HIGH),
            assoc(LOADER),
            (
                KEY_SPATIAL_LOCATION,
                _occupy(
                    X.LOADER_DROPPED_OFF_LEFT, Y.LOADER_DROPPED_OFF_FRONT, Z.CONTACT_SENSOR_BOTTOM,
                    Width.CONTACT_SENSOR, Depth.CONTACT_SENSOR, Height.CONTACT_SENSOR,
                ),
            ),
            synthetic=(KEY_GPIO, KEY_SIGNAL_MAPPING, KEY_SPATIAL_LOCATION),
        ),
        WORKPIECE_GRIPPED: desc(
            WORKPIECE_GRIPPED,
            cat(DeviceKind.SENSOR),
            typ("Vacuum Sensor"),
            gpio(11),
            sigmap(GRIP_SENSOR_MAPPING),
            assoc(VACUUM_GRIPPER),
            synthetic=(KEY_GPIO, KEY_SIGNAL_MAPPING),
        ),
    }

    topologies = {
        TopologyName.PROCESS_SEQUENCE: build_process_sequence(),
        TopologyName.CAUSALITY: build_causality(),
        TopologyName.AVOIDANCE: build_avoidance(),
    }
    synthetic_edges = set()
    for name, graph in topologies.items():
        for edge in graph.edges:
            key = _edge_key(name, edge)
            if key not in _DOCUMENTED_EDGES:
                synthetic_edges.add(key)

    return StationCatalog(
        devices=devices,
        descriptions=descriptions,
        topologies=topologies,
        synthetic_edges=frozenset(synthetic_edges),
        synthetic_entries=frozenset(synthetic_entries),
    )


def sensor_boxes(catalog: StationCatalog) -> Dict[ComponentId, Box3D]:
    """Occupancy box of every sensor that declares a fixed location.

    Restricted to sensors: part envelopes legitimately sweep through the
    sensing windows mounted on them, so they are excluded here and handled
    by the full spatial report instead.
    """
    out: Dict[ComponentId, Box3D] = {}
    for device in catalog.sensors:
        box = catalog.box(device)
        if box is not None:
            out[device] = box
    return out
