"""Deterministic discrete-event simulator of the cap dispenser.

The machine is driven by actuator command scripts and produces a
time-ordered trace of state-change events.  Position sensors flip at
motion completion: the moving ejector rod keeps blocking its origin
sensor until it arrives, so origin-clear and destination-set events share
the completion timestamp (origin first).  Reversing an actuator mid-motion
returns it to its origin with a proportional latency and, because the
settled position never changed, without emitting sensor events.

No physics: gravity feed, suction thresholds and similar effects are the
discrete consequences described for the real machine, not forces.
"""

from __future__ import annotations

import copy
import enum
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .core.bemap import ComponentId
from .core.timing import TimePoint
from .devices import DeviceKind, DeviceState, PhysicalEvent, Signal
from .errors import ModelError, TimeRegressionError, UnknownActuatorError, UnknownDeviceError
from .station import (
    EJECT_AIR_PULSE,
    LOADER_DROPOFF,
    LOADER_DROPPED_OFF,
    LOADER_PICKED_UP,
    LOADER_PICKUP,
    STACK_EJECTOR_EXTEND,
    STACK_EJECTOR_EXTENDED,
    STACK_EJECTOR_RETRACTED,
    STACK_EMPTY,
    StationCatalog,
    VACUUM_GRIP,
    WORKPIECE_GRIPPED,
)


class EjectorPosition(enum.Enum):
    RETRACTED = "Retracted"
    EXTENDED = "Extended"
    MOVING_OUT = "MovingOut"
    MOVING_IN = "MovingIn"


class ArmPosition(enum.Enum):
    AT_PICKUP = "AtPickup"
    AT_DROPOFF = "AtDropoff"
    MOVING_LEFT = "MovingLeft"
    MOVING_RIGHT = "MovingRight"


@dataclass
class _Motion:
    target: object
    start: int
    end: int

    def progress(self, now: int) -> float:
        span = self.end - self.start
        if span <= 0:
            return 1.0
        return min(1.0, max(0.0, (now - self.start) / span))


@dataclass
class _Axis:
    """One mechanical degree of freedom: a settled position plus an
    optional motion in flight.  Sensor values derive from the settled
    position only."""

    settled: object
    motion: Optional[_Motion] = None


# Transition identifiers for the latency table.
ACTIVATE = "activate"
DEACTIVATE = "deactivate"


@dataclass(frozen=True)
class LatencyTable:
    """Motion durations in ms, keyed by (actuator, transition)."""

    durations: Dict[Tuple[ComponentId, str], int]
    jitter_ms: int = 0

    def get(self, device: ComponentId, transition: str) -> int:
        try:
            return self.durations[(device, transition)]
        except KeyError:
            raise ValueError(f"no latency for {device} / {transition}") from None

    def with_override(
        self, device: ComponentId, latency_ms: int, transition: Optional[str] = None
    ) -> "LatencyTable":
        durations = dict(self.durations)
        matched = False
        for key in list(durations):
            if key[0] == device and (transition is None or key[1] == transition):
                durations[key] = latency_ms
                matched = True
        if not matched:
            raise ValueError(f"no motion latency for {device} / {transition}")
        return LatencyTable(durations, self.jitter_ms)


def default_latency_table(jitter_ms: int = 0) -> LatencyTable:
    # The ejector defaults sit at the midpoint of the documented
    # [200, 300] ms response window so nominal runs satisfy it.
    return LatencyTable(
        {
            (STACK_EJECTOR_EXTEND, ACTIVATE): 250,
            (STACK_EJECTOR_EXTEND, DEACTIVATE): 250,
            (LOADER_PICKUP, ACTIVATE): 800,
            (LOADER_DROPOFF, ACTIVATE): 800,
            (VACUUM_GRIP, ACTIVATE): 150,
            (EJECT_AIR_PULSE, ACTIVATE): 50,
        },
        jitter_ms=jitter_ms,
    )


@dataclass(frozen=True)
class Command:
    time: int
    actuator: ComponentId
    signal: Signal

    def __post_init__(self):
        if self.signal is Signal.DONT_CARE:
            raise ValueError("commands must carry a concrete signal")


@dataclass(frozen=True)
class CommandScript:
    commands: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "commands", tuple(self.commands))
        last = None
        for cmd in self.commands:
            if last is not None and cmd.time < last:
                raise ValueError("script times must be nondecreasing")
            last = cmd.time


@dataclass(frozen=True)
class LatencyOverride:
    device: ComponentId
    latency_ms: int
    transition: Optional[str] = None


@dataclass(frozen=True)
class StuckSensor:
    device: ComponentId
    state: DeviceState


@dataclass(frozen=True)
class DropEvents:
    device: ComponentId


FaultSpec = Union[LatencyOverride, StuckSensor, DropEvents]


@dataclass
class StationState:
    """Mutable machine state owned by a single simulation run."""

    stack_count: int
    clock: int = 0
    ejector: _Axis = field(default_factory=lambda: _Axis(EjectorPosition.RETRACTED))
    arm: _Axis = field(default_factory=lambda: _Axis(ArmPosition.AT_PICKUP))
    vacuum_on: bool = False
    gripped: bool = False
    cap_at_pickup_spot: bool = False
    grip_eta: Optional[int] = None
    eject_eta: Optional[int] = None
    actuator_signals: Dict[ComponentId, Signal] = field(default_factory=dict)
    caps_pushed: int = 0
    caps_delivered: int = 0
    caps_lost: int = 0

    @property
    def ejector_pos(self) -> EjectorPosition:
        if self.ejector.motion is None:
            return self.ejector.settled
        if self.ejector.motion.target is EjectorPosition.EXTENDED:
            return EjectorPosition.MOVING_OUT
        return EjectorPosition.MOVING_IN

    @property
    def arm_pos(self) -> ArmPosition:
        if self.arm.motion is None:
            return self.arm.settled
        if self.arm.motion.target is ArmPosition.AT_PICKUP:
            return ArmPosition.MOVING_LEFT
        return ArmPosition.MOVING_RIGHT


class Simulation:
    """Event-driven engine; use `run_script` for the one-shot interface."""

    def __init__(
        self,
        catalog: StationCatalog,
        stack_count: int = 5,
        latencies: Optional[LatencyTable] = None,
        rng: Optional[random.Random] = None,
        _resume: Optional[StationState] = None,
    ):
        if stack_count < 0:
            raise ValueError("stack count must be non-negative")
        self.catalog = catalog
        self.latencies = latencies or default_latency_table()
        self.rng = rng or random.Random(0)
        self.events: List[PhysicalEvent] = []
        if _resume is not None:
            self.state = _resume
            return
        self.state = StationState(stack_count=stack_count)
        for actuator in catalog.actuators:
            self.state.actuator_signals[actuator] = Signal.LOW
        for sensor in catalog.sensors:
            self._emit(sensor, DeviceKind.SENSOR, 0, self.readings()[sensor].name)

    # -- sensor values -----------------------------------------------------

    def readings(self) -> Dict[ComponentId, DeviceState]:
        """Current concrete state of every sensor, derived from the machine."""
        s = self.state
        names = {
            STACK_EMPTY: "Obstructed" if s.stack_count > 0 else "Unobstructed",
            STACK_EJECTOR_EXTENDED: (
                "Obstructed" if s.ejector.settled is EjectorPosition.EXTENDED else "Unobstructed"
            ),
            STACK_EJECTOR_RETRACTED: (
                "Obstructed" if s.ejector.settled is EjectorPosition.RETRACTED else "Unobstructed"
            ),
            LOADER_PICKED_UP: (
                "Obstructed" if s.arm.settled is ArmPosition.AT_PICKUP else "Unobstructed"
            ),
            LOADER_DROPPED_OFF: (
                "Obstructed" if s.arm.settled is ArmPosition.AT_DROPOFF else "Unobstructed"
            ),
            WORKPIECE_GRIPPED: "Gripped" if s.gripped else "Released",
        }
        return {
            device: self.catalog.signal_mapping(device).state_named(name)
            for device, name in names.items()
        }

    def _emit(self, device: ComponentId, kind: DeviceKind, t: int, state_name: str) -> None:
        state = self.catalog.signal_mapping(device).state_named(state_name)
        self.events.append(PhysicalEvent(device, kind, TimePoint(t), state))

    # -- timeline ----------------------------------------------------------

    def _latency(self, device: ComponentId, transition: str) -> int:
        base = self.latencies.get(device, transition)
        if self.latencies.jitter_ms > 0:
            base += self.rng.randint(-self.latencies.jitter_ms, self.latencies.jitter_ms)
        return max(base, 0)

    def _pending(self) -> List[Tuple[int, int, str]]:
        s = self.state
        out = []
        if s.ejector.motion is not None:
            out.append((s.ejector.motion.end, 0, "ejector"))
        if s.arm.motion is not None:
            out.append((s.arm.motion.end, 1, "arm"))
        if s.grip_eta is not None:
            out.append((s.grip_eta, 2, "grip"))
        if s.eject_eta is not None:
            out.append((s.eject_eta, 3, "eject"))
        return out

    def advance(self, t: int) -> None:
        """Process all completions due at or before t, then set the clock."""
        while True:
            pending = [p for p in self._pending() if p[0] <= t]
            if not pending:
                break
            when, _, what = min(pending)
            if what == "ejector":
                self._complete_ejector(when)
            elif what == "arm":
                self._complete_arm(when)
            elif what == "grip":
                self._complete_grip(when)
            else:
                self._complete_eject(when)
            self.state.clock = when
        self.state.clock = max(self.state.clock, t)

    def settle(self) -> None:
        """Drain every pending motion and scheduled effect."""
        while self._pending():
            self.advance(max(p[0] for p in self._pending()))

    # -- completions ---------------------------------------------------------

    def _complete_ejector(self, t: int) -> None:
        s = self.state
        target = s.ejector.motion.target
        s.ejector.motion = None
        if target is s.ejector.settled:
            return  # interrupted motion returned home; nothing changed
        s.ejector.settled = target
        if target is EjectorPosition.EXTENDED:
            self._emit(STACK_EJECTOR_RETRACTED, DeviceKind.SENSOR, t, "Unobstructed")
            self._emit(STACK_EJECTOR_EXTENDED, DeviceKind.SENSOR, t, "Obstructed")
            if s.stack_count > 0:
                s.stack_count -= 1
                s.caps_pushed += 1
                s.cap_at_pickup_spot = True
                if s.stack_count == 0:
                    self._emit(STACK_EMPTY, DeviceKind.SENSOR, t, "Unobstructed")
                self._maybe_start_grip(t)
        else:
            # retraction: the remaining caps drop one cap height by gravity
            self._emit(STACK_EJECTOR_EXTENDED, DeviceKind.SENSOR, t, "Unobstructed")
            self._emit(STACK_EJECTOR_RETRACTED, DeviceKind.SENSOR, t, "Obstructed")

    def _complete_arm(self, t: int) -> None:
        s = self.state
        target = s.arm.motion.target
        s.arm.motion = None
        if target is s.arm.settled:
            return
        s.arm.settled = target
        if target is ArmPosition.AT_DROPOFF:
            self._emit(LOADER_PICKED_UP, DeviceKind.SENSOR, t, "Unobstructed")
            self._emit(LOADER_DROPPED_OFF, DeviceKind.SENSOR, t, "Obstructed")
        else:
            self._emit(LOADER_DROPPED_OFF, DeviceKind.SENSOR, t, "Unobstructed")
            self._emit(LOADER_PICKED_UP, DeviceKind.SENSOR, t, "Obstructed")
            self._maybe_start_grip(t)

    def _maybe_start_grip(self, t: int) -> None:
        s = self.state
        if (
            s.vacuum_on
            and not s.gripped
            and s.grip_eta is None
            and s.cap_at_pickup_spot
            and s.arm.settled is ArmPosition.AT_PICKUP
            and s.arm.motion is None
        ):
            s.grip_eta = t + self._latency(VACUUM_GRIP, ACTIVATE)

    def _complete_grip(self, t: int) -> None:
        s = self.state
        s.grip_eta = None
        if (
            s.vacuum_on
            and not s.gripped
            and s.cap_at_pickup_spot
            and s.arm.settled is ArmPosition.AT_PICKUP
            and s.arm.motion is None
        ):
            s.gripped = True
            s.cap_at_pickup_spot = False
            self._emit(WORKPIECE_GRIPPED, DeviceKind.SENSOR, t, "Gripped")

    def _release_cap(self, t: int) -> None:
        s = self.state
        s.gripped = False
        self._emit(WORKPIECE_GRIPPED, DeviceKind.SENSOR, t, "Released")
        if s.arm.motion is None and s.arm.settled is ArmPosition.AT_PICKUP:
            s.cap_at_pickup_spot = True
        elif s.arm.motion is None and s.arm.settled is ArmPosition.AT_DROPOFF:
            s.caps_delivered += 1
        else:
            s.caps_lost += 1

    def _complete_eject(self, t: int) -> None:
        s = self.state
        s.eject_eta = None
        if s.gripped:
            self._release_cap(t)

    # -- commands ------------------------------------------------------------

    def _move(self, axis: _Axis, desired, latency: int, t: int) -> None:
        if axis.motion is None:
            if axis.settled is not desired:
                axis.motion = _Motion(desired, t, t + latency)
            return
        if axis.motion.target is desired:
            return
        # reversal mid-motion: symmetric partial return with proportional latency
        p = axis.motion.progress(t)
        axis.motion = _Motion(desired, t, t + round(p * latency))

    def command(self, actuator: ComponentId, signal: Signal, t: int) -> List[PhysicalEvent]:
        """Apply one actuator command; returns the events this call emitted,
        including completions that fell due at or before t."""
        if actuator not in self.catalog.devices or self.catalog.kind(actuator) is not DeviceKind.ACTUATOR:
            raise UnknownActuatorError(actuator)
        if signal is Signal.DONT_CARE:
            raise ValueError("commands must carry a concrete signal")
        if t < self.state.clock:
            raise TimeRegressionError(f"command at {t} before clock {self.state.clock}")
        before = len(self.events)
        self.advance(t)
        s = self.state
        if s.actuator_signals[actuator] is signal:
            return self.events[before:]  # the signal level did not change
        s.actuator_signals[actuator] = signal
        meaning = self.catalog.signal_mapping(actuator)(signal)
        self.events.append(PhysicalEvent(actuator, DeviceKind.ACTUATOR, TimePoint(t), meaning))
        active = meaning.name == "Active"

        if actuator == STACK_EJECTOR_EXTEND:
            if active:
                self._move(s.ejector, EjectorPosition.EXTENDED,
                           self._latency(actuator, ACTIVATE), t)
            else:
                self._move(s.ejector, EjectorPosition.RETRACTED,
                           self._latency(actuator, DEACTIVATE), t)
        elif actuator == LOADER_PICKUP and active:
            self._move(s.arm, ArmPosition.AT_PICKUP, self._latency(actuator, ACTIVATE), t)
        elif actuator == LOADER_DROPOFF and active:
            self._move(s.arm, ArmPosition.AT_DROPOFF, self._latency(actuator, ACTIVATE), t)
        elif actuator == VACUUM_GRIP:
            if active:
                s.vacuum_on = True
                self._maybe_start_grip(t)
            else:
                s.vacuum_on = False
                s.grip_eta = None
                if s.gripped:
                    self._release_cap(t)  # suction collapses immediately
        elif actuator == EJECT_AIR_PULSE:
            if active and s.gripped and s.eject_eta is None:
                s.eject_eta = t + self._latency(actuator, ACTIVATE)

        return self.events[before:]

    def run(self, script: CommandScript) -> List[PhysicalEvent]:
        for index, cmd in enumerate(script.commands):
            try:
                self.command(cmd.actuator, cmd.signal, cmd.time)
            except ModelError as exc:
                if hasattr(exc, "add_note"):  # 3.11+
                    exc.add_note(
                        f"script command {index}: {cmd.actuator} "
                        f"{cmd.signal.value} @ {cmd.time}"
                    )
                raise
        self.settle()
        return self.events


def initialize(
    catalog: StationCatalog,
    stack_count: int = 5,
    latencies: Optional[LatencyTable] = None,
) -> Tuple[StationState, List[PhysicalEvent]]:
    """Fresh machine state plus the initial event of every sensor."""
    sim = Simulation(catalog, stack_count, latencies)
    return sim.state, sim.events


def apply_command(
    catalog: StationCatalog,
    state: StationState,
    actuator: ComponentId,
    signal: Signal,
    t: int,
    latencies: Optional[LatencyTable] = None,
) -> Tuple[StationState, List[PhysicalEvent]]:
    """Apply one command to a copy of `state` and settle its motions.

    The returned events include the actuator's own state change at t and
    the sensor changes at motion completion.  Because the motion settles,
    chained calls cannot interrupt each other; use `Simulation` directly
    for mid-motion reversal timelines.
    """
    sim = Simulation(catalog, 0, latencies, _resume=copy.deepcopy(state))
    sim.command(actuator, signal, t)
    sim.settle()
    return sim.state, sim.events


def run_script(
    catalog: StationCatalog,
    script: CommandScript,
    faults: Sequence[FaultSpec] = (),
    seed: int = 0,
    stack_count: int = 5,
    latencies: Optional[LatencyTable] = None,
) -> List[PhysicalEvent]:
    """Run a command script and return the full, time-ordered event trace.

    Deterministic for a fixed (script, faults, seed).  Latency overrides
    shift completion events; stuck sensors pin their reported state from
    the start and suppress changes; dropped events are removed from the
    output but still happen internally.
    """
    table = latencies or default_latency_table()
    stuck: Dict[ComponentId, DeviceState] = {}
    dropped = set()
    for fault in faults:
        if fault.device not in catalog.devices:
            raise UnknownDeviceError(fault.device)
        if isinstance(fault, LatencyOverride):
            table = table.with_override(fault.device, fault.latency_ms, fault.transition)
        elif isinstance(fault, StuckSensor):
            stuck[fault.device] = fault.state
        elif isinstance(fault, DropEvents):
            dropped.add(fault.device)
        else:
            raise TypeError(f"unknown fault: {fault!r}")

    sim = Simulation(catalog, stack_count, table, random.Random(seed))
    events = sim.run(script)

    if not stuck and not dropped:
        return events
    out: List[PhysicalEvent] = []
    pinned = set()
    for event in events:
        if event.device in dropped:
            continue
        if event.device in stuck:
            if event.device in pinned:
                continue
            pinned.add(event.device)
            mapping = catalog.signal_mapping(event.device)
            state = mapping.state_named(stuck[event.device].name)
            out.append(PhysicalEvent(event.device, event.kind, event.timepoint, state))
        else:
            out.append(event)
    return out
