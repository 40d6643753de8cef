"""Built-in command scripts and fault sets for demos and tests.

The nominal dispense cycle drives every rule in the three topologies to a
satisfied verdict under the default latencies.  Its shape is constrained
by two exact requirements: the drop-off swing must complete exactly the
sequence delay (3 s) after each pickup-contact event, and every ejector
extension must sit within [-500, +1000] ms of a Loader Pickup release
event, which is why the arm performs a swing-out/swing-back before the
first ejection.
"""

from __future__ import annotations

from typing import List

from .devices import Signal
from .simulator import Command, CommandScript, FaultSpec, LatencyOverride, ACTIVATE
from .station import (
    EJECT_AIR_PULSE,
    LOADER_DROPOFF,
    LOADER_PICKUP,
    STACK_EJECTOR_EXTEND,
    VACUUM_GRIP,
)

HIGH = Signal.HIGH
LOW = Signal.LOW


def nominal_script() -> CommandScript:
    """One full cap-dispense cycle: swing out/back, eject, grip, deliver."""
    return CommandScript(
        (
            # Arm to drop-off: completes at 3000, matching the 3 s sequence
            # correlation fired by the initial pickup-contact event at t=0.
            Command(2200, LOADER_DROPOFF, HIGH),
            Command(3200, LOADER_DROPOFF, LOW),
            # Arm back to pickup; releasing the solenoid afterwards provides
            # the Passive event the avoidance window looks back for.
            Command(3400, LOADER_PICKUP, HIGH),
            Command(4400, LOADER_PICKUP, LOW),
            # Push a cap out (extension completes at 4750) and grip it.
            Command(4500, STACK_EJECTOR_EXTEND, HIGH),
            Command(5000, VACUUM_GRIP, HIGH),
            # Retract while holding the cap, then carry it to drop-off;
            # the swing completes at 7200 = pickup contact (4200) + 3 s.
            Command(5400, STACK_EJECTOR_EXTEND, LOW),
            Command(6400, LOADER_DROPOFF, HIGH),
            # Blow the cap off and shut the air handling down.
            Command(7400, EJECT_AIR_PULSE, HIGH),
            Command(7600, EJECT_AIR_PULSE, LOW),
            Command(7700, VACUUM_GRIP, LOW),
        )
    )


def two_cycles_script() -> CommandScript:
    """Two consecutive dispense cycles.

    Cycle two re-arms every solenoid (drop-off must go Passive before it
    can pull the arm again) and schedules its drop-off swing so the 3 s
    sequence correlation from the second pickup contact lands exactly.
    """
    second = (
        Command(8000, LOADER_DROPOFF, LOW),
        Command(8200, LOADER_PICKUP, HIGH),
        Command(9200, LOADER_PICKUP, LOW),
        Command(9300, STACK_EJECTOR_EXTEND, HIGH),
        Command(9800, VACUUM_GRIP, HIGH),
        Command(10200, STACK_EJECTOR_EXTEND, LOW),
        Command(11200, LOADER_DROPOFF, HIGH),
        Command(12200, EJECT_AIR_PULSE, HIGH),
        Command(12400, EJECT_AIR_PULSE, LOW),
        Command(12500, VACUUM_GRIP, LOW),
    )
    return CommandScript(nominal_script().commands + second)


def late_extension_fault(latency_ms: int = 350) -> List[FaultSpec]:
    """Slow the ejector extension past the documented 300 ms maximum."""
    return [LatencyOverride(STACK_EJECTOR_EXTEND, latency_ms, transition=ACTIVATE)]
