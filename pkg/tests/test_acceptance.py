"""Acceptance criteria, one test per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see one line per
criterion.  Tolerances and runtime budgets are fixed here, not tuned.
"""

from __future__ import annotations

import functools
import io
import itertools
import json
import random
import time

import pytest

from capstation.cli import cli_main
from capstation.core.bemap import ComponentId, ComponentValue, build_bemap
from capstation.core.geometry import Box3D
from capstation.core.timing import TimePoint, relative_duration
from capstation.devices import DeviceKind, DeviceState, PhysicalEvent, Signal
from capstation.errors import DuplicateKeyError
from capstation.monitor import (
    CompiledRule,
    MonitorConfig,
    RuleKind,
    SequenceUnit,
    StreamMonitor,
    auto_horizon,
    check_spatial,
    compile_topology,
)
from capstation.scenarios import nominal_script
from capstation.simulator import Simulation, run_script
from capstation.station import (
    STACK_EJECTOR_EXTENDED,
    STACK_EJECTOR_RETRACTED,
    TopologyName,
    documented_edge,
    sensor_boxes,
)
from capstation.wire import edge_to_obj, write_script, write_trace
from oracle import monitor_entries, oracle_entries

GOLDEN_NAMES = {
    TopologyName.PROCESS_SEQUENCE: "process_sequence_edge.json",
    TopologyName.CAUSALITY: "causality_edge.json",
    TopologyName.AVOIDANCE: "avoidance_edge.json",
}


def _report(number: int, title: str):
    def decorator(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"ACCEPTANCE {number} {title}: FAIL")
                raise
            print(f"ACCEPTANCE {number} {title}: PASS")

        return wrapper

    return decorator


@_report(1, "golden topology fixtures")
def test_criterion_1_golden_fixtures(catalog, golden_dir):
    started = time.monotonic()
    for topology, name in GOLDEN_NAMES.items():
        golden = json.loads((golden_dir / name).read_text())
        assert edge_to_obj(documented_edge(catalog, topology)) == golden
    # spot-check the constants the fixtures carry
    process = json.loads((golden_dir / GOLDEN_NAMES[TopologyName.PROCESS_SEQUENCE]).read_text())
    assert process["annotation"]["duration"]["scalar"]["expression"][1]["expression"] == 3
    causality = json.loads((golden_dir / GOLDEN_NAMES[TopologyName.CAUSALITY]).read_text())
    rng = causality["annotation"]["durationRange"]
    assert rng["minimum"]["scalar"]["expression"][1]["expression"] == 200
    assert rng["maximum"]["scalar"]["expression"][1]["expression"] == 300
    avoidance = json.loads((golden_dir / GOLDEN_NAMES[TopologyName.AVOIDANCE]).read_text())
    rng = avoidance["annotation"]["durationRange"]
    assert rng["minimum"]["scalar"]["expression"][1]["expression"] == -500
    assert rng["maximum"]["scalar"]["expression"][1]["expression"] == 1000
    assert time.monotonic() - started < 1.0


@_report(2, "measured sensor geometry")
def test_criterion_2_geometry(catalog):
    boxes = sensor_boxes(catalog)
    extend = boxes[STACK_EJECTOR_EXTENDED]
    retract = boxes[STACK_EJECTOR_RETRACTED]
    assert extend == Box3D(53, 198, 4, 85, 208, 20)
    assert retract == Box3D(53, 312, 4, 85, 322, 20)
    assert extend.volume() == 5120
    assert retract.volume() == 5120
    assert not extend.overlaps(retract)
    report = check_spatial(catalog, devices=[STACK_EJECTOR_EXTENDED, STACK_EJECTOR_RETRACTED])
    assert not report.has_overlap


@_report(3, "nominal run and latency fault via the CLI")
def test_criterion_3_nominal_and_fault(tmp_path, capsys):
    started = time.monotonic()
    scenario = tmp_path / "nominal.jsonl"
    write_script(str(scenario), nominal_script())

    trace = tmp_path / "trace.jsonl"
    assert cli_main(["simulate", "--scenario", str(scenario), "--out", str(trace)]) == 0
    report = tmp_path / "report.json"
    assert (
        cli_main(["monitor", "--trace", str(trace), "--topology", "all", "--report", str(report)])
        == 0
    )
    assert all(v["outcome"] == "Satisfied" for v in json.loads(report.read_text()))

    faults = tmp_path / "faults.json"
    faults.write_text(
        json.dumps(
            [
                {
                    "fault": "latency-override",
                    "device": "Stack Ejector Extend",
                    "latency_ms": 350,
                    "transition": "activate",
                }
            ]
        )
    )
    assert (
        cli_main(
            [
                "simulate",
                "--scenario", str(scenario),
                "--faults", str(faults),
                "--out", str(trace),
            ]
        )
        == 0
    )
    assert (
        cli_main(["monitor", "--trace", str(trace), "--topology", "all", "--report", str(report)])
        == 1
    )
    bad = [v for v in json.loads(report.read_text()) if v["outcome"] != "Satisfied"]
    # exactly the obligations opened by the delayed extension
    assert {v["outcome"] for v in bad} == {"ViolatedLate", "ViolatedMissing"}
    assert all(v["topology"] == "Causality" for v in bad)
    assert all(v["source"] == "Stack Ejector Extend" and v["cause"] == "Active" for v in bad)
    assert any(v["target"] == "Stack Ejector Retracted" for v in bad)  # the documented edge
    capsys.readouterr()
    assert time.monotonic() - started < 1.0


@_report(4, "streaming monitor equals the brute-force oracle")
def test_criterion_4_oracle_equivalence():
    started = time.monotonic()
    rng = random.Random(987654321)
    devices = [ComponentId(f"D{i}") for i in range(3)]
    names = ["Alpha", "Beta"]
    signals = [Signal.HIGH, Signal.LOW]
    spec_signals = signals + [Signal.DONT_CARE]

    def random_rules(concrete_causes: bool):
        count = rng.randint(1, 4)
        rules = []
        for i in range(count):
            lo, hi = sorted((rng.randint(-800, 800), rng.randint(-800, 800)))
            cause_signal = rng.choice(signals if concrete_causes else spec_signals)
            rules.append(
                CompiledRule(
                    i, "rand",
                    rng.choice(devices), rng.choice(devices),
                    DeviceState(rng.choice(names), cause_signal),
                    DeviceState(rng.choice(names), rng.choice(spec_signals)),
                    lo, hi, rng.random() < 0.3, RuleKind.CONSTRAINT,
                )
            )
        return rules

    def random_trace(length: int):
        t = 0
        out = []
        for _ in range(length):
            t += rng.randint(0, 60)
            out.append(
                PhysicalEvent(
                    rng.choice(devices), DeviceKind.SENSOR, TimePoint(t),
                    DeviceState(rng.choice(names), rng.choice(signals)),
                )
            )
        return out

    checked = 0
    for _ in range(460):  # small traces, abstract cause specs
        rules, trace = random_rules(False), random_trace(rng.randint(0, 90))
        _assert_equivalence(rules, trace)
        checked += 1
    for _ in range(60):  # large traces, concrete cause specs keep this quick
        rules, trace = random_rules(True), random_trace(rng.randint(400, 1000))
        _assert_equivalence(rules, trace)
        checked += 1
    assert checked >= 500
    assert time.monotonic() - started < 60.0


def _assert_equivalence(rules, trace):
    mon = StreamMonitor(rules)
    verdicts = []
    for event in trace:
        verdicts.extend(mon.ingest(event))
    end = trace[-1].timepoint.t if trace else 0
    if trace:
        verdicts.extend(mon.finalize(end))
    assert monitor_entries(verdicts, trace) == oracle_entries(
        rules, trace, end, auto_horizon(rules)
    )


@_report(5, "library property checks")
def test_criterion_5_property_spot_checks(catalog):
    # key-value maps: round trip and duplicate rejection
    contact = build_bemap(
        [
            (ComponentId("Name"), ComponentValue("Elon Musk")),
            (ComponentId("Address"), ComponentValue("Mars")),
        ]
    )
    assert contact.get(ComponentId("Address")) == ComponentValue("Mars")
    with pytest.raises(DuplicateKeyError):
        build_bemap([(ComponentId("A"), ComponentValue(1)), (ComponentId("A"), ComponentValue(2))])

    # boxes: symmetry, reflexivity, closed-boundary exclusion
    a = Box3D(0, 0, 0, 10, 10, 10)
    b = Box3D(10, 0, 0, 20, 10, 10)
    c = Box3D(5, 5, 5, 15, 15, 15)
    assert a.overlaps(c) and c.overlaps(a) and a.overlaps(a)
    assert not a.overlaps(b) and not b.overlaps(a)

    # simulator: position exclusion, determinism, stack conservation
    trace_a = run_script(catalog, nominal_script(), seed=3)
    trace_b = run_script(catalog, nominal_script(), seed=3)
    buf_a, buf_b = io.StringIO(), io.StringIO()
    write_trace(buf_a, trace_a)
    write_trace(buf_b, trace_b)
    assert buf_a.getvalue() == buf_b.getvalue()

    state = {}
    for _, group in itertools.groupby(trace_a, key=lambda e: e.timepoint.t):
        for event in group:
            state[event.device] = event.state.name
        assert not (
            state.get(STACK_EJECTOR_EXTENDED) == "Obstructed"
            and state.get(STACK_EJECTOR_RETRACTED) == "Obstructed"
        )

    sim = Simulation(catalog, stack_count=5)
    sim.run(nominal_script())
    assert 5 == sim.state.stack_count + sim.state.caps_pushed

    # a correlation is the degenerate constraint with the same window
    from capstation.core.graph import AnnotatedGraph, EdgeAnn, TemporalConstraint, TemporalCorrelation
    from capstation.core.timing import TimeDurationRange

    cause = DeviceState("Alpha", Signal.DONT_CARE)
    effect = DeviceState("Beta", Signal.DONT_CARE)
    src, dst = ComponentId("D0"), ComponentId("D1")
    corr = compile_topology(
        AnnotatedGraph(
            (EdgeAnn(src, dst, TemporalCorrelation(cause, relative_duration(cause, 40), effect)),)
        ),
        MonitorConfig(correlation_tolerance_ms=15, sequence_unit=SequenceUnit.MILLISECONDS),
    )
    cons = compile_topology(
        AnnotatedGraph(
            (
                EdgeAnn(
                    src, dst,
                    TemporalConstraint(
                        cause,
                        TimeDurationRange(
                            relative_duration(cause, 25), relative_duration(cause, 55)
                        ),
                        effect,
                    ),
                ),
            )
        ),
        MonitorConfig(),
    )
    rng = random.Random(5)
    for _ in range(50):
        t, events = 0, []
        for _ in range(rng.randint(0, 40)):
            t += rng.randint(0, 30)
            events.append(
                PhysicalEvent(
                    rng.choice([src, dst]), DeviceKind.SENSOR, TimePoint(t),
                    DeviceState(rng.choice(["Alpha", "Beta"]), rng.choice([Signal.HIGH, Signal.LOW])),
                )
            )
        end = events[-1].timepoint.t if events else 0
        outcomes = []
        for rules in (corr, cons):
            mon = StreamMonitor(rules)
            vs = []
            for event in events:
                vs.extend(mon.ingest(event))
            if events:
                vs.extend(mon.finalize(end))
            outcomes.append([(v.cause_time, v.outcome, v.window) for v in vs])
        assert outcomes[0] == outcomes[1]


@_report(6, "CLI exit code contract")
def test_criterion_6_cli_contract(tmp_path, capsys):
    scenario = tmp_path / "nominal.jsonl"
    write_script(str(scenario), nominal_script())
    trace = tmp_path / "trace.jsonl"

    # 0: success paths
    assert cli_main(["simulate", "--scenario", str(scenario), "--out", str(trace)]) == 0
    assert cli_main(["monitor", "--trace", str(trace), "--topology", "all"]) == 0
    assert cli_main(["check-spatial"]) == 0
    assert cli_main(["model", "dump", "--topology", "avoidance"]) == 0

    # 1: violations found
    faults = tmp_path / "faults.json"
    faults.write_text(
        json.dumps(
            [{"fault": "latency-override", "device": "Stack Ejector Extend",
              "latency_ms": 350, "transition": "activate"}]
        )
    )
    assert (
        cli_main(
            ["simulate", "--scenario", str(scenario), "--faults", str(faults),
             "--out", str(trace)]
        )
        == 0
    )
    assert cli_main(["monitor", "--trace", str(trace), "--topology", "causality"]) == 1

    # 2: usage and input errors
    bad = tmp_path / "bad.jsonl"
    bad.write_text("{broken\n")
    assert cli_main(["simulate", "--scenario", str(bad), "--out", str(trace)]) == 2
    assert cli_main(["monitor", "--trace", str(tmp_path / "absent.jsonl"), "--topology", "all"]) == 2
    assert cli_main(["nonsense"]) == 2
    assert cli_main(["monitor", "--topology", "all"]) == 2
    capsys.readouterr()
