#!/usr/bin/env python3
"""Regenerate the shipped scenario and fault files under scenarios/."""

from __future__ import annotations

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from capstation.scenarios import late_extension_fault, nominal_script, two_cycles_script  # noqa: E402
from capstation.wire import write_script  # noqa: E402


def main() -> None:
    root = pathlib.Path(__file__).resolve().parents[1] / "scenarios"
    root.mkdir(exist_ok=True)
    write_script(str(root / "nominal.jsonl"), nominal_script())
    write_script(str(root / "two_cycles.jsonl"), two_cycles_script())
    print(f"wrote {root / 'two_cycles.jsonl'}")
    faults = [
        {
            "fault": "latency-override",
            "device": fault.device.id,
            "latency_ms": fault.latency_ms,
            "transition": fault.transition,
        }
        for fault in late_extension_fault()
    ]
    (root / "faults_late_extension.json").write_text(json.dumps(faults, indent=2) + "\n")
    print(f"wrote {root / 'nominal.jsonl'}")
    print(f"wrote {root / 'faults_late_extension.json'}")


if __name__ == "__main__":
    main()
