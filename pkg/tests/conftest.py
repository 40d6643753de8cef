from __future__ import annotations

import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))

from capstation.scenarios import late_extension_fault, nominal_script
from capstation.simulator import run_script
from capstation.station import build_catalog

GOLDEN_DIR = pathlib.Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def catalog():
    return build_catalog()


@pytest.fixture(scope="session")
def nominal_trace(catalog):
    return run_script(catalog, nominal_script())


@pytest.fixture(scope="session")
def faulty_trace(catalog):
    return run_script(catalog, nominal_script(), faults=late_extension_fault())


@pytest.fixture(scope="session")
def golden_dir():
    return GOLDEN_DIR
