from pathlib import Path

import pytest

from dqkit.diagram import load_diagram
from dqkit.roc import UtilityModel

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def widget_uninformed():
    return load_diagram(FIXTURES / "widget_uninformed.json")


@pytest.fixture
def widget_tested():
    return load_diagram(FIXTURES / "widget_tested.json")


@pytest.fixture
def perfect_info_base():
    return load_diagram(FIXTURES / "perfect_info_base.json")


@pytest.fixture
def perfect_info_informed():
    return load_diagram(FIXTURES / "perfect_info_informed.json")


@pytest.fixture
def informed_pair():
    return load_diagram(FIXTURES / "informed_pair.json")


@pytest.fixture
def widget_utility():
    # Production-line numbers: good widgets are rare, false accepts costly.
    return UtilityModel(prevalence=0.02, v_tp=50.0, v_fp=-70.0, v_tn=0.0, v_fn=0.0)
