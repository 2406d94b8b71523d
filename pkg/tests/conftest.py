"""Shared fixtures: the published fault table and the default pipeline tables."""

from pathlib import Path

import pytest

from app.index import build_index
from app.models import WeightConfig
from app.parser import load_fault_table, load_stem_table, load_stop_list

ROOT = Path(__file__).resolve().parent.parent
FIXTURES_DIR = ROOT / "fixtures"
DATA_DIR = ROOT / "data"

FAULT_TABLE = FIXTURES_DIR / "paper_table.tsv"
LINK_GRAPH = FIXTURES_DIR / "paper_graph.tsv"
UNIT_COSTS = FIXTURES_DIR / "unit_costs.tsv"
STOPWORDS = DATA_DIR / "stopwords.txt"
STEMS = DATA_DIR / "stems.tsv"


@pytest.fixture(scope="session")
def default_stops():
    return load_stop_list(STOPWORDS)


@pytest.fixture(scope="session")
def default_stems():
    return load_stem_table(STEMS)


@pytest.fixture(scope="session")
def fixture_records():
    return load_fault_table(FAULT_TABLE)


@pytest.fixture(scope="session")
def fixture_index(fixture_records, default_stops, default_stems):
    return build_index(fixture_records, default_stops, default_stems)


@pytest.fixture
def weights():
    """Natural log, within-text max_tf, alpha = 1."""
    return WeightConfig()
