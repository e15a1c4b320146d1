from __future__ import annotations

from pathlib import Path

import pytest

from submatch import LabelTable, parse_graph

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fig1_paths() -> tuple[Path, Path]:
    return FIXTURES / "fig1_data.graph", FIXTURES / "fig1_query.graph"


@pytest.fixture()
def fig1(fig1_paths):
    data_path, query_path = fig1_paths
    table = LabelTable()
    g = parse_graph(data_path.read_text(), table)
    q = parse_graph(query_path.read_text(), table)
    return g, q
