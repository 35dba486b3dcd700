# -*- coding: utf-8 -*-
"""
测试公共夹具
"""

import json

import networkx as nx
import numpy as np
import pytest

from src.core.gac import OptimizerConfig
from src.core.graph import graph_from_networkx


def connected_random_graphs(count: int, seed: int, min_n: int = 3, max_n: int = 12):
    """networkx 随机连通图"""
    rng = np.random.default_rng(seed)
    graphs = []
    while len(graphs) < count:
        n = int(rng.integers(min_n, max_n + 1))
        g = nx.gnp_random_graph(n, float(rng.uniform(0.25, 0.8)), seed=int(rng.integers(2 ** 31)))
        if nx.is_connected(g):
            graphs.append(graph_from_networkx(g))
    return graphs


@pytest.fixture(scope="session")
def random_graphs():
    return connected_random_graphs(40, seed=123)


@pytest.fixture
def fast_config():
    return OptimizerConfig(restarts=4, iterations=120, seed=0)


@pytest.fixture
def write_json(tmp_path):
    def _write(name: str, document) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return str(path)
    return _write


@pytest.fixture
def write_text(tmp_path):
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write
