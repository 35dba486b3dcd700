# -*- coding: utf-8 -*-
"""
广义代数连通度估计测试
"""

import math

import pytest

from src.core.exceptions import DisconnectedGraphError, ParameterError
from src.core.families import FamilySpec, cycle_a1, generate
from src.core.gac import (GacOptimizer, OptimizerConfig, algebraic_connectivity, estimate_gac,
                          known_gac, rigidity_ratio, structured_layout)
from src.core.graph import build_graph


class TestOptimizerConfig:
    def test_defaults(self):
        config = OptimizerConfig()
        assert config.restarts == 16
        assert config.iterations == 400
        assert config.to_dict()["workers"] == 1

    @pytest.mark.parametrize("kwargs", [
        {"restarts": 0}, {"iterations": -1}, {"step_init": 0.0}, {"step_decay": 1.0},
        {"injectivity_floor": -1.0}, {"workers": 0},
    ])
    def test_validation(self, kwargs):
        with pytest.raises(ParameterError):
            OptimizerConfig(**kwargs)

    def test_from_settings(self):
        config = OptimizerConfig.from_settings({"restarts": 5, "seed": 3, "unknown": 1},
                                               seed=9, iterations=None)
        assert config.restarts == 5
        assert config.seed == 9
        assert config.iterations == 400


def test_algebraic_connectivity():
    assert algebraic_connectivity(generate(FamilySpec.star(8, 3))) == pytest.approx(3.0)
    assert algebraic_connectivity(generate(FamilySpec.complete(6))) == pytest.approx(6.0)
    with pytest.raises(ParameterError):
        algebraic_connectivity(build_graph(1, []))


def test_structured_layout_is_regular_polygon():
    points = structured_layout(6, 2)
    assert points.shape == (6, 2)
    assert (points ** 2).sum(axis=1) == pytest.approx([1.0] * 6)
    assert structured_layout(4, 1).ravel().tolist() == pytest.approx([0.0, 1 / 3, 2 / 3, 1.0])
    assert structured_layout(5, 3).shape == (5, 3)


class TestEstimate:
    @pytest.mark.parametrize("d", [1, 2, 3, 5])
    def test_single_edge(self, d, fast_config):
        graph = build_graph(2, [(1, 2)])
        estimate = estimate_gac(graph, d, fast_config)
        assert estimate.value == pytest.approx(2.0)
        assert rigidity_ratio(graph, d, estimate=estimate) == pytest.approx(1.0)

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
    def test_complete_graph_in_plane(self, n, fast_config):
        spec = FamilySpec.complete(n)
        estimate = estimate_gac(generate(spec), 2, fast_config, spec)
        assert n / 2 - 1e-9 <= estimate.value <= n / 2 + 1e-6
        assert estimate.known.kind == "exact"
        assert estimate.upper_bound == pytest.approx(n / 2)

    def test_regular_polygon_start(self):
        config = OptimizerConfig(restarts=1, iterations=0)
        estimate = estimate_gac(generate(FamilySpec.complete(5)), 2, config)
        assert estimate.value == pytest.approx(2.5, abs=1e-9)
        assert not estimate.converged
        assert estimate.trace == ()

    def test_one_dimension_equals_algebraic_connectivity(self, fast_config):
        graph = generate(FamilySpec.path(7, 2))
        estimate = estimate_gac(graph, 1, fast_config)
        assert estimate.value == pytest.approx(estimate.algebraic_connectivity, rel=1e-9)

    def test_star_stays_below_half(self, fast_config):
        spec = FamilySpec.star(6, 2)
        estimate = estimate_gac(generate(spec), 2, fast_config, spec)
        assert estimate.algebraic_connectivity == pytest.approx(2.0)
        assert estimate.upper_bound == pytest.approx(1.0)
        assert estimate.value <= 1.0 + 1e-6
        assert estimate.value / estimate.algebraic_connectivity <= 0.5 + 1e-6

    @pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
    def test_star_reaches_known_value(self, n):
        spec = FamilySpec.star(n, 2)
        estimate = estimate_gac(generate(spec), 2, OptimizerConfig(), spec)
        assert 0.95 <= estimate.value <= 1.0 + 1e-6
        assert estimate.known.kind == "exact"

    def test_never_exceeds_algebraic_connectivity(self, random_graphs):
        config = OptimizerConfig(restarts=2, iterations=40, seed=1)
        for graph in random_graphs[:6]:
            estimate = estimate_gac(graph, 2, config)
            assert 0.0 <= estimate.value + 1e-9
            assert estimate.value <= estimate.algebraic_connectivity + 1e-6

    def test_deterministic(self, fast_config):
        graph = generate(FamilySpec.cycle(8, 2))
        first = estimate_gac(graph, 2, fast_config)
        second = estimate_gac(graph, 2, fast_config)
        assert first.value == second.value
        assert first.restart_values == second.restart_values
        assert first.to_dict() == second.to_dict()

    def test_workers_do_not_change_result(self):
        graph = generate(FamilySpec.path(7, 2))
        serial = estimate_gac(graph, 2, OptimizerConfig(restarts=4, iterations=60, workers=1))
        parallel = estimate_gac(graph, 2, OptimizerConfig(restarts=4, iterations=60, workers=2))
        assert serial.restart_values == parallel.restart_values
        assert serial.best_restart == parallel.best_restart

    def test_traces_are_monotone(self, fast_config):
        estimate = estimate_gac(generate(FamilySpec.path(6, 2)), 2, fast_config)
        assert len(estimate.traces) == fast_config.restarts
        for trace in estimate.traces:
            assert len(trace) == fast_config.iterations
            assert all(b >= a for a, b in zip(trace, trace[1:]))
        assert "traces" in estimate.to_dict(include_traces=True)
        assert "traces" not in estimate.to_dict()

    def test_rejects_parameters(self, fast_config):
        with pytest.raises(ParameterError):
            estimate_gac(build_graph(1, []), 2, fast_config)
        with pytest.raises(ParameterError):
            estimate_gac(build_graph(2, [(1, 2)]), 0, fast_config)


def test_ratio_of_disconnected_graph(fast_config):
    with pytest.raises(DisconnectedGraphError):
        rigidity_ratio(build_graph(4, [(1, 2), (3, 4)]), 2, fast_config)


def test_optimizer_evaluate_matches_trivial_dimension():
    optimizer = GacOptimizer(generate(FamilySpec.complete(4)), 2, OptimizerConfig())
    value, values, _, trivial = optimizer.evaluate(structured_layout(4, 2))
    assert trivial == 3
    assert values[:3] == pytest.approx([0.0, 0.0, 0.0], abs=1e-9)
    assert value == pytest.approx(2.0)


class TestKnownValues:
    def test_complete(self):
        assert known_gac(FamilySpec.complete(5), 2).value == 2.5
        assert known_gac(FamilySpec.complete(4), 3).value == 1.0
        assert known_gac(FamilySpec.complete(2), 6).value == 2.0
        assert known_gac(FamilySpec.complete(9), 1).value == 9.0

    def test_complete_bracket(self):
        known = known_gac(FamilySpec.complete(7), 3)
        assert known.kind == "bracket"
        assert known.lower == pytest.approx(0.5 * math.ceil(7 / 3))
        assert known.upper == pytest.approx(14 / 6 + 1 / 3)
        assert known.contains(2.0)
        assert not known.contains(3.0)

    def test_star_and_turan(self):
        assert known_gac(FamilySpec.star(6, 2), 2).value == 1.0
        assert known_gac(FamilySpec.star(6, 2), 1).value == 2.0
        assert known_gac(FamilySpec.turan(3, 3), 2).lower == 1.5
        assert known_gac(FamilySpec.turan(3, 4), 2).lower == 3.0
        assert known_gac(FamilySpec.turan(3, 5), 2) is None

    def test_path(self):
        known = known_gac(FamilySpec.path(6, 2), 2)
        assert known.kind == "upper"
        assert known.upper == pytest.approx(cycle_a1(12, 2))
        assert known_gac(FamilySpec.path(6, 2), 1) is None

    def test_rejects_dimension(self):
        with pytest.raises(ParameterError):
            known_gac(FamilySpec.complete(3), 0)
