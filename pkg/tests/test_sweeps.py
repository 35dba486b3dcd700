# -*- coding: utf-8 -*-
"""
参数扫描测试
"""

import pytest

from src.core.exceptions import ParameterError
from src.core.families import FamilySpec, generate
from src.core.gac import OptimizerConfig
from src.core.sweeps import ASYMPTOTIC_LIMIT, SWEEPS, family_instance, parse_range, run_sweep


@pytest.fixture
def tiny_config():
    return OptimizerConfig(restarts=2, iterations=40, seed=0)


class TestParseRange:
    @pytest.mark.parametrize("text, expected", [
        ("3..6", [3, 4, 5, 6]),
        ("2..10:4", [2, 6, 10]),
        (" 1 .. 2 ", [1, 2]),
        ("5,7,9", [5, 7, 9]),
        ("4", [4]),
    ])
    def test_valid(self, text, expected):
        assert parse_range(text) == expected

    @pytest.mark.parametrize("text", ["", "6..3", "1..4:0", "a,b", "  "])
    def test_invalid(self, text):
        with pytest.raises(ParameterError):
            parse_range(text)


def test_family_instance():
    assert family_instance("complete", 5, 3) == FamilySpec.complete(5)
    assert family_instance("path", 7, 2) == FamilySpec.path(7, 2)
    assert family_instance("turan", 3, 2) == FamilySpec.turan(3, 3)


def test_asymptotic_ratio_sweep():
    frame = run_sweep("asymptotic-ratio", [3, 6, 10, 50], [1, 2])
    assert list(frame.columns)[-1] == "ratio"
    assert len(frame) == 6
    assert (frame["ratio"] > ASYMPTOTIC_LIMIT).all()
    assert frame["excess"].tolist() == pytest.approx((frame["ratio"] - ASYMPTOTIC_LIMIT).tolist())
    assert frame["d"].tolist() == [1, 1, 1, 2, 2, 2]


def test_path_cycle_sweep():
    frame = run_sweep("path-cycle", list(range(3, 12)), [1, 2, 3])
    assert set(frame["d"]) == {2, 3}
    assert frame["satisfied"].all()
    assert (frame["improvement"] < 1.0).all()


def test_path_diameter_sweep():
    frame = run_sweep("path-diameter", list(range(2, 15)), [1, 2, 3])
    assert frame["match"].all()
    assert frame.loc[(frame["n"] == 10) & (frame["d"] == 3), "diameter"].item() == 3


def test_ratio_sweep(tiny_config):
    frame = run_sweep("ratio", [2, 3, 4], [2], family="complete", config=tiny_config)
    assert frame["family"].tolist() == ["complete:2", "complete:3", "complete:4"]
    assert frame["ratio"].tolist() == pytest.approx([1.0, 0.5, 0.5], abs=1e-6)
    assert frame["known_lower"].tolist() == pytest.approx([2.0, 1.5, 2.0])


def test_ratio_sweep_skips_out_of_domain(tiny_config):
    frame = run_sweep("ratio", [3, 4, 6], [2], family="star", config=tiny_config)
    assert frame["n"].tolist() == [4, 6]
    assert (frame["ratio"] <= 0.5 + 1e-6).all()


def test_monotonicity_sweep(tiny_config):
    frame = run_sweep("monotonicity", [], [1, 2], family="complete:4", config=tiny_config)
    assert frame["d"].tolist() == [1, 2]
    assert frame["gac"].tolist() == pytest.approx([4.0, 2.0], abs=1e-6)
    assert frame["non_increasing"].all()


def test_monotonicity_sweep_uses_relative_tolerance(tiny_config):
    options = {"family": "complete:4", "config": tiny_config}
    assert run_sweep("monotonicity", [], [2, 1], **options)["non_increasing"].tolist() == [True, False]
    relaxed = run_sweep("monotonicity", [], [2, 1], rel_tol=2.0, **options)
    assert relaxed["non_increasing"].all()


def test_monotonicity_sweep_with_graph(tiny_config):
    graph = generate(FamilySpec.cycle(6, 1))
    frame = run_sweep("monotonicity", [], [1], graph=graph, config=tiny_config)
    assert frame["n"].item() == 6


def test_monotonicity_requires_graph():
    with pytest.raises(ParameterError):
        run_sweep("monotonicity", [], [1, 2], family="complete")


def test_path_conjecture_sweep(tiny_config):
    frame = run_sweep("path-conjecture", [4, 5], [2], family="complete", config=tiny_config)
    assert frame["family"].tolist() == ["complete:4", "complete:5"]
    assert frame["path_upper"].notna().all()
    assert list(frame.columns) == ["family", "d", "n", "gac_family", "gac_path", "path_upper",
                                   "difference", "holds"]


def test_empty_domain():
    with pytest.raises(ParameterError):
        run_sweep("path-cycle", [3, 4], [1])
    with pytest.raises(ParameterError):
        run_sweep("path-diameter", [5], [])


def test_unknown_kind():
    with pytest.raises(ParameterError):
        run_sweep("spectral-gap", [3], [2])
    assert set(SWEEPS) == {"asymptotic-ratio", "ratio", "path-cycle", "path-diameter",
                           "monotonicity", "path-conjecture"}
