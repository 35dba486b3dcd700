# -*- coding: utf-8 -*-
"""
图族生成与闭式谱测试
"""

import math

import networkx as nx
import numpy as np
import pytest

from src.core.exceptions import ParameterError
from src.core.families import (FamilySpec, complete_spectrum, cycle_a1, cycle_spectrum,
                               cycle_test_vectors, generate, mirrored_path, star_spectrum,
                               turan_spectrum)
from src.core.graph import graph_from_networkx, laplacian
from src.core.spectral import sym_eigenvalues


class TestFamilySpec:
    def test_parse(self):
        assert FamilySpec.parse("path:10,3") == FamilySpec.path(10, 3)
        assert FamilySpec.parse(" Complete:5 ") == FamilySpec.complete(5)
        assert FamilySpec.parse("turan:2,3").n == 6

    @pytest.mark.parametrize("text", ["foo:3", "path:3", "complete", "path:a,b", "complete:1"])
    def test_parse_rejects(self, text):
        with pytest.raises(ParameterError):
            FamilySpec.parse(text)

    @pytest.mark.parametrize("kind, parameters", [
        ("star", (5, 1)),
        ("star", (4, 3)),
        ("path", (3, 3)),
        ("cycle", (2, 2)),
        ("turan", (1, 3)),
    ])
    def test_invalid_parameters(self, kind, parameters):
        with pytest.raises(ParameterError):
            FamilySpec(kind, parameters)

    def test_label(self):
        assert FamilySpec.star(7, 2).label == "star:7,2"
        assert str(FamilySpec.turan(3, 4)) == "turan:3,4"

    def test_d_only_for_dimensioned_families(self):
        with pytest.raises(ParameterError):
            FamilySpec.complete(4).d


class TestGenerate:
    @pytest.mark.parametrize("n", [2, 3, 7])
    def test_complete(self, n):
        assert generate(FamilySpec.complete(n)).m == n * (n - 1) // 2

    @pytest.mark.parametrize("n, d", [(4, 1), (8, 2), (10, 3), (6, 5)])
    def test_path_edge_count(self, n, d):
        assert generate(FamilySpec.path(n, d)).m == d * n - d * (d + 1) // 2

    @pytest.mark.parametrize("n, d", [(5, 1), (9, 2), (12, 3)])
    def test_cycle_is_circulant(self, n, d):
        graph = generate(FamilySpec.cycle(n, d))
        assert graph.m == n * d
        assert set(graph.degrees()) == {2 * d}
        assert graph.has_edge(1, n)

    @pytest.mark.parametrize("n, d", [(4, 3), (5, 2), (7, 3)])
    def test_small_cycle_is_complete(self, n, d):
        assert generate(FamilySpec.cycle(n, d)).is_complete()

    @pytest.mark.parametrize("n, d", [(4, 2), (7, 2), (9, 4)])
    def test_star(self, n, d):
        graph = generate(FamilySpec.star(n, d))
        assert graph.m == d * (d - 1) // 2 + d * (n - d)
        assert graph.degrees()[d:] == [d] * (n - d)

    @pytest.mark.parametrize("k, r", [(2, 2), (2, 3), (3, 4)])
    def test_turan_matches_networkx(self, k, r):
        graph = generate(FamilySpec.turan(k, r))
        expected = graph_from_networkx(nx.turan_graph(k * r, r))
        assert graph.m == expected.m
        assert sorted(graph.degrees()) == sorted(expected.degrees())


class TestClosedFormSpectra:
    def test_complete(self):
        for n in range(2, 15):
            numeric = sym_eigenvalues(laplacian(generate(FamilySpec.complete(n))))
            assert np.allclose(complete_spectrum(n).eigenvalues, numeric, atol=1e-9)

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_star(self, d):
        for n in range(d + 2, 40, 3):
            numeric = sym_eigenvalues(laplacian(generate(FamilySpec.star(n, d))))
            assert np.allclose(star_spectrum(n, d).eigenvalues, numeric, atol=1e-9)

    def test_star_with_single_centre(self):
        numeric = sym_eigenvalues(laplacian(graph_from_networkx(nx.star_graph(6))))
        assert np.allclose(star_spectrum(7, 1).eigenvalues, numeric, atol=1e-9)

    @pytest.mark.parametrize("k, r", [(2, 2), (3, 2), (2, 5), (4, 3), (5, 6), (3, 20)])
    def test_turan(self, k, r):
        numeric = sym_eigenvalues(laplacian(generate(FamilySpec.turan(k, r))))
        spectrum = turan_spectrum(k, r)
        assert spectrum.dimension == k * r
        assert np.allclose(spectrum.eigenvalues, numeric, atol=1e-9)

    @pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
    def test_cycle_a1(self, d):
        for n in list(range(d + 1, 40)) + [101, 200]:
            numeric = sym_eigenvalues(laplacian(generate(FamilySpec.cycle(n, d))))[1]
            assert cycle_a1(n, d) == pytest.approx(numeric, abs=1e-9)

    @pytest.mark.parametrize("n, d", [(4, 2), (10, 1), (13, 3), (20, 4)])
    def test_cycle_spectrum(self, n, d):
        numeric = sym_eigenvalues(laplacian(generate(FamilySpec.cycle(n, d))))
        assert np.allclose(cycle_spectrum(n, d).eigenvalues, numeric, atol=1e-9)

    def test_spectrum_drops_empty_groups(self):
        spectrum = star_spectrum(4, 2)
        assert [k for _, k in spectrum.groups] == [1, 1, 2]
        assert turan_spectrum(2, 2).groups[1] == (2.0, 2)


def test_cycle_a1_closed_form_example():
    expected = 2 * (1 - math.cos(math.pi / 5)) + 2 * (1 - math.cos(2 * math.pi / 5))
    assert cycle_a1(10, 2) == pytest.approx(expected)
    assert cycle_a1(5, 2) == 5.0


@pytest.mark.parametrize("n", [3, 5, 16, 33])
def test_cycle_test_vectors(n):
    u, v, w = cycle_test_vectors(n)
    assert u.shape == v.shape == (n,) and w.shape == (2 * n,)
    assert np.sum(v) == pytest.approx(0.0, abs=1e-12)
    assert v @ v == pytest.approx(0.5)
    assert u @ u == pytest.approx(1.0)
    assert w @ w == pytest.approx(1.0)


def test_mirrored_path_laplacian():
    n, d = 7, 2
    path_lap = laplacian(generate(FamilySpec.path(n, d)))
    assert np.array_equal(laplacian(mirrored_path(n, d)), np.kron(np.eye(2), path_lap))
