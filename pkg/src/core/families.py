# -*- coding: utf-8 -*-
"""
图族生成模块
完全图、广义路径图、广义环图、广义星图、Turán 图的生成器及其闭式谱
"""

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Tuple

import numpy as np

from src.core.exceptions import ParameterError
from src.core.graph import Graph, SpectralSummary, build_graph
from src.utils.logger import get_logger

logger = get_logger("Families")

# 各图族需要的参数名
FAMILY_PARAMETERS = {
    "complete": ("n",),
    "path": ("n", "d"),
    "cycle": ("n", "d"),
    "star": ("n", "d"),
    "turan": ("k", "r"),
}


def _require(condition: bool, message: str):
    if not condition:
        raise ParameterError(message)


@dataclass(frozen=True)
class FamilySpec:
    """
    图族描述：kind ∈ {complete, path, cycle, star, turan} 及其参数

    文本语法 "complete:n"、"path:n,d"、"cycle:n,d"、"star:n,d"、"turan:k,r"
    """

    kind: str
    parameters: Tuple[int, ...]

    def __post_init__(self):
        _require(self.kind in FAMILY_PARAMETERS, f"未知图族: {self.kind}")
        names = FAMILY_PARAMETERS[self.kind]
        _require(len(self.parameters) == len(names),
                 f"图族 {self.kind} 需要参数 {','.join(names)}，实际 {self.parameters}")
        object.__setattr__(self, "parameters", tuple(int(p) for p in self.parameters))

        if self.kind == "complete":
            _require(self.n >= 2, f"complete 要求 n ≥ 2，实际 n={self.n}")
        elif self.kind in ("path", "cycle"):
            _require(self.d >= 1, f"{self.kind} 要求 d ≥ 1，实际 d={self.d}")
            _require(self.n >= self.d + 1, f"{self.kind} 要求 n ≥ d+1，实际 n={self.n}, d={self.d}")
        elif self.kind == "star":
            _require(self.d >= 2, f"star 要求 d ≥ 2，实际 d={self.d}")
            _require(self.n >= self.d + 2, f"star 要求 n ≥ d+2，实际 n={self.n}, d={self.d}")
        else:
            k, r = self.parameters
            _require(k >= 2 and r >= 2, f"turan 要求 k ≥ 2 且 r ≥ 2，实际 k={k}, r={r}")

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """解析 "kind:a,b" 形式的文本"""
        kind, sep, rest = text.strip().partition(":")
        _require(bool(sep) and bool(rest), f"图族描述格式错误: {text!r}")
        try:
            parameters = tuple(int(part) for part in rest.split(","))
        except ValueError:
            raise ParameterError(f"图族参数必须为整数: {text!r}") from None
        return cls(kind.strip().lower(), parameters)

    @classmethod
    def complete(cls, n: int) -> "FamilySpec":
        return cls("complete", (n,))

    @classmethod
    def path(cls, n: int, d: int) -> "FamilySpec":
        return cls("path", (n, d))

    @classmethod
    def cycle(cls, n: int, d: int) -> "FamilySpec":
        return cls("cycle", (n, d))

    @classmethod
    def star(cls, n: int, d: int) -> "FamilySpec":
        return cls("star", (n, d))

    @classmethod
    def turan(cls, k: int, r: int) -> "FamilySpec":
        return cls("turan", (k, r))

    @property
    def n(self) -> int:
        """顶点数"""
        if self.kind == "turan":
            return self.parameters[0] * self.parameters[1]
        return self.parameters[0]

    @property
    def d(self) -> int:
        _require(self.kind in ("path", "cycle", "star"), f"图族 {self.kind} 没有参数 d")
        return self.parameters[1]

    @property
    def label(self) -> str:
        return f"{self.kind}:{','.join(str(p) for p in self.parameters)}"

    def __str__(self) -> str:
        return self.label


def _edges_where(n: int, predicate):
    return [(i, j) for i, j in combinations(range(1, n + 1), 2) if predicate(i, j)]


def generate(spec: FamilySpec) -> Graph:
    """
    生成图族实例

    Args:
        spec: 图族描述

    Returns:
        Graph: 按定义生成的图
    """
    n = spec.n
    if spec.kind == "complete":
        edges = _edges_where(n, lambda i, j: True)
    elif spec.kind == "path":
        d = spec.d
        edges = _edges_where(n, lambda i, j: j - i <= d)
    elif spec.kind == "cycle":
        d = spec.d
        edges = _edges_where(n, lambda i, j: min((j - i) % n, (i - j) % n) <= d)
        if n <= 2 * spec.d + 1:
            logger.debug(f"{spec.label} 覆盖全部余数，退化为 K_{n}")
    elif spec.kind == "star":
        d = spec.d
        edges = _edges_where(n, lambda i, j: i <= d or j <= d)
    else:
        r = spec.parameters[1]
        edges = _edges_where(n, lambda i, j: (i - j) % r != 0)
    return build_graph(n, edges)


def complete_spectrum(n: int) -> SpectralSummary:
    """K_n 的 Laplacian 谱 {0^(1), n^(n−1)}"""
    _require(n >= 2, f"要求 n ≥ 2，实际 n={n}")
    return SpectralSummary.from_groups([(0.0, 1), (float(n), n - 1)])


def star_spectrum(n: int, d: int) -> SpectralSummary:
    """
    广义星图 S_{n,d} 的 Laplacian 谱 {0^(1), d^(n−d−1), n^(d)}

    d = 1 时即星图 K_{1,n−1}
    """
    _require(d >= 1, f"要求 d ≥ 1，实际 d={d}")
    _require(n >= d + 2, f"要求 n ≥ d+2，实际 n={n}, d={d}")
    return SpectralSummary.from_groups([(0.0, 1), (float(d), n - d - 1), (float(n), d)])


def turan_spectrum(k: int, r: int) -> SpectralSummary:
    """Turán 图 T_{kr,r} 的 Laplacian 谱 {0^(1), k(r−1)^((k−1)r), kr^(r−1)}"""
    _require(k >= 2 and r >= 2, f"要求 k ≥ 2 且 r ≥ 2，实际 k={k}, r={r}")
    return SpectralSummary.from_groups(
        [(0.0, 1), (float(k * (r - 1)), (k - 1) * r), (float(k * r), r - 1)])


def cycle_a1(n: int, d: int) -> float:
    """
    广义环图 C_{n,d} 的代数连通度

    n ≤ 2d+1 时为 n，否则为 Σ_{k=1}^d 2(1 − cos(2kπ/n))
    """
    _require(d >= 1, f"要求 d ≥ 1，实际 d={d}")
    _require(n >= d + 1, f"要求 n ≥ d+1，实际 n={n}, d={d}")
    if n <= 2 * d + 1:
        return float(n)
    return float(sum(2.0 * (1.0 - math.cos(2.0 * k * math.pi / n)) for k in range(1, d + 1)))


def cycle_spectrum(n: int, d: int) -> SpectralSummary:
    """
    C_{n,d} 的完整 Laplacian 谱（循环矩阵特征值）

    n ≥ 2d+2 时 λ_m = Σ_k 2(1 − cos(2πkm/n))，m = 0..n−1；否则退化为 K_n 的谱
    """
    _require(d >= 1 and n >= d + 1, f"要求 d ≥ 1 且 n ≥ d+1，实际 n={n}, d={d}")
    if n <= 2 * d + 1:
        return complete_spectrum(n)
    k = np.arange(1, d + 1)
    values = [float(np.sum(2.0 * (1.0 - np.cos(2.0 * np.pi * k * m / n)))) for m in range(n)]
    return SpectralSummary.from_eigenvalues(values)


def cycle_test_vectors(n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    环图测试向量

    u_i = √(2/n)·cos((2π/n)(i−½))，v_i = √(1/n)·cos((π/n)(i−½))，w = [v; −v]

    Returns:
        (u, v, w): u、v 为 n 维，w 为 2n 维
    """
    _require(n >= 2, f"要求 n ≥ 2，实际 n={n}")
    shifted = np.arange(1, n + 1) - 0.5
    u = math.sqrt(2.0 / n) * np.cos(2.0 * np.pi / n * shifted)
    v = math.sqrt(1.0 / n) * np.cos(np.pi / n * shifted)
    w = np.concatenate([v, -v])
    return u, v, w


def mirrored_path(n: int, d: int) -> Graph:
    """
    P_{n,d} 与其镜像副本 P*_{n,d} 的不交并，共 2n 个顶点

    顶点 1..n 为原路径，n+1..2n 为副本，Laplacian 等于 I₂ ⊗ L(P_{n,d})
    """
    path = generate(FamilySpec.path(n, d))
    edges = list(path.edges) + [(i + n, j + n) for i, j in path.edges]
    return build_graph(2 * n, edges)
