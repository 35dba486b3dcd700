# -*- coding: utf-8 -*-
"""
图核心模块
有限无向简单图及其度量、连通性不变量（距离、直径、点连通度、不相交路径）
"""

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from networkx.algorithms.flow import edmonds_karp

from src.core.exceptions import DisconnectedGraphError, GraphConstructionError, ParameterError
from src.core.spectral import DEFAULT_CLUSTER_TOL, group_eigenvalues, sym_eigenvalues
from src.utils.logger import get_logger

logger = get_logger("Graph")

# 不连通顶点对的距离标记
INFINITE_DISTANCE = math.inf

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """
    无向简单图，顶点编号 1..n，边按字典序存放

    请通过 build_graph 构造，直接实例化不做规范化
    """

    order: int
    edges: Tuple[Edge, ...]
    _adjacency_sets: Tuple[frozenset, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        neighbours: List[set] = [set() for _ in range(self.order + 1)]
        for i, j in self.edges:
            neighbours[i].add(j)
            neighbours[j].add(i)
        object.__setattr__(self, "_adjacency_sets", tuple(frozenset(s) for s in neighbours))

    @property
    def n(self) -> int:
        return self.order

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(1, self.order + 1)

    def neighbors(self, i: int) -> frozenset:
        self._check_vertex(i)
        return self._adjacency_sets[i]

    def degree(self, i: int) -> int:
        return len(self.neighbors(i))

    def degrees(self) -> List[int]:
        return [len(self._adjacency_sets[i]) for i in self.vertices()]

    def has_edge(self, i: int, j: int) -> bool:
        self._check_vertex(i)
        self._check_vertex(j)
        return j in self._adjacency_sets[i]

    def is_complete(self) -> bool:
        return self.m == self.order * (self.order - 1) // 2

    def edge_index_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        """返回 0 起始的边端点数组 (I, J)，I < J"""
        if not self.edges:
            return np.zeros(0, dtype=int), np.zeros(0, dtype=int)
        array = np.asarray(self.edges, dtype=int) - 1
        return array[:, 0], array[:, 1]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices())
        g.add_edges_from(self.edges)
        return g

    def to_dict(self) -> Dict[str, object]:
        return {"n": self.order, "edges": [list(e) for e in self.edges]}

    def _check_vertex(self, i: int):
        if not 1 <= i <= self.order:
            raise ParameterError(f"顶点 {i} 超出范围 1..{self.order}")


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """
    构造图：去重、端点规范化为 (min, max)、按字典序排列

    Args:
        n: 顶点数（正整数）
        edge_list: 顶点对列表（1 起始编号）

    Returns:
        Graph: 构造好的图
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise GraphConstructionError(f"顶点数必须为正整数: n={n}")
    n = int(n)

    normalized = set()
    for pair in edge_list:
        if len(pair) != 2:
            raise GraphConstructionError(f"边必须是顶点对: {pair}")
        i, j = int(pair[0]), int(pair[1])
        if i == j:
            raise GraphConstructionError(f"不允许自环: ({i}, {j})")
        if not (1 <= i <= n and 1 <= j <= n):
            raise GraphConstructionError(f"边 ({i}, {j}) 的端点超出范围 1..{n}")
        normalized.add((min(i, j), max(i, j)))

    return Graph(order=n, edges=tuple(sorted(normalized)))


def graph_from_networkx(g: nx.Graph) -> Graph:
    """把 networkx 图转换为 Graph，顶点按排序后的顺序重新编号为 1..n"""
    labels = {node: index for index, node in enumerate(sorted(g.nodes()), start=1)}
    return build_graph(len(labels), [(labels[u], labels[v]) for u, v in g.edges()])


def adjacency(graph: Graph) -> np.ndarray:
    """邻接矩阵 A(G)"""
    matrix = np.zeros((graph.order, graph.order))
    rows, cols = graph.edge_index_arrays()
    matrix[rows, cols] = 1.0
    matrix[cols, rows] = 1.0
    return matrix


def laplacian(graph: Graph) -> np.ndarray:
    """Laplacian 矩阵 L(G) = diag(度) − A(G)"""
    a = adjacency(graph)
    return np.diag(a.sum(axis=1)) - a


@dataclass(frozen=True)
class SpectralSummary:
    """
    谱摘要：升序特征值、按容差聚类的 (值, 重数) 组以及所用容差
    """

    eigenvalues: Tuple[float, ...]
    groups: Tuple[Tuple[float, int], ...]
    tolerance: float

    @classmethod
    def from_eigenvalues(cls, values: Sequence[float],
                         tolerance: float = DEFAULT_CLUSTER_TOL) -> "SpectralSummary":
        ordered = tuple(sorted(float(v) for v in values))
        return cls(ordered, tuple(group_eigenvalues(ordered, tolerance)), float(tolerance))

    @classmethod
    def from_groups(cls, groups: Sequence[Tuple[float, int]],
                    tolerance: float = 0.0) -> "SpectralSummary":
        """由闭式 (值, 重数) 构造，重数为 0 的组被丢弃"""
        kept = sorted((float(v), int(k)) for v, k in groups if k > 0)
        values = tuple(v for v, k in kept for _ in range(k))
        return cls(values, tuple(kept), float(tolerance))

    @property
    def dimension(self) -> int:
        return len(self.eigenvalues)

    def to_dict(self) -> Dict[str, object]:
        return {
            "eigenvalues": list(self.eigenvalues),
            "groups": [[value, multiplicity] for value, multiplicity in self.groups],
            "tolerance": self.tolerance,
        }


def laplacian_spectrum(graph: Graph, tolerance: float = DEFAULT_CLUSTER_TOL) -> SpectralSummary:
    """Laplacian 谱摘要"""
    return SpectralSummary.from_eigenvalues(sym_eigenvalues(laplacian(graph)), tolerance)


def _bfs_distances(graph: Graph, source: int) -> List[float]:
    dist: List[float] = [INFINITE_DISTANCE] * (graph.order + 1)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in graph.neighbors(u):
            if dist[v] == INFINITE_DISTANCE:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def distance(graph: Graph, i: int, j: int) -> float:
    """
    最短路径长度（BFS）

    Returns:
        非负整数；不连通时返回 INFINITE_DISTANCE
    """
    graph._check_vertex(i)
    graph._check_vertex(j)
    return _bfs_distances(graph, i)[j]


def distances_from(graph: Graph, source: int) -> List[float]:
    """从 source 出发到每个顶点的距离，下标 0 为占位"""
    graph._check_vertex(source)
    return _bfs_distances(graph, source)


def all_pairs_distances(graph: Graph) -> np.ndarray:
    """全源最短路距离矩阵（0 起始下标，不连通为 inf）"""
    matrix = np.empty((graph.order, graph.order))
    for i in graph.vertices():
        matrix[i - 1] = _bfs_distances(graph, i)[1:]
    return matrix


def is_connected(graph: Graph) -> bool:
    return all(d != INFINITE_DISTANCE for d in _bfs_distances(graph, 1)[1:])


def diameter(graph: Graph) -> int:
    """
    图直径 Δ(G)

    Raises:
        DisconnectedGraphError: 图不连通（直径为无穷）
    """
    if graph.order < 2:
        raise ParameterError(f"直径要求 n ≥ 2，实际 n={graph.order}")
    best = 0
    for i in graph.vertices():
        dist = _bfs_distances(graph, i)
        farthest = max(dist[1:])
        if farthest == INFINITE_DISTANCE:
            raise DisconnectedGraphError("图不连通，直径为无穷")
        best = max(best, int(farthest))
    return best


def _split_digraph(graph: Graph, removed_edge: Optional[Edge] = None) -> nx.DiGraph:
    """
    顶点拆分辅助有向图：v -> (v,'in') -> (v,'out')，每个顶点容量 1
    """
    aux = nx.DiGraph()
    for v in graph.vertices():
        aux.add_edge((v, "in"), (v, "out"), capacity=1)
    for i, j in graph.edges:
        if removed_edge is not None and (i, j) == removed_edge:
            continue
        aux.add_edge((i, "out"), (j, "in"), capacity=1)
        aux.add_edge((j, "out"), (i, "in"), capacity=1)
    return aux


def _local_connectivity(aux: nx.DiGraph, a: int, b: int) -> int:
    return int(nx.maximum_flow_value(aux, (a, "out"), (b, "in"), flow_func=edmonds_karp))


def count_disjoint_paths(graph: Graph, a: int, b: int) -> int:
    """
    a、b 之间内部顶点不相交路径的最大条数（Menger）

    相邻顶点对先删去该边计算，再加 1
    """
    graph._check_vertex(a)
    graph._check_vertex(b)
    if a == b:
        raise ParameterError(f"端点必须不同: a = b = {a}")

    if graph.has_edge(a, b):
        edge = (min(a, b), max(a, b))
        return _local_connectivity(_split_digraph(graph, removed_edge=edge), a, b) + 1
    return _local_connectivity(_split_digraph(graph), a, b)


def vertex_connectivity(graph: Graph) -> int:
    """
    点连通度 κ(G)

    完全图返回 n−1，不连通图返回 0；其余情况取不相邻顶点对局部连通度的最小值
    （以最小度顶点 v 为中心：v 与其非邻居、v 的邻居之间的不相邻对）
    """
    if graph.order < 2:
        raise ParameterError(f"点连通度要求 n ≥ 2，实际 n={graph.order}")
    if graph.is_complete():
        return graph.order - 1
    if not is_connected(graph):
        return 0

    aux = _split_digraph(graph)
    v = min(graph.vertices(), key=lambda x: (graph.degree(x), x))
    best = graph.order - 1

    for w in graph.vertices():
        if w != v and not graph.has_edge(v, w):
            best = min(best, _local_connectivity(aux, v, w))

    for x, y in combinations(sorted(graph.neighbors(v)), 2):
        if not graph.has_edge(x, y):
            best = min(best, _local_connectivity(aux, x, y))

    return best
