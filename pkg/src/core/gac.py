# -*- coding: utf-8 -*-
"""
广义代数连通度模块
a₁ 精确计算、a_d 的多起点估计、d-刚性比以及已知值登记表
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.core.exceptions import DisconnectedGraphError, ParameterError
from src.core.families import FamilySpec, cycle_a1
from src.core.graph import Graph, is_connected, laplacian
from src.core.rigidity import (Framework, Realization, _rigidity_rows, rigidity_eigenvalue,
                               trivial_dim_from)
from src.core.spectral import DEFAULT_RANK_TOL, affine_dimension, sym_eigen, sym_eigenvalues
from src.utils.logger import LoggerMixin, get_logger, log_execution_time

logger = get_logger("GAC")

# 估计值允许超过上界的数值余量
UPPER_BOUND_SLACK = 1e-6
# 步长下限
MIN_STEP = 1e-8
# 软最小权重的相对温度
SOFTMIN_TEMPERATURE = 0.05
# 判定收敛时观察的末尾迭代比例
CONVERGENCE_WINDOW = 0.1


@dataclass(frozen=True)
class OptimizerConfig:
    """
    a_d 估计的优化器参数
    """

    restarts: int = 16
    iterations: int = 400
    seed: int = 0
    step_init: float = 0.3
    step_decay: float = 0.9
    injectivity_floor: float = 1e-6
    workers: int = 1

    def __post_init__(self):
        if self.restarts < 1:
            raise ParameterError(f"restarts 必须 ≥ 1，实际 {self.restarts}")
        if self.iterations < 0:
            raise ParameterError(f"iterations 必须 ≥ 0，实际 {self.iterations}")
        if self.step_init <= 0:
            raise ParameterError(f"step_init 必须 > 0，实际 {self.step_init}")
        if not 0 < self.step_decay < 1:
            raise ParameterError(f"step_decay 必须在 (0, 1) 内，实际 {self.step_decay}")
        if self.injectivity_floor < 0:
            raise ParameterError(f"injectivity_floor 必须 ≥ 0，实际 {self.injectivity_floor}")
        if self.workers < 1:
            raise ParameterError(f"workers 必须 ≥ 1，实际 {self.workers}")

    @classmethod
    def from_settings(cls, settings: Optional[Dict[str, Any]] = None, **overrides) -> "OptimizerConfig":
        """
        由配置字典构造，overrides 中值为 None 的键忽略

        Args:
            settings: 配置文件中的 optimizer 段
            **overrides: 命令行覆盖值
        """
        known = {f.name for f in fields(cls)}
        values = {k: v for k, v in (settings or {}).items() if k in known}
        values.update({k: v for k, v in overrides.items() if k in known and v is not None})
        return cls(**values)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class KnownValue:
    """
    已知的 a_d 精确值或界

    kind ∈ {exact, lower, upper, bracket}，bracket 同时给出上下界
    """

    family: str
    d: int
    kind: str
    lower: Optional[float]
    upper: Optional[float]
    source: str

    @property
    def value(self) -> float:
        return self.upper if self.kind == "upper" else self.lower

    def contains(self, estimate: float, slack: float = UPPER_BOUND_SLACK) -> bool:
        """判断一个下界估计是否与登记值相容（不超过上界）"""
        return self.upper is None or estimate <= self.upper + slack

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True, eq=False)
class GacEstimate:
    """a_d 估计结果"""

    d: int
    value: float
    best_realization: Realization
    upper_bound: float
    algebraic_connectivity: float
    restarts: int
    iterations: int
    seed: int
    best_restart: int
    restart_values: Tuple[float, ...]
    traces: Tuple[Tuple[float, ...], ...]
    converged: bool
    known: Optional[KnownValue] = None

    @property
    def trace(self) -> Tuple[float, ...]:
        """最优起点的逐次迭代最好值"""
        return self.traces[self.best_restart]

    def to_dict(self, include_traces: bool = False) -> Dict[str, Any]:
        document = {
            "d": self.d,
            "value": self.value,
            "upper_bound": self.upper_bound,
            "algebraic_connectivity": self.algebraic_connectivity,
            "best_realization": self.best_realization.to_list(),
            "restarts": self.restarts,
            "iterations": self.iterations,
            "seed": self.seed,
            "best_restart": self.best_restart,
            "restart_values": list(self.restart_values),
            "converged": self.converged,
            "known": self.known.to_dict() if self.known else None,
        }
        if include_traces:
            document["traces"] = [list(t) for t in self.traces]
        return document


def algebraic_connectivity(graph: Graph) -> float:
    """代数连通度 a₁(G) = λ₂(L(G))"""
    if graph.order < 2:
        raise ParameterError(f"代数连通度要求 n ≥ 2，实际 n={graph.order}")
    value = float(sym_eigenvalues(laplacian(graph))[1])
    if not is_connected(graph):
        logger.warning(f"图不连通，代数连通度约为 0（{value:.3e}）")
    return value


def structured_layout(n: int, d: int) -> np.ndarray:
    """
    结构化初始布局：d = 1 时为等距点，否则取三角矩曲线
    (cos θ, sin θ, cos 2θ, sin 2θ, …)，d = 2 即正 n 边形
    """
    if d == 1:
        return np.linspace(0.0, 1.0, n).reshape(n, 1)
    theta = 2.0 * np.pi * np.arange(n) / n
    columns: List[np.ndarray] = []
    harmonic = 1
    while len(columns) < d:
        columns.append(np.cos(harmonic * theta))
        if len(columns) < d:
            columns.append(np.sin(harmonic * theta))
        harmonic += 1
    return np.column_stack(columns)


def _normalize(points: np.ndarray) -> Optional[np.ndarray]:
    centered = points - points.mean(axis=0)
    rms = float(np.sqrt(np.mean(np.sum(centered ** 2, axis=1))))
    if not np.isfinite(rms) or rms == 0.0:
        return None
    return centered / rms


def _min_distance(points: np.ndarray) -> float:
    diffs = points[:, None, :] - points[None, :, :]
    dists = np.sqrt(np.sum(diffs ** 2, axis=-1))
    return float(np.min(dists[np.triu_indices(points.shape[0], k=1)]))


@dataclass
class _RestartResult:
    value: float
    points: np.ndarray
    trace: Tuple[float, ...]
    converged: bool


class GacOptimizer(LoggerMixin):
    """
    刚性特征值的多起点爬山优化器

    每次迭代给出两个候选：随机移动单个顶点，以及沿最小几个非平凡特征值的
    软最小加权梯度上升；较好的候选只要不降低目标值即被接受
    """

    def __init__(self, graph: Graph, d: int, config: OptimizerConfig,
                 rank_tol: float = DEFAULT_RANK_TOL):
        self.graph = graph
        self.d = d
        self.config = config
        self.rank_tol = rank_tol
        self.index_i, self.index_j = graph.edge_index_arrays()

    def evaluate(self, points: np.ndarray):
        """返回 (目标值, 特征值, 特征向量, D(p))"""
        r = _rigidity_rows(self.index_i, self.index_j, points)
        values, vectors = sym_eigen(r.T @ r)
        trivial = trivial_dim_from(self.d, affine_dimension(points, self.rank_tol))
        return float(values[trivial]), values, vectors, trivial

    def ascent_direction(self, points: np.ndarray, values: np.ndarray, vectors: np.ndarray,
                         trivial: int) -> np.ndarray:
        """最小非平凡特征值的软最小加权梯度（n×d）"""
        n, d = points.shape
        gradient = np.zeros((n, d))
        if self.index_i.size == 0:
            return gradient

        nontrivial = values[trivial:]
        base = float(nontrivial[0])
        temperature = SOFTMIN_TEMPERATURE * max(abs(base), 1e-12)
        weights = np.exp(-(nontrivial - base) / temperature)
        active = weights > 1e-8
        weights = weights[active] / np.sum(weights[active])
        active_vectors = vectors[:, trivial:][:, active]

        diffs = points[self.index_i] - points[self.index_j]
        lengths = np.maximum(np.sqrt(np.sum(diffs ** 2, axis=1)), 1e-300)
        bearings = diffs / lengths[:, None]

        for weight, vector in zip(weights, active_vectors.T):
            motion = vector.reshape(n, d)
            delta = motion[self.index_i] - motion[self.index_j]
            stretch = np.sum(bearings * delta, axis=1)
            edge_grad = 2.0 * stretch[:, None] * (delta - stretch[:, None] * bearings) / lengths[:, None]
            np.add.at(gradient, self.index_i, weight * edge_grad)
            np.add.at(gradient, self.index_j, -weight * edge_grad)
        return gradient

    def _start(self, restart: int, rng: np.random.Generator) -> np.ndarray:
        n = self.graph.order
        if restart == 0:
            start = _normalize(structured_layout(n, self.d))
            if start is not None:
                return start
        for _ in range(100):
            start = _normalize(rng.uniform(0.0, 1.0, size=(n, self.d)))
            if start is not None and _min_distance(start) >= self.config.injectivity_floor:
                return start
        raise ParameterError("无法生成满足单射要求的初始实现")

    def run_restart(self, restart: int) -> _RestartResult:
        """执行单个起点的爬山，随机数由 (seed, 起点序号) 确定"""
        config = self.config
        rng = np.random.default_rng([config.seed, restart])
        n, d = self.graph.order, self.d

        current = self._start(restart, rng)
        value, values, vectors, trivial = self.evaluate(current)
        step = config.step_init
        trace: List[float] = []

        for _ in range(config.iterations):
            candidates = []

            moved = current.copy()
            moved[rng.integers(n)] += step * rng.standard_normal(d)
            candidates.append(moved)

            gradient = self.ascent_direction(current, values, vectors, trivial)
            gradient_rms = float(np.sqrt(np.mean(np.sum(gradient ** 2, axis=1))))
            if gradient_rms > 1e-14:
                candidates.append(current + step * gradient / gradient_rms)

            best = None
            for candidate in candidates:
                candidate = _normalize(candidate)
                if candidate is None or _min_distance(candidate) < config.injectivity_floor:
                    continue
                evaluated = self.evaluate(candidate)
                if best is None or evaluated[0] > best[1][0]:
                    best = (candidate, evaluated)

            if best is not None and best[1][0] >= value:
                improved = best[1][0] > value + 1e-12 * max(1.0, abs(value))
                current = best[0]
                value, values, vectors, trivial = best[1]
                step = min(config.step_init, step / config.step_decay) if improved \
                    else step * config.step_decay
            else:
                step *= config.step_decay
            step = max(step, MIN_STEP)
            trace.append(value)

        window = max(1, int(len(trace) * CONVERGENCE_WINDOW))
        if len(trace) > window:
            converged = trace[-1] - trace[-1 - window] <= 1e-9 * max(1.0, abs(trace[-1]))
        else:
            converged = False
        return _RestartResult(value, current, tuple(trace), converged)

    def run(self) -> List[_RestartResult]:
        """执行全部起点，结果按起点序号排列"""
        restarts = range(self.config.restarts)
        if self.config.workers > 1:
            with ThreadPoolExecutor(max_workers=self.config.workers) as pool:
                return list(pool.map(self.run_restart, restarts))
        return [self.run_restart(r) for r in restarts]


@log_execution_time("GAC")
def estimate_gac(graph: Graph, d: int, config: Optional[OptimizerConfig] = None,
                 family: Optional[FamilySpec] = None) -> GacEstimate:
    """
    估计广义代数连通度 a_d(G)

    在零质心、单位均方根尺度的单射实现上做多起点最大化，返回找到的最好刚性特征值
    （a_d 的下界），上界取 a₁(G)，若登记表有更紧的上界则取之

    Args:
        graph: 图（n ≥ 2）
        d: 维数（≥ 1）
        config: 优化器参数
        family: 图所属图族（可选，用于查询登记表）

    Returns:
        GacEstimate: 估计结果
    """
    if graph.order < 2:
        raise ParameterError(f"a_d 估计要求 n ≥ 2，实际 n={graph.order}")
    if d < 1:
        raise ParameterError(f"维数必须 ≥ 1，实际 d={d}")
    config = config or OptimizerConfig()

    optimizer = GacOptimizer(graph, d, config)
    results = optimizer.run()

    best_restart = 0
    for index, result in enumerate(results):
        if result.value > results[best_restart].value:
            best_restart = index
    best = results[best_restart]

    realization = Realization(best.points)
    value = rigidity_eigenvalue(Framework(graph, realization))
    if abs(value - best.value) > 1e-8 * max(1.0, abs(value)):
        logger.warning(f"复核刚性特征值 {value:.12g} 与优化值 {best.value:.12g} 不一致")
    if not realization.is_injective():
        logger.warning("最优实现不是单射")

    a1 = algebraic_connectivity(graph)
    upper = a1
    known = known_gac(family, d) if family is not None else None
    if known is not None and known.upper is not None:
        upper = min(upper, known.upper)
    if value > upper + UPPER_BOUND_SLACK:
        logger.warning(f"估计值 {value:.9g} 超过上界 {upper:.9g}")
    if not best.converged:
        optimizer.log_warning(f"最优起点 {best_restart} 未收敛（d={d}, n={graph.order}）")

    return GacEstimate(
        d=d,
        value=value,
        best_realization=realization,
        upper_bound=upper,
        algebraic_connectivity=a1,
        restarts=config.restarts,
        iterations=config.iterations,
        seed=config.seed,
        best_restart=best_restart,
        restart_values=tuple(r.value for r in results),
        traces=tuple(r.trace for r in results),
        converged=best.converged,
        known=known,
    )


def rigidity_ratio(graph: Graph, d: int, config: Optional[OptimizerConfig] = None,
                   family: Optional[FamilySpec] = None,
                   estimate: Optional[GacEstimate] = None) -> float:
    """
    d-刚性比 a_d/a₁ 的估计

    Args:
        estimate: 已有的估计结果，提供时不再重新优化

    Raises:
        DisconnectedGraphError: 图不连通
    """
    if graph.order < 2:
        raise ParameterError(f"刚性比要求 n ≥ 2，实际 n={graph.order}")
    if not is_connected(graph):
        raise DisconnectedGraphError("刚性比只对连通图有定义")
    if estimate is None:
        estimate = estimate_gac(graph, d, config, family)
    return estimate.value / estimate.algebraic_connectivity


def known_gac(spec: FamilySpec, d: int) -> Optional[KnownValue]:
    """
    查询图族 a_d 的已知精确值或界

    Returns:
        KnownValue 或 None（没有已知结果）
    """
    if d < 1:
        raise ParameterError(f"维数必须 ≥ 1，实际 d={d}")
    label = spec.label

    def entry(kind, lower, upper, source):
        return KnownValue(label, d, kind, lower, upper, source)

    if d == 1:
        if spec.kind == "complete":
            return entry("exact", float(spec.n), float(spec.n), "a1(K_n) = n")
        if spec.kind == "star":
            return entry("exact", float(spec.d), float(spec.d), "star Laplacian spectrum")
        if spec.kind == "turan":
            k, r = spec.parameters
            return entry("exact", float(k * (r - 1)), float(k * (r - 1)), "Turan Laplacian spectrum")
        if spec.kind == "cycle":
            value = cycle_a1(spec.n, spec.d)
            return entry("exact", value, value, "circulant Laplacian spectrum")
        return None

    if spec.kind == "complete":
        n = spec.n
        if n == 2:
            return entry("exact", 2.0, 2.0, "a_d(K_2) = 2")
        if d == 2:
            return entry("exact", n / 2.0, n / 2.0, "a_2(K_n) = n/2, n >= 3")
        if n == d + 1:
            return entry("exact", 1.0, 1.0, "a_d(K_{d+1}) = 1, d >= 3")
        if n >= d + 2:
            return entry("bracket", 0.5 * math.ceil(n / d), 2.0 * n / (3.0 * (d - 1)) + 1.0 / 3.0,
                         "1/2 ceil(n/d) <= a_d(K_n) <= 2n/(3(d-1)) + 1/3")
        return None

    if spec.kind == "star" and spec.d == d:
        return entry("exact", 1.0, 1.0, "a_d(S_{n,d}) = 1")

    if spec.kind == "turan":
        k, r = spec.parameters
        if r == d + 1:
            return entry("lower", k / 2.0, None, "a_d(T_{k(d+1),d+1}) >= k/2")
        if r == 2 * d:
            return entry("lower", float(k), None, "a_d(T_{k(2d),2d}) >= k")
        return None

    if spec.kind == "path" and spec.d == d and spec.n >= d + 2:
        return entry("upper", None, cycle_a1(2 * spec.n, d), "a_d(P_{n,d}) <= a1(C_{2n,d})")

    return None
