# -*- coding: utf-8 -*-
"""
刚性模块
框架、刚性矩阵、刚度矩阵、平凡运动子空间、刚性特征值、无穷小刚性与一般刚性判定
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from src.core.exceptions import ParameterError
from src.core.graph import Graph, laplacian
from src.core.spectral import (DEFAULT_RANK_TOL, SymmetricMatrix, affine_dimension, kron,
                               numeric_rank, orthonormal_span, sym_eigenvalues)
from src.utils.logger import get_logger

logger = get_logger("Rigidity")

# 方位向量取零的重合容差（绝对值）
COINCIDENCE_TOL = 1e-12
# 单射性判定的相对距离阈值
INJECTIVITY_REL_TOL = 1e-9
# 单位向量的范数容差
UNIT_NORM_TOL = 1e-10
# 一般刚性判定的默认采样次数
DEFAULT_GENERIC_TRIALS = 3


@dataclass(frozen=True, eq=False)
class Realization:
    """
    实现：n 个 R^d 中的点，第 i 行对应顶点 i+1
    """

    points: np.ndarray

    def __post_init__(self):
        array = np.array(self.points, dtype=float)
        if array.ndim == 1:
            array = array.reshape(-1, 1)
        if array.ndim != 2 or array.shape[0] < 1 or array.shape[1] < 1:
            raise ParameterError(f"实现必须是 n×d 数组（n, d ≥ 1），实际形状 {array.shape}")
        if not np.all(np.isfinite(array)):
            raise ParameterError("实现坐标必须全部有限")
        array.setflags(write=False)
        object.__setattr__(self, "points", array)

    @classmethod
    def from_flat(cls, vector, d: int) -> "Realization":
        """由堆叠向量 [p_1; …; p_n] 构造"""
        return cls(np.asarray(vector, dtype=float).reshape(-1, d))

    @property
    def ambient_dim(self) -> int:
        return self.points.shape[1]

    @property
    def size(self) -> int:
        return self.points.shape[0]

    def flatten(self) -> np.ndarray:
        return self.points.reshape(-1).copy()

    def affine_dim(self, tol: float = DEFAULT_RANK_TOL) -> int:
        return affine_dimension(self.points, tol)

    def min_pairwise_distance(self) -> float:
        if self.size < 2:
            return math.inf
        diffs = self.points[:, None, :] - self.points[None, :, :]
        dists = np.sqrt(np.sum(diffs ** 2, axis=-1))
        return float(np.min(dists[np.triu_indices(self.size, k=1)]))

    def scale(self) -> float:
        """以到质心的均方根距离作为尺度"""
        centered = self.points - self.points.mean(axis=0)
        return float(np.sqrt(np.mean(np.sum(centered ** 2, axis=1))))

    def is_injective(self, rel_tol: float = INJECTIVITY_REL_TOL) -> bool:
        return self.min_pairwise_distance() > rel_tol * max(self.scale(), 1e-300)

    def normalized(self) -> "Realization":
        """零质心、单位均方根范数"""
        centered = self.points - self.points.mean(axis=0)
        rms = float(np.sqrt(np.mean(np.sum(centered ** 2, axis=1))))
        if rms == 0.0:
            raise ParameterError("所有点重合，无法归一化")
        return Realization(centered / rms)

    def to_list(self) -> List[List[float]]:
        return self.points.tolist()


@dataclass(frozen=True, eq=False)
class Framework:
    """框架 (G, p)"""

    graph: Graph
    realization: Realization

    def __post_init__(self):
        if self.graph.order != self.realization.size:
            raise ParameterError(
                f"图的顶点数 {self.graph.order} 与实现的点数 {self.realization.size} 不一致")

    @property
    def d(self) -> int:
        return self.realization.ambient_dim

    @property
    def n(self) -> int:
        return self.graph.order

    def to_dict(self) -> Dict[str, object]:
        return {"graph": self.graph.to_dict(), "d": self.d, "points": self.realization.to_list()}


@dataclass(frozen=True)
class RigidityReport:
    """刚性报告"""

    trivial_dim: int
    rigidity_eigenvalue: float
    stiffness_rank: int
    is_inf_rigid: bool
    rank_tolerance: float
    coincidence_tolerance: float
    max_eigenvalue: float
    trivial_eigenvalues_zero: bool

    def to_dict(self) -> Dict[str, object]:
        return {
            "trivial_dim": self.trivial_dim,
            "rigidity_eigenvalue": self.rigidity_eigenvalue,
            "stiffness_rank": self.stiffness_rank,
            "is_inf_rigid": self.is_inf_rigid,
            "max_eigenvalue": self.max_eigenvalue,
            "trivial_eigenvalues_zero": self.trivial_eigenvalues_zero,
            "tolerances": {"rank": self.rank_tolerance, "coincidence": self.coincidence_tolerance},
        }


def bearing_vectors(index_i: np.ndarray, index_j: np.ndarray, points: np.ndarray,
                    coincidence_tol: float = COINCIDENCE_TOL) -> np.ndarray:
    """
    批量计算方位向量 b_ij = (p_i − p_j)/‖p_i − p_j‖，重合点取零向量

    Args:
        index_i, index_j: 0 起始的端点下标
        points: n×d 坐标
    """
    diffs = points[index_i] - points[index_j]
    norms = np.sqrt(np.sum(diffs ** 2, axis=1))
    coincident = norms <= coincidence_tol
    safe = np.where(coincident, 1.0, norms)
    bearings = diffs / safe[:, None]
    bearings[coincident] = 0.0
    return bearings


def _rigidity_rows(index_i: np.ndarray, index_j: np.ndarray, points: np.ndarray,
                   coincidence_tol: float = COINCIDENCE_TOL) -> np.ndarray:
    n, d = points.shape
    m = index_i.shape[0]
    matrix = np.zeros((m, d * n))
    if m == 0:
        return matrix
    bearings = bearing_vectors(index_i, index_j, points, coincidence_tol)
    rows = np.arange(m)[:, None]
    offsets = np.arange(d)[None, :]
    matrix[rows, index_i[:, None] * d + offsets] = bearings
    matrix[rows, index_j[:, None] * d + offsets] = -bearings
    return matrix


def bearing(framework: Framework, i: int, j: int,
            coincidence_tol: float = COINCIDENCE_TOL) -> np.ndarray:
    """
    方位向量 b_ij（1 起始顶点编号）

    Raises:
        ParameterError: i = j 或顶点越界
    """
    framework.graph._check_vertex(i)
    framework.graph._check_vertex(j)
    if i == j:
        raise ParameterError(f"方位向量要求 i ≠ j，实际 i = j = {i}")
    return bearing_vectors(np.array([i - 1]), np.array([j - 1]),
                           framework.realization.points, coincidence_tol)[0]


def rigidity_matrix(framework: Framework, coincidence_tol: float = COINCIDENCE_TOL) -> np.ndarray:
    """
    刚性矩阵 R(G,p)，|E| × dn

    边 {i,j}（i<j）对应的行在块 i 放 b_ij^T、块 j 放 −b_ij^T，行顺序为边的字典序
    """
    index_i, index_j = framework.graph.edge_index_arrays()
    return _rigidity_rows(index_i, index_j, framework.realization.points, coincidence_tol)


def stiffness_matrix(framework: Framework,
                     coincidence_tol: float = COINCIDENCE_TOL) -> SymmetricMatrix:
    """刚度矩阵 S = R^T R"""
    r = rigidity_matrix(framework, coincidence_tol)
    return SymmetricMatrix(r.T @ r)


def trivial_dim_from(d: int, affine_dim: int) -> int:
    """D = C(d+1,2) − C(d−dim,2)"""
    return math.comb(d + 1, 2) - math.comb(max(d - affine_dim, 0), 2)


def trivial_dim(realization: Realization, tol: float = DEFAULT_RANK_TOL) -> int:
    """平凡运动子空间维数 D(p)"""
    return trivial_dim_from(realization.ambient_dim, realization.affine_dim(tol))


def trivial_motion_basis(realization: Realization, tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """
    平凡运动子空间 T(p) 的标准正交基

    生成集为 d 个平移 1_n ⊗ e_k 与旋转 (I_n ⊗ A_kl) p（p 先去质心），再做正交化

    Returns:
        np.ndarray: dn × D(p) 的矩阵，列为基向量
    """
    n, d = realization.size, realization.ambient_dim
    centered = realization.points - realization.points.mean(axis=0)
    identity = np.eye(d)

    generators = [np.kron(np.ones(n), identity[k]) for k in range(d)]
    for k in range(d):
        for l in range(k + 1, d):
            a_kl = np.outer(identity[k], identity[l]) - np.outer(identity[l], identity[k])
            generators.append((centered @ a_kl.T).reshape(-1))

    basis = orthonormal_span(np.column_stack(generators), tol)
    expected = trivial_dim(realization, tol)
    if basis.shape[1] != expected:
        logger.warning(f"平凡运动基的维数 {basis.shape[1]} 与公式 D(p)={expected} 不一致")
    return basis


def _stiffness_scale(eigenvalues: np.ndarray) -> float:
    return max(float(eigenvalues[-1]) if eigenvalues.size else 0.0, 1.0)


def _rank_verdict(framework: Framework, rank_tol: float,
                  coincidence_tol: float) -> Tuple[int, int, bool]:
    """(rank R, D(p), rank R == dn − D(p))；rank(S) = rank(R)，两种判据共用此处的秩"""
    rank = (numeric_rank(rigidity_matrix(framework, coincidence_tol), rank_tol)
            if framework.graph.m else 0)
    trivial = trivial_dim(framework.realization, rank_tol)
    return rank, trivial, rank == framework.d * framework.n - trivial


def rigidity_report(framework: Framework, rank_tol: float = DEFAULT_RANK_TOL,
                    coincidence_tol: float = COINCIDENCE_TOL) -> RigidityReport:
    """
    计算刚性报告：D(p)、刚性特征值 λ_{D(p)+1}(S)、刚度矩阵秩、是否无穷小刚性

    秩与刚性判定取自 R 的奇异值（相对容差 rank_tol），与 is_infinitesimally_rigid 一致；
    前 D(p) 个特征值不为数值零时只记录警告，不抛出异常
    """
    if framework.n < 2:
        raise ParameterError(f"刚性特征值要求 n ≥ 2，实际 n={framework.n}")

    eigenvalues = sym_eigenvalues(stiffness_matrix(framework, coincidence_tol))
    stiffness_rank, trivial, rigid = _rank_verdict(framework, rank_tol, coincidence_tol)
    threshold = rank_tol * _stiffness_scale(eigenvalues)

    leading_zero = bool(np.all(np.abs(eigenvalues[:trivial]) <= threshold))
    if not leading_zero:
        logger.warning(f"前 {trivial} 个刚度特征值不全为数值零（最大 "
                       f"{float(np.max(np.abs(eigenvalues[:trivial]))):.3e}），容差可能失效")

    return RigidityReport(
        trivial_dim=trivial,
        rigidity_eigenvalue=float(eigenvalues[trivial]),
        stiffness_rank=stiffness_rank,
        is_inf_rigid=rigid,
        rank_tolerance=rank_tol,
        coincidence_tolerance=coincidence_tol,
        max_eigenvalue=float(eigenvalues[-1]),
        trivial_eigenvalues_zero=leading_zero,
    )


def rigidity_eigenvalue(framework: Framework, rank_tol: float = DEFAULT_RANK_TOL,
                        coincidence_tol: float = COINCIDENCE_TOL) -> float:
    """刚性特征值 λ_{D(p)+1}(S)（1 起始升序编号）"""
    return rigidity_report(framework, rank_tol, coincidence_tol).rigidity_eigenvalue


def is_infinitesimally_rigid(framework: Framework, rank_tol: float = DEFAULT_RANK_TOL,
                             coincidence_tol: float = COINCIDENCE_TOL) -> bool:
    """无穷小刚性判定：rank(R) = dn − D(p)"""
    return _rank_verdict(framework, rank_tol, coincidence_tol)[2]


def random_realization(n: int, d: int, rng: np.random.Generator) -> Realization:
    """[0,1]^d 内均匀采样的实现"""
    return Realization(rng.uniform(0.0, 1.0, size=(n, d)))


def is_generically_rigid(graph: Graph, d: int, trials: int = DEFAULT_GENERIC_TRIALS,
                         seed: int = 0, rank_tol: float = DEFAULT_RANK_TOL) -> bool:
    """
    一般刚性判定：采样 trials 个随机实现，任一无穷小刚性即返回 True

    每次采样的随机数由 (seed, 采样序号) 确定
    """
    if d < 1:
        raise ParameterError(f"维数必须 ≥ 1，实际 d={d}")
    if trials < 1:
        raise ParameterError(f"采样次数必须 ≥ 1，实际 trials={trials}")

    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        framework = Framework(graph, random_realization(graph.order, d, rng))
        if is_infinitesimally_rigid(framework, rank_tol):
            logger.debug(f"第 {trial + 1} 次采样得到无穷小刚性框架")
            return True
    return False


def augmented_laplacian(graph: Graph, w) -> SymmetricMatrix:
    """
    增广 Laplacian L(G) ⊗ w w^T

    Raises:
        ParameterError: w 不是单位向量
    """
    w = np.asarray(w, dtype=float).reshape(-1)
    if abs(float(np.linalg.norm(w)) - 1.0) > UNIT_NORM_TOL:
        raise ParameterError(f"w 必须是单位向量，实际范数 {np.linalg.norm(w):.12f}")
    return SymmetricMatrix(kron(laplacian(graph), np.outer(w, w)))
