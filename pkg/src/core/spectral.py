# -*- coding: utf-8 -*-
"""
谱计算内核
对称矩阵特征分解、数值秩、Kronecker 积、Rayleigh 商、仿射维数
"""

from typing import List, NamedTuple, Sequence, Tuple, Union

import numpy as np
from scipy import linalg

from src.core.exceptions import NumericError, ParameterError
from src.utils.logger import get_logger

logger = get_logger("Spectral")

# 默认数值秩容差（相对最大奇异值）
DEFAULT_RANK_TOL = 1e-9
# 特征值聚类容差（绝对值）
DEFAULT_CLUSTER_TOL = 1e-7
# 输入非对称程度超过此值时给出警告
ASYMMETRY_WARN_TOL = 1e-9


def _as_finite_array(matrix, name: str = "矩阵") -> np.ndarray:
    array = np.asarray(matrix.entries if isinstance(matrix, SymmetricMatrix) else matrix,
                       dtype=float)
    if not np.all(np.isfinite(array)):
        raise NumericError(f"{name}包含非有限数值")
    return array


class SymmetricMatrix:
    """
    稠密实对称矩阵
    构造时对输入做对称化，保存只读副本
    """

    __slots__ = ("_entries",)

    def __init__(self, entries):
        array = _as_finite_array(entries)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ParameterError(f"对称矩阵必须是方阵，实际形状 {array.shape}")

        asymmetry = float(np.max(np.abs(array - array.T))) if array.size else 0.0
        scale = max(1.0, float(np.max(np.abs(array)))) if array.size else 1.0
        if asymmetry > ASYMMETRY_WARN_TOL * scale:
            logger.warning(f"输入矩阵不对称（最大偏差 {asymmetry:.3e}），已对称化")

        symmetric = 0.5 * (array + array.T)
        symmetric.setflags(write=False)
        self._entries = symmetric

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def dimension(self) -> int:
        return self._entries.shape[0]

    def quadratic_form(self, u) -> float:
        """计算 ⟨Mu, u⟩"""
        u = np.asarray(u, dtype=float)
        return float(u @ self._entries @ u)

    def __matmul__(self, other):
        return self._entries @ np.asarray(other, dtype=float)

    def __repr__(self) -> str:
        return f"SymmetricMatrix(dimension={self.dimension})"


class EigenDecomposition(NamedTuple):
    """特征分解结果：升序特征值和正交特征向量列"""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


MatrixLike = Union[SymmetricMatrix, np.ndarray, Sequence[Sequence[float]]]


def sym_eigen(matrix: MatrixLike) -> EigenDecomposition:
    """
    对称矩阵特征分解

    Args:
        matrix: 对称矩阵（SymmetricMatrix 或二维数组）

    Returns:
        EigenDecomposition: 升序特征值与对应的单位正交特征向量
    """
    if not isinstance(matrix, SymmetricMatrix):
        matrix = SymmetricMatrix(matrix)
    if matrix.dimension == 0:
        return EigenDecomposition(np.zeros(0), np.zeros((0, 0)))
    values, vectors = linalg.eigh(matrix.entries, check_finite=False)
    return EigenDecomposition(values, vectors)


def sym_eigenvalues(matrix: MatrixLike) -> np.ndarray:
    """只计算升序特征值"""
    if not isinstance(matrix, SymmetricMatrix):
        matrix = SymmetricMatrix(matrix)
    if matrix.dimension == 0:
        return np.zeros(0)
    return linalg.eigh(matrix.entries, eigvals_only=True, check_finite=False)


def numeric_rank(matrix, tol: float = DEFAULT_RANK_TOL) -> int:
    """
    数值秩：超过 tol * 最大奇异值 的奇异值个数

    Args:
        matrix: 任意形状的实矩阵
        tol: 相对容差

    Returns:
        int: 数值秩，零矩阵返回 0
    """
    if tol <= 0:
        raise ParameterError(f"秩容差必须为正: tol={tol}")
    array = _as_finite_array(matrix)
    if array.size == 0:
        return 0
    singular_values = linalg.svdvals(np.atleast_2d(array), check_finite=False)
    largest = float(singular_values[0]) if singular_values.size else 0.0
    if largest == 0.0:
        return 0
    return int(np.count_nonzero(singular_values > tol * largest))


def kron(a, b) -> np.ndarray:
    """Kronecker 积 A ⊗ B"""
    return np.kron(np.asarray(a, dtype=float), np.asarray(b, dtype=float))


def affine_dimension(points, tol: float = DEFAULT_RANK_TOL) -> int:
    """
    点集的仿射维数

    Args:
        points: n 个 d 维点（n×d 数组）
        tol: 数值秩容差

    Returns:
        int: 去中心化坐标矩阵的数值秩
    """
    array = _as_finite_array(points, "点集")
    if array.ndim != 2 or array.shape[0] == 0:
        raise ParameterError("点集不能为空，且必须是 n×d 数组")
    centered = array - array.mean(axis=0)
    return numeric_rank(centered, tol)


def orthonormal_span(columns: np.ndarray, tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """
    求列向量张成空间的一组标准正交基

    Args:
        columns: 以列存放的生成向量
        tol: 相对奇异值阈值

    Returns:
        np.ndarray: 标准正交基（按列）
    """
    array = _as_finite_array(columns, "生成向量组")
    if array.size == 0:
        return np.zeros((array.shape[0], 0))
    return linalg.orth(array, rcond=tol)


def rayleigh_quotient(matrix: MatrixLike, u) -> float:
    """Rayleigh 商 ⟨Mu,u⟩/⟨u,u⟩"""
    entries = matrix.entries if isinstance(matrix, SymmetricMatrix) else np.asarray(matrix, float)
    u = np.asarray(u, dtype=float)
    norm_sq = float(u @ u)
    if norm_sq == 0.0:
        raise ParameterError("Rayleigh 商要求非零向量")
    return float(u @ entries @ u) / norm_sq


def group_eigenvalues(values: Sequence[float],
                      tol: float = DEFAULT_CLUSTER_TOL) -> List[Tuple[float, int]]:
    """
    把升序特征值按容差聚类为 (值, 重数)

    相邻差不超过 tol 的特征值归入同一组，组值取组内均值
    """
    groups: List[List[float]] = []
    for value in sorted(float(v) for v in values):
        if groups and value - groups[-1][-1] <= tol:
            groups[-1].append(value)
        else:
            groups.append([value])
    return [(float(np.mean(group)), len(group)) for group in groups]
