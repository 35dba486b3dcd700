# -*- coding: utf-8 -*-
"""
界与闭式模块
刚性比界、直径/点连通度界及其证明见证、刚性图最大直径、路径图直径、
路径图与环图的代数连通度比较以及渐近比
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from src.core.exceptions import DisconnectedGraphError, ParameterError
from src.core.families import FamilySpec, cycle_a1, cycle_test_vectors, generate, mirrored_path
from src.core.gac import GacEstimate, OptimizerConfig, algebraic_connectivity, rigidity_ratio
from src.core.graph import (Graph, all_pairs_distances, diameter, is_connected, laplacian,
                            vertex_connectivity)
from src.core.rigidity import (COINCIDENCE_TOL, DEFAULT_GENERIC_TRIALS, Framework,
                               is_generically_rigid, rigidity_eigenvalue, stiffness_matrix,
                               trivial_motion_basis)
from src.core.spectral import DEFAULT_RANK_TOL, rayleigh_quotient, sym_eigen, sym_eigenvalues
from src.utils.logger import get_logger

logger = get_logger("Bounds")

# 界比较的相对容差，按 max(1, |rhs|) 缩放
BOUND_REL_TOL = 1e-9


@dataclass(frozen=True)
class BoundReport:
    """
    不等式 lhs ≤ rhs 的核验报告

    slack = rhs − lhs；slack ≥ −tol·max(1,|rhs|) 视为满足，
    落在容差内的负 slack 记入 warning
    """

    theorem: str
    lhs: float
    rhs: float
    slack: float
    satisfied: bool
    inputs: Dict[str, Any] = field(default_factory=dict)
    warning: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        document = {
            "theorem": self.theorem,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "satisfied": self.satisfied,
            "inputs": dict(self.inputs),
        }
        if self.warning:
            document["warning"] = self.warning
        return document


def make_report(theorem: str, lhs: float, rhs: float, inputs: Optional[Dict[str, Any]] = None,
                rel_tol: float = BOUND_REL_TOL) -> BoundReport:
    """
    构造 BoundReport

    Args:
        theorem: 不等式标签
        lhs: 左端
        rhs: 右端
        inputs: 回显的输入参数
        rel_tol: 相对容差
    """
    lhs, rhs = float(lhs), float(rhs)
    slack = rhs - lhs
    tolerance = rel_tol * max(1.0, abs(rhs))
    satisfied = slack >= -tolerance
    warning = None
    if satisfied and slack < 0:
        warning = f"{theorem}: 仅在容差内成立（slack={slack:.3e}, 容差={tolerance:.3e}）"
        logger.warning(warning)
    elif not satisfied:
        logger.warning(f"{theorem}: 不成立，lhs={lhs:.12g} > rhs={rhs:.12g}")
    return BoundReport(theorem, lhs, rhs, slack, satisfied, dict(inputs or {}), warning)


def _equality_report(theorem: str, left: float, right: float,
                     inputs: Optional[Dict[str, Any]] = None,
                     rel_tol: float = BOUND_REL_TOL) -> BoundReport:
    """等式以 |left − right| ≤ 0 的形式核验，容差相对 max(1,|right|)"""
    scale = max(1.0, abs(float(right)))
    return make_report(theorem, abs(float(left) - float(right)) / scale, 0.0, inputs, rel_tol)


@dataclass(frozen=True)
class BoundWitness:
    """证明见证：逐环节核验的不等式链及中间量"""

    theorem: str
    links: Tuple[BoundReport, ...]
    data: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(link.satisfied for link in self.links)

    def link(self, theorem: str) -> BoundReport:
        for report in self.links:
            if report.theorem == theorem:
                return report
        raise KeyError(theorem)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theorem": self.theorem,
            "passed": self.passed,
            "links": [link.to_dict() for link in self.links],
            "data": dict(self.data),
        }


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _require_connected(graph: Graph, what: str):
    if graph.order < 2:
        raise ParameterError(f"{what}要求 n ≥ 2，实际 n={graph.order}")
    if not is_connected(graph):
        raise DisconnectedGraphError(f"{what}要求连通图（直径为无穷）")


def _diameter_bound_value(m: int, kappa: int, delta: int) -> float:
    return 12.0 * m / (kappa * delta * (delta - 1) * (delta - 2) + 6.0 * delta ** 2)


def diameter_vc_bound(graph: Graph) -> float:
    """
    直径/点连通度上界 12|E| / (κΔ(Δ−1)(Δ−2) + 6Δ²)

    Raises:
        DisconnectedGraphError: 图不连通
    """
    _require_connected(graph, "直径/点连通度界")
    return _diameter_bound_value(graph.m, vertex_connectivity(graph), diameter(graph))


def diameter_bound_witness(graph: Graph, rel_tol: float = BOUND_REL_TOL) -> BoundWitness:
    """
    直径/点连通度界的证明见证

    取字典序第一个直径端点对 (a, b)，v_i = δ(i,a)/Δ，去均值得 v̂，依次核验：
    ⟨Lv̂,v̂⟩ ≤ |E|/Δ²、½ + κ(Δ−1)(Δ−2)/(12Δ) ≤ ⟨v̂,v̂⟩、a₁ ≤ Rayleigh(v̂)、
    Rayleigh(v̂) ≤ 上界

    Raises:
        DisconnectedGraphError: 图不连通
    """
    _require_connected(graph, "直径界见证")
    distances = all_pairs_distances(graph)
    delta = int(np.max(distances))
    kappa = vertex_connectivity(graph)
    m = graph.m

    rows, cols = np.nonzero(np.triu(distances == delta, k=1))
    a, b = int(rows[0]) + 1, int(cols[0]) + 1

    v = distances[a - 1] / delta
    v_hat = v - v.mean()
    lap = laplacian(graph)
    energy = float(v_hat @ lap @ v_hat)
    norm_sq = float(v_hat @ v_hat)
    rayleigh = rayleigh_quotient(lap, v_hat)
    a1 = algebraic_connectivity(graph)
    bound = _diameter_bound_value(m, kappa, delta)

    inputs = {"n": graph.order, "edges": m, "kappa": kappa, "diameter": delta}
    links = (
        make_report("energy", energy, m / delta ** 2, inputs, rel_tol),
        make_report("norm", 0.5 + kappa * (delta - 1) * (delta - 2) / (12.0 * delta), norm_sq, inputs,
                    rel_tol),
        make_report("rayleigh", a1, rayleigh, inputs, rel_tol),
        make_report("diameter_bound", rayleigh, bound, inputs, rel_tol),
    )
    witness = BoundWitness("diameter_bound", links, {
        "pair": [a, b],
        "vector": v_hat.tolist(),
        "energy": energy,
        "norm_sq": norm_sq,
        "rayleigh": rayleigh,
        "a1": a1,
        "bound": bound,
    })
    if not witness.passed:
        logger.warning(f"直径界见证链未通过: {[l.theorem for l in links if not l.satisfied]}")
    return witness


def max_rigid_diameter(n: int, d: int) -> int:
    """刚性图的最大直径 ⌈(n−1)/d⌉"""
    if n < 2 or d < 1:
        raise ParameterError(f"要求 n ≥ 2 且 d ≥ 1，实际 n={n}, d={d}")
    return _ceil_div(n - 1, d)


def path_diameter(n: int, d: int) -> int:
    """广义路径图 P_{n,d} 的直径 ⌈(n−1)/d⌉"""
    if d < 1 or n < d + 1:
        raise ParameterError(f"要求 d ≥ 1 且 n ≥ d+1，实际 n={n}, d={d}")
    return _ceil_div(n - 1, d)


def _check_path_cycle_domain(n: int, d: int):
    if d < 2 or n < d + 2:
        raise ParameterError(f"要求 d ≥ 2 且 n ≥ d+2，实际 n={n}, d={d}")


def path_cycle_bound(n: int, d: int, rel_tol: float = BOUND_REL_TOL) -> BoundReport:
    """
    路径图与环图比较：λ₂(L(P_{n,d})) ≤ a₁(C_{2n,d})

    左端数值求解，右端取闭式
    """
    _check_path_cycle_domain(n, d)
    lhs = float(sym_eigenvalues(laplacian(generate(FamilySpec.path(n, d))))[1])
    return make_report("path_cycle", lhs, cycle_a1(2 * n, d), {"n": n, "d": d}, rel_tol)


def path_cycle_witness(n: int, d: int) -> BoundWitness:
    """
    路径图与环图比较的见证链

    v 为测试向量（⟨1,v⟩ = 0，⟨v,v⟩ = ½），w = [v; −v]：
    λ₂(L(P)) ≤ 2⟨L(P)v,v⟩ = ⟨L(P∪P*)w,w⟩ ≤ ⟨L(C_{2n,d})w,w⟩ = a₁(C_{2n,d})
    """
    _check_path_cycle_domain(n, d)
    _, v, w = cycle_test_vectors(n)
    path_lap = laplacian(generate(FamilySpec.path(n, d)))
    union_lap = laplacian(mirrored_path(n, d))
    cycle_lap = laplacian(generate(FamilySpec.cycle(2 * n, d)))

    lambda2 = float(sym_eigenvalues(path_lap)[1])
    path_energy = 2.0 * float(v @ path_lap @ v)
    union_energy = float(w @ union_lap @ w)
    cycle_energy = float(w @ cycle_lap @ w)
    a1_cycle = cycle_a1(2 * n, d)

    inputs = {"n": n, "d": d}
    links = (
        _equality_report("mean_zero", float(np.sum(v)), 0.0, inputs),
        _equality_report("half_norm", float(v @ v), 0.5, inputs),
        make_report("rayleigh", lambda2, path_energy, inputs),
        _equality_report("mirror", path_energy, union_energy, inputs),
        make_report("subgraph", union_energy, cycle_energy, inputs),
        _equality_report("cycle_eigenvector", cycle_energy, a1_cycle, inputs),
    )
    return BoundWitness("path_cycle", links, {
        "lambda2": lambda2,
        "path_energy": path_energy,
        "union_energy": union_energy,
        "cycle_energy": cycle_energy,
        "a1_cycle": a1_cycle,
    })


def prior_path_bound(n: int, d: int) -> float:
    """此前已知的上界 a_d(P_{n,d}) ≤ a₁(C_{n,d})"""
    return cycle_a1(n, d)


def asymptotic_ratio(n: int, d: int) -> float:
    """
    a₁(C_{2n,d}) / a₁(C_{n,d})，n → ∞ 时趋于 1/4

    只用闭式计算
    """
    if d < 1 or n < 2 * d + 2:
        raise ParameterError(f"要求 d ≥ 1 且 n ≥ 2d+2，实际 n={n}, d={d}")
    return cycle_a1(2 * n, d) / cycle_a1(n, d)


def ratio_bound_check(graph: Graph, d: int, config: Optional[OptimizerConfig] = None,
                      family: Optional[FamilySpec] = None,
                      estimate: Optional[GacEstimate] = None,
                      rel_tol: float = BOUND_REL_TOL) -> BoundReport:
    """
    刚性比界 a_d/a₁ ≤ 1，左端为刚性比估计

    Raises:
        DisconnectedGraphError: 图不连通
    """
    ratio = rigidity_ratio(graph, d, config, family, estimate)
    return make_report("ratio_bound", ratio, 1.0, {"n": graph.order, "d": d, "edges": graph.m},
                       rel_tol)


def ratio_bound_witness(framework: Framework, rank_tol: float = DEFAULT_RANK_TOL,
                        coincidence_tol: float = COINCIDENCE_TOL,
                        rel_tol: float = BOUND_REL_TOL) -> BoundWitness:
    """
    刚性比界的见证：对给定框架构造 u* = v* ⊗ w₁

    v* 为 Fiedler 向量，r = Σ v*_i p_i，w₁ = r/‖r‖（r = 0 时取 e₁），核验
    u* ⊥ T(p)、λ_{D+1}(S) ≤ ⟨Su*,u*⟩、⟨Su*,u*⟩ ≤ λ₂(L)
    """
    graph = framework.graph
    _require_connected(graph, "刚性比界见证")
    decomposition = sym_eigen(laplacian(graph))
    fiedler = decomposition.eigenvectors[:, 1]
    lambda2 = float(decomposition.eigenvalues[1])

    points = framework.realization.points
    r = fiedler @ points
    norm = float(np.linalg.norm(r))
    if norm > 0.0:
        w1 = r / norm
    else:
        w1 = np.zeros(framework.d)
        w1[0] = 1.0
    u_star = np.kron(fiedler, w1)

    basis = trivial_motion_basis(framework.realization, rank_tol)
    overlap = float(np.max(np.abs(basis.T @ u_star))) if basis.size else 0.0
    quad = rayleigh_quotient(stiffness_matrix(framework, coincidence_tol), u_star)
    eigenvalue = rigidity_eigenvalue(framework, rank_tol, coincidence_tol)

    inputs = {"n": graph.order, "d": framework.d, "edges": graph.m}
    links = (
        make_report("orthogonal", overlap, 0.0, inputs, rel_tol),
        make_report("rayleigh", eigenvalue, quad, inputs, rel_tol),
        make_report("ratio_bound", quad, lambda2, inputs, rel_tol),
    )
    return BoundWitness("ratio_bound", links, {
        "w1": w1.tolist(),
        "quadratic_form": quad,
        "rigidity_eigenvalue": eigenvalue,
        "a1": lambda2,
    })


def rigidity_necessity_check(graph: Graph, d: int, trials: int = DEFAULT_GENERIC_TRIALS,
                             seed: int = 0, rank_tol: float = DEFAULT_RANK_TOL,
                             rel_tol: float = BOUND_REL_TOL) -> BoundReport:
    """
    刚性蕴含 d-连通：一般刚性时要求 κ(G) ≥ d

    编码为 lhs = d（刚性）或 0（非刚性），rhs = κ(G)；κ < d 时在 inputs 中标记
    forced_flexible，此时刚性判定必须为假
    """
    if d < 1 or graph.order < d + 1:
        raise ParameterError(f"要求 d ≥ 1 且 n ≥ d+1，实际 n={graph.order}, d={d}")
    rigid = is_generically_rigid(graph, d, trials, seed, rank_tol)
    kappa = vertex_connectivity(graph)
    inputs = {"n": graph.order, "d": d, "kappa": kappa, "rigid": rigid,
              "forced_flexible": kappa < d}
    return make_report("d_connectivity", d if rigid else 0, kappa, inputs, rel_tol)


def rigid_diameter_check(graph: Graph, d: int, trials: int = DEFAULT_GENERIC_TRIALS,
                         seed: int = 0, rank_tol: float = DEFAULT_RANK_TOL,
                         rel_tol: float = BOUND_REL_TOL) -> BoundReport:
    """
    一般刚性图的直径不超过 ⌈(n−1)/d⌉；非刚性图的报告为空真（lhs = 0）
    """
    rhs = max_rigid_diameter(graph.order, d)
    rigid = is_generically_rigid(graph, d, trials, seed, rank_tol)
    delta = diameter(graph) if is_connected(graph) else None
    inputs = {"n": graph.order, "d": d, "rigid": rigid, "diameter": delta}
    lhs = delta if rigid and delta is not None else 0
    if rigid and delta is None:
        logger.warning("刚性判定为真但图不连通")
        lhs = math.inf
    return make_report("rigid_maximal_diameter", lhs, rhs, inputs, rel_tol)
