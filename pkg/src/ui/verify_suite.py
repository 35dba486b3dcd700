# -*- coding: utf-8 -*-
"""
不变量核验套件
spectra（闭式谱）、bounds（界与闭式）、rigidity（刚性内核）、gac（估计器验收值）
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import networkx as nx
import numpy as np

from src.core import bounds
from src.core.exceptions import ParameterError
from src.core.families import (FamilySpec, complete_spectrum, cycle_a1, cycle_spectrum,
                               cycle_test_vectors, generate, star_spectrum, turan_spectrum)
from src.core.gac import OptimizerConfig, algebraic_connectivity, estimate_gac, rigidity_ratio
from src.core.graph import Graph, diameter, graph_from_networkx, is_connected, laplacian
from src.core.rigidity import (Framework, Realization, random_realization, rigidity_matrix,
                               stiffness_matrix, trivial_motion_basis)
from src.core.spectral import numeric_rank, sym_eigenvalues
from src.utils.logger import LogExecutionTime, get_logger, log_exception

logger = get_logger("Verify")

SUITES = ("spectra", "bounds", "rigidity", "gac", "all")

# 闭式谱与数值谱的绝对误差上限
SPECTRUM_TOL = 1e-9
# 随机图语料的大小和种子
RANDOM_CORPUS_SIZE = 100
RANDOM_CORPUS_SEED = 2024


@dataclass(frozen=True)
class CheckResult:
    """单项核验结果"""

    suite: str
    name: str
    passed: bool
    detail: str = ""
    seconds: float = field(default=0.0, compare=False)

    def to_dict(self) -> Dict[str, object]:
        return {"suite": self.suite, "name": self.name, "passed": self.passed, "detail": self.detail,
                "seconds": round(self.seconds, 3)}


def random_corpus(count: int = RANDOM_CORPUS_SIZE, seed: int = RANDOM_CORPUS_SEED,
                  max_n: int = 14) -> List[Graph]:
    """由 networkx 随机图生成的连通图语料"""
    rng = np.random.default_rng(seed)
    graphs: List[Graph] = []
    while len(graphs) < count:
        n = int(rng.integers(3, max_n + 1))
        p = float(rng.uniform(0.25, 0.8))
        g = nx.gnp_random_graph(n, p, seed=int(rng.integers(2 ** 31)))
        if nx.is_connected(g):
            graphs.append(graph_from_networkx(g))
    return graphs


def family_corpus(max_n: int = 40) -> List[FamilySpec]:
    """图族实例语料"""
    specs = [FamilySpec.complete(n) for n in range(2, 13)]
    for d in range(1, 5):
        for n in range(d + 1, max_n + 1, 3):
            specs.append(FamilySpec.path(n, d))
            specs.append(FamilySpec.cycle(n, d))
        for n in range(max(d + 2, 4), min(max_n, 20) + 1, 2):
            if d >= 2:
                specs.append(FamilySpec.star(n, d))
    for k in range(2, 6):
        for r in range(2, 6):
            if k * r <= max_n:
                specs.append(FamilySpec.turan(k, r))
    return specs


def _max_error(closed: Iterable[float], numeric: Iterable[float]) -> float:
    closed, numeric = np.asarray(list(closed)), np.asarray(list(numeric))
    if closed.shape != numeric.shape:
        return math.inf
    return float(np.max(np.abs(closed - numeric))) if closed.size else 0.0


def _worst(items: Iterable[Tuple[str, float]]) -> Tuple[str, float]:
    worst = ("", 0.0)
    for label, error in items:
        if error > worst[1]:
            worst = (label, error)
    return worst


# ---------------------------------------------------------------- spectra

def check_star_spectrum() -> Tuple[bool, str]:
    errors = []
    for d in range(1, 8):
        for n in range(d + 2, 61):
            closed = star_spectrum(n, d).eigenvalues
            numeric = sym_eigenvalues(laplacian(generate_star(n, d)))
            errors.append((f"S_{{{n},{d}}}", _max_error(closed, numeric)))
    label, error = _worst(errors)
    return error <= SPECTRUM_TOL, f"最大误差 {error:.2e} {label}"


def generate_star(n: int, d: int) -> Graph:
    """d = 1 时 FamilySpec 不接受，直接生成 K_{1,n−1}"""
    if d == 1:
        return graph_from_networkx(nx.star_graph(n - 1))
    return generate(FamilySpec.star(n, d))


def check_turan_spectrum() -> Tuple[bool, str]:
    errors = []
    for r in range(2, 31):
        for k in range(2, 60 // r + 1):
            closed = turan_spectrum(k, r).eigenvalues
            numeric = sym_eigenvalues(laplacian(generate(FamilySpec.turan(k, r))))
            errors.append((f"T_{{{k * r},{r}}}", _max_error(closed, numeric)))
    label, error = _worst(errors)
    return error <= SPECTRUM_TOL, f"最大误差 {error:.2e} {label}"


def check_complete_spectrum() -> Tuple[bool, str]:
    errors = [(f"K_{n}", _max_error(complete_spectrum(n).eigenvalues,
                                     sym_eigenvalues(laplacian(generate(FamilySpec.complete(n))))))
              for n in range(2, 41)]
    label, error = _worst(errors)
    return error <= SPECTRUM_TOL, f"最大误差 {error:.2e} {label}"


def check_cycle_a1() -> Tuple[bool, str]:
    errors = []
    for d in range(1, 6):
        for n in list(range(d + 1, 61)) + [100, 150, 200]:
            numeric = float(sym_eigenvalues(laplacian(generate(FamilySpec.cycle(n, d))))[1])
            errors.append((f"C_{{{n},{d}}}", abs(cycle_a1(n, d) - numeric)))
    label, error = _worst(errors)
    return error <= SPECTRUM_TOL, f"最大误差 {error:.2e} {label}"


def check_cycle_spectrum() -> Tuple[bool, str]:
    errors = []
    for d in range(1, 5):
        for n in range(d + 1, 41, 3):
            closed = cycle_spectrum(n, d).eigenvalues
            numeric = sym_eigenvalues(laplacian(generate(FamilySpec.cycle(n, d))))
            errors.append((f"C_{{{n},{d}}}", _max_error(closed, numeric)))
    label, error = _worst(errors)
    return error <= SPECTRUM_TOL, f"最大误差 {error:.2e} {label}"


def check_cycle_test_vectors() -> Tuple[bool, str]:
    worst = 0.0
    for n in range(3, 60):
        u, v, w = cycle_test_vectors(n)
        worst = max(worst, abs(float(np.sum(u))), abs(float(np.sum(v))),
                    abs(float(u @ u) - 1.0), abs(float(v @ v) - 0.5), abs(float(w @ w) - 1.0))
    return worst <= 1e-12, f"最大偏差 {worst:.2e}"


# ---------------------------------------------------------------- bounds

def check_path_diameter() -> Tuple[bool, str]:
    for d in range(1, 6):
        for n in range(d + 1, 61):
            if n < 2:
                continue
            numeric = diameter(generate(FamilySpec.path(n, d)))
            if not numeric == bounds.path_diameter(n, d) == bounds.max_rigid_diameter(n, d):
                return False, f"P_{{{n},{d}}}: 数值直径 {numeric}"
    return True, "d ≤ 5, n ≤ 60"


def check_path_cycle() -> Tuple[bool, str]:
    for d in (2, 3, 4):
        for n in range(d + 2, 41):
            if not bounds.path_cycle_bound(n, d).satisfied:
                return False, f"(n={n}, d={d})"
            if not bounds.path_cycle_witness(n, d).passed:
                return False, f"见证链 (n={n}, d={d})"
    return True, "d ∈ {2,3,4}, n ≤ 40"


def check_asymptotic_ratio() -> Tuple[bool, str]:
    for d in (2, 3, 4):
        value = bounds.asymptotic_ratio(500, d)
        if abs(value - 0.25) > 1e-3:
            return False, f"asymptotic_ratio(500, {d}) = {value:.6f}"
        series = [bounds.asymptotic_ratio(n, d) for n in (16, 32, 64, 128, 256, 512)]
        if any(b >= a for a, b in zip(series, series[1:])) or min(series) <= 0.25:
            return False, f"d={d} 的序列不是单调下降到 0.25: {series}"
    return True, "n=500 误差 ≤ 1e-3，序列单调"


def _diameter_bound_holds(graph: Graph) -> Optional[str]:
    a1 = algebraic_connectivity(graph)
    bound = bounds.diameter_vc_bound(graph)
    if not bounds.make_report("diameter_bound", a1, bound).satisfied:
        return f"a₁={a1:.9g} > 界 {bound:.9g}"
    witness = bounds.diameter_bound_witness(graph)
    if not witness.passed:
        failing = [link.theorem for link in witness.links if not link.satisfied]
        return f"见证链失败环节 {failing}"
    return None


def check_diameter_bound(extra: Iterable[Graph] = ()) -> Tuple[bool, str]:
    graphs = [generate(spec) for spec in family_corpus(40)] + random_corpus() + list(extra)
    count = 0
    for graph in graphs:
        if graph.order < 2 or not is_connected(graph):
            continue
        problem = _diameter_bound_holds(graph)
        if problem:
            return False, f"n={graph.order}, |E|={graph.m}: {problem}"
        count += 1
    k2 = generate(FamilySpec.complete(2))
    if bounds.diameter_vc_bound(k2) != 2.0:
        return False, "K₂ 上界不等于 2"
    return True, f"{count} 个连通图"


# ---------------------------------------------------------------- rigidity

def check_path_generic_rigidity() -> Tuple[bool, str]:
    rng = np.random.default_rng(7)
    for d in range(1, 5):
        for n in range(d + 1, 31):
            graph = generate(FamilySpec.path(n, d))
            framework = Framework(graph, random_realization(n, d, rng))
            rank = numeric_rank(rigidity_matrix(framework))
            if rank != d * n - d * (d + 1) // 2:
                return False, f"P_{{{n},{d}}}: rank(R) = {rank}"
    return True, "n ≤ 30, d ≤ 4"


def check_rigidity_connectivity(extra: Iterable[Graph] = ()) -> Tuple[bool, str]:
    graphs = [generate(spec) for spec in family_corpus(24)] + random_corpus(40) + list(extra)
    rigid_count = 0
    for graph in graphs:
        for d in (2, 3):
            if graph.order < d + 1:
                continue
            report = bounds.rigidity_necessity_check(graph, d)
            if not report.satisfied:
                return False, f"n={graph.order}, d={d}: κ={report.rhs}"
            rigid_count += int(report.inputs["rigid"])
    return True, f"{rigid_count} 个刚性实例"


def _random_frameworks(count: int, seed: int) -> List[Framework]:
    rng = np.random.default_rng(seed)
    frameworks = []
    corpus = random_corpus(count, seed)
    for index, graph in enumerate(corpus):
        d = 1 + index % 3
        frameworks.append(Framework(graph, Realization(rng.standard_normal((graph.order, d)))))
    return frameworks


def check_quadratic_form() -> Tuple[bool, str]:
    rng = np.random.default_rng(11)
    worst = 0.0
    for framework in _random_frameworks(100, 11):
        u = rng.standard_normal(framework.d * framework.n)
        quad = stiffness_matrix(framework).quadratic_form(u)
        motion = u.reshape(framework.n, framework.d)
        points = framework.realization.points
        total = 0.0
        for i, j in framework.graph.edges:
            diff = points[i - 1] - points[j - 1]
            b = diff / np.linalg.norm(diff)
            total += float(b @ (motion[i - 1] - motion[j - 1])) ** 2
        worst = max(worst, abs(quad - total) / max(1.0, abs(total)))
    return worst <= 1e-10, f"最大相对误差 {worst:.2e}"


def check_trivial_kernel() -> Tuple[bool, str]:
    worst = 0.0
    for framework in _random_frameworks(60, 13):
        basis = trivial_motion_basis(framework.realization)
        residual = rigidity_matrix(framework) @ basis
        worst = max(worst, float(np.max(np.abs(residual))) if residual.size else 0.0)
    return worst <= 1e-9, f"max |R·T| = {worst:.2e}"


def check_stiffness_invariance() -> Tuple[bool, str]:
    rng = np.random.default_rng(17)
    worst = 0.0
    for framework in _random_frameworks(40, 17):
        base = stiffness_matrix(framework).entries
        moved = framework.realization.points * 3.5 + rng.standard_normal(framework.d)
        other = stiffness_matrix(Framework(framework.graph, Realization(moved))).entries
        worst = max(worst, float(np.max(np.abs(base - other))))
    return worst <= 1e-12, f"最大偏差 {worst:.2e}"


def check_line_stiffness() -> Tuple[bool, str]:
    rng = np.random.default_rng(19)
    for graph in random_corpus(40, 19):
        points = rng.permutation(graph.order).astype(float).reshape(-1, 1)
        framework = Framework(graph, Realization(points))
        if not np.array_equal(stiffness_matrix(framework).entries, laplacian(graph)):
            return False, f"n={graph.order}: d=1 刚度矩阵与 Laplacian 不一致"
    return True, "40 个随机图"


# ---------------------------------------------------------------- gac

def check_k2_ratio(config: OptimizerConfig) -> Tuple[bool, str]:
    k2 = generate(FamilySpec.complete(2))
    for d in (2, 3, 4, 5):
        ratio = rigidity_ratio(k2, d, config)
        if abs(ratio - 1.0) > 1e-9:
            return False, f"d={d}: ratio={ratio:.12f}"
    return True, "d ∈ {2,3,4,5}"


def check_complete_plane(config: OptimizerConfig) -> Tuple[bool, str]:
    for n in range(3, 9):
        spec = FamilySpec.complete(n)
        value = estimate_gac(generate(spec), 2, config, spec).value
        if not 0.95 * n / 2 <= value <= n / 2 + 1e-6:
            return False, f"K_{n}: a₂ 估计 {value:.6f}"
    return True, "n = 3..8"


def check_star_plane(config: OptimizerConfig) -> Tuple[bool, str]:
    for n in range(4, 9):
        spec = FamilySpec.star(n, 2)
        graph = generate(spec)
        value = estimate_gac(graph, 2, config, spec).value
        if not 0.95 <= value <= 1 + 1e-6:
            return False, f"S_{{{n},2}}: a₂ 估计 {value:.6f}"
        if abs(algebraic_connectivity(graph) - 2.0) > SPECTRUM_TOL:
            return False, f"S_{{{n},2}}: a₁ ≠ 2"
    return True, "n = 4..8"


def check_extra_graph(graph: Graph, config: OptimizerConfig) -> Tuple[bool, str]:
    """用户图：直径界、刚性必要条件与刚性比界"""
    if graph.order < 2 or not is_connected(graph):
        return True, "图不连通或 n < 2，跳过"
    problem = _diameter_bound_holds(graph)
    if problem:
        return False, problem
    for d in (2, 3):
        if graph.order >= d + 1 and not bounds.rigidity_necessity_check(graph, d).satisfied:
            return False, f"d={d}: 刚性但 κ < d"
    if not bounds.ratio_bound_check(graph, 2, config).satisfied:
        return False, "a₂/a₁ > 1"
    return True, f"n={graph.order}, |E|={graph.m}"


def suite_checks(suite: str, config: OptimizerConfig,
                 extra_graph: Optional[Graph] = None) -> List[Tuple[str, str, Callable]]:
    """列出套件包含的 (套件, 名称, 核验函数)"""
    extra = [extra_graph] if extra_graph is not None else []
    table = {
        "spectra": [
            ("complete_spectrum", check_complete_spectrum),
            ("star_spectrum", check_star_spectrum),
            ("turan_spectrum", check_turan_spectrum),
            ("cycle_a1", check_cycle_a1),
            ("cycle_spectrum", check_cycle_spectrum),
            ("cycle_test_vectors", check_cycle_test_vectors),
        ],
        "bounds": [
            ("path_diameter", check_path_diameter),
            ("path_cycle", check_path_cycle),
            ("asymptotic_ratio", check_asymptotic_ratio),
            ("diameter_bound", lambda: check_diameter_bound(extra)),
        ],
        "rigidity": [
            ("path_generic_rigidity", check_path_generic_rigidity),
            ("rigidity_connectivity", lambda: check_rigidity_connectivity(extra)),
            ("quadratic_form", check_quadratic_form),
            ("trivial_kernel", check_trivial_kernel),
            ("stiffness_invariance", check_stiffness_invariance),
            ("line_stiffness", check_line_stiffness),
        ],
        "gac": [
            ("k2_ratio", lambda: check_k2_ratio(config)),
            ("complete_plane", lambda: check_complete_plane(config)),
            ("star_plane", lambda: check_star_plane(config)),
        ],
    }
    if suite not in SUITES:
        raise ParameterError(f"未知核验套件: {suite}，可选 {', '.join(SUITES)}")
    names = [s for s in SUITES if s != "all"] if suite == "all" else [suite]
    checks = [(name, label, func) for name in names for label, func in table[name]]
    if extra_graph is not None:
        checks.append(("graph", "user_graph", lambda: check_extra_graph(extra_graph, config)))
    return checks


def run_suite(suite: str, config: Optional[OptimizerConfig] = None,
              extra_graph: Optional[Graph] = None) -> List[CheckResult]:
    """
    执行核验套件

    Args:
        suite: spectra / bounds / rigidity / gac / all
        config: gac 套件使用的优化器参数
        extra_graph: 追加到语料中的用户图

    Returns:
        List[CheckResult]: 按执行顺序排列的结果
    """
    config = config or OptimizerConfig()
    results = []
    for suite_name, label, func in suite_checks(suite, config, extra_graph):
        with LogExecutionTime(logger, f"核验 {suite_name}/{label}") as timer:
            try:
                passed, detail = func()
            except Exception as e:
                log_exception(logger, f"核验 {label} 出错", e)
                passed, detail = False, f"{type(e).__name__}: {e}"
        results.append(CheckResult(suite_name, label, bool(passed), detail, timer.duration))
        if not passed:
            logger.warning(f"核验失败 {suite_name}/{label}: {detail}")
    return results
