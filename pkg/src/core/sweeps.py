# -*- coding: utf-8 -*-
"""
参数扫描模块
按参数网格逐行计算指标，生成可直接绘图的 DataFrame
"""

import re
from typing import Callable, Dict, List, Optional, Sequence

import pandas as pd

from src.core.bounds import (BOUND_REL_TOL, asymptotic_ratio, max_rigid_diameter, path_cycle_bound,
                             path_diameter, prior_path_bound)
from src.core.exceptions import ParameterError
from src.core.families import FamilySpec, cycle_a1, generate
from src.core.gac import OptimizerConfig, estimate_gac, known_gac
from src.core.graph import Graph, diameter
from src.utils.logger import LogExecutionTime, get_logger

logger = get_logger("Sweeps")

# 渐近比的极限值
ASYMPTOTIC_LIMIT = 0.25

_RANGE_PATTERN = re.compile(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*(?::\s*(\d+)\s*)?$")


def parse_range(text: str) -> List[int]:
    """
    解析整数范围：'a..b'、'a..b:step'、'a,b,c' 或单个整数

    Raises:
        ParameterError: 格式错误或范围为空
    """
    if text is None or not str(text).strip():
        raise ParameterError("范围不能为空")
    text = str(text)
    match = _RANGE_PATTERN.match(text)
    if match:
        start, stop = int(match.group(1)), int(match.group(2))
        step = int(match.group(3)) if match.group(3) else 1
        if step < 1:
            raise ParameterError(f"范围步长必须 ≥ 1: {text!r}")
        values = list(range(start, stop + 1, step))
    else:
        try:
            values = [int(part) for part in text.split(",") if part.strip()]
        except ValueError:
            raise ParameterError(f"无法解析范围: {text!r}") from None
    if not values:
        raise ParameterError(f"范围为空: {text!r}")
    return values


def family_instance(kind: str, n: int, d: int) -> FamilySpec:
    """
    按扫描变量生成图族实例

    complete 只用 n；path、cycle、star 用 (n, d)；turan 把 n 作为每部分大小 k，r = d+1
    """
    if kind == "complete":
        return FamilySpec.complete(n)
    if kind == "turan":
        return FamilySpec.turan(n, d + 1)
    return FamilySpec(kind, (n, d))


def _frame(rows: List[Dict[str, object]], columns: Sequence[str], kind: str) -> pd.DataFrame:
    if not rows:
        raise ParameterError(f"扫描 {kind} 没有落在定义域内的参数组合")
    logger.info(f"扫描 {kind} 完成: {len(rows)} 行")
    return pd.DataFrame(rows, columns=list(columns))


def sweep_asymptotic_ratio(ns: Sequence[int], ds: Sequence[int], **_) -> pd.DataFrame:
    """a₁(C_{2n,d})/a₁(C_{n,d}) 随 n 的变化，只取 n ≥ 2d+2"""
    rows = []
    for d in ds:
        for n in ns:
            if d < 1 or n < 2 * d + 2:
                logger.debug(f"跳过 (n={n}, d={d})：要求 n ≥ 2d+2")
                continue
            ratio = asymptotic_ratio(n, d)
            rows.append({
                "d": d,
                "n": n,
                "a1_cycle_n": cycle_a1(n, d),
                "a1_cycle_2n": cycle_a1(2 * n, d),
                "excess": ratio - ASYMPTOTIC_LIMIT,
                "ratio": ratio,
            })
    return _frame(rows, ["d", "n", "a1_cycle_n", "a1_cycle_2n", "excess", "ratio"],
                  "asymptotic-ratio")


def sweep_ratio(ns: Sequence[int], ds: Sequence[int], family: str = "complete",
                config: Optional[OptimizerConfig] = None, **_) -> pd.DataFrame:
    """图族上 d-刚性比估计随 n 的变化"""
    rows = []
    for d in ds:
        for n in ns:
            try:
                spec = family_instance(family, n, d)
            except ParameterError as e:
                logger.debug(f"跳过 (n={n}, d={d})：{e}")
                continue
            estimate = estimate_gac(generate(spec), d, config, spec)
            known = estimate.known
            rows.append({
                "family": spec.label,
                "d": d,
                "n": spec.n,
                "a1": estimate.algebraic_connectivity,
                "gac": estimate.value,
                "upper_bound": estimate.upper_bound,
                "known_lower": known.lower if known else None,
                "known_upper": known.upper if known else None,
                "converged": estimate.converged,
                "ratio": estimate.value / estimate.algebraic_connectivity,
            })
    return _frame(rows, ["family", "d", "n", "a1", "gac", "upper_bound", "known_lower",
                         "known_upper", "converged", "ratio"], "ratio")


def sweep_path_cycle(ns: Sequence[int], ds: Sequence[int], rel_tol: float = BOUND_REL_TOL,
                     **_) -> pd.DataFrame:
    """λ₂(L(P_{n,d})) 与 a₁(C_{2n,d}) 及此前上界 a₁(C_{n,d}) 的比较"""
    rows = []
    for d in ds:
        for n in ns:
            if d < 2 or n < d + 2:
                logger.debug(f"跳过 (n={n}, d={d})：要求 d ≥ 2 且 n ≥ d+2")
                continue
            report = path_cycle_bound(n, d, rel_tol)
            prior = prior_path_bound(n, d)
            rows.append({
                "d": d,
                "n": n,
                "lambda2_path": report.lhs,
                "a1_cycle_2n": report.rhs,
                "prior_bound": prior,
                "improvement": report.rhs / prior,
                "slack": report.slack,
                "satisfied": report.satisfied,
            })
    return _frame(rows, ["d", "n", "lambda2_path", "a1_cycle_2n", "prior_bound", "improvement",
                         "slack", "satisfied"], "path-cycle")


def sweep_path_diameter(ns: Sequence[int], ds: Sequence[int], **_) -> pd.DataFrame:
    """P_{n,d} 的数值直径与闭式、刚性图最大直径的比较"""
    rows = []
    for d in ds:
        for n in ns:
            if d < 1 or n < max(d + 1, 2):
                logger.debug(f"跳过 (n={n}, d={d})：要求 n ≥ d+1")
                continue
            numeric = diameter(generate(FamilySpec.path(n, d)))
            closed = path_diameter(n, d)
            extremal = max_rigid_diameter(n, d)
            rows.append({
                "d": d,
                "n": n,
                "diameter": numeric,
                "path_diameter": closed,
                "max_rigid_diameter": extremal,
                "match": numeric == closed == extremal,
            })
    return _frame(rows, ["d", "n", "diameter", "path_diameter", "max_rigid_diameter", "match"],
                  "path-diameter")


def sweep_monotonicity(ns: Sequence[int], ds: Sequence[int], graph: Optional[Graph] = None,
                       family: Optional[str] = None, config: Optional[OptimizerConfig] = None,
                       rel_tol: float = BOUND_REL_TOL, **_) -> pd.DataFrame:
    """
    实验性扫描：固定图上 a_d 估计随 d 的变化

    图由 graph 给出，或由 family 的完整描述（如 "complete:6"）生成；ns 不使用
    """
    spec = None
    if graph is None:
        if not family or ":" not in family:
            raise ParameterError("monotonicity 扫描需要 --graph 或完整图族描述（如 complete:6）")
        spec = FamilySpec.parse(family)
        graph = generate(spec)

    rows = []
    previous = None
    for d in ds:
        if d < 1:
            continue
        estimate = estimate_gac(graph, d, config, spec)
        rows.append({
            "d": d,
            "n": graph.order,
            "a1": estimate.algebraic_connectivity,
            "gac": estimate.value,
            "ratio": estimate.value / estimate.algebraic_connectivity,
            "non_increasing": previous is None
            or estimate.value <= previous + rel_tol * max(1.0, abs(previous)),
            "converged": estimate.converged,
        })
        previous = estimate.value
    return _frame(rows, ["d", "n", "a1", "gac", "ratio", "non_increasing", "converged"],
                  "monotonicity")


def sweep_path_conjecture(ns: Sequence[int], ds: Sequence[int], family: str = "complete",
                          config: Optional[OptimizerConfig] = None, rel_tol: float = BOUND_REL_TOL,
                          **_) -> pd.DataFrame:
    """实验性扫描：同阶刚性图与 P_{n,d} 的 a_d 估计对比"""
    rows = []
    for d in ds:
        for n in ns:
            try:
                spec = family_instance(family, n, d)
                path = FamilySpec.path(spec.n, d)
            except ParameterError as e:
                logger.debug(f"跳过 (n={n}, d={d})：{e}")
                continue
            family_value = estimate_gac(generate(spec), d, config, spec).value
            path_value = estimate_gac(generate(path), d, config, path).value
            path_known = known_gac(path, d)
            rows.append({
                "family": spec.label,
                "d": d,
                "n": spec.n,
                "gac_family": family_value,
                "gac_path": path_value,
                "path_upper": path_known.upper if path_known else None,
                "difference": family_value - path_value,
                "holds": family_value >= path_value - rel_tol * max(1.0, abs(path_value)),
            })
    return _frame(rows, ["family", "d", "n", "gac_family", "gac_path", "path_upper", "difference",
                         "holds"], "path-conjecture")


SWEEPS: Dict[str, Callable[..., pd.DataFrame]] = {
    "asymptotic-ratio": sweep_asymptotic_ratio,
    "ratio": sweep_ratio,
    "path-cycle": sweep_path_cycle,
    "path-diameter": sweep_path_diameter,
    "monotonicity": sweep_monotonicity,
    "path-conjecture": sweep_path_conjecture,
}


def run_sweep(kind: str, ns: Sequence[int], ds: Sequence[int], **options) -> pd.DataFrame:
    """
    执行一种扫描

    Args:
        kind: 扫描类型（SWEEPS 的键）
        ns: n 的取值
        ds: d 的取值
        **options: family、graph、config、rel_tol（界比较的相对容差）等附加参数

    Returns:
        pd.DataFrame: 每个参数组合一行，行序为 d 外层、n 内层
    """
    if kind not in SWEEPS:
        raise ParameterError(f"未知扫描类型: {kind}，可选 {', '.join(SWEEPS)}")
    if not ds:
        raise ParameterError("d 的扫描范围为空")
    with LogExecutionTime(logger, f"扫描 {kind}"):
        return SWEEPS[kind](list(ns), list(ds), **options)
