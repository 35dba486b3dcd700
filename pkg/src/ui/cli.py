# -*- coding: utf-8 -*-
"""
命令行界面
analyze（单图分析）、sweep（参数扫描）、verify（不变量核验）三个子命令
"""

import argparse
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from src.core.bounds import (diameter_vc_bound, make_report, ratio_bound_check,
                             ratio_bound_witness, rigid_diameter_check, rigidity_necessity_check)
from src.core.exceptions import (DisconnectedGraphError, GraphConstructionError, GraphFormatError,
                                 ParameterError)
from src.core.families import FAMILY_PARAMETERS, FamilySpec, generate
from src.core.file_handler import OUTPUT_FORMATS, FileHandler, dumps_json, table_records
from src.core.gac import OptimizerConfig, algebraic_connectivity, estimate_gac, rigidity_ratio
from src.core.graph import Graph, diameter, is_connected, laplacian_spectrum, vertex_connectivity
from src.core.rigidity import (Framework, is_generically_rigid, is_infinitesimally_rigid,
                               rigidity_report)
from src.core.sweeps import SWEEPS, parse_range, run_sweep
from src.ui.verify_suite import SUITES, CheckResult, run_suite
from src.utils.config import DEFAULT_SETTINGS, ConfigManager
from src.utils.logger import LogExecutionTime, get_logger, resolve_level, setup_logger

logger = get_logger("CLI")

# 退出码
EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_PRECONDITION = 3

# 需要图族类型（而非完整描述）的扫描
FAMILY_KIND_SWEEPS = ("ratio", "path-conjecture")


@dataclass
class AnalysisRequest:
    """
    一次命令行请求

    analyze 要求 family 与 graph_path 恰好给出一个；d 给出时必须 ≥ 1
    """

    command: str
    family: Optional[FamilySpec] = None
    graph_path: Optional[str] = None
    d: Optional[int] = None
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    output_format: str = "json"
    out: Optional[str] = None
    sweep_kind: Optional[str] = None
    family_text: Optional[str] = None
    n_values: List[int] = field(default_factory=list)
    d_values: List[int] = field(default_factory=list)
    suite: str = "all"
    include_traces: bool = False
    generic_trials: int = DEFAULT_SETTINGS["generic_trials"]
    rank_tol: float = DEFAULT_SETTINGS["tolerances"]["rank"]
    cluster_tol: float = DEFAULT_SETTINGS["tolerances"]["cluster"]
    coincidence_tol: float = DEFAULT_SETTINGS["tolerances"]["coincidence"]
    bound_tol: float = DEFAULT_SETTINGS["tolerances"]["bound_relative"]

    def __post_init__(self):
        for name in ("rank_tol", "cluster_tol", "coincidence_tol", "bound_tol"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"容差必须 > 0: {name}={getattr(self, name)}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ParameterError(f"不支持的输出格式: {self.output_format}")
        if self.command == "analyze":
            if (self.family is None) == (self.graph_path is None):
                raise ParameterError("analyze 需要且只需要 --family 或 --graph 之一")
            if self.d is not None and self.d < 1:
                raise ParameterError(f"维数必须 ≥ 1，实际 d={self.d}")
            if self.output_format == "xlsx":
                raise ParameterError("analyze 只支持 json 或 csv 输出")
        elif self.command == "sweep":
            if self.sweep_kind not in SWEEPS:
                raise ParameterError(f"未知扫描类型: {self.sweep_kind}")
            if not self.d_values:
                raise ParameterError("--d 范围为空")
            if self.sweep_kind in FAMILY_KIND_SWEEPS and self.family_text is not None \
                    and self.family_text not in FAMILY_PARAMETERS:
                raise ParameterError(f"{self.sweep_kind} 扫描的 --family 必须是图族类型，"
                                     f"可选 {', '.join(FAMILY_PARAMETERS)}")
            if self.output_format == "xlsx" and not self.out:
                raise ParameterError("xlsx 输出需要 --out")
        elif self.command == "verify":
            if self.suite not in SUITES:
                raise ParameterError(f"未知核验套件: {self.suite}")
        else:
            raise ParameterError(f"未知命令: {self.command}")

    @classmethod
    def from_args(cls, args: argparse.Namespace, settings: Dict[str, Any]) -> "AnalysisRequest":
        """由命令行参数与配置构造请求，命令行值优先"""
        optimizer = OptimizerConfig.from_settings(
            settings.get("optimizer"), restarts=args.restarts, iterations=args.iterations,
            seed=args.seed, workers=args.workers, step_init=args.step_init,
            step_decay=args.step_decay, injectivity_floor=args.injectivity_floor)
        tolerances = {**DEFAULT_SETTINGS["tolerances"], **settings.get("tolerances", {})}
        common = dict(
            command=args.command,
            optimizer=optimizer,
            output_format=args.format,
            out=args.out,
            graph_path=args.graph,
            generic_trials=int(settings.get("generic_trials", DEFAULT_SETTINGS["generic_trials"])),
            rank_tol=float(tolerances["rank"]),
            cluster_tol=float(tolerances["cluster"]),
            coincidence_tol=float(tolerances["coincidence"]),
            bound_tol=float(tolerances["bound_relative"]),
        )
        if args.command == "analyze":
            family = FamilySpec.parse(args.family) if args.family else None
            return cls(family=family, d=args.d, include_traces=args.traces, **common)
        if args.command == "sweep":
            n_values = parse_range(args.n) if args.n else []
            return cls(sweep_kind=args.kind, family_text=args.family, n_values=n_values,
                       d_values=parse_range(args.d), **common)
        return cls(suite=args.suite, **common)


def load_request_input(request: AnalysisRequest) -> Tuple[Graph, Optional[Framework]]:
    """读取请求中的图（图族生成或文件）"""
    if request.family is not None:
        return generate(request.family), None
    return FileHandler().load_input(request.graph_path)


def cmd_analyze(request: AnalysisRequest) -> Dict[str, Any]:
    """
    单图分析

    基本量：n、|E|、连通性、κ、Δ、a₁、Laplacian 谱摘要；给出 d 时追加一般刚性、
    a_d 估计、刚性比以及四个界的报告；输入为框架文件时追加该框架的刚性报告

    Raises:
        DisconnectedGraphError: 给出 d 但图不连通
    """
    graph, framework = load_request_input(request)
    connected = is_connected(graph)
    a1 = algebraic_connectivity(graph)

    document: Dict[str, Any] = {
        "input": {
            "family": request.family.label if request.family else None,
            "graph": request.graph_path,
        },
        "n": graph.order,
        "edges": graph.m,
        "connected": connected,
        "vertex_connectivity": vertex_connectivity(graph),
        "diameter": diameter(graph) if connected else None,
        "a1": a1,
        "laplacian_spectrum": laplacian_spectrum(graph, request.cluster_tol).to_dict(),
    }

    if request.d is not None:
        d = request.d
        if not connected:
            raise DisconnectedGraphError("给出 d 时需要连通图（刚性比与直径界）")
        config = request.optimizer
        trials, seed = request.generic_trials, config.seed
        rank_tol, bound_tol = request.rank_tol, request.bound_tol

        estimate = estimate_gac(graph, d, config, request.family)
        ratio = rigidity_ratio(graph, d, estimate=estimate)
        delta = document["diameter"]
        diameter_inputs = {"n": graph.order, "edges": graph.m,
                           "kappa": document["vertex_connectivity"], "diameter": delta, "d": d}
        reports = {
            "ratio_bound": ratio_bound_check(graph, d, estimate=estimate, rel_tol=bound_tol),
            "diameter_bound": make_report("diameter_bound", estimate.value,
                                          diameter_vc_bound(graph), diameter_inputs, bound_tol),
            "rigid_maximal_diameter": rigid_diameter_check(graph, d, trials, seed, rank_tol, bound_tol),
            "d_connectivity": rigidity_necessity_check(graph, d, trials, seed, rank_tol, bound_tol)
            if graph.order >= d + 1 else None,
        }
        document.update({
            "d": d,
            "generically_rigid": is_generically_rigid(graph, d, trials, seed, rank_tol),
            "gac": estimate.to_dict(include_traces=request.include_traces),
            "ratio": ratio,
            "bounds": {name: report.to_dict() if report is not None else None
                       for name, report in reports.items()},
            "optimizer": config.to_dict(),
        })

    if framework is not None:
        tolerances = (request.rank_tol, request.coincidence_tol)
        document["framework"] = {
            "d": framework.d,
            "report": rigidity_report(framework, *tolerances).to_dict(),
            "is_inf_rigid": is_infinitesimally_rigid(framework, *tolerances),
            "ratio_witness": ratio_bound_witness(framework, *tolerances, request.bound_tol).to_dict()
            if connected else None,
        }
    return document


def cmd_sweep(request: AnalysisRequest) -> pd.DataFrame:
    """
    参数扫描，每个参数组合一行

    Raises:
        ParameterError: 范围为空或没有落在定义域内的组合
    """
    options: Dict[str, Any] = {"config": request.optimizer, "rel_tol": request.bound_tol}
    if request.family_text is not None:
        options["family"] = request.family_text
    if request.graph_path is not None:
        options["graph"] = FileHandler().load_graph(request.graph_path)
    return run_sweep(request.sweep_kind, request.n_values, request.d_values, **options)


def cmd_verify(request: AnalysisRequest) -> Tuple[int, List[CheckResult]]:
    """
    执行核验套件，打印逐项结果

    Returns:
        (退出码, 结果列表)：全部通过为 0，否则为 1
    """
    extra = FileHandler().load_graph(request.graph_path) if request.graph_path else None
    with LogExecutionTime(logger, f"核验套件 {request.suite}"):
        results = run_suite(request.suite, request.optimizer, extra)

    for result in results:
        mark = "✅" if result.passed else "❌"
        print(f"{mark} {result.suite}/{result.name}: {result.detail}")
    failed = [r for r in results if not r.passed]
    print(f"通过 {len(results) - len(failed)}/{len(results)}")
    for result in failed:
        print(f"失败: {result.suite}/{result.name}", file=sys.stderr)
    return (EXIT_VERIFY_FAILED if failed else EXIT_OK), results


def flatten_document(document: Dict[str, Any]) -> pd.DataFrame:
    """把嵌套报告展开为 (key, value) 两列，列表值写成 JSON 文本"""
    flat = pd.json_normalize(document, sep=".").iloc[0].to_dict()
    rows = []
    for key in sorted(flat):
        value = flat[key]
        if isinstance(value, (list, dict)):
            value = dumps_json(value, indent=None)
        rows.append({"key": key, "value": value})
    return pd.DataFrame(rows, columns=["key", "value"])


def _emit_document(document: Any, request: AnalysisRequest) -> int:
    handler = FileHandler()
    if request.output_format == "csv":
        table = flatten_document(document)
        if request.out:
            return EXIT_OK if handler.save_to_csv(table, request.out) else EXIT_INVALID_INPUT
        print(table.to_csv(index=False), end="")
        return EXIT_OK
    if request.out:
        return EXIT_OK if handler.save_json(document, request.out) else EXIT_INVALID_INPUT
    print(dumps_json(document))
    return EXIT_OK


def _emit_table(table: pd.DataFrame, request: AnalysisRequest) -> int:
    if request.out:
        saved = FileHandler().save_table(table, request.out, request.output_format)
        return EXIT_OK if saved else EXIT_INVALID_INPUT
    if request.output_format == "json":
        print(dumps_json(table_records(table)))
    else:
        print(table.to_csv(index=False), end="")
    return EXIT_OK


def _add_common_options(parser: argparse.ArgumentParser, formats: Sequence[str], default_format: str):
    optimizer = DEFAULT_SETTINGS["optimizer"]
    group = parser.add_argument_group("优化器（默认取配置文件）")
    group.add_argument("--restarts", type=int, default=None,
                       help=f"起点数（默认 {optimizer['restarts']}）")
    group.add_argument("--iterations", type=int, default=None,
                       help=f"每个起点的迭代次数（默认 {optimizer['iterations']}）")
    group.add_argument("--seed", type=int, default=None, help=f"随机种子（默认 {optimizer['seed']}）")
    group.add_argument("--workers", type=int, default=None,
                       help=f"并行起点的线程数（默认 {optimizer['workers']}）")
    group.add_argument("--step-init", type=float, default=None,
                       help=f"初始步长（默认 {optimizer['step_init']}）")
    group.add_argument("--step-decay", type=float, default=None,
                       help=f"未改进时的步长衰减系数，取值 (0, 1)（默认 {optimizer['step_decay']}）")
    group.add_argument("--injectivity-floor", type=float, default=None,
                       help=f"单射性下限（默认 {optimizer['injectivity_floor']}）")

    parser.add_argument("--format", choices=formats, default=default_format,
                        help=f"输出格式（默认 {default_format}）")
    parser.add_argument("--out", default=None, help="输出文件路径（默认写到标准输出）")
    parser.add_argument("--config", default=None, help="配置目录（包含 settings.json，默认 config/）")
    parser.add_argument("--log-level", default=None,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="日志级别")
    parser.add_argument("--log-file", action="store_true", help="同时把日志写到 logs/ 目录")


def build_parser() -> argparse.ArgumentParser:
    """构建命令行解析器"""
    parser = argparse.ArgumentParser(
        prog="rigidity_cli",
        description="图刚性定量分析：广义代数连通度、刚性比与相关界")
    subparsers = parser.add_subparsers(dest="command", required=True)

    analyze = subparsers.add_parser("analyze", help="分析单个图或框架")
    source = analyze.add_mutually_exclusive_group(required=True)
    source.add_argument("--family", help="图族描述，如 complete:5、path:10,3、turan:2,3")
    source.add_argument("--graph", help="图文件（JSON 或边列表）或框架文件（JSON）")
    analyze.add_argument("--d", type=int, default=None, help="维数；给出时计算刚性相关量")
    analyze.add_argument("--traces", action="store_true", help="输出每个起点的迭代轨迹")
    _add_common_options(analyze, ("json", "csv"), "json")

    sweep = subparsers.add_parser("sweep", help="参数扫描")
    sweep.add_argument("kind", choices=list(SWEEPS), help="扫描类型")
    sweep.add_argument("--family", default=None,
                       help="ratio/path-conjecture 为图族类型（默认 complete）；"
                            "monotonicity 为完整描述，如 complete:6")
    sweep.add_argument("--graph", default=None, help="monotonicity 扫描使用的图文件")
    sweep.add_argument("--d", default="2", help="d 的范围：a..b、a..b:step、a,b,c（默认 2）")
    sweep.add_argument("--n", default=None, help="n 的范围，语法同 --d")
    _add_common_options(sweep, OUTPUT_FORMATS, "csv")

    verify = subparsers.add_parser("verify", help="执行不变量核验套件")
    verify.add_argument("--suite", choices=list(SUITES), default="all", help="核验套件（默认 all）")
    verify.add_argument("--graph", default=None, help="追加到语料中的图文件")
    _add_common_options(verify, ("json",), "json")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    命令行入口

    Returns:
        int: 0 成功，1 核验失败，2 输入无效，3 前置条件不满足（如图不连通）
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    settings = ConfigManager(args.config).load_settings()
    setup_logger(resolve_level(args.log_level or settings.get("log_level")),
                 log_to_file=bool(args.log_file or settings.get("log_to_file", False)))

    try:
        request = AnalysisRequest.from_args(args, settings)
        if request.command == "analyze":
            return _emit_document(cmd_analyze(request), request)
        if request.command == "sweep":
            return _emit_table(cmd_sweep(request), request)
        status, results = cmd_verify(request)
        if request.out and not FileHandler().save_json([r.to_dict() for r in results], request.out):
            return EXIT_INVALID_INPUT
        return status
    except (GraphFormatError, GraphConstructionError, ParameterError) as e:
        print(f"输入无效: {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except DisconnectedGraphError as e:
        print(f"前置条件不满足: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
