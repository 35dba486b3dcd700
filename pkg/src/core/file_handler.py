# -*- coding: utf-8 -*-
"""
文件处理器
负责图/框架文件的解析，以及报告（JSON）和扫描表（CSV/XLSX）的保存
"""

import json
import os
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from src.core.exceptions import GraphConstructionError, GraphFormatError, ParameterError
from src.core.graph import Graph, build_graph
from src.core.rigidity import Framework, Realization
from src.utils.logger import get_logger

logger = get_logger("FileHandler")

# 支持的输出格式
OUTPUT_FORMATS = ("json", "csv", "xlsx")


def _to_builtin(value: Any):
    """json.dumps 的 default：把 numpy 标量和数组转换为内置类型"""
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"无法序列化的类型: {type(value).__name__}")


def dumps_json(document: Any, indent: Optional[int] = 2) -> str:
    """排序键的稳定 JSON 文本，indent 为 None 时输出单行"""
    return json.dumps(document, ensure_ascii=False, indent=indent, sort_keys=True,
                      default=_to_builtin)


def _parse_graph_object(data: Any, source: str) -> Graph:
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise GraphFormatError(f"{source}: 图对象必须包含 n 和 edges 字段")
    n, edges = data["n"], data["edges"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise GraphFormatError(f"{source}: n 必须为整数，实际 {n!r}")
    if not isinstance(edges, list):
        raise GraphFormatError(f"{source}: edges 必须为数组")
    for edge in edges:
        if not isinstance(edge, list) or len(edge) != 2 or \
                not all(isinstance(x, int) and not isinstance(x, bool) for x in edge):
            raise GraphFormatError(f"{source}: 边必须是两个整数组成的数组，实际 {edge!r}")
    return build_graph(n, edges)


def _parse_edge_list(text: str, source: str) -> Graph:
    lines = [line.split("#", 1)[0].strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines:
        raise GraphFormatError(f"{source}: 文件为空")
    try:
        n = int(lines[0])
        edges: List[Tuple[int, int]] = []
        for line in lines[1:]:
            parts = line.split()
            if len(parts) != 2:
                raise GraphFormatError(f"{source}: 边行必须为 'i j'，实际 {line!r}")
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError:
        raise GraphFormatError(f"{source}: 边列表包含非整数内容") from None
    return build_graph(n, edges)


class FileHandler:
    """
    文件处理器类
    提供图/框架读取、报告和扫描表保存等功能
    """

    def read_text(self, file_path: str) -> str:
        """读取文本文件，失败时抛出 GraphFormatError"""
        try:
            with open(file_path, "r", encoding="utf-8") as f:
                return f.read()
        except (OSError, UnicodeDecodeError) as e:
            raise GraphFormatError(f"无法读取文件 {file_path}: {e}") from e

    def load_input(self, file_path: str) -> Tuple[Graph, Optional[Framework]]:
        """
        读取图文件或框架文件

        Args:
            file_path: JSON（图对象或框架对象）或纯文本边列表

        Returns:
            (Graph, Framework 或 None)

        Raises:
            GraphFormatError: 文件无法读取或格式错误
        """
        text = self.read_text(file_path)
        stripped = text.lstrip()
        try:
            if stripped.startswith("{"):
                try:
                    data = json.loads(text)
                except json.JSONDecodeError as e:
                    raise GraphFormatError(f"{file_path}: JSON 格式错误: {e}") from e
                if isinstance(data, dict) and "points" in data:
                    framework = self._parse_framework(data, file_path)
                    return framework.graph, framework
                return _parse_graph_object(data, file_path), None
            return _parse_edge_list(text, file_path), None
        except (GraphConstructionError, ParameterError) as e:
            raise GraphFormatError(f"{file_path}: {e}") from e

    def load_graph(self, file_path: str) -> Graph:
        """读取图（框架文件只取其中的图）"""
        graph, _ = self.load_input(file_path)
        logger.info(f"读取图: {file_path}（n={graph.order}, |E|={graph.m}）")
        return graph

    def load_framework(self, file_path: str) -> Framework:
        """
        读取框架文件 {"graph": {...}, "d": d, "points": [[...], ...]}

        Raises:
            GraphFormatError: 文件不是框架或格式错误
        """
        _, framework = self.load_input(file_path)
        if framework is None:
            raise GraphFormatError(f"{file_path}: 不是框架文件（缺少 points 字段）")
        logger.info(f"读取框架: {file_path}（n={framework.n}, d={framework.d}）")
        return framework

    def _parse_framework(self, data: Dict[str, Any], source: str) -> Framework:
        if "graph" not in data or "d" not in data:
            raise GraphFormatError(f"{source}: 框架对象必须包含 graph、d 和 points 字段")
        graph = _parse_graph_object(data["graph"], source)
        d = data["d"]
        if isinstance(d, bool) or not isinstance(d, int) or d < 1:
            raise GraphFormatError(f"{source}: d 必须为正整数，实际 {d!r}")

        points = data["points"]
        if not isinstance(points, list) or len(points) != graph.order:
            raise GraphFormatError(f"{source}: points 必须是 {graph.order} 个点的数组")
        for point in points:
            if not isinstance(point, list) or len(point) != d or \
                    not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in point):
                raise GraphFormatError(f"{source}: 每个点必须是 {d} 个实数，实际 {point!r}")
        return Framework(graph, Realization(np.array(points, dtype=float).reshape(graph.order, d)))

    def _ensure_directory(self, output_path: str):
        output_dir = os.path.dirname(output_path)
        if output_dir and not os.path.exists(output_dir):
            os.makedirs(output_dir)
            logger.info(f"创建输出目录: {output_dir}")

    def save_json(self, document: Any, output_path: str) -> bool:
        """
        保存 JSON 报告

        Args:
            document: 可序列化的报告
            output_path: 输出文件路径

        Returns:
            bool: 保存是否成功
        """
        try:
            self._ensure_directory(output_path)
            with open(output_path, "w", encoding="utf-8") as f:
                f.write(dumps_json(document))
                f.write("\n")
            logger.info(f"报告保存成功: {output_path}")
            return True
        except Exception as e:
            logger.error(f"保存 JSON 文件失败: {e}")
            return False

    def save_to_csv(self, data: pd.DataFrame, output_path: str, encoding: str = "utf-8") -> bool:
        """
        保存数据到CSV文件（'.' 小数点，带表头）

        Returns:
            bool: 保存是否成功
        """
        try:
            if data is None or data.empty:
                logger.error("没有数据可保存")
                return False
            self._ensure_directory(output_path)
            data.to_csv(output_path, index=False, encoding=encoding)
            logger.info(f"CSV文件保存成功: {output_path}")
            return True
        except Exception as e:
            logger.error(f"保存CSV文件失败: {e}")
            return False

    def save_to_excel(self, data: pd.DataFrame, output_path: str, sheet_name: str = "sweep") -> bool:
        """
        保存数据到Excel文件

        Returns:
            bool: 保存是否成功
        """
        try:
            if data is None or data.empty:
                logger.error("没有数据可保存")
                return False
            self._ensure_directory(output_path)
            with pd.ExcelWriter(output_path, engine="openpyxl") as writer:
                data.to_excel(writer, sheet_name=sheet_name, index=False)
            logger.info(f"数据保存成功: {output_path}")
            logger.info(f"保存数据: {len(data)} 行 x {len(data.columns)} 列")
            return True
        except Exception as e:
            logger.error(f"保存Excel文件失败: {e}")
            return False

    def save_table(self, data: pd.DataFrame, output_path: str, output_format: str) -> bool:
        """按格式保存扫描表：json 为记录数组，csv/xlsx 为表格"""
        if output_format == "csv":
            return self.save_to_csv(data, output_path)
        if output_format == "xlsx":
            return self.save_to_excel(data, output_path)
        if output_format == "json":
            return self.save_json(table_records(data), output_path)
        logger.error(f"不支持的输出格式: {output_format}")
        return False


def table_records(data: pd.DataFrame) -> List[Dict[str, Any]]:
    """DataFrame 转为记录数组，缺失值为 None"""
    records = data.astype(object).where(pd.notna(data), None).to_dict(orient="records")
    return [{key: _to_builtin(value) if isinstance(value, (np.generic, np.ndarray)) else value
             for key, value in record.items()} for record in records]
