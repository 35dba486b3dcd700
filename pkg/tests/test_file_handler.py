# -*- coding: utf-8 -*-
"""
文件处理器测试：图/框架读取与报告、扫描表保存
"""

import json

import numpy as np
import pandas as pd
import pytest

from src.core.exceptions import GraphFormatError
from src.core.file_handler import FileHandler, dumps_json, table_records
from src.core.graph import build_graph


@pytest.fixture
def handler():
    return FileHandler()


class TestLoadGraph:
    def test_json_object(self, handler, write_json):
        path = write_json("g.json", {"n": 4, "edges": [[1, 2], [3, 2], [2, 1], [3, 4]]})
        graph = handler.load_graph(path)
        assert graph == build_graph(4, [(1, 2), (2, 3), (3, 4)])

    def test_edge_list(self, handler, write_text):
        path = write_text("g.txt", "# 三角形\n3\n1 2\n2 3  # 中间边\n\n1 3\n")
        assert handler.load_graph(path).edges == ((1, 2), (1, 3), (2, 3))

    def test_isolated_vertices(self, handler, write_text):
        assert handler.load_graph(write_text("g.txt", "5\n1 2\n")).order == 5

    @pytest.mark.parametrize("document", [
        {"n": 3},
        {"n": "3", "edges": []},
        {"n": 3, "edges": [[1, 2, 3]]},
        {"n": 3, "edges": [[1, 1]]},
        {"n": 3, "edges": [[1, 4]]},
        {"n": 0, "edges": []},
        {"n": 3, "edges": [[1, True]]},
    ])
    def test_invalid_json(self, handler, write_json, document):
        with pytest.raises(GraphFormatError):
            handler.load_graph(write_json("bad.json", document))

    @pytest.mark.parametrize("text", ["", "3\n1\n", "x\n", "3\n1 a\n", "{broken"])
    def test_invalid_text(self, handler, write_text, text):
        with pytest.raises(GraphFormatError):
            handler.load_graph(write_text("bad.txt", text))

    def test_missing_file(self, handler, tmp_path):
        with pytest.raises(GraphFormatError):
            handler.load_graph(str(tmp_path / "missing.json"))


class TestLoadFramework:
    def test_framework(self, handler, write_json):
        path = write_json("f.json", {"graph": {"n": 3, "edges": [[1, 2], [2, 3]]}, "d": 2,
                                     "points": [[0, 0], [1, 0], [1, 1.5]]})
        framework = handler.load_framework(path)
        assert framework.d == 2
        assert framework.realization.points[2].tolist() == [1.0, 1.5]
        graph, loaded = handler.load_input(path)
        assert graph.m == 2 and loaded is not None

    @pytest.mark.parametrize("document", [
        {"graph": {"n": 2, "edges": [[1, 2]]}, "points": [[0], [1]]},
        {"graph": {"n": 2, "edges": [[1, 2]]}, "d": 2, "points": [[0, 0]]},
        {"graph": {"n": 2, "edges": [[1, 2]]}, "d": 2, "points": [[0, 0], [1]]},
        {"graph": {"n": 2, "edges": [[1, 2]]}, "d": 0, "points": [[], []]},
    ])
    def test_invalid_framework(self, handler, write_json, document):
        with pytest.raises(GraphFormatError):
            handler.load_framework(write_json("bad.json", document))

    def test_graph_file_is_not_framework(self, handler, write_json):
        with pytest.raises(GraphFormatError):
            handler.load_framework(write_json("g.json", {"n": 2, "edges": [[1, 2]]}))


def test_dumps_json_is_stable():
    document = {"b": np.float64(1.5), "a": [np.int64(2), np.bool_(True)], "c": np.arange(2)}
    text = dumps_json(document)
    assert text == dumps_json(dict(reversed(list(document.items()))))
    assert json.loads(text) == {"a": [2, True], "b": 1.5, "c": [0, 1]}
    assert "\n" not in dumps_json(document, indent=None)


class TestSave:
    @pytest.fixture
    def frame(self):
        return pd.DataFrame({"d": [2, 2], "n": [4, 5], "ratio": [0.5, None]})

    def test_json(self, handler, tmp_path):
        path = tmp_path / "out" / "report.json"
        assert handler.save_json({"value": np.float64(2.0)}, str(path))
        assert json.loads(path.read_text(encoding="utf-8")) == {"value": 2.0}

    def test_csv(self, handler, frame, tmp_path):
        path = tmp_path / "sweep.csv"
        assert handler.save_table(frame, str(path), "csv")
        assert path.read_text(encoding="utf-8").splitlines()[0] == "d,n,ratio"

    def test_xlsx(self, handler, frame, tmp_path):
        path = tmp_path / "sweep.xlsx"
        assert handler.save_table(frame, str(path), "xlsx")
        loaded = pd.read_excel(path, sheet_name="sweep")
        assert loaded["n"].tolist() == [4, 5]

    def test_json_table(self, handler, frame, tmp_path):
        path = tmp_path / "sweep.json"
        assert handler.save_table(frame, str(path), "json")
        records = json.loads(path.read_text(encoding="utf-8"))
        assert records[1] == {"d": 2, "n": 5, "ratio": None}

    def test_empty_frame_is_rejected(self, handler, tmp_path):
        assert not handler.save_to_csv(pd.DataFrame(), str(tmp_path / "e.csv"))
        assert not handler.save_to_excel(pd.DataFrame(), str(tmp_path / "e.xlsx"))

    def test_unknown_format(self, handler, frame, tmp_path):
        assert not handler.save_table(frame, str(tmp_path / "x.parquet"), "parquet")


def test_table_records_converts_numpy_types():
    frame = pd.DataFrame({"ok": [True, False], "value": [1.5, np.nan]})
    assert table_records(frame) == [{"ok": True, "value": 1.5}, {"ok": False, "value": None}]
