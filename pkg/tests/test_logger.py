# -*- coding: utf-8 -*-
"""
日志工具测试
"""

import logging

import pytest

from src.utils.logger import (LogExecutionTime, LoggerMixin, get_logger, log_execution_time,
                              resolve_level, setup_logger)


class Worker(LoggerMixin):
    pass


def test_mixin_uses_class_name(caplog):
    worker = Worker()
    assert worker.logger.name == "Worker"
    with caplog.at_level(logging.INFO):
        worker.log_info("开始")
        worker.log_error("失败", ValueError("坏值"))
    assert "开始" in caplog.text
    assert "失败: 坏值" in caplog.text


def test_decorator_logs_duration(caplog):
    @log_execution_time("Timing")
    def add(a, b):
        return a + b

    with caplog.at_level(logging.INFO, logger="Timing"):
        assert add(1, 2) == 3
    assert "性能统计: add" in caplog.text


def test_decorator_reraises(caplog):
    @log_execution_time("Timing")
    def fail():
        raise RuntimeError("boom")

    with pytest.raises(RuntimeError):
        fail()
    assert "执行失败" in caplog.text


def test_context_manager(caplog):
    logger = get_logger("Block")
    with caplog.at_level(logging.INFO, logger="Block"):
        with LogExecutionTime(logger, "计算"):
            pass
        with pytest.raises(ValueError):
            with LogExecutionTime(logger, "出错"):
                raise ValueError("x")
    assert "性能统计: 计算" in caplog.text
    assert "执行失败: 出错" in caplog.text


def test_setup_logger_writes_file(tmp_path):
    root = logging.getLogger()
    saved_handlers, saved_level = root.handlers[:], root.level
    try:
        setup_logger(logging.INFO, log_to_file=True, log_dir=str(tmp_path / "logs"))
        get_logger("File").info("写入文件")
        for handler in root.handlers:
            handler.flush()
        files = list((tmp_path / "logs").glob("rigidity_*.log"))
        assert len(files) == 1
        assert "写入文件" in files[0].read_text(encoding="utf-8")
    finally:
        for handler in root.handlers[:]:
            root.removeHandler(handler)
            handler.close()
        for handler in saved_handlers:
            root.addHandler(handler)
        root.setLevel(saved_level)


@pytest.mark.parametrize("level, expected", [
    ("debug", logging.DEBUG), ("WARNING", logging.WARNING), (logging.ERROR, logging.ERROR),
    ("verbose", logging.INFO), (None, logging.INFO),
])
def test_resolve_level(level, expected):
    assert resolve_level(level) == expected


def test_context_manager_records_duration():
    with LogExecutionTime(get_logger("Block"), "计时") as timer:
        pass
    assert timer.duration is not None and timer.duration >= 0.0
