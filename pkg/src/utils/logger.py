# -*- coding: utf-8 -*-
"""
日志工具
统一的日志格式、按组件命名的日志记录器以及耗时统计
"""

import functools
import logging
import os
import sys
import time
from datetime import datetime
from typing import Optional, Union

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

LOG_DIR = 'logs'
LOG_FILE_PREFIX = 'rigidity'


def resolve_level(level: Union[int, str, None], default: int = logging.INFO) -> int:
    """把 "DEBUG"/"info" 之类的级别名或整数级别转换为 logging 级别"""
    if isinstance(level, int):
        return level
    if isinstance(level, str):
        value = logging.getLevelName(level.strip().upper())
        if isinstance(value, int):
            return value
    return default


def setup_logger(log_level: Union[int, str] = logging.INFO, log_to_file: bool = False,
                 log_dir: str = LOG_DIR) -> logging.Logger:
    """
    配置根日志记录器

    控制台输出固定写到标准错误，标准输出只留给报告；log_to_file 为真时
    另在 log_dir 下创建带时间戳的日志文件

    Args:
        log_level: 日志级别（整数或级别名）
        log_to_file: 是否同时写文件
        log_dir: 日志文件目录

    Returns:
        logging.Logger: 根日志记录器
    """
    level = resolve_level(log_level)
    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    formatter = logging.Formatter(LOG_FORMAT, DATE_FORMAT)
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    if log_to_file:
        try:
            os.makedirs(log_dir, exist_ok=True)
            stamp = datetime.now().strftime('%Y%m%d_%H%M%S')
            log_path = os.path.join(log_dir, f"{LOG_FILE_PREFIX}_{stamp}.log")
            file_handler = logging.FileHandler(log_path, encoding='utf-8')
            file_handler.setLevel(level)
            file_handler.setFormatter(formatter)
            root_logger.addHandler(file_handler)
            root_logger.info(f"日志文件: {log_path}")
        except OSError as e:
            root_logger.error(f"创建日志文件失败: {e}")

    root_logger.debug(f"日志级别: {logging.getLevelName(level)}")
    return root_logger


def get_logger(name: str) -> logging.Logger:
    """按组件名获取日志记录器，如 get_logger("GAC")"""
    return logging.getLogger(name)


def log_exception(logger: logging.Logger, message: str, exception: Exception):
    """记录异常及其堆栈"""
    logger.error(f"{message}: {exception}", exc_info=True)


def log_performance(logger: logging.Logger, operation: str, duration: float):
    logger.info(f"性能统计: {operation} 耗时 {duration:.2f} 秒")


class LoggerMixin:
    """
    日志混入类
    以类名作为日志记录器名称
    """

    @property
    def logger(self) -> logging.Logger:
        if not hasattr(self, '_logger'):
            self._logger = get_logger(type(self).__name__)
        return self._logger

    def log_info(self, message: str):
        self.logger.info(message)

    def log_warning(self, message: str):
        self.logger.warning(message)

    def log_error(self, message: str, exception: Optional[Exception] = None):
        if exception is not None:
            log_exception(self.logger, message, exception)
        else:
            self.logger.error(message)

    def log_debug(self, message: str):
        self.logger.debug(message)


def log_execution_time(logger_name: Optional[str] = None):
    """
    装饰器：记录函数耗时，异常时记录失败并原样抛出

    Args:
        logger_name: 日志记录器名称，默认取函数所在模块名
    """
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            logger = get_logger(logger_name or func.__module__)
            with LogExecutionTime(logger, func.__name__, failure_label="函数"):
                return func(*args, **kwargs)
        return wrapper
    return decorator


class LogExecutionTime:
    """
    上下文管理器：记录代码块耗时

    退出后 duration 保存实际耗时（秒）
    """

    def __init__(self, logger: logging.Logger, operation_name: str, failure_label: str = ""):
        self.logger = logger
        self.operation_name = operation_name
        self.failure_label = failure_label
        self.start_time: Optional[float] = None
        self.duration: Optional[float] = None

    def __enter__(self):
        self.start_time = time.perf_counter()
        self.logger.debug(f"开始执行: {self.operation_name}")
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.duration = time.perf_counter() - self.start_time
        if exc_type is None:
            log_performance(self.logger, self.operation_name, self.duration)
        elif self.failure_label:
            self.logger.error(f"{self.failure_label} {self.operation_name} 执行失败"
                              f"（耗时 {self.duration:.2f} 秒）: {exc_val}")
        else:
            self.logger.error(f"执行失败: {self.operation_name}（耗时 {self.duration:.2f} 秒）")
        return False
