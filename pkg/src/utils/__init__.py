# -*- coding: utf-8 -*-
"""
工具模块
settings.json 配置管理与统一日志
"""

from .config import DEFAULT_SETTINGS, ConfigManager
from .logger import LogExecutionTime, LoggerMixin, get_logger, resolve_level, setup_logger

__all__ = [
    'DEFAULT_SETTINGS',
    'ConfigManager',
    'LogExecutionTime',
    'LoggerMixin',
    'get_logger',
    'resolve_level',
    'setup_logger'
]
