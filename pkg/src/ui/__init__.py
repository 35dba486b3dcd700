# -*- coding: utf-8 -*-
"""
用户界面模块
包含命令行入口和不变量核验套件
"""

from .cli import AnalysisRequest, build_parser, main
from .verify_suite import CheckResult, run_suite

__all__ = [
    'AnalysisRequest',
    'build_parser',
    'main',
    'CheckResult',
    'run_suite'
]
