# -*- coding: utf-8 -*-
"""
核心功能模块
包含图、图族、谱计算、刚性、广义代数连通度、界与扫描等核心功能
"""

from .exceptions import (DisconnectedGraphError, GraphConstructionError, GraphFormatError,
                         NumericError, ParameterError, RigidityToolError)
from .graph import Graph, SpectralSummary, build_graph
from .families import FamilySpec, generate
from .rigidity import Framework, Realization, RigidityReport
from .gac import GacEstimate, KnownValue, OptimizerConfig, estimate_gac
from .bounds import BoundReport, BoundWitness
from .file_handler import FileHandler

__all__ = [
    'Graph',
    'SpectralSummary',
    'build_graph',
    'FamilySpec',
    'generate',
    'Framework',
    'Realization',
    'RigidityReport',
    'GacEstimate',
    'KnownValue',
    'OptimizerConfig',
    'estimate_gac',
    'BoundReport',
    'BoundWitness',
    'FileHandler',
    'RigidityToolError',
    'GraphConstructionError',
    'GraphFormatError',
    'ParameterError',
    'DisconnectedGraphError',
    'NumericError'
]
