# -*- coding: utf-8 -*-
"""
异常定义模块
刚性分析各模块共用的错误类型
"""


class RigidityToolError(Exception):
    """所有分析错误的基类"""


class GraphConstructionError(RigidityToolError, ValueError):
    """图构造失败（自环、端点越界）"""


class GraphFormatError(RigidityToolError, ValueError):
    """图/框架文件无法解析"""


class ParameterError(RigidityToolError, ValueError):
    """参数不满足前置条件"""


class DisconnectedGraphError(RigidityToolError):
    """需要连通图但输入不连通"""


class NumericError(RigidityToolError, ValueError):
    """矩阵包含非有限数值"""
