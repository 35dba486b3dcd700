# -*- coding: utf-8 -*-
"""
图刚性定量分析工具包

core 为计算核心（图、图族、刚性、a_d 估计、界与扫描），utils 为配置和日志，
ui 为命令行界面与核验套件
"""

__version__ = "1.0.0"
__description__ = "图刚性定量分析：广义代数连通度、d-刚性比与直径/点连通度界"

__all__ = ['__version__', '__description__']
