# -*- coding: utf-8 -*-
"""
图刚性定量分析工具包 - 命令行入口
"""

import os
import sys

# 添加项目根目录到Python路径
project_root = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, project_root)

from src.ui.cli import main

if __name__ == "__main__":
    sys.exit(main())
