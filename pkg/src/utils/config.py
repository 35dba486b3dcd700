# -*- coding: utf-8 -*-
"""
配置管理工具模块
处理优化器默认参数、数值容差等设置的保存和加载
"""

import copy
import json
import os
from typing import Any, Dict, Optional

from src.utils.logger import get_logger

logger = get_logger("Config")

# 默认设置
DEFAULT_SETTINGS: Dict[str, Any] = {
    "optimizer": {
        "restarts": 16,
        "iterations": 400,
        "seed": 0,
        "step_init": 0.3,
        "step_decay": 0.9,
        "injectivity_floor": 1e-6,
        "workers": 1,
    },
    "tolerances": {
        "rank": 1e-9,
        "cluster": 1e-7,
        "coincidence": 1e-12,
        "bound_relative": 1e-9,
    },
    "generic_trials": 3,
    "log_level": "INFO",
    "log_to_file": False,
}


class ConfigManager:
    """
    配置管理器
    负责 settings.json 的保存、加载和默认值合并
    """

    def __init__(self, config_dir: Optional[str] = None):
        if config_dir is None:
            # 开发环境，使用项目目录
            config_dir = os.path.join(
                os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))), "config")
        self.config_dir = config_dir
        self.settings_file = os.path.join(self.config_dir, "settings.json")

        # 确保配置目录存在
        if not os.path.exists(self.config_dir):
            os.makedirs(self.config_dir)
            logger.info(f"创建配置目录: {self.config_dir}")

        self._init_default_config()

    def _init_default_config(self):
        """
        初始化默认配置
        """
        if not os.path.exists(self.settings_file):
            self.save_settings(copy.deepcopy(DEFAULT_SETTINGS))

    def load_settings(self) -> Dict[str, Any]:
        """
        加载用户设置，缺失的键用默认值补齐

        Returns:
            Dict[str, Any]: 设置字典
        """
        settings = copy.deepcopy(DEFAULT_SETTINGS)
        try:
            with open(self.settings_file, 'r', encoding='utf-8') as f:
                stored = json.load(f)
        except Exception as e:
            logger.error(f"加载设置失败: {e}")
            return settings

        for key, value in stored.items():
            if isinstance(value, dict) and isinstance(settings.get(key), dict):
                settings[key].update(value)
            else:
                settings[key] = value
        logger.debug("成功加载用户设置")
        return settings

    def save_settings(self, settings: Dict[str, Any]) -> bool:
        """
        保存用户设置

        Args:
            settings: 设置字典

        Returns:
            bool: 保存是否成功
        """
        try:
            with open(self.settings_file, 'w', encoding='utf-8') as f:
                json.dump(settings, f, ensure_ascii=False, indent=2, sort_keys=True)
            logger.debug("成功保存用户设置")
            return True
        except Exception as e:
            logger.error(f"保存设置失败: {e}")
            return False

    def update_setting(self, key: str, value: Any) -> bool:
        """
        更新单个设置项，支持点号路径，如 "optimizer.restarts"

        Returns:
            bool: 保存是否成功
        """
        settings = self.load_settings()
        *parents, leaf = key.split(".")
        node = settings
        for part in parents:
            node = node.setdefault(part, {})
        node[leaf] = value
        logger.info(f"更新设置: {key} = {value}")
        return self.save_settings(settings)

    def get_setting(self, key: str, default=None):
        """按点号路径读取设置，缺失时返回 default"""
        node: Any = self.load_settings()
        for part in key.split("."):
            if not isinstance(node, dict) or part not in node:
                return default
            node = node[part]
        return node

    def optimizer_settings(self) -> Dict[str, Any]:
        """获取优化器参数"""
        return dict(self.load_settings()["optimizer"])

    def tolerance(self, name: str) -> float:
        """获取指定名称的数值容差"""
        return float(self.load_settings()["tolerances"][name])
