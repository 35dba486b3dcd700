# -*- coding: utf-8 -*-
"""
配置管理测试
"""

import json

from src.core.gac import OptimizerConfig
from src.utils.config import DEFAULT_SETTINGS, ConfigManager


def test_creates_default_settings(tmp_path):
    config_dir = tmp_path / "config"
    manager = ConfigManager(str(config_dir))
    assert (config_dir / "settings.json").exists()
    assert manager.load_settings() == DEFAULT_SETTINGS


def test_partial_settings_are_merged(tmp_path):
    (tmp_path / "settings.json").write_text(
        json.dumps({"optimizer": {"restarts": 3}, "generic_trials": 5}), encoding="utf-8")
    manager = ConfigManager(str(tmp_path))
    settings = manager.load_settings()
    assert settings["optimizer"]["restarts"] == 3
    assert settings["optimizer"]["iterations"] == 400
    assert settings["generic_trials"] == 5
    assert OptimizerConfig.from_settings(manager.optimizer_settings()).restarts == 3


def test_update_and_get(tmp_path):
    manager = ConfigManager(str(tmp_path))
    manager.update_setting("log_level", "DEBUG")
    assert manager.get_setting("log_level") == "DEBUG"
    assert manager.get_setting("missing", 42) == 42
    assert manager.tolerance("rank") == 1e-9


def test_corrupted_settings_fall_back_to_defaults(tmp_path):
    (tmp_path / "settings.json").write_text("{not json", encoding="utf-8")
    manager = ConfigManager(str(tmp_path))
    assert manager.load_settings() == DEFAULT_SETTINGS


def test_defaults_are_not_mutated(tmp_path):
    manager = ConfigManager(str(tmp_path))
    settings = manager.load_settings()
    settings["optimizer"]["restarts"] = 99
    assert DEFAULT_SETTINGS["optimizer"]["restarts"] == 16


def test_dotted_keys(tmp_path):
    manager = ConfigManager(str(tmp_path))
    assert manager.update_setting("optimizer.restarts", 4)
    assert manager.get_setting("optimizer.restarts") == 4
    assert manager.get_setting("optimizer.iterations") == 400
    assert manager.get_setting("tolerances.missing", "x") == "x"
    assert manager.get_setting("log_level.deeper") is None
