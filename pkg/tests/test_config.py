# -*- coding: utf-8 -*-
"""配置来源优先级与日志输出"""
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from loguru import logger
from pydantic import ValidationError

sys.path.insert(0, str(Path(__file__).parent.parent))

from suturecalc.app.core.log import setup_logging
from suturecalc.config import LoggingSettings, Settings, get_settings


def test_yaml_defaults():
    cfg = get_settings()
    assert cfg.cutoff_fraction() == Fraction(50)
    assert cfg.runner.cases == 200
    assert cfg.factorization.backtrack_depth == 2


def test_environment_overrides_yaml(monkeypatch):
    monkeypatch.setenv("SUTURECALC_NOVIKOV__CUTOFF", "15/2")
    monkeypatch.setenv("SUTURECALC_RUNNER__SEED", "42")
    cfg = get_settings()
    assert cfg.cutoff_fraction() == Fraction(15, 2)
    assert cfg.runner.seed == 42


def test_init_overrides_environment(monkeypatch):
    monkeypatch.setenv("SUTURECALC_NOVIKOV__CUTOFF", "15/2")
    assert Settings(novikov={"cutoff": 7}).cutoff_fraction() == Fraction(7)


def test_invalid_values_rejected():
    with pytest.raises(ValidationError):
        Settings(novikov={"cutoff": "abc"})
    with pytest.raises(ValidationError):
        Settings(runner={"max_workers": 0})


def test_file_sink(tmp_path):
    log_dir = tmp_path / "logs"
    setup_logging(LoggingSettings(level="INFO", console_output=False, log_dir=str(log_dir)))
    logger.info("写入日志文件")
    setup_logging(LoggingSettings(level="WARNING", console_output=False))
    text = (log_dir / "suturecalc.log").read_text(encoding="utf-8")
    assert "写入日志文件" in text
