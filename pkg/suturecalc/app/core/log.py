# -*- coding: utf-8 -*-
"""
日志配置
控制台输出到 stderr，报告只写 stdout，两者互不混杂
"""

import sys
from pathlib import Path

from loguru import logger

from ...config import LoggingSettings


LOG_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{line} - {message}"


def setup_logging(cfg: LoggingSettings) -> None:
    """
    根据配置重新设置日志输出，可重复调用

    Args:
        cfg: 日志配置（级别、是否输出到控制台、日志目录、保留天数、单文件大小）
    """
    logger.remove()
    level = cfg.level.upper()

    if cfg.console_output:
        logger.add(sys.stderr, level=level, format=LOG_FORMAT)

    if cfg.log_dir:
        log_dir = Path(cfg.log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        logger.add(
            log_dir / "suturecalc.log",
            level=level,
            format=LOG_FORMAT,
            rotation=f"{cfg.max_file_size_mb} MB",
            retention=f"{cfg.retention_days} days",
            encoding="utf-8",
        )

    logger.debug(f"日志系统初始化完成 (级别: {level})")
