# -*- coding: utf-8 -*-
"""
核心模块
"""

from .log import setup_logging
from .runner import case_generator, failed_check, load_document, run_cases

__all__ = ["setup_logging", "case_generator", "failed_check", "load_document", "run_cases"]
