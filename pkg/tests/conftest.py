# -*- coding: utf-8 -*-
"""测试公共夹具"""
import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from suturecalc.generators import CaseGenerator

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def generator():
    return CaseGenerator(seed=7)


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def write_json(tmp_path):
    """把对象写成 JSON 文件并返回路径字符串"""
    def _write(name: str, payload) -> str:
        path = tmp_path / name
        text = payload if isinstance(payload, str) else json.dumps(payload, ensure_ascii=False)
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write
