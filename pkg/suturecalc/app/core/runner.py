# -*- coding: utf-8 -*-
"""
文档读取与批量执行
"""

import json
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from typing import Callable, List, Type, TypeVar

from loguru import logger
from pydantic import ValidationError

from ...errors import DocumentError, SutureCalcError
from ...generators import CaseGenerator
from ..schemas.common import CheckRecord, Document

D = TypeVar("D", bound=Document)
CaseFunc = Callable[[int, int], CheckRecord]


def load_document(path: str, model: Type[D]) -> D:
    """
    读取并校验 JSON 文档

    Raises:
        DocumentError: location 为 "文件:行:列" 或 "文件:字段路径"
    """
    file_path = Path(path)
    try:
        text = file_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"无法读取文件: {exc.strerror}", str(path))
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"JSON 语法错误: {exc.msg}", f"{path}:{exc.lineno}:{exc.colno}")
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise DocumentError(first["msg"], f"{path}:{field}")


def case_generator(seed: int, index: int) -> CaseGenerator:
    """每个用例独立的随机源，结果与执行顺序无关"""
    return CaseGenerator(seed * 1_000_003 + index)


def failed_check(index: int, name: str, relation: str, exc: SutureCalcError, inputs=None) -> CheckRecord:
    return CheckRecord(
        index=index, name=name, relation=relation, passed=False,
        inputs=inputs or {}, result=exc.to_dict(),
    )


def run_cases(func: CaseFunc, count: int, seed: int, workers: int = 1) -> List[CheckRecord]:
    """
    执行 count 个随机用例

    Args:
        func: 模块级函数 func(seed, index)，多进程时需可序列化
        workers: 大于 1 时使用进程池

    Returns:
        按用例编号排序的检查结果
    """
    if workers <= 1:
        return [func(seed, index) for index in range(count)]

    logger.info(f"使用 {workers} 个进程执行 {count} 个用例")
    results = {}
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(func, seed, index): index for index in range(count)}
        for future in as_completed(futures):
            results[futures[future]] = future.result()
    return [results[index] for index in range(count)]
