# -*- coding: utf-8 -*-
"""
ring-eval：Novikov 表达式求值
"""

from fractions import Fraction
from typing import List, Tuple

from ...errors import DocumentError, ExpressionParseError, SutureCalcError
from ...expr import evaluate, parse_element
from ...novikov import TruncatedSeries, format_element, truncate
from ..core.runner import failed_check, load_document
from ..schemas import CheckRecord, ExpressionDocument, ExpressionItem, JobSpec, Report

RELATION = "ring-arithmetic"


def _evaluate(index: int, location: str, item: ExpressionItem, cutoff: Fraction) -> CheckRecord:
    inputs = {"text": item.text, "cutoff": str(cutoff)}
    try:
        value = evaluate(item.text, cutoff)
    except ExpressionParseError as exc:
        raise DocumentError(exc.message, f"{location}:{exc.position}")
    except SutureCalcError as exc:
        return failed_check(index, item.text, RELATION, exc, inputs)

    if isinstance(value, TruncatedSeries):
        precision = min(value.cutoff, cutoff)
        element = value.element
    else:
        precision = cutoff
        element = value
    shown = truncate(element, precision).element
    result = {"value": format_element(shown), "precision": str(precision)}
    passed = True
    if item.expected is not None:
        try:
            expected = truncate(parse_element(item.expected), precision).element
        except ExpressionParseError as exc:
            raise DocumentError(exc.message, f"{location}.expected:{exc.position}")
        result["expected"] = format_element(expected)
        passed = expected == shown
    return CheckRecord(index=index, name=item.text, relation=RELATION, passed=passed, inputs=inputs, result=result)


def ring_eval(job: JobSpec) -> Report:
    cutoff = job.options.cutoff_fraction()
    items: List[Tuple[str, ExpressionItem, Fraction]] = [
        (f"expr[{i}]", ExpressionItem(text=text), cutoff) for i, text in enumerate(job.expressions)
    ]
    for path in job.inputs:
        document = load_document(path, ExpressionDocument)
        local = cutoff
        if document.cutoff is not None:
            try:
                local = Fraction(document.cutoff)
            except (ValueError, ZeroDivisionError):
                raise DocumentError(f"截断指数不是有理数: {document.cutoff!r}", f"{path}:cutoff")
        items.extend((f"{path}:expressions[{i}]", item, local) for i, item in enumerate(document.expressions))
    checks = [_evaluate(index, location, item, c) for index, (location, item, c) in enumerate(items)]
    return Report.from_checks("ring-eval", checks)
