# -*- coding: utf-8 -*-
"""
映射类群相关命令：mcg-factor / mcg-act / surgery-build
"""

from typing import Dict, List

from ...errors import SutureCalcError
from ...mcg import (
    CurveClass,
    SurfaceModel,
    TwistWord,
    factor_symplectic,
    identity_matrix,
    is_identity_on_homology,
    is_symplectic,
    matrices_equal,
    matrix_key,
    symplectic_inverse,
    transport_curve,
    twist_matrix,
    word_action,
)
from ...surgery import (
    SurgeryPresentation,
    build_surgery,
    cancellation_presentation,
    eliminate_negative_twists,
    presentation_action,
    validate_presentation,
)
from ..core.runner import case_generator, failed_check, load_document, run_cases
from ..schemas import ActDocument, CheckRecord, FactorDocument, JobSpec, Report, SurgeryDocument


def word_payload(word: TwistWord) -> List[Dict]:
    return [{"curve": l.curve.label(), "vector": list(l.curve.vector), "sign": l.sign} for l in word.letters]


def presentation_payload(presentation: SurgeryPresentation) -> List[Dict]:
    return [
        {
            "curve": e.curve.label(),
            "height": str(e.height),
            "framing": e.framing,
            "partner": None if e.cancelling_partner is None else str(e.cancelling_partner),
        }
        for e in presentation.entries
    ]


def _matrix(matrix) -> List[List[int]]:
    return [list(row) for row in matrix_key(matrix)]


# ==================== mcg-factor ====================

def _factor_case(seed: int, index: int) -> CheckRecord:
    """随机 30 字母扭转字的作用，分别做带符号与只用正扭转的分解"""
    generator = case_generator(seed, index)
    genus = 3 if index % 3 == 2 else 2
    matrix = generator.random_symplectic(genus, 30)
    inputs = {"genus": genus, "matrix": _matrix(matrix)}
    try:
        signed = factor_symplectic(matrix)
        positive = factor_symplectic(matrix, positive_only=True)
    except SutureCalcError as exc:
        return failed_check(index, "random-symplectic", "symplectic-factorization", exc, inputs)
    passed = (
        matrices_equal(word_action(signed), matrix)
        and matrices_equal(word_action(positive), matrix)
        and positive.is_positive()
    )
    return CheckRecord(
        index=index, name="random-symplectic", relation="symplectic-factorization", passed=passed,
        inputs=inputs, result={"signed_length": len(signed), "positive_length": len(positive)},
    )


def mcg_factor(job: JobSpec) -> Report:
    if not job.inputs:
        checks = run_cases(_factor_case, job.options.cases, job.options.seed, job.options.workers)
        return Report.from_checks("mcg-factor", checks)

    checks = []
    for path in job.inputs:
        document = load_document(path, FactorDocument)
        for i, matrix in enumerate(document.arrays()):
            name = f"{path}:matrices[{i}]"
            surface = SurfaceModel(matrix.shape[0] // 2)
            inputs = {"matrix": _matrix(matrix), "positive_only": document.positive_only}
            try:
                generators = None
                if document.generators:
                    generators = [CurveClass(surface, tuple(v)) for v in document.generators]
                word = factor_symplectic(matrix, generators, document.positive_only, surface)
            except SutureCalcError as exc:
                checks.append(failed_check(len(checks), name, "symplectic-factorization", exc, inputs))
                continue
            checks.append(CheckRecord(
                index=len(checks), name=name, relation="symplectic-factorization",
                passed=matrices_equal(word_action(word), matrix),
                inputs=inputs, result={"word": word_payload(word), "length": len(word)},
            ))
    return Report.from_checks("mcg-factor", checks)


# ==================== mcg-act ====================

def _conjugation_case(seed: int, index: int) -> CheckRecord:
    """twist(M·c, s) = M·twist(c, s)·M⁻¹"""
    generator = case_generator(seed, index)
    surface = SurfaceModel(2 + index % 2)
    matrix = generator.random_symplectic(surface.genus)
    curve = generator.random_primitive(surface)
    sign = generator.rng.choice((1, -1))
    left = twist_matrix(transport_curve(matrix, curve), sign)
    right = matrix.dot(twist_matrix(curve, sign)).dot(symplectic_inverse(matrix))
    return CheckRecord(
        index=index, name="twist-conjugation", relation="twist-conjugation",
        passed=matrices_equal(left, right),
        inputs={"matrix": _matrix(matrix), "curve": list(curve.vector), "sign": sign},
        result={"twist": _matrix(left)},
    )


def mcg_act(job: JobSpec) -> Report:
    if not job.inputs:
        checks = run_cases(_conjugation_case, job.options.cases, job.options.seed, job.options.workers)
        return Report.from_checks("mcg-act", checks)

    checks = []
    for index, path in enumerate(job.inputs):
        document = load_document(path, ActDocument)
        try:
            word = document.word.build()
        except SutureCalcError as exc:
            checks.append(failed_check(index, path, "homology-action", exc))
            continue
        action = word_action(word)
        images = [[int(x) for x in action.dot(CurveClass(word.surface, tuple(c)).array())] for c in document.curves]
        checks.append(CheckRecord(
            index=index, name=path, relation="homology-action",
            passed=is_symplectic(action),
            inputs={"word": word_payload(word)},
            result={"matrix": _matrix(action), "images": images},
        ))
    return Report.from_checks("mcg-act", checks)


# ==================== surgery-build ====================

def _surgery_checks(word: TwistWord, split=None) -> Dict:
    presentation = build_surgery(word, split)
    problems = validate_presentation(presentation)
    cancelled = cancellation_presentation(word)
    upper, lower = presentation_action(cancelled)
    n = word.surface.dimension
    cancels = matrices_equal(upper, identity_matrix(n)) and matrices_equal(lower, identity_matrix(n))
    return {
        "presentation": presentation_payload(presentation),
        "key": presentation.key(),
        "problems": problems,
        "cancellation_identity": cancels,
        "cancellation_problems": validate_presentation(cancelled),
    }


def _surgery_case(seed: int, index: int) -> CheckRecord:
    """负扭转消去：正替换字与原字之逆的复合在同调上为恒等"""
    generator = case_generator(seed, index)
    surface = SurfaceModel(2 + index % 2)
    word = generator.random_word(surface, 6)
    inputs = {"word": word_payload(word)}
    try:
        positive = eliminate_negative_twists(word)
        result = _surgery_checks(word)
    except SutureCalcError as exc:
        return failed_check(index, "negative-twist-elimination", "negative-twist-elimination", exc, inputs)
    composite_identity = is_identity_on_homology(positive + word.inverse())
    result.update({"positive_length": len(positive), "composite_identity": composite_identity})
    passed = (
        composite_identity and positive.is_positive() and not result["problems"]
        and result["cancellation_identity"] and not result["cancellation_problems"]
    )
    return CheckRecord(
        index=index, name="negative-twist-elimination", relation="negative-twist-elimination",
        passed=passed, inputs=inputs, result=result,
    )


def surgery_build(job: JobSpec) -> Report:
    if not job.inputs:
        checks = run_cases(_surgery_case, job.options.cases, job.options.seed, job.options.workers)
        return Report.from_checks("surgery-build", checks)

    checks = []
    for index, path in enumerate(job.inputs):
        document = load_document(path, SurgeryDocument)
        try:
            word = document.word.build()
            result = _surgery_checks(word, document.split)
        except (SutureCalcError, ValueError) as exc:
            error = exc if isinstance(exc, SutureCalcError) else SutureCalcError(str(exc))
            checks.append(failed_check(index, path, "surgery-presentation", error))
            continue
        checks.append(CheckRecord(
            index=index, name=path, relation="surgery-presentation",
            passed=not result["problems"] and result["cancellation_identity"],
            inputs={"word": word_payload(word), "split": document.split},
            result=result,
        ))
    return Report.from_checks("surgery-build", checks)
