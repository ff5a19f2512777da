# -*- coding: utf-8 -*-
"""
khm-check：随机嵌套偏序上的外层公理与加细无关性
"""

from ...errors import SutureCalcError
from ...generators import random_knot_model
from ...knots import build_khm_tower, flatten_khm, refinement_independent
from ...transys import validate_system, validate_system_of_systems
from ..core.runner import case_generator, failed_check, run_cases
from ..schemas import CheckRecord, JobSpec, Report


def _khm_case(seed: int, index: int) -> CheckRecord:
    generator = case_generator(seed, index)
    try:
        model, names = random_knot_model(generator, size=2 + index % 5, rank=2)
        first, second = generator.rng.sample(names, 2)
        independent = refinement_independent(model, first, second)
        tags = sorted(model.systems)
        outer = validate_system_of_systems(build_khm_tower(model, tags))
        flat_violations = validate_system(flatten_khm(model, tags)) if not outer else []
    except SutureCalcError as exc:
        return failed_check(index, f"knot-model-{index}", "khm-refinement-independence", exc)
    nested = sorted(
        f"{inner}⊂{outer_tag}" for inner in names for outer_tag in names
        if inner != outer_tag and model.poset.is_nested(inner, outer_tag)
    )
    return CheckRecord(
        index=index,
        name=f"{first}|{second}",
        relation="khm-refinement-independence",
        passed=independent and not outer and not flat_violations,
        inputs={"tags": names, "nesting": nested},
        result={
            "refinement_independent": independent,
            "outer_violations": [str(v) for v in outer],
            "flat_violations": [str(v) for v in flat_violations],
            "flat_tags": tags,
        },
    )


def khm_check(job: JobSpec) -> Report:
    checks = run_cases(_khm_case, job.options.cases, job.options.seed, job.options.workers)
    return Report.from_checks("khm-check", checks)
