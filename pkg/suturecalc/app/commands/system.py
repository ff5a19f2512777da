# -*- coding: utf-8 -*-
"""
传递系统相关命令：system-validate / system-quotient / system-tensor / system-flatten
"""

from functools import partial
from typing import List

from loguru import logger

from ...errors import SutureCalcError
from ...generators import inject_defect, random_system
from ...rings import RingKind, RingSpec, UnitGroup
from ...transys import (
    TransitiveSystem,
    flatten_system_of_systems,
    quotient_module,
    rebase_quotient,
    tensor_system,
    validate_system,
    validate_system_of_systems,
)
from ..core.runner import case_generator, failed_check, load_document, run_cases
from ..schemas import CheckRecord, JobSpec, Report, SystemDocument, TowerDocument


def _maps(system: TransitiveSystem):
    return {f"{a}->{b}": g.rep.formatted() for (a, b), g in system.maps.items()}


# ==================== system-validate ====================

def _validate_case(group: UnitGroup, seed: int, index: int) -> CheckRecord:
    """偶数编号为合法系统，奇数编号注入一处缺陷"""
    generator = case_generator(seed, index)
    defective = index % 2 == 1
    system = random_system(generator, size=4, rank=2, ring=RingSpec(RingKind.INTEGERS, group))
    if defective:
        system = inject_defect(generator, system)
    violations = validate_system(system)
    return CheckRecord(
        index=index,
        name="generated-system",
        relation="transitive-system-axioms",
        passed=(not violations) == (not defective),
        inputs={"defective": defective, "maps": _maps(system)},
        result={"violations": [str(v) for v in violations]},
    )


def system_validate(job: JobSpec) -> Report:
    if not job.inputs:
        group = job.options.unit_group or UnitGroup.SIGNS
        checks = run_cases(partial(_validate_case, group), job.options.cases, job.options.seed, job.options.workers)
        return Report.from_checks("system-validate", checks)

    checks = []
    for index, path in enumerate(job.inputs):
        document = load_document(path, SystemDocument)
        try:
            system = document.system.build(f"{path}:system")
        except SutureCalcError as exc:
            checks.append(failed_check(index, path, "transitive-system-axioms", exc))
            continue
        violations = validate_system(system)
        checks.append(CheckRecord(
            index=index,
            name=path,
            relation="transitive-system-axioms",
            passed=not violations,
            inputs={"indices": list(system.indices), "ring": str(system.ring.with_group(system.unit_group))},
            result={"violations": [str(v) for v in violations]},
        ))
    return Report.from_checks("system-validate", checks)


# ==================== system-quotient ====================

def system_quotient(job: JobSpec) -> Report:
    """在每个指标处重新取基，识别族经传递后应与直接构造的一致"""
    checks: List[CheckRecord] = []
    for path in job.inputs:
        document = load_document(path, SystemDocument)
        try:
            system = document.system.build(f"{path}:system")
            base = document.system.base or system.indices[0]
            quotient = quotient_module(system, base)
        except SutureCalcError as exc:
            checks.append(failed_check(len(checks), path, "quotient-base-independence", exc))
            continue
        for new_base in system.indices:
            rebased = rebase_quotient(quotient, system, new_base)
            direct = quotient_module(system, new_base)
            agree = all(
                rebased.identifications[a].matrix == direct.identifications[a].matrix for a in system.indices
            )
            checks.append(CheckRecord(
                index=len(checks),
                name=f"{path}@{new_base}",
                relation="quotient-base-independence",
                passed=agree,
                inputs={"base": base, "new_base": new_base},
                result={
                    "rank": direct.module.rank,
                    "identifications": {a: h.formatted() for a, h in direct.identifications.items()},
                },
            ))
    return Report.from_checks("system-quotient", checks)


# ==================== system-tensor ====================

def system_tensor(job: JobSpec) -> Report:
    target = RingSpec(job.options.ring or RingKind.RATIONAL_FIELD, UnitGroup.FULL_UNITS)
    checks = []
    for index, path in enumerate(job.inputs):
        document = load_document(path, SystemDocument)
        try:
            tensored = tensor_system(document.system.build(f"{path}:system"), target)
        except SutureCalcError as exc:
            checks.append(failed_check(index, path, "tensor-functor", exc))
            continue
        violations = validate_system(tensored)
        checks.append(CheckRecord(
            index=index,
            name=path,
            relation="tensor-functor",
            passed=not violations,
            inputs={"target": str(target)},
            result={"maps": _maps(tensored), "violations": [str(v) for v in violations]},
        ))
    return Report.from_checks("system-tensor", checks)


# ==================== system-flatten ====================

def system_flatten(job: JobSpec) -> Report:
    checks = []
    for path in job.inputs:
        document = load_document(path, TowerDocument)
        try:
            tower = document.build()
        except SutureCalcError as exc:
            checks.append(failed_check(len(checks), path, "outer-cocycle", exc))
            continue
        violations = validate_system_of_systems(tower)
        checks.append(CheckRecord(
            index=len(checks),
            name=f"{path}:outer",
            relation="outer-cocycle",
            passed=not violations,
            inputs={"outer": list(tower.outer_indices)},
            result={"violations": [str(v) for v in violations]},
        ))
        if violations:
            continue
        flat = flatten_system_of_systems(tower, check=False)
        flat_violations = validate_system(flat)
        logger.info(f"{path}: 展平为 {len(flat.indices)} 个指标")
        checks.append(CheckRecord(
            index=len(checks),
            name=f"{path}:flat",
            relation="transitive-system-axioms",
            passed=not flat_violations,
            inputs={"outer": list(tower.outer_indices)},
            result={"indices": list(flat.indices), "violations": [str(v) for v in flat_violations]},
        ))
    return Report.from_checks("system-flatten", checks)
