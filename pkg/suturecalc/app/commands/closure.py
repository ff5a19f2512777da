# -*- coding: utf-8 -*-
"""
闭包演算相关命令：psi-build / coherence / rank1-eval
"""

from functools import partial
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from ...closures import to_array
from ...errors import SutureCalcError
from ...generators import (
    CaseGenerator,
    ClosurePool,
    FramedClosure,
    closure_pool,
    random_assignment,
    random_diffeomorphism,
    random_unit,
    twisted,
)
from ...morphisms import (
    MorphismWord,
    SameGenusStep,
    diffeo_map,
    psi_general,
    psi_genus_step,
    psi_same_genus,
    unit_scalar,
    xi_comparison,
)
from ...rank_one import DEFAULT_RING, evaluate_rank_one, rank_one_agree
from ...rewriting import check_termination, coherence_check, local_confluence_counterexample, normal_form
from ...rings import RingKind, RingSpec, UnitGroup
from ..core.runner import case_generator, failed_check, load_document, run_cases
from ..schemas import AssignmentDocument, CheckRecord, JobSpec, PsiDocument, Report

# (名称, 关系, 第一个字, 第二个字)
Pair = Tuple[str, str, MorphismWord, MorphismWord]


def describe(word: MorphismWord) -> List[str]:
    return [letter.describe() for letter in word.letters]


# ==================== 相干对 ====================

def _transitivity(generator: CaseGenerator) -> Pair:
    pool = ClosurePool(generator)
    a, b, c = (pool.add(generator.closure(genus=2)) for _ in range(3))
    direct = psi_general(a.descriptor, c.descriptor, pool.path([a.id, c.id]))
    via = psi_general(a.descriptor, c.descriptor, pool.path([a.id, b.id, c.id]))
    return "same-genus-triple", "psi-transitivity", direct, via


def _choice(generator: CaseGenerator) -> Pair:
    """另取一个 ψ，并改用只含正扭转的分解"""
    s, t = generator.closure(genus=2), generator.closure(genus=2)
    gluing = generator.gluing(s, t)
    other = gluing.with_psi(
        generator.psi_choice(to_array(gluing.phi_minus), s.descriptor.eta, t.descriptor.eta)
    )
    first = psi_same_genus(s.descriptor, t.descriptor, gluing)
    second = psi_same_genus(s.descriptor, t.descriptor, other, positive_only=True)
    return "psi-choice", "psi-choice-independence", first, second


def _genus_step(generator: CaseGenerator) -> Pair:
    """两个独立的切割辅助闭包"""
    lower, upper = generator.closure(genus=2), generator.closure(genus=3)
    first = psi_genus_step(generator.genus_step(lower, upper))
    second = psi_genus_step(generator.genus_step(lower, upper))
    return "genus-step", "genus-step-independence", first, second


def _cycle(generator: CaseGenerator) -> Pair:
    pool = closure_pool(generator, size=4, genera=(2, 3))
    start = next(iter(pool.closures))
    ids = pool.random_cycle(start, 4)
    descriptor = pool.closures[start].descriptor
    word = psi_general(descriptor, descriptor, pool.path(ids))
    return "->".join(ids), "cycle-collapse", word, MorphismWord.identity(descriptor)


def _diffeo_word(generator: CaseGenerator, f, source: FramedClosure, target: FramedClosure) -> MorphismWord:
    step = SameGenusStep(generator.gluing(source, twisted(target, f)))
    return diffeo_map(f, source.descriptor, target.descriptor, [step])


def _functor(generator: CaseGenerator) -> Pair:
    """Ψ_{f′∘f} 与 Ψ_{f′}∘Ψ_f"""
    d0 = generator.closure(genus=2, manifold="M")
    d1 = generator.closure(genus=2, manifold="M′")
    d2 = generator.closure(genus=2, manifold="M″")
    f = random_diffeomorphism(generator, "M", "M′")
    g = random_diffeomorphism(generator, "M′", "M″")
    direct = _diffeo_word(generator, f.then(g), d0, d2)
    composed = _diffeo_word(generator, f, d0, d1).then(_diffeo_word(generator, g, d1, d2))
    return "diffeomorphism-pair", "diffeomorphism-functoriality", direct, composed


def _xi(generator: CaseGenerator) -> Pair:
    """Ψ̃_{D^η,D′}∘Ξ_{D,D^η} 与 η 的选取无关"""
    plain = generator.closure(genus=2, marked=False)
    target = generator.closure(genus=2, marked=True)
    words = []
    for _ in range(2):
        eta = generator.random_primitive(plain.descriptor.surface)
        marked = FramedClosure(plain.descriptor.mark(eta), plain.frame_minus, plain.frame_plus)
        words.append(xi_comparison(plain.descriptor, target.descriptor, eta, generator.gluing(marked, target)))
    return "xi-choice", "xi-independence", words[0], words[1]


PAIRS: List[Callable[[CaseGenerator], Pair]] = [_transitivity, _choice, _genus_step, _cycle, _functor, _xi]


def _with_scalars(generator: CaseGenerator, ring: RingSpec, word: MorphismWord) -> MorphismWord:
    """在随机位置插入 G 中的单位标量"""
    letters = list(word.letters)
    for _ in range(generator.rng.randint(1, 2)):
        position = generator.rng.randint(0, len(letters))
        closure = word.source if position == 0 else letters[position - 1].target
        unit = ring.ops.parse(random_unit(generator, ring))
        letters.insert(position, unit_scalar(closure, ring, unit))
    return MorphismWord(word.source, word.target, tuple(letters))


def coherent_pair(seed: int, index: int, ring: RingSpec = DEFAULT_RING) -> Pair:
    """
    第 index 个相干对；奇数编号的第二个字插入 ring 的 G 中的单位标量
    """
    generator = case_generator(seed, index)
    name, relation, first, second = PAIRS[index % len(PAIRS)](generator)
    if index % 2:
        name, second = f"{name}+scalar", _with_scalars(generator, ring, second)
    return name, relation, first, second


# ==================== coherence ====================

def _coherence_case(seed: int, index: int) -> CheckRecord:
    try:
        name, relation, first, second = coherent_pair(seed, index)
        agree = coherence_check(first, second)
        result: Dict = {
            "normal_forms": [describe(normal_form(first)), describe(normal_form(second))],
            "lengths": [len(first), len(second)],
        }
        passed = agree
        if relation == "psi-transitivity":
            # 顺带检查重写系统在这个字上的终止性与局部合流
            termination = check_termination(second)
            confluence = local_confluence_counterexample(second)
            result["termination_failures"] = [str(f) for f in termination]
            result["confluence_counterexample"] = confluence
            passed = agree and not termination and confluence is None
    except SutureCalcError as exc:
        return failed_check(index, f"case-{index}", PAIRS[index % len(PAIRS)].__name__.strip("_"), exc)
    return CheckRecord(index=index, name=name, relation=relation, passed=passed, inputs={}, result=result)


def coherence(job: JobSpec) -> Report:
    checks = run_cases(_coherence_case, job.options.cases, job.options.seed, job.options.workers)
    return Report.from_checks("coherence", checks)


# ==================== psi-build ====================

def _cycle_case(seed: int, index: int) -> CheckRecord:
    generator = case_generator(seed, index)
    try:
        pool = closure_pool(generator, size=3 + index % 3, genera=(2, 3))
        start = next(iter(pool.closures))
        ids = pool.random_cycle(start, 3 + index % 4)
        descriptor = pool.closures[start].descriptor
        word = psi_general(descriptor, descriptor, pool.path(ids))
        reduced = normal_form(word)
    except SutureCalcError as exc:
        return failed_check(index, f"cycle-{index}", "cycle-collapse", exc)
    return CheckRecord(
        index=index, name="->".join(ids), relation="cycle-collapse", passed=len(reduced) == 0,
        inputs={"genera": [pool.closures[i].genus for i in ids]},
        result={"letters": word.kinds(), "normal_form": describe(reduced)},
    )


def psi_build(job: JobSpec) -> Report:
    if not job.inputs:
        checks = run_cases(_cycle_case, job.options.cases, job.options.seed, job.options.workers)
        return Report.from_checks("psi-build", checks)

    checks = []
    for index, path in enumerate(job.inputs):
        document = load_document(path, PsiDocument)
        try:
            source, target, steps = document.build()
            word = psi_general(source, target, steps, positive_only=document.positive_only)
            trace: List[str] = []
            reduced = normal_form(word, trace)
        except SutureCalcError as exc:
            checks.append(failed_check(index, path, "psi-construction", exc))
            continue
        cycle = source == target
        checks.append(CheckRecord(
            index=index,
            name=path,
            relation="cycle-collapse" if cycle else "psi-construction",
            passed=len(reduced) == 0 if cycle else True,
            inputs={"source": source.id, "target": target.id, "steps": len(steps)},
            result={
                "letters": word.kinds(),
                "normal_form": describe(reduced),
                "rewrite_steps": len(trace),
            },
        ))
    return Report.from_checks("psi-build", checks)


# ==================== rank1-eval ====================

def _rank_one_case(ring: RingSpec, assignment: Optional[Mapping[str, str]], seed: int, index: int) -> CheckRecord:
    """相干对在秩一模型中的值在 G 意义下相等"""
    generator = case_generator(seed, index)
    values = dict(assignment) if assignment is not None else random_assignment(generator, ring)
    try:
        name, relation, first, second = coherent_pair(seed, index, ring)
        agree = rank_one_agree(first, second, values, ring)
        ops = ring.ops
        result = {
            "values": [ops.format(evaluate_rank_one(w, values, ring)) for w in (first, second)],
            "unit_group": ring.unit_group.value,
        }
    except SutureCalcError as exc:
        return failed_check(index, f"case-{index}", "rank-one-soundness", exc, {"assignment": values})
    return CheckRecord(
        index=index, name=f"{name}:{relation}", relation="rank-one-soundness", passed=agree,
        inputs={"assignment": values}, result=result,
    )


def rank1_eval(job: JobSpec) -> Report:
    options = job.options
    if not job.inputs:
        ring = RingSpec(options.ring or RingKind.NOVIKOV, options.unit_group or UnitGroup.FULL_UNITS)
        checks = run_cases(partial(_rank_one_case, ring, None), options.cases, options.seed, options.workers)
        return Report.from_checks("rank1-eval", checks)

    checks: List[CheckRecord] = []
    for path in job.inputs:
        document = load_document(path, AssignmentDocument)
        ring = document.ring.spec()
        records = run_cases(
            partial(_rank_one_case, ring, document.assignment), options.cases, options.seed, options.workers
        )
        for record in records:
            checks.append(record.model_copy(update={"index": len(checks), "name": f"{path}:{record.name}"}))
    return Report.from_checks("rank1-eval", checks)
