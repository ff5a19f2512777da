# -*- coding: utf-8 -*-
"""
命令模块
"""

from typing import Callable, Dict

from ..schemas import JobSpec, Report
from . import closure, knots, mcg, ring, system

Command = Callable[[JobSpec], Report]

# 注册命令
COMMANDS: Dict[str, Command] = {
    "ring-eval": ring.ring_eval,
    "system-validate": system.system_validate,
    "system-quotient": system.system_quotient,
    "system-tensor": system.system_tensor,
    "system-flatten": system.system_flatten,
    "mcg-factor": mcg.mcg_factor,
    "mcg-act": mcg.mcg_act,
    "surgery-build": mcg.surgery_build,
    "psi-build": closure.psi_build,
    "coherence": closure.coherence,
    "rank1-eval": closure.rank1_eval,
    "khm-check": knots.khm_check,
}

HELP = {
    "ring-eval": "Novikov 表达式求值（按截断指数截断）",
    "system-validate": "传递系统公理校验；无输入时检查随机系统",
    "system-quotient": "商模及其与基指标无关性",
    "system-tensor": "沿 Z → R 张量",
    "system-flatten": "外层系统校验与展平",
    "mcg-factor": "辛矩阵分解为扭转字；无输入时检查随机矩阵",
    "mcg-act": "扭转字的同调作用；无输入时检查共轭关系",
    "surgery-build": "手术表示与负扭转消去",
    "psi-build": "沿闭包路径构造 Ψ 并规范化；无输入时检查随机闭环",
    "coherence": "随机相干性检查",
    "rank1-eval": "秩一模型下的相干对求值",
    "khm-check": "纽结嵌套塔的外层公理与加细无关性",
}
