# -*- coding: utf-8 -*-
"""
suturecalc
Novikov 型系数环、传递系统、映射类群同调与闭包之间典范映射的组合演算
"""

from .config import settings
from .errors import SutureCalcError
from .novikov import NovikovElement, TruncatedSeries, format_element, invert, truncate
from .rings import RingKind, RingSpec, UnitGroup, ring
from .transys import TransitiveSystem, validate_system
from .morphisms import MorphismWord, psi_general
from .rewriting import coherence_check, normal_form

__version__ = settings.app_version

__all__ = [
    "SutureCalcError",
    "NovikovElement",
    "TruncatedSeries",
    "format_element",
    "invert",
    "truncate",
    "RingKind",
    "RingSpec",
    "UnitGroup",
    "ring",
    "TransitiveSystem",
    "validate_system",
    "MorphismWord",
    "psi_general",
    "coherence_check",
    "normal_form",
]
