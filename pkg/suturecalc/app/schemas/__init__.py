# -*- coding: utf-8 -*-
"""
Pydantic Schema 模块
"""

from .common import CheckRecord, Document, Report, StrictModel, FORMAT_VERSION
from .ring import RingDoc, ExpressionItem, ExpressionDocument, AssignmentDocument
from .system import MapDoc, SystemBody, SystemDocument, OuterDoc, ConnectorDoc, TowerDocument
from .mcg import LetterDoc, WordBody, FactorDocument, ActDocument, SurgeryDocument
from .closure import ClosureBody, GluingBody, CutBody, StepBody, PsiDocument
from .job import CommandName, JobOptions, JobSpec

__all__ = [
    # Common
    "CheckRecord",
    "Document",
    "Report",
    "StrictModel",
    "FORMAT_VERSION",
    # Ring
    "RingDoc",
    "ExpressionItem",
    "ExpressionDocument",
    "AssignmentDocument",
    # System
    "MapDoc",
    "SystemBody",
    "SystemDocument",
    "OuterDoc",
    "ConnectorDoc",
    "TowerDocument",
    # MCG
    "LetterDoc",
    "WordBody",
    "FactorDocument",
    "ActDocument",
    "SurgeryDocument",
    # Closure
    "ClosureBody",
    "GluingBody",
    "CutBody",
    "StepBody",
    "PsiDocument",
    # Job
    "CommandName",
    "JobOptions",
    "JobSpec",
]
