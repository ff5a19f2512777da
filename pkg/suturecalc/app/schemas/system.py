# -*- coding: utf-8 -*-
"""
传递系统 Schema
"""

from typing import Dict, List, Optional

from pydantic import Field, model_validator

from ...errors import DocumentError, ExpressionParseError
from ...modules import FreeModule, GClassHom, Homomorphism, make_hom
from ...transys import (
    SystemMorphism,
    SystemOfSystems,
    TransitiveSystem,
    build_system,
    identity_morphism,
    inverse_morphism,
    transport_morphism,
)
from .common import Document, Entry, StrictModel
from .ring import RingDoc


class MapDoc(StrictModel):
    """g^source_target 的矩阵，target.rank 行 × source.rank 列"""
    source: str
    target: str
    matrix: List[List[Entry]]


class SystemBody(StrictModel):
    ring: RingDoc = RingDoc()
    indices: List[str] = Field(..., min_length=1)
    ranks: Dict[str, int]
    maps: List[MapDoc] = []
    # 为 True 时用生成树补全未给出的映射
    complete: bool = False
    base: Optional[str] = None

    @model_validator(mode="after")
    def check_indices(self):
        if len(set(self.indices)) != len(self.indices):
            raise ValueError("indices 中有重复")
        if set(self.ranks) != set(self.indices):
            raise ValueError("ranks 的键必须与 indices 一致")
        known = set(self.indices)
        for m in self.maps:
            if m.source not in known or m.target not in known:
                raise ValueError(f"映射 {m.source}->{m.target} 的端点不在 indices 中")
        if self.base is not None and self.base not in known:
            raise ValueError(f"base {self.base} 不在 indices 中")
        return self

    def homomorphisms(self, location: str = "system") -> Dict[tuple, Homomorphism]:
        ring = self.ring.spec()
        given = {}
        for i, m in enumerate(self.maps):
            try:
                given[(m.source, m.target)] = make_hom(ring, m.matrix, source_rank=self.ranks[m.source])
            except ExpressionParseError as exc:
                raise DocumentError(exc.message, f"{location}.maps[{i}].matrix:{exc.position}")
        return given

    def build(self, location: str = "system") -> TransitiveSystem:
        ring = self.ring.spec()
        modules = {a: FreeModule(ring, self.ranks[a]) for a in self.indices}
        given = self.homomorphisms(location)
        if self.complete:
            return build_system(self.indices, modules, given, ring.unit_group)
        maps = {key: GClassHom(h, ring.unit_group) for key, h in given.items()}
        return TransitiveSystem(tuple(self.indices), modules, maps, ring.unit_group)


class SystemDocument(Document):
    system: SystemBody


# ==================== 外层系统 ====================

class OuterDoc(StrictModel):
    label: str
    system: SystemBody


class ConnectorDoc(StrictModel):
    """
    外层映射：由 φ: M_{source_base} → N_{target_base} 传递得到
    """
    source: str
    target: str
    source_base: str
    target_base: str
    matrix: List[List[Entry]]


class TowerDocument(Document):
    outer: List[OuterDoc] = Field(..., min_length=1)
    connectors: List[ConnectorDoc] = []

    def build(self) -> SystemOfSystems:
        labels = [o.label for o in self.outer]
        if len(set(labels)) != len(labels):
            raise DocumentError("外层标签重复", "outer")
        inner = {o.label: o.system.build(f"outer[{i}].system") for i, o in enumerate(self.outer)}
        connectors: Dict[tuple, SystemMorphism] = {}
        for i, c in enumerate(self.connectors):
            if c.source not in inner or c.target not in inner:
                raise DocumentError(f"未知的外层标签 {c.source}->{c.target}", f"connectors[{i}]")
            source, target = inner[c.source], inner[c.target]
            if c.source_base not in source.indices or c.target_base not in target.indices:
                raise DocumentError("基指标不在内层系统中", f"connectors[{i}]")
            try:
                phi = make_hom(source.ring, c.matrix, source_rank=source.modules[c.source_base].rank)
            except ExpressionParseError as exc:
                raise DocumentError(exc.message, f"connectors[{i}].matrix:{exc.position}")
            connectors[(c.source, c.target)] = transport_morphism(source, target, phi, c.source_base, c.target_base)
        # 对角取恒等，缺失的反向取逆
        for label in labels:
            connectors.setdefault((label, label), identity_morphism(inner[label]))
        for (a, b), m in list(connectors.items()):
            connectors.setdefault((b, a), inverse_morphism(m))
        return SystemOfSystems(tuple(labels), inner, connectors)
