# -*- coding: utf-8 -*-
"""
闭包、粘合与 Ψ 路径 Schema
"""

from typing import Dict, List, Literal, Optional, Tuple

from pydantic import Field, StrictInt, model_validator

from ...closures import ClosureDescriptor, CutData, GluingData, complement_identification, cut_open, make_closure
from ...errors import DocumentError
from ...mcg import CurveClass, identity_matrix
from ...morphisms import GenusStep, SameGenusStep, Step
from .common import Document, StrictModel
from .mcg import IntRows


class ClosureBody(StrictModel):
    id: str = Field(..., min_length=1)
    genus: int = Field(..., ge=2)
    manifold: str = "M"
    complement_tag: Optional[str] = None
    # 缺省为非标记闭包
    eta: Optional[List[StrictInt]] = None
    odd: bool = False
    marked_point: Optional[str] = None

    def build(self) -> ClosureDescriptor:
        return make_closure(
            self.id, self.genus, self.complement_tag, self.eta, self.odd, self.marked_point, self.manifold
        )


class GluingBody(StrictModel):
    name: str
    source: str
    target: str
    phi_minus: IntRows
    phi_plus: IntRows
    # 缺省为单位矩阵
    psi: Optional[IntRows] = None


class CutBody(StrictModel):
    name: str
    parent: str
    c1: List[StrictInt]
    dual: List[StrictInt]
    child_basis: IntRows
    child_eta: Optional[List[StrictInt]] = None
    eta_split: Optional[Tuple[StrictInt, StrictInt]] = None
    child_id: Optional[str] = None


class StepBody(StrictModel):
    """same 走一条粘合；up / down 经切割辅助闭包升降亏格"""
    kind: Literal["same", "up", "down"]
    gluing: Optional[str] = None
    cut: Optional[str] = None
    enter: Optional[str] = None
    exit: Optional[str] = None
    lower: Optional[str] = None
    upper: Optional[str] = None

    @model_validator(mode="after")
    def check_fields(self):
        if self.kind == "same" and self.gluing is None:
            raise ValueError("same 步需要 gluing")
        if self.kind != "same" and None in (self.cut, self.lower, self.upper):
            raise ValueError(f"{self.kind} 步需要 cut、lower 与 upper")
        return self


class PsiDocument(Document):
    closures: List[ClosureBody] = Field(..., min_length=1)
    gluings: List[GluingBody] = []
    cuts: List[CutBody] = []
    steps: List[StepBody] = Field(..., min_length=1)
    positive_only: bool = False

    def build(self) -> Tuple[ClosureDescriptor, ClosureDescriptor, List[Step]]:
        """
        按 closures → cuts → gluings → steps 的顺序构造

        Returns:
            (起点, 终点, 路径步)
        """
        closures: Dict[str, ClosureDescriptor] = {}
        for i, body in enumerate(self.closures):
            if body.id in closures:
                raise DocumentError(f"闭包 id 重复: {body.id}", f"closures[{i}].id")
            closures[body.id] = body.build()

        def closure(name: str, location: str) -> ClosureDescriptor:
            if name not in closures:
                raise DocumentError(f"未知的闭包: {name}", location)
            return closures[name]

        cuts: Dict[str, CutData] = {}
        for i, body in enumerate(self.cuts):
            parent = closure(body.parent, f"cuts[{i}].parent")
            surface = parent.surface
            c1 = CurveClass(surface, tuple(body.c1), "c1")
            cut = CutData(
                parent=parent,
                c1=c1,
                c2=-c1,
                dual=CurveClass(surface, tuple(body.dual), "d"),
                child_basis=tuple(tuple(v) for v in body.child_basis),
                child_eta=tuple(body.child_eta) if body.child_eta is not None else None,
                eta_split=body.eta_split,
                child_id=body.child_id or "",
            )
            cuts[body.name] = cut
            child = cut_open(cut)
            closures.setdefault(child.id, child)

        gluings: Dict[str, GluingData] = {}
        for i, body in enumerate(self.gluings):
            source = closure(body.source, f"gluings[{i}].source")
            target = closure(body.target, f"gluings[{i}].target")
            psi = body.psi if body.psi is not None else identity_matrix(source.surface.dimension)
            gluings[body.name] = GluingData(
                source, target, complement_identification(source, target), body.phi_minus, body.phi_plus, psi
            )

        def lookup(table: Dict, name: Optional[str], location: str):
            if name is None:
                return None
            if name not in table:
                raise DocumentError(f"未知的名称: {name}", location)
            return table[name]

        steps: List[Step] = []
        for i, body in enumerate(self.steps):
            where = f"steps[{i}]"
            if body.kind == "same":
                steps.append(SameGenusStep(lookup(gluings, body.gluing, f"{where}.gluing")))
                continue
            steps.append(GenusStep(
                lower=closure(body.lower, f"{where}.lower"),
                upper=closure(body.upper, f"{where}.upper"),
                cut=lookup(cuts, body.cut, f"{where}.cut"),
                enter=lookup(gluings, body.enter, f"{where}.enter"),
                exit=lookup(gluings, body.exit, f"{where}.exit"),
                descending=body.kind == "down",
            ))
        return steps[0].source, steps[-1].target, steps
