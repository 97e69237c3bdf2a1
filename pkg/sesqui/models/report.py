"""
Schémas des rapports (CLI --json et API) : entiers en chaînes décimales.
"""
from pydantic import BaseModel
from typing import Dict, List, Optional

from .instance import AttackInstanceModel, PointModel


class PairingRequest(BaseModel):
    """Évaluation ponctuelle d'un appariement sur une instance."""
    instance: AttackInstanceModel
    op: str = "sesqui"
    P: List[int]
    Q: List[int]


class PairingReport(BaseModel):
    op: str
    m: str
    logs: List[str]
    generator: List[str]


class ExampleReportModel(BaseModel):
    name: str
    ok: bool
    checks: Dict[str, bool]
    unit: Optional[int] = None
    tables: Optional[List[List[List[int]]]] = None
    details: Dict[str, str] = {}


class GenerateRequest(BaseModel):
    family: str
    degree: int = 1
    variant: str = "norm"
    seed: int = 0
    r: Optional[int] = None
    p: Optional[int] = None
    m: Optional[int] = None


class AttackReportModel(BaseModel):
    variant: str
    norm: Optional[str] = None
    candidates: Optional[List[PointModel]] = None
    candidate_bound: Optional[str] = None
    matrix: Optional[List[List[str]]] = None
    kernel: Optional[List[PointModel]] = None
    point: Optional[PointModel] = None
    lam: Optional[List[str]] = None
    notes: Dict[str, str] = {}
    verdict: Optional[str] = None
