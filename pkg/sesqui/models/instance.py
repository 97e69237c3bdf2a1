"""
Schémas JSON des instances : tous les entiers sont des chaînes décimales.
"""
from pydantic import BaseModel, field_validator
from typing import Dict, List, Optional

FAMILIES = ("f541", "f101", "wouter", "gaussian", "custom")
VARIANTS = ("norm", "sidh1", "diagonal", "ramified", "two-orient")


class FieldModel(BaseModel):
    p: str
    k: int = 1
    modulus: List[str]


class PointModel(BaseModel):
    inf: bool = False
    x: Optional[List[str]] = None
    y: Optional[List[str]] = None


class CurveModel(BaseModel):
    a: List[str]
    b: List[str]
    field: FieldModel
    order: Optional[str] = None


class OrderModel(BaseModel):
    t: str
    n: str


class OrderElementModel(BaseModel):
    a: str
    b: str


class OrientationModel(BaseModel):
    m: str
    basis: List[PointModel]
    M_tau: List[List[str]]
    order: OrderModel
    conductor_meta: Optional[str] = None
    endo: Optional[str] = None


class SealedModel(BaseModel):
    kernel: List[PointModel]
    matrix: List[List[str]]
    lam: Optional[OrderElementModel] = None
    norm: Optional[str] = None
    cyclic: bool = True


class AttackInstanceModel(BaseModel):
    variant: str
    family: str
    seed: int
    degree: str
    params: Dict[str, str] = {}
    curve: CurveModel
    curve_image: CurveModel
    orientation: OrientationModel
    orientation_image: OrientationModel
    second: Optional[OrientationModel] = None
    second_image: Optional[OrientationModel] = None
    generator: Optional[PointModel] = None
    generator_image: Optional[PointModel] = None
    payload: Dict[str, PointModel] = {}
    sealed: Optional[SealedModel] = None

    @field_validator("variant")
    @classmethod
    def check_variant(cls, v):
        if v not in VARIANTS:
            raise ValueError(f"variante inconnue: {v}")
        return v


class InstanceSpec(BaseModel):
    """Paramètres de génération d'une instance (famille + variante)."""
    family: str
    degree: int = 1
    variant: str = "norm"
    r: Optional[int] = None
    p: Optional[int] = None
    m: Optional[int] = None
    k: Optional[int] = None
    modulus: Optional[List[int]] = None
    a: Optional[int] = None
    b: Optional[int] = None
    expr: Optional[str] = None
    t: Optional[int] = None
    n: Optional[int] = None
    conductor: Optional[int] = None

    @field_validator("family")
    @classmethod
    def check_family(cls, v):
        if v not in FAMILIES:
            raise ValueError(f"famille inconnue: {v}")
        return v

    @field_validator("variant")
    @classmethod
    def check_variant(cls, v):
        if v not in VARIANTS:
            raise ValueError(f"variante inconnue: {v}")
        return v

    @field_validator("degree")
    @classmethod
    def check_degree(cls, v):
        if v < 1:
            raise ValueError("le degré doit être >= 1")
        return v
