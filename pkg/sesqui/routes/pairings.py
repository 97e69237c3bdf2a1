"""
Routes de l'API : exemples de référence, génération d'instances, attaques et
évaluation ponctuelle d'appariements.
"""
import logging
import random
from typing import Optional

from fastapi import APIRouter, Query

from ..models.instance import AttackInstanceModel, InstanceSpec
from ..models.report import (
    AttackReportModel,
    ExampleReportModel,
    GenerateRequest,
    PairingReport,
    PairingRequest,
)
from ..services.attacks import attack_instance, compare_with_truth
from ..services.golden import verify_example
from ..services.instances import gen_instance, instance_from_model, instance_to_model
from ..services.reports import attack_report_to_model, evaluate_pairing, example_report_to_model

logger = logging.getLogger("sesqui.api")

router = APIRouter(tags=["Appariements et attaques"])


@router.get("/examples/{name}", response_model=ExampleReportModel)
def run_example(
    name: str,
    r: Optional[int] = Query(None, description="Paramètre r de la famille p = 4·3^r - 1"),
    p: Optional[int] = Query(None, description="Caractéristique de la famille gaussienne"),
    m: Optional[int] = Query(None, description="Niveau de torsion de la famille gaussienne"),
):
    """
    Lance les vérifications de référence d'un exemple publié.

    - **name**: f541, f101, wouter ou gaussian
    """
    report = verify_example(name, r=r, p=p, m=m)
    logger.info(f"Exemple {name}: {'OK' if report.ok else 'ECHEC'}")
    return example_report_to_model(report)


@router.post("/instances", response_model=AttackInstanceModel, response_model_exclude_none=True)
def create_instance(request: GenerateRequest, reveal: bool = Query(False, description="Inclure la vérité scellée")):
    """
    Génère une instance d'attaque déterministe pour la graine donnée.
    """
    spec = InstanceSpec(family=request.family, degree=request.degree, variant=request.variant,
                        r=request.r, p=request.p, m=request.m)
    inst = gen_instance(spec, request.seed)
    return instance_to_model(inst if reveal else inst.view())


@router.post("/attacks", response_model=AttackReportModel)
def run_attack(instance: AttackInstanceModel, reveal: bool = Query(False, description="Comparer à la vérité scellée")):
    """
    Lance l'attaque de la variante de l'instance ; avec reveal, compare au bloc scellé.
    """
    inst = instance_from_model(instance)
    rng = random.Random(inst.seed)
    report = attack_instance(inst, rng)
    verdict = None
    if reveal and inst.sealed is not None:
        verdict = "PASS" if compare_with_truth(inst, report, rng) else "FAIL"
    return attack_report_to_model(report, verdict, rng)


@router.post("/pairings", response_model=PairingReport)
def run_pairing(request: PairingRequest):
    """
    Évalue tate, sesqui ou tprime sur deux points donnés par leurs coordonnées dans la base de E[m].
    """
    inst = instance_from_model(request.instance)
    return evaluate_pairing(inst, request.op, request.P, request.Q, random.Random(0))
