"""
Conversion des résultats en rapports (modèles pydantic et texte lisible).
"""
import random
from typing import List, Optional, Sequence

from ..core.errors import WrongOrder
from ..models.report import AttackReportModel, ExampleReportModel, PairingReport
from .attacks import AttackReport
from .curve import isogeny_kernel
from .golden import ExampleReport
from .instances import AttackInstance, point_to_model
from .pairings import sesqui_T, tate_reduced, tprime, ReducedPairValue
from .dlog import dlog_mu
from .ffield import mu_generator

PAIRING_OPS = ("tate", "sesqui", "tprime")


def _ints(values) -> List[str]:
    return [str(int(v)) for v in values]


def attack_report_to_model(report: AttackReport, verdict: Optional[str] = None,
                           rng: Optional[random.Random] = None) -> AttackReportModel:
    model = AttackReportModel(variant=report.variant, notes=dict(report.notes), verdict=verdict)
    if report.norm is not None:
        model.norm = str(report.norm)
    if report.candidates is not None:
        model.candidates = [point_to_model(R) for R in report.candidates]
        model.candidate_bound = str(report.candidates.bound)
    if report.matrix is not None:
        model.matrix = [_ints(row) for row in report.matrix]
    if report.isogeny is not None:
        model.kernel = [point_to_model(R) for R in isogeny_kernel(report.isogeny, rng)]
    if report.point is not None:
        model.point = point_to_model(report.point)
    if report.lam is not None:
        model.lam = [str(report.lam.a), str(report.lam.b)]
    return model


def format_attack_report(report: AttackReport) -> str:
    lines = [f"variante: {report.variant}"]
    if report.norm is not None:
        lines.append(f"N(λ) mod m: {report.norm}")
    if report.lam is not None:
        lines.append(f"λ: {report.lam}")
    if report.matrix is not None:
        lines.append(f"Φ: {[list(row) for row in report.matrix]}")
    if report.point is not None:
        lines.append(f"Q = [τ']P: {report.point}")
    if report.candidates is not None:
        lines.append(f"candidats: {len(report.candidates)} (borne {report.candidates.bound})")
    if report.isogeny is not None:
        lines.append(f"isogénie: degré {report.isogeny.degree}, codomaine {report.isogeny.codomain}")
    for key, value in report.notes.items():
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def example_report_to_model(report: ExampleReport) -> ExampleReportModel:
    tables = None
    if report.tables is not None:
        tables = [[list(row) for row in table] for table in report.tables]
    return ExampleReportModel(name=report.name, ok=report.ok, checks=dict(report.checks), unit=report.unit,
                              tables=tables, details=dict(report.details))


def format_example_report(report: ExampleReport) -> str:
    lines = [f"exemple: {report.name}"]
    if report.tables is not None:
        for title, table in zip(("partie réelle", "partie imaginaire"), report.tables):
            lines.append(f"{title} (lignes a, colonnes b):")
            lines.extend("  " + " ".join(str(x) for x in row) for row in table)
    if report.unit is not None:
        lines.append(f"u = {report.unit}")
    for name, ok in report.checks.items():
        lines.append(f"{'OK  ' if ok else 'ECHEC'} {name}")
    for key, value in report.details.items():
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def evaluate_pairing(inst: AttackInstance, op: str, P_coords: Sequence[int], Q_coords: Sequence[int],
                     rng: Optional[random.Random] = None) -> PairingReport:
    """
    Évalue un appariement sur E[m] ; logarithmes en base du générateur canonique de μ_m.

    Args:
        inst: instance (seule la courbe de départ et son orientation servent)
        op: tate, sesqui ou tprime
        P_coords, Q_coords: coordonnées dans la base de E[m]
    """
    if op not in PAIRING_OPS:
        raise WrongOrder(f"opération inconnue: {op}")
    orient = inst.orient
    m = orient.m
    P, Q = orient.point(P_coords), orient.point(Q_coords)
    g = mu_generator(orient.curve.field, m)
    if op == "tate":
        logs = [dlog_mu(g, tate_reduced(P, Q, m, rng), m)]
    else:
        pairing = sesqui_T if op == "sesqui" else tprime
        value: ReducedPairValue = pairing(P, Q, m, orient, rng)
        logs = list(value.logs)
    return PairingReport(op=op, m=str(m), logs=_ints(logs), generator=_ints(g.coeffs))
