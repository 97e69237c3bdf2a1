"""
Logarithmes discrets : dans μ_m (Pohlig-Hellman + pas de bébé/pas de géant),
en dimension 2 dans E[m] (réduction par l'appariement de Weil) et O-linéaires
sur les paires de valeurs réduites.
"""
import logging
import random
from functools import lru_cache
from math import isqrt
from typing import TYPE_CHECKING, Dict, List, Optional, Tuple

from sympy import factorint

from ..core.config import settings
from ..core.errors import (
    DegenerateBase,
    InternalInconsistency,
    NoSolution,
    NotInSubgroup,
    PointNotInTorsion,
)
from .curve import CurvePoint, weil_pairing
from .ffield import FieldElement
from .modular import assert_smooth, crt_combine, is_unit, mat_det, mat_from_columns, mat_vec, solve_linear_2x2
from .qorder import OrderDesc, OrderElement, rho_mod

if TYPE_CHECKING:
    from .pairings import ReducedPairValue

logger = logging.getLogger("sesqui.dlog")


def _bsgs(gamma: FieldElement, h: FieldElement, q: int) -> int:
    """x dans [0, q) avec gamma^x = h, gamma d'ordre q."""
    s = isqrt(q) + 1
    baby: Dict[FieldElement, int] = {}
    cur = gamma.desc.one()
    for j in range(s):
        baby.setdefault(cur, j)
        cur = cur * gamma
    giant = gamma ** (-s)
    cur = h
    for i in range(s + 1):
        j = baby.get(cur)
        if j is not None:
            return (i * s + j) % q
        cur = cur * giant
    raise NotInSubgroup("h n'est pas dans le sous-groupe engendré")


def dlog_mu(g: FieldElement, h: FieldElement, m: int) -> int:
    """
    Logarithme discret de h en base g dans μ_m.

    Args:
        g: générateur (d'ordre divisant m)
        h: élément de <g>
        m: entier friable
    """
    assert_smooth(m)
    if not (g ** m).is_one():
        raise NotInSubgroup(f"g n'est pas dans μ_{m}")
    order = g.mult_order()
    if not (h ** order).is_one():
        raise NotInSubgroup(f"h n'est pas dans <g> (ordre {order})")
    residues, moduli = [], []
    for q, e in sorted(factorint(order).items()):
        qe = q ** e
        gq = g ** (order // qe)
        hq = h ** (order // qe)
        gamma = gq ** (qe // q)
        x = 0
        for k in range(e):
            hk = (gq ** (-x) * hq) ** (q ** (e - 1 - k))
            x += _bsgs(gamma, hk, q) * q ** k
        residues.append(x)
        moduli.append(qe)
    x = crt_combine(residues, moduli) % order if moduli else 0
    if g ** x != h:
        raise NotInSubgroup("vérification du logarithme discret échouée")
    return x


# Logarithmes en dimension 2


@lru_cache(maxsize=256)
def _torsion_table(P: CurvePoint, Q: CurvePoint, m: int) -> Dict[CurvePoint, Tuple[int, int]]:
    table = {}
    row = P.curve.infinity
    for u in range(m):
        pt = row
        for v in range(m):
            table.setdefault(pt, (u, v))
            pt = pt + Q
        row = row + P
    return table


@lru_cache(maxsize=256)
def _basis_pairing(P: CurvePoint, Q: CurvePoint, m: int) -> FieldElement:
    return weil_pairing(P, Q, m)


def point_dlog2d(R: CurvePoint, basis: Tuple[CurvePoint, CurvePoint], m: int,
                 rng: Optional[random.Random] = None) -> Tuple[int, int]:
    """(u, v) tels que R = [u]P + [v]Q."""
    P, Q = basis
    if not (m * R).is_infinity:
        raise PointNotInTorsion(f"{R} n'est pas dans E[{m}]")
    if R.is_infinity:
        return 0, 0
    if m * m <= settings.DLOG_TABLE_LIMIT:
        try:
            return _torsion_table(P, Q, m)[R]
        except KeyError:
            raise InternalInconsistency("la base ne engendre pas E[m]")
    e = _basis_pairing(P, Q, m)
    u = dlog_mu(e, weil_pairing(R, Q, m, rng), m)
    v = dlog_mu(e, weil_pairing(P, R, m, rng), m)
    if u * P + v * Q != R:
        logger.error(f"Décomposition incohérente de {R} dans la base")
        raise InternalInconsistency("R ≠ [u]P + [v]Q après décomposition")
    return u, v


# Logarithmes O-linéaires


def _system(base: "ReducedPairValue", order: OrderDesc):
    m = base.m
    w1 = base.logs
    c2 = mat_vec(rho_mod(order.tau, m), w1, m)
    return mat_from_columns(w1, c2, m)


def olinear_dlog(base: "ReducedPairValue", target: "ReducedPairValue", m: int,
                 order: OrderDesc) -> OrderElement:
    """λ = a + bτ avec base^λ = target, pour une base d'annulateur mO."""
    A = _system(base, order)
    if not is_unit(mat_det(A), m):
        raise DegenerateBase("l'annulateur de la base n'est pas mO")
    solutions = solve_linear_2x2(A, target.logs, m)
    if not solutions:
        raise NoSolution("la cible n'est pas dans le O-module engendré")
    a, b = solutions[0]
    return OrderElement(a, b, order)


def olinear_dlog_all(base: "ReducedPairValue", target: "ReducedPairValue", m: int,
                     order: OrderDesc) -> List[OrderElement]:
    """Tous les λ modulo m avec base^λ = target (base non triviale)."""
    if all(c % m == 0 for c in base.logs):
        raise DegenerateBase("base triviale")
    solutions = solve_linear_2x2(_system(base, order), target.logs, m)
    if not solutions:
        raise NoSolution("la cible n'est pas dans le O-module engendré")
    return [OrderElement(a, b, order) for a, b in solutions]
