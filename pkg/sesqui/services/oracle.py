"""
Oracle d'isogénies par force brute : retrouve l'unique isogénie cyclique de
degré d dont on connaît l'action sur une base de E[m], pour m^2 > 4d.
"""
import logging
import random
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import factorint

from ..core.config import settings
from ..core.errors import AmbiguousMatch, BudgetExceeded, Reject
from .curve import (
    Curve,
    CurvePoint,
    Isogeny,
    cyclic_isogeny,
    identity_isogeny,
    isomorphisms,
    point_order,
    torsion_points,
    weil_pairing,
)

logger = logging.getLogger("sesqui.oracle")


def check_oracle_budget(d: int) -> None:
    if d > settings.oracle_degree_budget:
        raise BudgetExceeded(f"degré {d} au-delà du budget de l'oracle ({settings.oracle_degree_budget})")
    if d > 1 and max(factorint(d)) > settings.ORACLE_MAX_PRIME:
        raise BudgetExceeded(f"{d} a un facteur premier au-delà de {settings.ORACLE_MAX_PRIME}")


def canonical_generator(K: CurvePoint, d: int) -> CurvePoint:
    """Plus petit générateur (ordre de sort_key) du sous-groupe cyclique <K>."""
    return min((k * K for k in range(1, d) if gcd(k, d) == 1), key=lambda R: R.sort_key())


def cyclic_subgroups(E: Curve, d: int, rng: Optional[random.Random] = None) -> List[CurvePoint]:
    """Générateurs canoniques des sous-groupes cycliques rationnels d'ordre d, triés."""
    seen: Dict[Tuple, CurvePoint] = {}
    for R in torsion_points(E, d, rng):
        if R.is_infinity or point_order(R, d) != d:
            continue
        G = canonical_generator(R, d)
        seen.setdefault(G.sort_key(), G)
    return [seen[key] for key in sorted(seen)]


def _matches(chi, basis: Sequence[CurvePoint], images: Sequence[CurvePoint]) -> bool:
    return all(chi(R) == img for R, img in zip(basis, images))


def isogeny_oracle(E: Curve, E2: Curve, d: int, basis: Sequence[CurvePoint], images: Sequence[CurvePoint],
                   m: int, rng: Optional[random.Random] = None) -> Isogeny:
    """
    Isogénie cyclique φ : E -> E2 de degré d avec φ(basis) = images.

    Args:
        E: domaine
        E2: codomaine
        d: degré, sous les budgets ORACLE_MAX_DEGREE / ORACLE_MAX_PRIME
        basis: base (P, Q) de E[m]
        images: images candidates (φP, φQ)
        m: niveau de torsion
    """
    check_oracle_budget(d)
    if m * m <= 4 * d:
        raise Reject(f"m^2 = {m * m} <= 4d = {4 * d} : l'action sur E[m] ne détermine pas φ")
    P, Q = basis
    P2, Q2 = images
    if weil_pairing(P2, Q2, m, rng) != weil_pairing(P, Q, m, rng) ** d:
        raise Reject("compatibilité de Weil violée : e(φP, φQ) ≠ e(P, Q)^d")
    if d == 1:
        for iota in isomorphisms(E, E2):
            chi = identity_isogeny(E).then(iota)
            if _matches(chi, basis, images):
                return chi
        raise Reject("aucun isomorphisme ne réalise l'action donnée")
    target_j = E2.j_invariant()
    found: List[Isogeny] = []
    for K in cyclic_subgroups(E, d, rng):
        psi = cyclic_isogeny(K, d)
        if psi.codomain.j_invariant() != target_j:
            continue
        for iota in isomorphisms(psi.codomain, E2):
            chi = psi.then(iota)
            if _matches(chi, basis, images):
                found.append(chi)
                break
    if not found:
        logger.info(f"Oracle: aucune isogénie de degré {d} ne convient")
        raise Reject(f"aucune isogénie cyclique de degré {d} ne réalise l'action donnée")
    if len(found) > 1:
        logger.error(f"Oracle: {len(found)} noyaux distincts conviennent")
        raise AmbiguousMatch(f"{len(found)} noyaux distincts réalisent l'action donnée")
    logger.debug(f"Oracle: isogénie de degré {d} retrouvée")
    return found[0]
