"""
Attaques sur les isogénies orientées à partir de l'appariement sesquilinéaire.

Chaque attaque reçoit la vue d'une instance (sans bloc scellé) ; les attaques
qui se ramènent à SIDH se terminent par un appel à l'oracle d'isogénies.
"""
import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Dict, Iterator, Optional, Sequence, Tuple

from sympy import totient

from ..core.config import settings
from ..core.errors import (
    AmbiguousMatch,
    BudgetExceeded,
    CoefficientNotInvertible,
    DegenerateBase,
    DegenerateSelfPairing,
    InternalInconsistency,
    MajorityInconclusive,
    NoGeneratorAmongPQ,
    NoSolution,
    NotAntiCommuting,
    NotRamified,
    OracleExhausted,
    RamifiedPrime,
    Reject,
    TotientTooSmall,
    WrongOrder,
)
from .curve import Curve, CurvePoint, Isogeny, isogeny_kernel, weil_pairing
from .dlog import dlog_mu, olinear_dlog_all
from .instances import AttackInstance
from .modular import (
    Matrix,
    assert_smooth,
    crt_combine,
    is_unit,
    mat,
    mat_det,
    mat_from_columns,
    mat_inv,
    mat_mul,
    mat_vec,
    prime_powers,
    solve_congruence,
)
from .oracle import isogeny_oracle
from .orientation import (
    Orientation,
    _eigen_pair,
    apply,
    check_min_poly,
    is_module_generator,
    prime_type,
    rebase,
)
from .pairings import ReducedPairValue, sesqui_T, tprime
from .qorder import OrderDesc, OrderElement, solve_lambda, unit_sqrts

logger = logging.getLogger("sesqui.attacks")

PairingOracle = Callable[[CurvePoint, CurvePoint], ReducedPairValue]


@dataclass(frozen=True)
class CandidateSet:
    """Images candidates, avec les paramètres d'énumération et la borne annoncée."""
    points: Tuple[CurvePoint, ...]
    bound: int
    params: Dict[str, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[CurvePoint]:
        return iter(self.points)

    def __contains__(self, R: CurvePoint) -> bool:
        return R in self.points


@dataclass(frozen=True)
class TorsionAction:
    """Action de φ sur E[m] : matrice Φ, base de départ et images."""
    matrix: Matrix
    basis: Tuple[CurvePoint, CurvePoint]
    images: Tuple[CurvePoint, CurvePoint]


@dataclass(frozen=True)
class RamifiedTau:
    tau: OrderElement
    m_prime: int
    degenerate: bool = False


@dataclass
class AttackReport:
    variant: str
    norm: Optional[int] = None
    candidates: Optional[CandidateSet] = None
    matrix: Optional[Matrix] = None
    isogeny: Optional[Isogeny] = None
    point: Optional[CurvePoint] = None
    lam: Optional[OrderElement] = None
    notes: Dict[str, str] = field(default_factory=dict)


def _dedupe(points: Sequence[CurvePoint]) -> Tuple[CurvePoint, ...]:
    seen = dict.fromkeys(points)
    return tuple(seen)


def _generators(inst: AttackInstance, P: Optional[CurvePoint], P2: Optional[CurvePoint]):
    P = P if P is not None else inst.generator
    P2 = P2 if P2 is not None else inst.generator_image
    if P is None or P2 is None:
        raise WrongOrder("générateurs P, P' absents de l'instance")
    return P, P2


def _scalar_exponent(base: ReducedPairValue, target: ReducedPairValue, m: int) -> int:
    """x dans Z/m avec base^x = target, base d'ordre m."""
    first = set(solve_congruence(base.logs[0], target.logs[0], m))
    solutions = sorted(first & set(solve_congruence(base.logs[1], target.logs[1], m)))
    if not solutions:
        raise NoSolution("la cible n'est pas une puissance entière de la base")
    return solutions[0]


def is_generator_by_pairing(orient: Orientation, P: CurvePoint, rng: Optional[random.Random] = None) -> bool:
    """OP = E[m] se lit sur l'ordre de T̂(P, P) (pour m premier à Δ)."""
    return sesqui_T(P, P, orient.m, orient, rng).order() == orient.m


# Norme de λ


def recover_norm_lambda(inst: AttackInstance, P: Optional[CurvePoint] = None, P2: Optional[CurvePoint] = None,
                        rng: Optional[random.Random] = None) -> int:
    """
    N(λ) mod m pour φP = [λ]P', via T̂(P, P)^d = T̂(P', P')^{N(λ)}.

    Args:
        inst: vue de l'instance
        P: O-générateur de E[m] (par défaut celui de l'instance)
        P2: O-générateur de E'[m]
    """
    P, P2 = _generators(inst, P, P2)
    m = inst.m
    order = inst.orient.order
    if gcd(m, order.disc) != 1:
        logger.error(f"m = {m} partage un facteur avec Δ = {order.disc}")
        raise RamifiedPrime(f"gcd(m, Δ) ≠ 1 : utiliser l'attaque ramifiée")
    w = sesqui_T(P, P, m, inst.orient, rng)
    w2 = sesqui_T(P2, P2, m, inst.orient_image, rng)
    if w.order() < m or w2.order() < m:
        raise DegenerateSelfPairing(f"auto-appariements d'ordres {w.order()} et {w2.order()} < {m}")
    nval = _scalar_exponent(w2, w.pow(inst.degree), m)
    logger.debug(f"N(λ) ≡ {nval} mod {m}")
    return nval


def _candidate_bounds(m: int) -> Tuple[int, int]:
    lower = upper = 1
    for q, k, _ in prime_powers(m):
        lower *= q ** (k - 1) * (q - 1)
        upper *= q ** (k - 1) * (q + 1)
    return lower, upper


def candidate_images(inst: AttackInstance, P: Optional[CurvePoint] = None, P2: Optional[CurvePoint] = None,
                     nval: Optional[int] = None, rng: Optional[random.Random] = None) -> CandidateSet:
    """
    Tous les [μ]P' avec N(μ) ≡ nval et μ inversible dans O/mO.

    Args:
        inst: vue de l'instance
        P: O-générateur de E[m] ; ne sert qu'à retrouver N(λ) quand nval est omis
        P2: O-générateur de E'[m] dont on énumère les multiples
        nval: N(λ) mod m déjà calculé
    """
    m = inst.m
    assert_smooth(m)
    if m * m > settings.enumeration_budget:
        raise BudgetExceeded(f"énumération de O/{m}O hors budget")
    if nval is None:
        P, P2 = _generators(inst, P, P2)
        nval = recover_norm_lambda(inst, P, P2, rng)
    P2 = P2 if P2 is not None else inst.generator_image
    orient2 = inst.orient_image
    order = orient2.order
    p2 = orient2.coords(P2)
    points = []
    if is_unit(nval, m):
        for a in range(m):
            for b in range(m):
                mu = order(a, b)
                if (mu.norm() - nval) % m == 0:
                    points.append(orient2.point(orient2.apply_coords(mu, p2)))
    lower, upper = _candidate_bounds(m)
    logger.debug(f"{len(points)} images candidates pour N(λ) = {nval} (bornes {lower}..{upper})")
    return CandidateSet(_dedupe(points), upper, {"m": m, "norm": nval, "lower": lower})


# SIDH1 -> SIDH


def _reduce(M: Matrix, qk: int) -> Matrix:
    return mat(M[0][0], M[0][1], M[1][0], M[1][1], qk)


def _local_action(M: Matrix, M2: Matrix, r, r2, order: OrderDesc, q: int, qk: int, det_phi: int) -> Matrix:
    kind = prime_type(order, q)
    if kind == "ramified":
        raise RamifiedPrime(f"{q} est ramifié dans O")
    Mq, M2q = _reduce(M, qk), _reduce(M2, qk)
    r, r2 = (r[0] % qk, r[1] % qk), (r2[0] % qk, r2[1] % qk)
    mr = mat_vec(Mq, r, qk)
    if is_unit(r[0] * mr[1] - r[1] * mr[0], qk):
        # R engendre E[q^k] comme O-module : φ(τR) = τ'φR
        src = mat_from_columns(r, mr, qk)
        dst = mat_from_columns(r2, mat_vec(M2q, r2, qk), qk)
        return mat_mul(dst, mat_inv(src, qk), qk)
    if kind == "inert":
        raise WrongOrder(f"R n'est pas d'ordre {qk} dans E[{qk}]")
    (_, s), (_, t) = _eigen_pair(Mq, order, q, qk)
    (_, s2), (_, t2) = _eigen_pair(M2q, order, q, qk)
    B = mat_from_columns(s, t, qk)
    B2 = mat_from_columns(s2, t2, qk)
    a, b = mat_vec(mat_inv(B, qk), r, qk)
    c, d = mat_vec(mat_inv(B2, qk), r2, qk)
    # det Φ · det(S, T) = k1 k2 · det(S', T')
    k1k2 = det_phi * mat_det(B) * pow(mat_det(B2) % qk, -1, qk) % qk
    if is_unit(a, qk):
        k1 = c * pow(a, -1, qk) % qk
        k2 = k1k2 * pow(k1, -1, qk) % qk
    elif is_unit(b, qk):
        k2 = d * pow(b, -1, qk) % qk
        k1 = k1k2 * pow(k2, -1, qk) % qk
    else:
        raise CoefficientNotInvertible(f"aucune coordonnée propre de R n'est inversible modulo {qk}")
    return mat_mul(mat_mul(B2, mat(k1, 0, 0, k2, qk), qk), mat_inv(B, qk), qk)


def _degree_factor(inst: AttackInstance, rng: Optional[random.Random] = None) -> int:
    """det Φ mod m, lu sur e(φP, φQ) = e(P, Q)^d."""
    m = inst.m
    e1 = weil_pairing(*inst.orient.basis, m, rng)
    e2 = weil_pairing(*inst.orient_image.basis, m, rng)
    return inst.degree * dlog_mu(e2, e1, m) % m


def sidh1_to_sidh(inst: AttackInstance, R: Optional[CurvePoint] = None, phi_R: Optional[CurvePoint] = None,
                  rng: Optional[random.Random] = None) -> TorsionAction:
    """
    Action complète de φ sur E[m] à partir de l'image d'un seul point d'ordre m.

    On traite chaque q^k || m séparément (cas inerte : R engendre ; cas décomposé :
    bases propres et relation deg φ ≡ k1 k2), puis on recolle par les restes chinois.
    """
    R = R if R is not None else inst.payload["R"]
    phi_R = phi_R if phi_R is not None else inst.payload["phi_R"]
    orient, orient2 = inst.orient, inst.orient_image
    m = inst.m
    assert_smooth(m)
    r, r2 = orient.coords(R), orient2.coords(phi_R)
    det_phi = _degree_factor(inst, rng)
    blocks, moduli = [], []
    for q, _, qk in prime_powers(m):
        blocks.append(_local_action(orient.matrix, orient2.matrix, r, r2, orient.order, q, qk, det_phi))
        moduli.append(qk)
    entries = [crt_combine([B[i][j] for B in blocks], moduli) for i in range(2) for j in range(2)]
    Phi = mat(*entries, m)
    images = (orient2.point((Phi[0][0], Phi[1][0])), orient2.point((Phi[0][1], Phi[1][1])))
    if orient2.point(mat_vec(Phi, r, m)) != phi_R:
        raise InternalInconsistency("Φ reconstruite n'envoie pas R sur φR")
    logger.info(f"SIDH1 -> SIDH: action sur E[{m}] reconstruite")
    return TorsionAction(Phi, tuple(orient.basis), images)


# SIDH diagonal


def diagonal_sidh(inst: AttackInstance, rng: Optional[random.Random] = None) -> Tuple[Isogeny, int]:
    """
    Résout SIDH diagonal : P' ∈ <φP>, Q' ∈ <φQ> donnés, λ ∈ Z.

    Returns:
        L'isogénie vérifiée par l'oracle et le λ retenu.
    """
    orient = inst.orient
    m, d = inst.m, inst.degree
    if m <= 4 * d:
        raise Reject(f"m = {m} <= 4d = {4 * d}")
    P, Q = orient.basis
    P_img, Q_img = inst.payload["P_img"], inst.payload["Q_img"]
    if is_module_generator(orient, P):
        G, H, G_img, H_img, swapped = P, Q, P_img, Q_img, False
    elif is_module_generator(orient, Q):
        G, H, G_img, H_img, swapped = Q, P, Q_img, P_img, True
    else:
        raise NoGeneratorAmongPQ("ni P ni Q n'engendre E[m] comme O-module")
    nval = recover_norm_lambda(inst, G, G_img, rng)
    lams = [x for x in unit_sqrts(m, nval) if is_unit(x, m)]
    logger.debug(f"{len(lams)} racines carrées de {nval} modulo {m}")
    w = dlog_mu(weil_pairing(G_img, H_img, m, rng), weil_pairing(G, H, m, rng), m)
    for lam in lams:
        kappa = w * d * pow(lam, -1, m) % m
        images = (lam * G_img, kappa * H_img)
        basis = (G, H)
        if swapped:
            basis, images = (H, G), (images[1], images[0])
        try:
            phi = isogeny_oracle(inst.curve, inst.curve_image, d, basis, images, m, rng)
        except Reject:
            logger.debug(f"Candidat λ = {lam} rejeté par l'oracle")
            continue
        logger.info(f"SIDH diagonal résolu avec λ = {lam}")
        return phi, lam
    raise OracleExhausted(f"aucune des {len(lams)} racines carrées n'a été validée")


# Cas ramifié


def ramified_tau_select(order: OrderDesc, m: int) -> RamifiedTau:
    """
    τ' avec Tr(τ') ≡ N(τ') ≡ 0 (mod m'), à partir de σ = (Δ + √Δ)/2.

    m' = m si m est impair, m/2 si m ≡ 2 (mod 4), m/4 si 4 | m.
    """
    disc = order.disc
    if disc % m:
        raise NotRamified(f"m = {m} ne divise pas Δ = {disc}")
    sigma = order.tau + (disc - order.t) // 2
    if m % 2:
        tau, m_prime = sigma * 2, m
    else:
        tau = sigma
        m_prime = m // 4 if m % 4 == 0 else m // 2
    if tau.trace() % m_prime or tau.norm() % m_prime:
        raise InternalInconsistency(f"Tr ou N de {tau} non nul modulo {m_prime}")
    if m_prime == 1:
        logger.warning(f"Sélection dégénérée : m' = 1 pour m = {m}")
    return RamifiedTau(tau, m_prime, m_prime == 1)


def ramified_attack(inst: AttackInstance, P: Optional[CurvePoint] = None, P2: Optional[CurvePoint] = None,
                    rng: Optional[random.Random] = None) -> Tuple[CurvePoint, CandidateSet]:
    """
    Q = [τ']P et un ensemble de taille polynomiale contenant φQ.

    N(λ) vient de T'(P, P)^d = T'(P', P')^{N(λ)} ; comme τ'^2 ∈ m'O, on a
    φQ = [a][τ']P' + (point de m'E'[m]) avec a^2 ≡ N(λ) (mod m').
    """
    P, P2 = _generators(inst, P, P2)
    orient, orient2 = inst.orient, inst.orient_image
    m = inst.m
    assert_smooth(m)
    selected = ramified_tau_select(orient.order, m)
    w = tprime(P, P, m, orient, rng)
    w2 = tprime(P2, P2, m, orient2, rng)
    if w.order() < m or w2.order() < m:
        raise DegenerateSelfPairing(f"T' d'ordres {w.order()} et {w2.order()} < {m}")
    nval = _scalar_exponent(w2, w.pow(inst.degree), m)
    m_prime = selected.m_prime
    roots = unit_sqrts(m_prime, nval % m_prime)
    base = orient2.apply_coords(selected.tau, orient2.coords(P2))
    spread = m // m_prime
    points = []
    for a in roots:
        for u in range(spread):
            for v in range(spread):
                coords = (a * base[0] + m_prime * u, a * base[1] + m_prime * v)
                points.append(orient2.point(coords))
    Q = apply(orient, selected.tau, P)
    logger.info(f"Attaque ramifiée: {len(points)} candidats pour φ([τ']P)")
    return Q, CandidateSet(_dedupe(points), 16 * max(len(roots), 1),
                           {"m": m, "m_prime": m_prime, "norm": nval, "roots": len(roots)})


# Deux orientations


def _anti_commutes(orient: Orientation, second: Orientation) -> bool:
    m = orient.m
    left = mat_mul(second.matrix, orient.matrix, m)
    right = mat_mul(orient.conj_matrix(), second.matrix, m)
    return left == right


def _action_from_lambda(inst: AttackInstance, P: CurvePoint, P2: CurvePoint, lam: OrderElement) -> Matrix:
    """Φ avec φ([μ]P) = [μλ]P' pour chaque vecteur de base [μ]P."""
    orient, orient2 = inst.orient, inst.orient_image
    m = inst.m
    p = orient.coords(P)
    A = mat_from_columns(p, orient.apply_coords(orient.order.tau, p), m)
    A_inv = mat_inv(A, m)
    p2 = orient2.coords(P2)
    cols = []
    for j in range(2):
        x, y = A_inv[0][j], A_inv[1][j]
        mu = orient.order(x, y)
        cols.append(orient2.apply_coords(mu * lam, p2))
    return mat_from_columns(cols[0], cols[1], m)


def two_orientation_attack(inst: AttackInstance, rng: Optional[random.Random] = None) -> AttackReport:
    """
    Récupère N(λ) et λ^2 avec σ1 = 1 et σ2 (anti-commutant à τ), énumère les λ
    compatibles puis valide l'action obtenue auprès de l'oracle.
    """
    orient, orient2 = inst.orient, inst.orient_image
    second, second2 = inst.second, inst.second_image
    if second is None or second2 is None:
        raise NotAntiCommuting("instance sans seconde orientation")
    if second.basis != orient.basis:
        second = rebase(second, orient.basis)
    if second2.basis != orient2.basis:
        second2 = rebase(second2, orient2.basis)
    if not (_anti_commutes(orient, second) and _anti_commutes(orient2, second2)):
        raise NotAntiCommuting("σ ne vérifie pas M_σ M_τ ≡ M_τ̄ M_σ")
    m, d = inst.m, inst.degree
    P, P2 = _generators(inst, None, None)
    nval = recover_norm_lambda(inst, P, P2, rng)
    sigma_P = apply(second, second.order.tau, P)
    sigma_P2 = apply(second2, second2.order.tau, P2)
    base = sesqui_T(sigma_P2, P2, m, orient2, rng)
    target = sesqui_T(sigma_P, P, m, orient, rng).pow(d)
    squares = olinear_dlog_all(base, target, m, orient.order)
    lams = set()
    for sq in squares:
        try:
            lams.update(solve_lambda(nval, sq, m, orient.order))
        except NoSolution:
            continue
    candidates = sorted(lams, key=lambda x: x.sort_key())
    logger.debug(f"{len(candidates)} candidats λ (N = {nval}, {len(squares)} valeurs de λ^2)")
    for lam in candidates:
        Phi = _action_from_lambda(inst, P, P2, lam)
        images = (orient2.point((Phi[0][0], Phi[1][0])), orient2.point((Phi[0][1], Phi[1][1])))
        try:
            phi = isogeny_oracle(inst.curve, inst.curve_image, d, orient.basis, images, m, rng)
        except Reject:
            continue
        logger.info(f"Attaque à deux orientations réussie avec λ = {lam}")
        return AttackReport("two-orient", norm=nval, matrix=Phi, isogeny=phi, lam=lam,
                            notes={"candidates": str(len(candidates))})
    raise OracleExhausted(f"aucun des {len(candidates)} candidats λ n'a été validé")


# Récupération de l'orientation


def recover_orientation(E: Curve, m: int, basis: Tuple[CurvePoint, CurvePoint], pairing_oracle: PairingOracle,
                        order: OrderDesc, rng: Optional[random.Random] = None,
                        rounds: Optional[int] = None, strict: bool = False) -> Matrix:
    """
    Matrice de [τ] sur E[m] à partir d'un oracle calculant T̂, par vote majoritaire.

    Chaque candidat doit vérifier le polynôme minimal et la sesquilinéarité
    sur la base ; seuls les tours tirant un générateur votent.

    Args:
        E: la courbe
        m: niveau de torsion, premier à Δ
        basis: base (B1, B2) de E[m]
        pairing_oracle: (P, Q) -> T̂(P, Q) réduit
        order: ordre (t, n) de τ
        rounds: nombre de tirages (MAJORITY_ROUNDS par défaut)
        strict: lever TotientTooSmall si φ(m) <= √(2/3)·m
    """
    rng = rng or random.Random(0)
    rounds = rounds or settings.MAJORITY_ROUNDS
    phi_m = int(totient(m))
    if 3 * phi_m * phi_m <= 2 * m * m:
        if strict:
            raise TotientTooSmall(f"φ({m}) = {phi_m} <= √(2/3)·{m}")
        logger.warning(f"φ({m}) = {phi_m} <= √(2/3)·{m} : proportion de générateurs sous le seuil")
    # τ scalaire (Δ = 0) : appariements triviaux, aucun tour ne votera
    if order.disc != 0 and gcd(m, order.disc) != 1:
        raise RamifiedPrime(f"gcd({m}, Δ) ≠ 1")
    B = tuple(basis)
    pair_table = {(i, l): pairing_oracle(B[i], B[l]) for i in range(2) for l in range(2)}
    tau, tau_bar = order.tau, order.tau.conj()

    def point(coords):
        return (coords[0] % m) * B[0] + (coords[1] % m) * B[1]

    def consistent(M: Matrix) -> bool:
        if not check_min_poly(M, order, m):
            return False
        for j in range(2):
            for l in range(2):
                ref = pair_table[(j, l)]
                left = pair_table[(0, l)].pow(M[0][j]) * pair_table[(1, l)].pow(M[1][j])
                right = pair_table[(j, 0)].pow(M[0][l]) * pair_table[(j, 1)].pow(M[1][l])
                if left.logs != ref.pow(tau_bar).logs or right.logs != ref.pow(tau).logs:
                    return False
        return True

    votes: Counter = Counter()
    voting_rounds = 0
    for round_idx in range(rounds):
        while True:
            p = (rng.randrange(m), rng.randrange(m))
            if gcd(gcd(*p), m) == 1:
                break
        q = (rng.randrange(m), rng.randrange(m))
        if not is_unit(p[0] * q[1] - p[1] * q[0], m):
            continue
        P, Q = point(p), point(q)
        try:
            lams = olinear_dlog_all(pairing_oracle(P, P), pairing_oracle(P, Q), m, order)
        except (DegenerateBase, NoSolution):
            logger.debug(f"Tour {round_idx + 1}: auto-appariement dégénéré")
            continue
        found = set()
        for lam in lams:
            l1, l2 = lam.a % m, lam.b % m
            if not is_unit(l2, m):
                continue
            inv = pow(l2, -1, m)
            tp = ((q[0] - l1 * p[0]) * inv % m, (q[1] - l1 * p[1]) * inv % m)
            tq = ((l1 * tp[0] + l2 * (order.t * tp[0] - order.n * p[0])) % m,
                  (l1 * tp[1] + l2 * (order.t * tp[1] - order.n * p[1])) % m)
            M = mat_mul(mat_from_columns(tp, tq, m), mat_inv(mat_from_columns(p, q, m), m), m)
            if consistent(M):
                found.add(M)
        if found:
            voting_rounds += 1
            votes.update(found)
    if not votes:
        raise MajorityInconclusive("aucun tour n'a produit de candidat")
    winner, count = votes.most_common(1)[0]
    if 2 * count <= voting_rounds:
        logger.warning(f"Vote sans majorité: {count} voix sur {voting_rounds} tours")
        raise MajorityInconclusive(f"{count} voix sur {voting_rounds} tours")
    logger.info(f"Orientation récupérée: M = {winner} ({count}/{voting_rounds})")
    return winner


# Vérité scellée et répartition par variante


def compare_with_truth(inst: AttackInstance, report: AttackReport, rng: Optional[random.Random] = None) -> bool:
    """Compare le résultat d'une attaque au bloc scellé de l'instance."""
    sealed = inst.sealed
    if sealed is None:
        raise WrongOrder("instance sans vérité scellée")
    m = inst.m
    variant = report.variant
    if variant == "norm":
        truth_image = sealed.isogeny(inst.generator)
        return report.norm == sealed.norm and truth_image in report.candidates
    if variant == "sidh1":
        return report.matrix == sealed.matrix
    if variant == "diagonal":
        return set(isogeny_kernel(report.isogeny, rng)) == set(sealed.kernel)
    if variant == "ramified":
        return sealed.isogeny(report.point) in report.candidates
    if variant == "two-orient":
        negated = mat(-sealed.matrix[0][0], -sealed.matrix[0][1], -sealed.matrix[1][0], -sealed.matrix[1][1], m)
        return report.matrix in (sealed.matrix, negated)
    raise WrongOrder(f"variante inconnue: {variant}")


def attack_instance(inst: AttackInstance, rng: Optional[random.Random] = None) -> AttackReport:
    """Lance l'attaque correspondant à la variante, sur la vue sans vérité scellée."""
    view = inst.view()
    rng = rng or random.Random(inst.seed)
    variant = view.variant
    logger.info(f"Attaque {variant} sur {view.family} (d = {view.degree}, m = {view.m})")
    if variant == "norm":
        nval = recover_norm_lambda(view, rng=rng)
        return AttackReport(variant, norm=nval, candidates=candidate_images(view, nval=nval))
    if variant == "sidh1":
        action = sidh1_to_sidh(view, rng=rng)
        report = AttackReport(variant, matrix=action.matrix)
        if view.m * view.m > 4 * view.degree:
            try:
                report.isogeny = isogeny_oracle(view.curve, view.curve_image, view.degree, action.basis,
                                                action.images, view.m, rng)
            except (Reject, AmbiguousMatch) as e:
                report.notes["oracle"] = f"{e.code}: {str(e)}"
        return report
    if variant == "diagonal":
        phi, lam = diagonal_sidh(view, rng)
        return AttackReport(variant, isogeny=phi, notes={"lambda": str(lam)})
    if variant == "ramified":
        Q, candidates = ramified_attack(view, rng=rng)
        return AttackReport(variant, norm=candidates.params["norm"], candidates=candidates, point=Q)
    return two_orientation_attack(view, rng)
