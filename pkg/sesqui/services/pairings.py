"""
Appariements de Tate-Lichtenbaum, appariement sesquilinéaire T̂, appariement
modifié T' et oracle direct (lent) par diviseurs.

Toutes les comparaisons se font sur des valeurs réduites, c'est-à-dire
élevées à la puissance (q-1)/m et exprimées par leurs logarithmes en base du
générateur canonique de μ_m.
"""
import logging
import random
from dataclasses import dataclass
from math import gcd
from typing import Optional, Tuple

from ..core.config import settings
from ..core.errors import (
    BudgetExceeded,
    ConjugateNotInvertible,
    DivisorSupportCollision,
    NonPrincipalDivisor,
    PointNotInTorsion,
    RootsOfUnityMissing,
    WrongOrder,
)
from .curve import CurvePoint, _default_rng, _line_over_vertical, miller_function_at, point_order
from .dlog import dlog_mu
from .ffield import FieldDesc, FieldElement, mu_generator
from .modular import mat_vec
from .orientation import Orientation, apply
from .qorder import OrderElement, PairValue, pair_pow, rho_mod

logger = logging.getLogger("sesqui.pairings")


@dataclass(frozen=True)
class ReducedPairValue:
    value: PairValue
    m: int
    logs: Tuple[int, int]

    @classmethod
    def from_pair(cls, value: PairValue, m: int) -> "ReducedPairValue":
        g = mu_generator(value.x.desc, m)
        return cls(value, m, (dlog_mu(g, value.x, m), dlog_mu(g, value.y, m)))

    @classmethod
    def from_logs(cls, fdesc: FieldDesc, m: int, logs) -> "ReducedPairValue":
        g = mu_generator(fdesc, m)
        u, v = logs[0] % m, logs[1] % m
        return cls(PairValue(g ** u, g ** v), m, (u, v))

    @property
    def generator(self) -> FieldElement:
        return mu_generator(self.value.x.desc, self.m)

    def pow(self, alpha) -> "ReducedPairValue":
        if isinstance(alpha, int):
            logs = ((alpha * self.logs[0]) % self.m, (alpha * self.logs[1]) % self.m)
        else:
            logs = mat_vec(rho_mod(alpha, self.m), self.logs, self.m)
        return ReducedPairValue(pair_pow(self.value, alpha), self.m, logs)

    def __mul__(self, other: "ReducedPairValue") -> "ReducedPairValue":
        m = self.m
        return ReducedPairValue(self.value * other.value, m,
                                ((self.logs[0] + other.logs[0]) % m, (self.logs[1] + other.logs[1]) % m))

    def is_trivial(self) -> bool:
        return self.logs == (0, 0)

    def order(self) -> int:
        """Ordre multiplicatif : ppcm des ordres des deux coordonnées."""
        return self.m // gcd(gcd(self.logs[0], self.logs[1]), self.m)


def _reduction_exponent(fdesc: FieldDesc, m: int) -> int:
    if (fdesc.q - 1) % m:
        raise RootsOfUnityMissing(f"μ_{m} n'est pas contenu dans {fdesc}")
    return (fdesc.q - 1) // m


# Tate-Lichtenbaum


def tate(P: CurvePoint, Q: CurvePoint, m: int, rng: Optional[random.Random] = None) -> FieldElement:
    """t_m(P, Q) = f_{m,P}((Q+R) - (R)) pour un point auxiliaire R admissible."""
    fdesc = P.curve.field
    if not (m * P).is_infinity:
        raise PointNotInTorsion(f"{P} n'est pas dans E[{m}]")
    if P.is_infinity or Q.is_infinity:
        return fdesc.one()
    rng = _default_rng(rng)
    for attempt in range(settings.AUX_RETRY_BUDGET):
        R = P.curve.random_point(rng)
        S = Q + R
        if S.is_infinity:
            continue
        try:
            return miller_function_at(P, m, [(1, S), (-1, R)])
        except DivisorSupportCollision:
            logger.debug(f"Collision de support (Tate), essai {attempt + 1}")
    raise DivisorSupportCollision("budget de points auxiliaires épuisé (Tate)")


def tate_reduced(P: CurvePoint, Q: CurvePoint, m: int, rng: Optional[random.Random] = None) -> FieldElement:
    """t_m(P, Q)^((q-1)/m), indépendant des choix auxiliaires."""
    exponent = _reduction_exponent(P.curve.field, m)
    return tate(P, Q, m, rng) ** exponent


def _combine(t1: FieldElement, t2: FieldElement, trace: int, norm: int) -> PairValue:
    return PairValue(t1 ** (2 * norm) * t2 ** (-trace), t2 ** 2 * t1 ** (-trace))


def sesqui_T(P: CurvePoint, Q: CurvePoint, m: int, orient: Orientation,
             rng: Optional[random.Random] = None) -> ReducedPairValue:
    """
    T̂_m(P, Q) à partir de t1 = t(P, Q) et t2 = t([τ]P, Q) :
    (t1^{2N} t2^{-Tr}, t2^2 t1^{-Tr}).
    """
    t1 = tate_reduced(P, Q, m, rng)
    t2 = tate_reduced(apply(orient, orient.order.tau, P), Q, m, rng)
    return ReducedPairValue.from_pair(_combine(t1, t2, orient.order.t, orient.order.n), m)


def literal_form(P: CurvePoint, Q: CurvePoint, m: int, orient: Orientation,
                  rng: Optional[random.Random] = None) -> ReducedPairValue:
    """Forme non réécrite : (t(P,Q)^{2N} t([-τ]P,Q)^{Tr}, t([τ-τ̄]P,Q))."""
    order = orient.order
    tau = order.tau
    minus_tau_p = apply(orient, -tau, P)
    diff_p = apply(orient, tau - tau.conj(), P)
    x = tate_reduced(P, Q, m, rng) ** (2 * order.n) * tate_reduced(minus_tau_p, Q, m, rng) ** order.t
    y = tate_reduced(diff_p, Q, m, rng)
    return ReducedPairValue.from_pair(PairValue(x, y), m)


def tprime(P: CurvePoint, Q: CurvePoint, m: int, orient: Orientation,
           rng: Optional[random.Random] = None) -> ReducedPairValue:
    """T'_m(P, Q) = (t([τ]P, Q), t(P, Q))."""
    t1 = tate_reduced(apply(orient, orient.order.tau, P), Q, m, rng)
    t2 = tate_reduced(P, Q, m, rng)
    return ReducedPairValue.from_pair(PairValue(t1, t2), m)


def self_pairing_order(P: CurvePoint, m: int, orient: Orientation, which: str = "T̂",
                       rng: Optional[random.Random] = None) -> int:
    if point_order(P, m) != m:
        raise WrongOrder(f"{P} n'est pas d'ordre {m}")
    pairing = tprime if which in ("T'", "tprime") else sesqui_T
    return pairing(P, P, m, orient, rng).order()


# Appariements relatifs à α


@dataclass(frozen=True)
class AlphaPairing:
    alpha: OrderElement
    twisted: ReducedPairValue
    value: Optional[ReducedPairValue]

    @property
    def conjugate_invertible(self) -> bool:
        return self.value is not None


def _in_ideal(x: OrderElement, alpha: OrderElement) -> bool:
    """x ∈ αO  <=>  x·ᾱ ∈ N(α)O."""
    prod = x * alpha.conj()
    n = alpha.norm()
    return prod.a % n == 0 and prod.b % n == 0


def conjugate_inverse(alpha: OrderElement) -> Optional[OrderElement]:
    """β avec β·ᾱ ≡ 1 modulo αO, ou None s'il n'existe pas."""
    n = alpha.norm()
    if n == 1:
        return alpha.order.one
    if n * n > settings.enumeration_budget:
        raise BudgetExceeded(f"énumération de O/{n}O hors budget")
    abar = alpha.conj()
    for b0 in range(n):
        for b1 in range(n):
            beta = OrderElement(b0, b1, alpha.order)
            if _in_ideal(beta * abar - 1, alpha):
                return beta
    return None


def sesqui_T_alpha(P: CurvePoint, Q: CurvePoint, alpha: OrderElement, orient: Orientation,
                   rng: Optional[random.Random] = None, strict: bool = False) -> AlphaPairing:
    """
    T̂_{N(α)}(P, Q) = T̂_α(P, Q)^{ᾱ}, et T̂_α lui-même lorsque ᾱ est inversible modulo α.

    Args:
        P: point de E[ᾱ] (dans E[m])
        Q: point de E[m]
        alpha: élément de O
        orient: orientation de E[m]
        strict: lever ConjugateNotInvertible au lieu de renvoyer la seule valeur tordue
    """
    fdesc = P.curve.field
    if not apply(orient, alpha.conj(), P).is_infinity:
        raise PointNotInTorsion(f"{P} n'est pas dans E[ᾱ] pour α = {alpha}")
    n = alpha.norm()
    if n == 1:
        trivial = ReducedPairValue.from_logs(fdesc, 1, (0, 0))
        return AlphaPairing(alpha, trivial, trivial)
    if alpha.b == 0:
        level = abs(alpha.a)
        twisted = sesqui_T(P, Q, level, orient, rng)
    else:
        level = n
        t1 = tate_reduced(P, Q, n, rng)
        t2 = tate_reduced(apply(orient, orient.order.tau, P), Q, n, rng)
        twisted = ReducedPairValue.from_pair(_combine(t1, t2, orient.order.t, orient.order.n), n)
    beta = conjugate_inverse(alpha)
    if beta is None:
        logger.warning(f"ᾱ n'est pas inversible modulo α = {alpha}; valeur tordue seule")
        if strict:
            raise ConjugateNotInvertible(f"α = {alpha} partage un facteur avec son conjugué")
        return AlphaPairing(alpha, twisted, None)
    value = twisted.pow(beta)
    return AlphaPairing(alpha, twisted, value)


# Oracle direct


def _function_at(X: CurvePoint, A: int, P: CurvePoint, B: int, divisor) -> FieldElement:
    """Fonction de diviseur A(X) + B(P) - (A+B)(∞) évaluée sur un diviseur de degré 0."""
    if not (A * X + B * P).is_infinity:
        raise NonPrincipalDivisor("A·X + B·P ≠ ∞")
    AX, BP = A * X, B * P
    value = miller_function_at(X, A, divisor) * miller_function_at(P, B, divisor)
    for coef, pt in divisor:
        vertical, _ = _line_over_vertical(AX, BP, pt)
        if vertical.is_zero():
            raise DivisorSupportCollision("verticale nulle sur le diviseur")
        value = value * vertical ** coef
    return value


def sesqui_direct(P: CurvePoint, Q: CurvePoint, alpha: OrderElement, orient: Orientation,
                  R_aux: Optional[CurvePoint] = None, rng: Optional[random.Random] = None,
                  reduce: bool = True):
    """
    Oracle lent : définition directe par les fonctions f_{P,1}, f_{P,2}.

    Le point auxiliaire est pris dans E[m] (l'action de τ n'est connue que là).
    La réduction applique l'exposant (q-1)ᾱ/N(α).
    """
    fdesc = P.curve.field
    order = orient.order
    (A, B), (C, D) = ((alpha.a, -alpha.b * order.n), (alpha.b, alpha.a + alpha.b * order.t))
    if alpha.norm() == 1:
        one = PairValue(fdesc.one(), fdesc.one())
        return ReducedPairValue.from_pair(one, 1) if reduce else one
    if not apply(orient, alpha.conj(), P).is_infinity:
        raise PointNotInTorsion(f"{P} n'est pas dans E[ᾱ]")
    X = apply(orient, -order.tau, P)
    minus_tau_q = apply(orient, -order.tau, Q)
    rng = _default_rng(rng)
    attempts = 1 if R_aux is not None else settings.AUX_RETRY_BUDGET
    raw = None
    for attempt in range(attempts):
        R = R_aux if R_aux is not None else orient.random_point(rng)
        minus_tau_r = apply(orient, -order.tau, R)
        D1 = [(1, minus_tau_q + minus_tau_r), (-1, minus_tau_r)]
        D2 = [(1, Q + R), (-1, R)]
        if any(pt.is_infinity for _, pt in D1 + D2):
            continue
        try:
            f1_d1 = _function_at(X, A, P, B, D1)
            f2_d1 = _function_at(X, C, P, D, D1)
            f1_d2 = _function_at(X, A, P, B, D2)
            f2_d2 = _function_at(X, C, P, D, D2)
        except DivisorSupportCollision:
            logger.debug(f"Collision de support (oracle direct), essai {attempt + 1}")
            continue
        raw = PairValue(f1_d1 * f1_d2 ** order.t * f2_d2 ** order.n, f2_d1 * f1_d2.inv())
        break
    if raw is None:
        raise DivisorSupportCollision("aucun point auxiliaire admissible")
    if not reduce:
        return raw
    n = alpha.norm()
    level = abs(alpha.a) if alpha.b == 0 else n
    exponent = alpha.conj() * (fdesc.q - 1)
    if alpha.b == 0:
        return ReducedPairValue.from_pair(raw ** _reduction_exponent(fdesc, level), level)
    if exponent.a % n or exponent.b % n:
        raise RootsOfUnityMissing(f"(q-1)ᾱ/N(α) n'est pas entier pour α = {alpha}")
    epsilon = OrderElement(exponent.a // n, exponent.b // n, order)
    return ReducedPairValue.from_pair(pair_pow(raw, epsilon), level)
