"""
Courbes elliptiques y^2 = x^3 + ax + b sur F_{p^k}.

Ce module regroupe la loi de groupe en coordonnées affines, le comptage de
points à petite échelle, les bases de torsion, les fonctions de Miller,
l'appariement de Weil et les isogénies de Vélu (chaînes de degrés premiers).
"""
import logging
import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import gcd
from typing import List, Optional, Sequence, Tuple

from sympy import factorint, legendre_symbol
from sympy.ntheory import nthroot_mod

from ..core.config import settings
from ..core.errors import (
    BadKernelOrder,
    BudgetExceeded,
    DivisorSupportCollision,
    MixedCurves,
    NotOnCurve,
    PointNotInTorsion,
    SingularCurve,
    TorsionNotRational,
)
from .ffield import FieldDesc, FieldElement

logger = logging.getLogger("sesqui.curve")


def _default_rng(rng: Optional[random.Random]) -> random.Random:
    return rng if rng is not None else random.Random(0)


@dataclass(frozen=True)
class Curve:
    field: FieldDesc
    a: FieldElement
    b: FieldElement
    # #E(F) lorsqu'il est fourni par le fichier d'instance
    order: Optional[int] = dc_field(default=None, compare=False, hash=False)

    def __post_init__(self):
        if (4 * self.a ** 3 + 27 * self.b ** 2).is_zero():
            raise SingularCurve(f"courbe singulière: a={self.a}, b={self.b}")

    @classmethod
    def from_ints(cls, fdesc: FieldDesc, a, b, order: Optional[int] = None) -> "Curve":
        return cls(fdesc, fdesc(a), fdesc(b), order)

    @property
    def infinity(self) -> "CurvePoint":
        return CurvePoint(self, None, None)

    def rhs(self, x: FieldElement) -> FieldElement:
        return x * x * x + self.a * x + self.b

    def contains(self, x: FieldElement, y: FieldElement) -> bool:
        return y * y == self.rhs(x)

    def point(self, x, y) -> "CurvePoint":
        x, y = self.field(x), self.field(y)
        if not self.contains(x, y):
            raise NotOnCurve(f"({x}, {y}) n'est pas sur {self}")
        return CurvePoint(self, x, y)

    def lift_x(self, x) -> Optional["CurvePoint"]:
        x = self.field(x)
        r = self.rhs(x)
        if not r.is_square():
            return None
        return CurvePoint(self, x, r.sqrt())

    def j_invariant(self) -> FieldElement:
        a3 = 4 * self.a ** 3
        return 1728 * a3 / (a3 + 27 * self.b ** 2)

    def coefficients_in_prime_field(self) -> bool:
        return self.a.in_prime_field() and self.b.in_prime_field()

    def random_point(self, rng: Optional[random.Random] = None) -> "CurvePoint":
        rng = _default_rng(rng)
        while True:
            pt = self.lift_x(self.field.random_element(rng))
            if pt is not None:
                return -pt if rng.randrange(2) else pt

    def __repr__(self):
        return f"y^2 = x^3 + ({self.a})x + ({self.b}) sur {self.field}"


@dataclass(frozen=True)
class CurvePoint:
    curve: Curve
    x: Optional[FieldElement]
    y: Optional[FieldElement]

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def _check(self, other: "CurvePoint"):
        if other.curve != self.curve:
            raise MixedCurves("points sur des courbes différentes")

    def __neg__(self) -> "CurvePoint":
        if self.is_infinity:
            return self
        return CurvePoint(self.curve, self.x, -self.y)

    def __add__(self, other: "CurvePoint") -> "CurvePoint":
        self._check(other)
        if self.is_infinity:
            return other
        if other.is_infinity:
            return self
        if self.x == other.x:
            if (self.y + other.y).is_zero():
                return self.curve.infinity
            slope = (3 * self.x * self.x + self.curve.a) / (2 * self.y)
        else:
            slope = (other.y - self.y) / (other.x - self.x)
        x3 = slope * slope - self.x - other.x
        y3 = slope * (self.x - x3) - self.y
        return CurvePoint(self.curve, x3, y3)

    def __sub__(self, other: "CurvePoint") -> "CurvePoint":
        return self + (-other)

    def __mul__(self, n: int) -> "CurvePoint":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (-self) * (-n)
        result = self.curve.infinity
        addend = self
        while n:
            if n & 1:
                result = result + addend
            addend = addend + addend
            n >>= 1
        return result

    __rmul__ = __mul__

    def sort_key(self) -> Tuple:
        if self.is_infinity:
            return ()
        return (self.x.sort_key(), self.y.sort_key())

    def __repr__(self):
        if self.is_infinity:
            return "∞"
        return f"({self.x}, {self.y})"


def add(P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    return P + Q


def scalar_mul(n: int, P: CurvePoint) -> CurvePoint:
    return n * P


def point_order(P: CurvePoint, multiple: int) -> int:
    """Ordre exact de P, sachant que multiple * P = ∞."""
    if not (multiple * P).is_infinity:
        raise PointNotInTorsion(f"{P} n'est pas tué par {multiple}")
    order = multiple
    for prime, exp in factorint(multiple).items():
        for _ in range(exp):
            if ((order // prime) * P).is_infinity:
                order //= prime
            else:
                break
    return order


# Comptage et énumération


@lru_cache(maxsize=None)
def _prime_field_trace(p: int, a: int, b: int) -> int:
    total = p + 1
    for x in range(p):
        r = (x * x * x + a * x + b) % p
        total += int(legendre_symbol(r, p)) if r else 0
    return p + 1 - total


def frobenius_trace(E: Curve) -> int:
    """Trace a_p du Frobenius de degré p, pour des coefficients dans F_p."""
    if not E.coefficients_in_prime_field():
        raise ValueError("coefficients hors du sous-corps premier")
    p = E.field.p
    if p > settings.POINT_COUNT_BUDGET:
        raise BudgetExceeded(f"comptage de points sur F_{p} hors budget")
    return _prime_field_trace(p, E.a.coeffs[0], E.b.coeffs[0])


@lru_cache(maxsize=None)
def count_points(E: Curve) -> int:
    """#E(F), fourni par l'instance ou compté par force brute."""
    if E.order is not None:
        return E.order
    p, k = E.field.p, E.field.k
    if E.coefficients_in_prime_field():
        ap = frobenius_trace(E)
        s_prev, s = 2, ap
        for _ in range(k - 1):
            s_prev, s = s, ap * s - p * s_prev
        return p ** k + 1 - s
    if E.field.q > settings.POINT_COUNT_BUDGET:
        logger.error(f"Comptage impossible sur {E.field}: budget dépassé")
        raise BudgetExceeded(f"#E(F) requis dans l'instance pour q = {E.field.q}")
    total = 1
    for x in E.field.elements():
        r = E.rhs(x)
        total += 1 if r.is_zero() else (2 if r.is_square() else 0)
    return total


@lru_cache(maxsize=None)
def enumerate_points(E: Curve) -> Tuple[CurvePoint, ...]:
    if E.field.q > settings.enumeration_budget:
        raise BudgetExceeded(f"énumération de E({E.field}) hors budget")
    points = [E.infinity]
    for x in E.field.elements():
        pt = E.lift_x(x)
        if pt is not None:
            points.append(pt)
            if not pt.y.is_zero():
                points.append(-pt)
    return tuple(points)


def torsion_points(E: Curve, d: int, rng: Optional[random.Random] = None) -> List[CurvePoint]:
    """Tous les points de E(F)[d]."""
    if count_points(E) % (d * d) == 0:
        try:
            P, Q = torsion_basis(E, d, rng)
            return [a * P + b * Q for a in range(d) for b in range(d)]
        except TorsionNotRational:
            pass
    return [pt for pt in enumerate_points(E) if (d * pt).is_infinity]


# Bases de torsion


def _primary_part(n: int, m: int) -> int:
    part = 1
    for prime in factorint(m):
        while n % prime == 0:
            n //= prime
            part *= prime
    return part


def _sample_order_m(E: Curve, m: int, N: int, rng: random.Random) -> Optional[CurvePoint]:
    primary = _primary_part(N, m)
    R = (N // primary) * E.random_point(rng)
    if R.is_infinity:
        return None
    o = point_order(R, primary)
    if o % m:
        return None
    return (o // m) * R


def torsion_basis(E: Curve, m: int, rng: Optional[random.Random] = None) -> Tuple[CurvePoint, CurvePoint]:
    """
    Base (P, Q) de E[m], supposée entièrement rationnelle.

    Args:
        E: la courbe
        m: niveau de torsion, premier à la caractéristique
        rng: générateur pseudo-aléatoire
    """
    if m == 1:
        return E.infinity, E.infinity
    if gcd(m, E.field.p) != 1:
        raise TorsionNotRational(f"m = {m} n'est pas premier à la caractéristique")
    N = count_points(E)
    if N % (m * m):
        raise TorsionNotRational(f"{m}^2 ne divise pas #E(F) = {N}")
    rng = _default_rng(rng)
    for attempt in range(settings.TORSION_RETRY_BUDGET):
        P = _sample_order_m(E, m, N, rng)
        Q = _sample_order_m(E, m, N, rng)
        if P is None or Q is None:
            continue
        if is_torsion_basis(P, Q, m, rng):
            logger.debug(f"Base de E[{m}] trouvée après {attempt + 1} essais")
            return P, Q
    logger.error(f"Aucune base de E[{m}] trouvée sur {E}")
    raise TorsionNotRational(f"aucune base de E[{m}] dans le budget")


def is_torsion_basis(P: CurvePoint, Q: CurvePoint, m: int, rng: Optional[random.Random] = None) -> bool:
    if not ((m * P).is_infinity and (m * Q).is_infinity):
        return False
    if m == 1:
        return True
    return weil_pairing(P, Q, m, rng).mult_order() == m


# Fonctions de Miller

Divisor = Sequence[Tuple[int, CurvePoint]]


def _line_over_vertical(A: CurvePoint, B: CurvePoint, X: CurvePoint) -> Tuple[FieldElement, FieldElement]:
    """(l_{A,B}(X), v_{A+B}(X)) ; le quotient a pour diviseur (A)+(B)-(A+B)-(∞)."""
    one = X.curve.field.one()
    if A.is_infinity or B.is_infinity:
        return one, one
    if A.x == B.x and (A.y + B.y).is_zero():
        return X.x - A.x, one
    if A.x == B.x:
        slope = (3 * A.x * A.x + A.curve.a) / (2 * A.y)
    else:
        slope = (B.y - A.y) / (B.x - A.x)
    C = A + B
    return X.y - A.y - slope * (X.x - A.x), X.x - C.x


def miller_values(P: CurvePoint, n: int, points: Sequence[CurvePoint]) -> Tuple[CurvePoint, List[FieldElement]]:
    """
    Valeurs de f_{n,P} (diviseur n(P) - ([n]P) - (n-1)(∞)) aux points donnés.

    Renvoie ([n]P, valeurs). Lève DivisorSupportCollision si une droite
    s'annule en l'un des points.
    """
    fdesc = P.curve.field
    if n < 0:
        raise ValueError("n doit être positif")
    if n == 0 or P.is_infinity:
        return n * P, [fdesc.one() for _ in points]
    for X in points:
        if X.is_infinity:
            raise DivisorSupportCollision("point d'évaluation à l'infini")
    nums = [fdesc.one() for _ in points]
    dens = [fdesc.one() for _ in points]
    T = P
    for bit in bin(n)[3:]:
        for i, X in enumerate(points):
            num, den = _line_over_vertical(T, T, X)
            nums[i] = nums[i] * nums[i] * num
            dens[i] = dens[i] * dens[i] * den
        T = T + T
        if bit == "1":
            for i, X in enumerate(points):
                num, den = _line_over_vertical(T, P, X)
                nums[i] = nums[i] * num
                dens[i] = dens[i] * den
            T = T + P
    values = []
    for num, den in zip(nums, dens):
        if num.is_zero() or den.is_zero():
            raise DivisorSupportCollision("le support du diviseur rencontre celui de f")
        values.append(num / den)
    return T, values


def miller_function_at(A: CurvePoint, n: int, divisor: Divisor) -> FieldElement:
    """
    Évalue sur un diviseur de degré 0 la fonction de diviseur
    n(A) - ([n]A) - (n-1)(∞), pour n entier de signe quelconque.
    """
    fdesc = A.curve.field
    points = [pt for _, pt in divisor]
    if n >= 0:
        _, values = miller_values(A, n, points)
    else:
        nA, base = miller_values(A, -n, points)
        values = []
        for X, value in zip(points, base):
            vertical = fdesc.one() if nA.is_infinity else X.x - nA.x
            if vertical.is_zero():
                raise DivisorSupportCollision("verticale nulle au point d'évaluation")
            values.append((value * vertical).inv())
    result = fdesc.one()
    for (coef, _), value in zip(divisor, values):
        result = result * value ** coef
    return result


def miller_eval(P: CurvePoint, n: int, S: CurvePoint, T: CurvePoint) -> FieldElement:
    """f_{n,P}(S) / f_{n,P}(T)."""
    if n == 1 or P.is_infinity:
        return P.curve.field.one()
    return miller_function_at(P, n, [(1, S), (-1, T)])


def weil_pairing(P: CurvePoint, Q: CurvePoint, m: int, rng: Optional[random.Random] = None) -> FieldElement:
    """
    e_m(P, Q) = f_P(Q + S) f_Q(-S) / (f_P(S) f_Q(P - S)), f_X de diviseur m(X) - m(∞).

    S est un point auxiliaire tiré au hasard, retiré en cas de collision de support.
    """
    P._check(Q)
    fdesc = P.curve.field
    if not ((m * P).is_infinity and (m * Q).is_infinity):
        raise PointNotInTorsion(f"les points ne sont pas dans E[{m}]")
    if P.is_infinity or Q.is_infinity or P == Q:
        return fdesc.one()
    rng = _default_rng(rng)
    for attempt in range(settings.AUX_RETRY_BUDGET):
        S = P.curve.random_point(rng)
        try:
            num = miller_eval(P, m, Q + S, S)
            den = miller_eval(Q, m, P - S, -S)
            if num.is_zero() or den.is_zero():
                raise DivisorSupportCollision("valeur nulle")
            return num / den
        except DivisorSupportCollision:
            logger.debug(f"Collision de support (Weil), essai {attempt + 1}")
    raise DivisorSupportCollision("budget de points auxiliaires épuisé (Weil)")


# Isomorphismes


@dataclass(frozen=True)
class Isomorphism:
    domain: Curve
    codomain: Curve
    u: FieldElement

    def __call__(self, P: CurvePoint) -> CurvePoint:
        if P.curve != self.domain:
            raise MixedCurves("point hors du domaine de l'isomorphisme")
        if P.is_infinity:
            return self.codomain.infinity
        u2 = self.u * self.u
        return CurvePoint(self.codomain, u2 * P.x, u2 * self.u * P.y)


def _sixth_roots(c: FieldElement) -> List[FieldElement]:
    fdesc = c.desc
    if fdesc.k == 1:
        return [fdesc(int(r)) for r in nthroot_mod(c.coeffs[0], 6, fdesc.p, all_roots=True) or []]
    if fdesc.q > settings.enumeration_budget:
        raise BudgetExceeded("recherche de racines sixièmes hors budget")
    return [u for u in fdesc.elements() if not u.is_zero() and u ** 6 == c]


def _square_roots(c: FieldElement) -> List[FieldElement]:
    if not c.is_square():
        return []
    r = c.sqrt()
    return [r] if r.is_zero() else [r, -r]


def isomorphisms(E1: Curve, E2: Curve) -> List[Isomorphism]:
    """Tous les isomorphismes (x, y) -> (u^2 x, u^3 y) de E1 vers E2."""
    if E1.field != E2.field:
        raise MixedCurves("courbes sur des corps différents")
    if E1.j_invariant() != E2.j_invariant():
        return []
    units: List[FieldElement] = []
    if not E1.a.is_zero() and not E1.b.is_zero():
        w = (E1.a * E2.b) / (E2.a * E1.b)
        if w * w == E2.a / E1.a:
            units = _square_roots(w)
    elif E1.b.is_zero():
        for w in _square_roots(E2.a / E1.a):
            units.extend(_square_roots(w))
    else:
        units = _sixth_roots(E2.b / E1.b)
    units = sorted(set(units), key=lambda u: u.sort_key())
    return [Isomorphism(E1, E2, u) for u in units]


def automorphisms(E: Curve) -> List[Isomorphism]:
    return isomorphisms(E, E)


def is_isomorphic(E1: Curve, E2: Curve) -> bool:
    return bool(isomorphisms(E1, E2))


# Isogénies de Vélu


@dataclass(frozen=True)
class IsogenyStep:
    kernel: CurvePoint
    degree: int
    domain: Curve
    codomain: Curve
    # (x_Q, v_Q, u_Q) pour une moitié du noyau
    terms: Tuple[Tuple[FieldElement, FieldElement, FieldElement], ...]

    def __call__(self, P: CurvePoint) -> CurvePoint:
        if P.curve != self.domain:
            raise MixedCurves("point hors du domaine de l'isogénie")
        if P.is_infinity:
            return self.codomain.infinity
        X, dX = P.x, P.curve.field.one()
        for xQ, vQ, uQ in self.terms:
            diff = P.x - xQ
            if diff.is_zero():
                return self.codomain.infinity
            inv = diff.inv()
            inv2 = inv * inv
            X = X + vQ * inv + uQ * inv2
            dX = dX - vQ * inv2 - 2 * uQ * inv2 * inv
        return CurvePoint(self.codomain, X, P.y * dX)


def velu_isogeny(K: CurvePoint, ell: int) -> "Isogeny":
    """Isogénie de degré premier ell et de noyau <K>."""
    E = K.curve
    if gcd(ell, E.field.p) != 1 or K.is_infinity or not (ell * K).is_infinity:
        logger.error(f"Noyau invalide pour une isogénie de degré {ell}")
        raise BadKernelOrder(f"K n'est pas d'ordre exact {ell}")
    terms = []
    v = E.field.zero()
    w = E.field.zero()
    half = [K] if ell == 2 else [j * K for j in range(1, (ell - 1) // 2 + 1)]
    for Q in half:
        gx = 3 * Q.x * Q.x + E.a
        vQ = gx if Q.y.is_zero() else 2 * gx
        uQ = 4 * Q.y * Q.y
        v = v + vQ
        w = w + uQ + Q.x * vQ
        terms.append((Q.x, vQ, uQ))
    codomain = Curve(E.field, E.a - 5 * v, E.b - 7 * w, E.order)
    step = IsogenyStep(K, ell, E, codomain, tuple(terms))
    return Isogeny(E, codomain, (step,))


@dataclass(frozen=True)
class Isogeny:
    domain: Curve
    codomain: Curve
    steps: Tuple[IsogenyStep, ...] = ()
    post: Optional[Isomorphism] = None

    @property
    def degree(self) -> int:
        d = 1
        for step in self.steps:
            d *= step.degree
        return d

    def __call__(self, P: CurvePoint) -> CurvePoint:
        if P.curve != self.domain:
            raise MixedCurves("point hors du domaine de l'isogénie")
        for step in self.steps:
            P = step(P)
        if self.post is not None:
            P = self.post(P)
        return P

    def then(self, iso: Isomorphism) -> "Isogeny":
        if iso.domain != self.codomain:
            raise MixedCurves("isomorphisme incompatible")
        if self.post is not None:
            u = self.post.u * iso.u
            iso = Isomorphism(self.post.domain, iso.codomain, u)
        return Isogeny(self.domain, iso.codomain, self.steps, iso)


def identity_isogeny(E: Curve) -> Isogeny:
    return Isogeny(E, E)


def isogeny_eval(phi: Isogeny, P: CurvePoint) -> CurvePoint:
    return phi(P)


def compose(phi: Isogeny, psi: Isogeny) -> Isogeny:
    """phi ∘ psi."""
    if psi.codomain != phi.domain:
        raise MixedCurves("composition d'isogénies incompatibles")
    if psi.post is not None:
        raise MixedCurves("composition après un isomorphisme non prise en charge")
    return Isogeny(psi.domain, phi.codomain, psi.steps + phi.steps, phi.post)


def cyclic_isogeny(K: CurvePoint, d: int) -> Isogeny:
    """Chaîne de Vélu de noyau <K> cyclique d'ordre d, premiers croissants."""
    if point_order(K, d) != d:
        raise BadKernelOrder(f"K n'est pas d'ordre exact {d}")
    phi = identity_isogeny(K.curve)
    remaining = d
    primes = []
    for prime, exp in sorted(factorint(d).items()):
        primes.extend([prime] * exp)
    for ell in primes:
        step = velu_isogeny((remaining // ell) * K, ell)
        phi = compose(step, phi)
        K = step(K)
        remaining //= ell
    return phi


def subgroup_span(generators: Sequence[CurvePoint], E: Curve) -> Tuple[CurvePoint, ...]:
    """Sous-groupe engendré par une liste de points (énumération explicite)."""
    group = {E.infinity}
    for G in generators:
        if G.is_infinity:
            continue
        multiples = [E.infinity]
        pt = G
        while not pt.is_infinity:
            multiples.append(pt)
            pt = pt + G
            if len(multiples) > settings.enumeration_budget:
                raise BudgetExceeded("sous-groupe trop grand")
        group = {a + b for a in group for b in multiples}
    return tuple(sorted(group, key=lambda pt: pt.sort_key()))


def isogeny_from_kernel(points: Sequence[CurvePoint]) -> Isogeny:
    """
    Chaîne de Vélu de noyau le sous-groupe fini donné (cyclique ou non).

    À chaque étape on quotiente par le plus petit point d'ordre premier ell,
    ell le plus petit premier divisant le cardinal restant.
    """
    group = set(points)
    E = next(iter(group)).curve
    phi = identity_isogeny(E)
    while len(group) > 1:
        ell = min(factorint(len(group)))
        K = min((R for R in group if not R.is_infinity and (ell * R).is_infinity), key=lambda R: R.sort_key())
        step = velu_isogeny(K, ell)
        phi = compose(step, phi)
        group = {step(R) for R in group}
    return phi


def isogeny_kernel(phi: Isogeny, rng: Optional[random.Random] = None) -> Tuple[CurvePoint, ...]:
    """Points rationnels de E[deg φ] annulés par φ, triés."""
    pts = torsion_points(phi.domain, phi.degree, rng)
    return tuple(sorted((R for R in pts if phi(R).is_infinity), key=lambda R: R.sort_key()))
