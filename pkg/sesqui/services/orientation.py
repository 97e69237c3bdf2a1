"""
Action d'une orientation O = Z[τ] sur E[m].

Une orientation est stockée comme la matrice de τ dans une base (P, Q) de
E[m] ; toutes les requêtes de structure de module (générateurs, cyclicité,
sous-espaces propres, noyaux d'idéaux) se ramènent à de l'algèbre linéaire
sur Z/mZ.
"""
import logging
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd
from typing import Dict, Optional, Sequence, Tuple

from sympy import jacobi_symbol

from ..core.config import settings
from ..core.errors import (
    BudgetExceeded,
    DenominatorNotInvertible,
    EmpiricalContradiction,
    MinPolyMismatch,
    NoModuleGenerator,
    NonSquare,
    NoSuchSubgroup,
    NotSplit,
    PointNotInTorsion,
    UnknownEndomorphism,
    WrongOrder,
)
from .curve import Curve, CurvePoint, Isogeny, torsion_basis
from .dlog import point_dlog2d
from .ffield import square_root_of_minus_one
from .modular import (
    Matrix,
    crt_combine,
    is_unit,
    mat,
    mat_det,
    mat_from_columns,
    mat_inv,
    mat_mul,
    mat_vec,
    prime_powers,
)
from .qorder import OrderDesc, OrderElement

logger = logging.getLogger("sesqui.orientation")


# Expressions d'endomorphismes

Word = Tuple[str, ...]
_TOKEN = re.compile(r"\s*(?:(\d+)|(scalar|pi|i)\b|(.))")


class _Parser:
    def __init__(self, text: str):
        self.tokens = []
        for number, name, symbol in _TOKEN.findall(text):
            if number:
                self.tokens.append(("num", int(number)))
            elif name:
                self.tokens.append(("name", name))
            elif symbol.strip():
                self.tokens.append(("sym", symbol))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise UnknownEndomorphism(f"expression invalide près du jeton {self.pos}")
        self.pos += 1
        return tok

    def expr(self) -> Dict[Word, Fraction]:
        poly = self.term()
        while self.peek() in (("sym", "+"), ("sym", "-")):
            sign = 1 if self.take()[1] == "+" else -1
            poly = _padd(poly, _pscale(self.term(), sign))
        return poly

    def term(self) -> Dict[Word, Fraction]:
        poly = self.unary()
        while self.peek() in (("sym", "*"), ("sym", "/")):
            if self.take()[1] == "*":
                poly = _pmul(poly, self.unary())
            else:
                poly = _pscale(poly, Fraction(1, self.take("num")[1]))
        return poly

    def unary(self) -> Dict[Word, Fraction]:
        if self.peek() == ("sym", "-"):
            self.take()
            return _pscale(self.unary(), -1)
        return self.factor()

    def factor(self) -> Dict[Word, Fraction]:
        kind, value = self.peek()
        if kind == "num":
            self.take()
            return {(): Fraction(value)}
        if kind == "name" and value == "scalar":
            self.take()
            sign = -1 if self.peek() == ("sym", "-") else 1
            if sign < 0:
                self.take()
            return {(): Fraction(sign * self.take("num")[1])}
        if kind == "name":
            self.take()
            return {(value,): Fraction(1)}
        self.take("sym", "(")
        poly = self.expr()
        self.take("sym", ")")
        return poly


def _padd(p1, p2):
    out = dict(p1)
    for w, c in p2.items():
        out[w] = out.get(w, 0) + c
    return {w: c for w, c in out.items() if c}


def _pscale(p, s):
    return {w: c * s for w, c in p.items() if c * s}


def _pmul(p1, p2):
    out: Dict[Word, Fraction] = {}
    for w1, c1 in p1.items():
        for w2, c2 in p2.items():
            out[w1 + w2] = out.get(w1 + w2, 0) + c1 * c2
    return {w: c for w, c in out.items() if c}


@dataclass(frozen=True)
class EndoExpr:
    """Combinaison entière (dénominateur autorisé) de mots en i et pi."""
    terms: Tuple[Tuple[Word, int], ...]
    denominator: int = 1
    source: str = ""

    @classmethod
    def parse(cls, text: str) -> "EndoExpr":
        parser = _Parser(text)
        poly = parser.expr()
        if parser.pos != len(parser.tokens):
            raise UnknownEndomorphism(f"jetons superflus dans {text!r}")
        den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in poly.values()), 1)
        terms = tuple(sorted((w, int(c * den)) for w, c in poly.items()))
        return cls(terms, den, text)

    def __call__(self, R: CurvePoint, m: int) -> CurvePoint:
        if gcd(self.denominator, m) != 1:
            raise DenominatorNotInvertible(f"{self.denominator} n'est pas inversible modulo {m}")
        total = R.curve.infinity
        for word, coef in self.terms:
            pt = R
            for name in reversed(word):
                pt = primitive_endomorphism(name, pt)
            total = total + coef * pt
        return pow(self.denominator, -1, m) * total if self.denominator != 1 else total

    def __str__(self):
        return self.source


def primitive_endomorphism(name: str, R: CurvePoint) -> CurvePoint:
    E = R.curve
    if R.is_infinity:
        return R
    if name == "i":
        if not E.b.is_zero():
            raise UnknownEndomorphism("i n'est défini que pour y^2 = x^3 + ax")
        try:
            iota = square_root_of_minus_one(E.field)
        except NonSquare:
            raise UnknownEndomorphism(f"-1 n'est pas un carré dans {E.field}")
        return CurvePoint(E, -R.x, iota * R.y)
    if name == "pi":
        if not E.coefficients_in_prime_field():
            raise UnknownEndomorphism("le Frobenius de degré p n'est pas un endomorphisme de cette courbe")
        return CurvePoint(E, R.x.frobenius(), R.y.frobenius())
    raise UnknownEndomorphism(f"endomorphisme primitif inconnu: {name}")


# Orientations


@dataclass(frozen=True)
class Orientation:
    curve: Curve
    m: int
    basis: Tuple[CurvePoint, CurvePoint]
    matrix: Matrix
    order: OrderDesc
    conductor: Optional[int] = None
    endo: Optional[EndoExpr] = None

    def element_matrix(self, alpha: OrderElement) -> Matrix:
        """M_α = aI + bM_τ."""
        (m11, m12), (m21, m22) = self.matrix
        a, b = alpha.a, alpha.b
        return mat(a + b * m11, b * m12, b * m21, a + b * m22, self.m)

    def coords(self, R: CurvePoint) -> Tuple[int, int]:
        return point_dlog2d(R, self.basis, self.m)

    def point(self, coords: Sequence[int]) -> CurvePoint:
        P, Q = self.basis
        return (coords[0] % self.m) * P + (coords[1] % self.m) * Q

    def apply_coords(self, alpha: OrderElement, coords: Sequence[int]) -> Tuple[int, int]:
        return mat_vec(self.element_matrix(alpha), coords, self.m)

    def conj_matrix(self) -> Matrix:
        (m11, m12), (m21, m22) = self.matrix
        t = self.order.t
        return mat(t - m11, -m12, -m21, t - m22, self.m)

    def random_point(self, rng: random.Random) -> CurvePoint:
        """Point aléatoire d'ordre exactement m."""
        while True:
            u, v = rng.randrange(self.m), rng.randrange(self.m)
            if gcd(gcd(u, v), self.m) == 1:
                return self.point((u, v))


def check_min_poly(M: Matrix, order: OrderDesc, m: int) -> bool:
    M2 = mat_mul(M, M, m)
    return all(
        (M2[i][j] - order.t * M[i][j] + (order.n if i == j else 0)) % m == 0
        for i in range(2) for j in range(2)
    )


def orientation_from_endo(E: Curve, m: int, basis: Tuple[CurvePoint, CurvePoint], expr, order: OrderDesc,
                          conductor: Optional[int] = None) -> Orientation:
    """
    Construit l'orientation définie par l'expression expr sur la base donnée.

    Args:
        E: la courbe
        m: niveau de torsion
        basis: base (P, Q) de E[m]
        expr: EndoExpr ou texte, p. ex. "(i + pi)/2"
        order: ordre (t, n) de τ
        conductor: conducteur relatif (métadonnée)
    """
    if isinstance(expr, str):
        expr = EndoExpr.parse(expr)
    if gcd(m, E.field.p) != 1:
        raise PointNotInTorsion("m doit être premier à la caractéristique")
    P, Q = basis
    cols = [point_dlog2d(expr(R, m), basis, m) for R in (P, Q)]
    M = mat_from_columns(cols[0], cols[1], m)
    if not check_min_poly(M, order, m):
        logger.error(f"Polynôme minimal violé pour {expr} avec t={order.t}, n={order.n}")
        raise MinPolyMismatch(f"M = {M} ne vérifie pas x^2 - {order.t}x + {order.n} modulo {m}")
    logger.debug(f"Orientation {expr} sur E[{m}]: M = {M}")
    return Orientation(E, m, basis, M, order, conductor, expr)


def orientation_from_matrix(E: Curve, m: int, basis, M: Matrix, order: OrderDesc,
                            conductor: Optional[int] = None) -> Orientation:
    M = mat(M[0][0], M[0][1], M[1][0], M[1][1], m)
    if not check_min_poly(M, order, m):
        raise MinPolyMismatch(f"M = {M} ne vérifie pas le polynôme minimal de τ")
    return Orientation(E, m, tuple(basis), M, order, conductor)


def apply(orient: Orientation, alpha, R: CurvePoint) -> CurvePoint:
    """[α]R pour R dans E[m]."""
    if isinstance(alpha, int):
        alpha = orient.order(alpha)
    return orient.point(orient.apply_coords(alpha, orient.coords(R)))


def _require_order_m(orient: Orientation, R: CurvePoint) -> Tuple[int, int]:
    u, v = orient.coords(R)
    if gcd(gcd(u, v), orient.m) != 1:
        raise WrongOrder(f"{R} n'est pas d'ordre {orient.m}")
    return u, v


def prime_type(order: OrderDesc, q: int) -> str:
    """Comportement du premier q dans O : 'split', 'inert' ou 'ramified'."""
    disc = order.disc
    if disc % q == 0:
        return "ramified"
    if q == 2:
        return "split" if disc % 8 == 1 else "inert"
    return "split" if int(jacobi_symbol(disc % q, q)) == 1 else "inert"


def _coords_generate(orient: Orientation, coords: Sequence[int]) -> bool:
    w = orient.apply_coords(orient.order.tau, coords)
    return is_unit(coords[0] * w[1] - coords[1] * w[0], orient.m)


def is_module_generator(orient: Orientation, R: CurvePoint) -> bool:
    coords = _require_order_m(orient, R)
    if all(prime_type(orient.order, q) == "inert" for q, _, _ in prime_powers(orient.m)):
        return True
    return _coords_generate(orient, coords)


def max_s(orient: Orientation, R: CurvePoint) -> int:
    """Plus grand s | m tel que E[s] ⊆ OR."""
    m = orient.m
    u, v = _require_order_m(orient, R)
    w1, w2 = orient.apply_coords(orient.order.tau, (u, v))
    det = u * w2 - v * w1
    if det == 0:
        return 1
    first = gcd(gcd(u, v), gcd(w1, w2))
    return m // gcd(abs(det) // first, m)


def is_cyclic_module(orient: Orientation, f: Optional[int] = None) -> bool:
    """gcd(m, f) = 1, recoupé par une recherche de générateur."""
    f = f if f is not None else orient.conductor
    if f is None:
        raise ValueError("conducteur relatif inconnu")
    predicate = gcd(orient.m, f) == 1
    m = orient.m
    if m * m <= settings.enumeration_budget:
        candidates = ((u, v) for u in range(m) for v in range(m))
    else:
        rng = random.Random(m)
        candidates = ((rng.randrange(m), rng.randrange(m)) for _ in range(settings.GENERATOR_SEARCH_BUDGET))
    found = any(gcd(gcd(u, v), m) == 1 and _coords_generate(orient, (u, v)) for u, v in candidates)
    if found != predicate:
        logger.error(f"Cyclicité contradictoire: gcd({m}, {f}) et recherche = {found}")
        raise EmpiricalContradiction(f"le conducteur {f} contredit la structure observée de E[{m}]")
    return predicate


def ideal_kernel(orient: Orientation, generators: Sequence[OrderElement], expected_order: int) -> CurvePoint:
    """Point d'ordre exact expected_order annulé par tous les générateurs de l'idéal."""
    m = orient.m
    if expected_order == 1:
        return orient.curve.infinity
    if m * m > settings.enumeration_budget:
        raise BudgetExceeded(f"énumération de E[{m}] hors budget")
    matrices = [orient.element_matrix(beta) for beta in generators]
    for u, v in product(range(m), repeat=2):
        if m // gcd(gcd(u, v), m) != expected_order:
            continue
        if all(mat_vec(M, (u, v), m) == (0, 0) for M in matrices):
            return orient.point((u, v))
    raise NoSuchSubgroup(f"aucun point d'ordre {expected_order} dans le noyau de l'idéal")


def _eigen_pair(M: Matrix, order: OrderDesc, q: int, qk: int):
    roots = [c for c in range(qk) if (c * c - order.t * c + order.n) % qk == 0]
    if len({c % q for c in roots}) < 2:
        raise NotSplit(f"{q} n'est pas décomposé pour cette orientation")
    c1 = roots[0]
    c2 = (order.t - c1) % qk
    vectors = []
    for c in (c1, c2):
        a, b, g, d = M[0][0] - c, M[0][1], M[1][0], M[1][1] - c
        if b % q or a % q:
            vec = (b % qk, -a % qk)
        else:
            vec = (d % qk, -g % qk)
        vectors.append(vec)
    return (c1, vectors[0]), (c2, vectors[1])


def eigenbasis_with_values(orient: Orientation):
    """((S, c_S), (T, c_T)) avec [τ]S = [c_S]S et [τ]T = [c_T]T."""
    m = orient.m
    (m11, m12), (m21, m22) = orient.matrix
    if m12 % m == 0 and m21 % m == 0 and (m11 - m22) % m == 0:
        P, Q = orient.basis
        return (P, m11), (Q, m11)
    firsts, seconds, moduli = [], [], []
    for q, k, qk in prime_powers(m):
        Mq = tuple(tuple(x % qk for x in row) for row in orient.matrix)
        first, second = _eigen_pair(Mq, orient.order, q, qk)
        firsts.append(first)
        seconds.append(second)
        moduli.append(qk)
    out = []
    for pairs in (firsts, seconds):
        c = crt_combine([cv[0] for cv in pairs], moduli)
        u = crt_combine([cv[1][0] for cv in pairs], moduli)
        v = crt_combine([cv[1][1] for cv in pairs], moduli)
        out.append((orient.point((u, v)), c))
    return out[0], out[1]


def eigenbasis(orient: Orientation) -> Tuple[CurvePoint, CurvePoint]:
    (S, _), (T, _) = eigenbasis_with_values(orient)
    return S, T


# Transport le long d'une isogénie


def torsion_matrix(phi: Isogeny, basis: Tuple[CurvePoint, CurvePoint], target_basis: Tuple[CurvePoint, CurvePoint],
                   m: int) -> Matrix:
    """Φ avec φP = Φ11 P' + Φ21 Q' et φQ = Φ12 P' + Φ22 Q'."""
    cols = [point_dlog2d(phi(R), target_basis, m) for R in basis]
    return mat_from_columns(cols[0], cols[1], m)


def transport(orient: Orientation, phi: Isogeny, target_basis: Tuple[CurvePoint, CurvePoint]) -> Orientation:
    """Orientation image sur le codomaine : M' = Φ M Φ^{-1}."""
    m = orient.m
    if gcd(phi.degree, m) != 1:
        raise PointNotInTorsion("le degré de l'isogénie doit être premier à m")
    Phi = torsion_matrix(phi, orient.basis, target_basis, m)
    M = mat_mul(mat_mul(Phi, orient.matrix, m), mat_inv(Phi, m), m)
    return Orientation(phi.codomain, m, tuple(target_basis), M, orient.order, orient.conductor)



def rebase(orient: Orientation, new_basis: Tuple[CurvePoint, CurvePoint]) -> Orientation:
    """Même orientation exprimée dans une autre base de E[m] : C^{-1} M C."""
    m = orient.m
    C = mat_from_columns(orient.coords(new_basis[0]), orient.coords(new_basis[1]), m)
    if not is_unit(mat_det(C), m):
        raise WrongOrder("les points donnés ne forment pas une base de E[m]")
    M = mat_mul(mat_mul(mat_inv(C, m), orient.matrix, m), C, m)
    return Orientation(orient.curve, m, tuple(new_basis), M, orient.order, orient.conductor, orient.endo)


def orientation_at_level(E: Curve, level: int, expr, order: OrderDesc, rng: Optional[random.Random] = None,
                         conductor: Optional[int] = None) -> Orientation:
    """
    Orientation sur E[level] définie par expr, même si le dénominateur de expr
    n'est pas inversible modulo level.

    Dans ce cas le numérateur est évalué sur une base de E[D·level] (D le
    dénominateur) : ses coordonnées sont divisibles par D et le quotient donne
    l'action de τ sur la base (D·P, D·Q) de E[level].
    """
    if isinstance(expr, str):
        expr = EndoExpr.parse(expr)
    den = expr.denominator
    if gcd(den, level) == 1:
        return orientation_from_endo(E, level, torsion_basis(E, level, rng), expr, order, conductor)
    big = den * level
    P, Q = torsion_basis(E, big, rng)
    numerator = EndoExpr(expr.terms, 1, f"{den}*({expr.source})")
    cols = []
    for R in (P, Q):
        u, v = point_dlog2d(numerator(R, big), (P, Q), big)
        if u % den or v % den:
            logger.error(f"{expr} n'est pas un endomorphisme sur E[{big}]")
            raise DenominatorNotInvertible(f"le numérateur de {expr} n'est pas divisible par {den}")
        cols.append((u // den, v // den))
    M = mat_from_columns(cols[0], cols[1], level)
    if not check_min_poly(M, order, level):
        raise MinPolyMismatch(f"M = {M} ne vérifie pas x^2 - {order.t}x + {order.n} modulo {level}")
    return Orientation(E, level, (den * P, den * Q), M, order, conductor, expr)


def module_generator(orient: Orientation, rng: random.Random) -> CurvePoint:
    """Point R tel que OR = E[m], tiré au hasard (budget GENERATOR_SEARCH_BUDGET)."""
    m = orient.m
    for _ in range(settings.GENERATOR_SEARCH_BUDGET):
        coords = (rng.randrange(m), rng.randrange(m))
        if gcd(gcd(*coords), m) == 1 and _coords_generate(orient, coords):
            return orient.point(coords)
    logger.error(f"Aucun générateur de E[{m}] trouvé comme O-module")
    raise NoModuleGenerator(f"E[{m}] ne semble pas cyclique comme O-module")
