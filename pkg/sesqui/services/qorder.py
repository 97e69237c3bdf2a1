"""
Ordres quadratiques imaginaires O = Z[τ], représentation régulière ρ et action
de O sur les paires de valeurs multiplicatives.
"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import List, Sequence, Set, Tuple, Union

from sympy.ntheory import sqrt_mod

from ..core.config import settings
from ..core.errors import BudgetExceeded, NoSolution, NotImaginaryQuadratic, ZeroCoordinate
from .ffield import FieldElement
from .modular import Matrix, assert_smooth, solve_congruence

logger = logging.getLogger("sesqui.qorder")


@dataclass(frozen=True)
class OrderDesc:
    """Ordre Z[τ] avec τ^2 = tτ - n."""
    t: int
    n: int
    allow_degenerate: bool = False

    def __post_init__(self):
        if self.disc > 0 or (self.disc == 0 and not self.allow_degenerate):
            raise NotImaginaryQuadratic(f"t^2 - 4n = {self.disc} n'est pas négatif")

    @property
    def disc(self) -> int:
        return self.t * self.t - 4 * self.n

    def __call__(self, a: int, b: int = 0) -> "OrderElement":
        return OrderElement(a, b, self)

    @property
    def tau(self) -> "OrderElement":
        return OrderElement(0, 1, self)

    @property
    def one(self) -> "OrderElement":
        return OrderElement(1, 0, self)


Scalar = Union[int, "OrderElement"]


@dataclass(frozen=True)
class OrderElement:
    a: int
    b: int
    order: OrderDesc

    def _other(self, other: Scalar) -> "OrderElement":
        if isinstance(other, int):
            return OrderElement(other, 0, self.order)
        if other.order != self.order:
            raise ValueError("éléments d'ordres différents")
        return other

    def __add__(self, other: Scalar) -> "OrderElement":
        o = self._other(other)
        return OrderElement(self.a + o.a, self.b + o.b, self.order)

    __radd__ = __add__

    def __neg__(self) -> "OrderElement":
        return OrderElement(-self.a, -self.b, self.order)

    def __sub__(self, other: Scalar) -> "OrderElement":
        return self + (-self._other(other))

    def __rsub__(self, other: Scalar) -> "OrderElement":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "OrderElement":
        o = self._other(other)
        t, n = self.order.t, self.order.n
        bd = self.b * o.b
        return OrderElement(self.a * o.a - bd * n, self.a * o.b + self.b * o.a + bd * t, self.order)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "OrderElement":
        result = self.order.one
        for _ in range(e):
            result = result * self
        return result

    def conj(self) -> "OrderElement":
        return OrderElement(self.a + self.b * self.order.t, -self.b, self.order)

    def norm(self) -> int:
        return self.a * self.a + self.a * self.b * self.order.t + self.b * self.b * self.order.n

    def trace(self) -> int:
        return 2 * self.a + self.b * self.order.t

    def mod(self, m: int) -> "OrderElement":
        return OrderElement(self.a % m, self.b % m, self.order)

    def sort_key(self) -> Tuple[int, int]:
        return (self.a, self.b)

    def __repr__(self) -> str:
        return f"{self.a} + {self.b}τ"


def rho(alpha: OrderElement) -> Matrix:
    """Matrice de la multiplication par α dans la base (1, τ)."""
    t, n = alpha.order.t, alpha.order.n
    return ((alpha.a, -alpha.b * n), (alpha.b, alpha.a + alpha.b * t))


def rho_mod(alpha: OrderElement, m: int) -> Matrix:
    r = rho(alpha)
    return ((r[0][0] % m, r[0][1] % m), (r[1][0] % m, r[1][1] % m))


@dataclass(frozen=True)
class PairValue:
    x: FieldElement
    y: FieldElement

    def __post_init__(self):
        if self.x.is_zero() or self.y.is_zero():
            raise ZeroCoordinate("une coordonnée de la paire est nulle")

    def __mul__(self, other: "PairValue") -> "PairValue":
        return PairValue(self.x * other.x, self.y * other.y)

    def __pow__(self, e: int) -> "PairValue":
        return PairValue(self.x ** e, self.y ** e)

    def is_trivial(self) -> bool:
        return self.x.is_one() and self.y.is_one()


def pair_pow(v: PairValue, alpha: Scalar) -> PairValue:
    """(x, y)^α = (x^a y^b', x^c y^d) pour ρ(α) = [[a, b'], [c, d]]."""
    if isinstance(v, PairValue) and isinstance(alpha, int):
        return v ** alpha
    (a, b), (c, d) = rho(alpha)
    return PairValue(v.x ** a * v.y ** b, v.x ** c * v.y ** d)


def norms_mod(order: OrderDesc, m: int) -> Set[int]:
    """{N(a + bτ) mod m : a, b dans [0, m)}."""
    if m * m > settings.enumeration_budget:
        raise BudgetExceeded(f"énumération de O/{m}O hors budget")
    return {OrderElement(a, b, order).norm() % m for a in range(m) for b in range(m)}


def unit_sqrts(m: int, c: int) -> List[int]:
    """Toutes les racines carrées de c modulo m (Tonelli/Hensel + restes chinois)."""
    assert_smooth(m)
    if m == 1:
        return [0]
    roots = sqrt_mod(c % m, m, all_roots=True) or []
    return sorted(int(r) for r in roots)


def _as_element(value: Union[int, Sequence[int], OrderElement], order: OrderDesc) -> OrderElement:
    if isinstance(value, OrderElement):
        return value
    if isinstance(value, int):
        return OrderElement(value, 0, order)
    return OrderElement(int(value[0]), int(value[1]), order)


def solve_lambda(nval: int, sqval, m: int, order: OrderDesc) -> List[OrderElement]:
    """
    Tous les λ de O/mO tels que N(λ) ≡ nval et λ^2 ≡ sqval (mod m).

    λ vérifie λ·Tr(λ) = λ^2 + N(λ) et Tr(λ)^2 = Tr(λ^2) + 2N(λ) ; on énumère
    les traces possibles puis on résout la congruence linéaire en λ.
    """
    assert_smooth(m)
    square = _as_element(sqval, order).mod(m)
    target = (square + nval).mod(m)
    found = set()
    for tr in unit_sqrts(m, square.trace() + 2 * nval):
        xs = solve_congruence(tr, target.a, m)
        ys = solve_congruence(tr, target.b, m)
        if len(xs) * len(ys) > settings.enumeration_budget:
            raise BudgetExceeded("trop de candidats pour λ")
        for a, b in product(xs, ys):
            lam = OrderElement(a, b, order)
            if lam.norm() % m == nval % m and (lam * lam).mod(m) == square:
                found.add((a, b))
    if not found:
        logger.error(f"Aucun λ pour N = {nval}, λ^2 = {square} modulo {m}")
        raise NoSolution("aucun λ ne vérifie les deux contraintes")
    return [OrderElement(a, b, order) for a, b in sorted(found)]
