"""
Arithmétique dans les corps finis F_p et F_{p^k}.

Les extensions sont des quotients F_p[x]/(f) d'un seul étage ; les coefficients
sont stockés du degré 0 au degré k-1. Les éléments sont immuables.
"""
import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple, Union

from sympy import factorint, isprime
from sympy.ntheory import sqrt_mod
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from ..core.errors import (
    CompositeModulus,
    DivisionByZero,
    MixedFields,
    NonSquare,
    ReducibleModulus,
    ZeroElement,
    RootsOfUnityMissing,
)

logger = logging.getLogger("sesqui.ffield")

Coercible = Union[int, "FieldElement"]


@dataclass(frozen=True)
class FieldDesc:
    p: int
    k: int
    modulus: Tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.k

    def __call__(self, value: Union[int, Sequence[int], "FieldElement"]) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.desc != self:
                raise MixedFields("élément d'un autre corps")
            return value
        if isinstance(value, int):
            coeffs = [value % self.p] + [0] * (self.k - 1)
        else:
            coeffs = [int(c) % self.p for c in value]
            if len(coeffs) > self.k:
                raise ValueError(f"trop de coefficients pour F_{self.p}^{self.k}")
            coeffs += [0] * (self.k - len(coeffs))
        return FieldElement(tuple(coeffs), self)

    def zero(self) -> "FieldElement":
        return self(0)

    def one(self) -> "FieldElement":
        return self(1)

    def gen(self) -> "FieldElement":
        """Classe de x dans F_p[x]/(f)."""
        if self.k == 1:
            return self(-self.modulus[0])
        return self([0, 1])

    def from_int(self, n: int) -> "FieldElement":
        """Élément dont les coefficients sont les chiffres de n en base p."""
        if not 0 <= n < self.q:
            raise ValueError(f"indice {n} hors de [0, {self.q})")
        coeffs = []
        for _ in range(self.k):
            n, c = divmod(n, self.p)
            coeffs.append(c)
        return FieldElement(tuple(coeffs), self)

    def random_element(self, rng: random.Random) -> "FieldElement":
        return self.from_int(rng.randrange(self.q))

    def elements(self) -> Iterable["FieldElement"]:
        for n in range(self.q):
            yield self.from_int(n)

    def __repr__(self) -> str:
        if self.k == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.k}[{list(self.modulus)}]"


def make_field(p: int, k: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldDesc:
    """
    Construit le descripteur de F_{p^k}.

    Args:
        p: caractéristique, premier impair différent de 3
        k: degré de l'extension
        modulus: polynôme unitaire de degré k, coefficients du degré 0 au degré k
    """
    if p < 5 or not isprime(p):
        logger.error(f"Caractéristique refusée: {p}")
        raise CompositeModulus(f"{p} n'est pas un premier impair > 3")
    if k < 1:
        raise ValueError("le degré d'extension doit être >= 1")
    if modulus is None:
        if k != 1:
            raise ValueError("un polynôme de définition est requis pour k > 1")
        modulus = [0, 1]
    coeffs = tuple(int(c) % p for c in modulus)
    if len(coeffs) != k + 1 or coeffs[-1] != 1:
        raise ReducibleModulus(f"le polynôme {list(modulus)} n'est pas unitaire de degré {k}")
    if k > 1 and not gf_irreducible_p(list(reversed(coeffs)), p, ZZ):
        logger.error(f"Polynôme réductible sur F_{p}: {list(modulus)}")
        raise ReducibleModulus(f"{list(modulus)} se factorise sur F_{p}")
    return FieldDesc(p, k, coeffs)


class FieldElement:
    __slots__ = ("coeffs", "desc")

    def __init__(self, coeffs: Tuple[int, ...], desc: FieldDesc):
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "desc", desc)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement est immuable")

    # Coercition

    def _other(self, other: Coercible) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.desc != self.desc:
                raise MixedFields(f"opérandes de {self.desc} et {other.desc}")
            return other
        if isinstance(other, int):
            return self.desc(other)
        return NotImplemented

    # Prédicats et encodages

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def in_prime_field(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        n = 0
        for c in reversed(self.coeffs):
            n = n * self.desc.p + c
        return n

    def sort_key(self) -> Tuple[int, ...]:
        return self.coeffs

    # Arithmétique

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        p = self.desc.p
        return FieldElement(tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)), self.desc)

    __radd__ = __add__

    def __neg__(self):
        p = self.desc.p
        return FieldElement(tuple((-a) % p for a in self.coeffs), self.desc)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        p = self.desc.p
        return FieldElement(tuple((a - b) % p for a, b in zip(self.coeffs, o.coeffs)), self.desc)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        desc = self.desc
        p, k = desc.p, desc.k
        if k == 1:
            return FieldElement(((self.coeffs[0] * o.coeffs[0]) % p,), desc)
        prod = [0] * (2 * k - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    prod[i + j] += a * b
        mod = desc.modulus
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d] % p
            if c:
                for j in range(k):
                    prod[d - k + j] -= c * mod[j]
        return FieldElement(tuple(c % p for c in prod[:k]), desc)

    __rmul__ = __mul__

    def inv(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero(f"inversion de 0 dans {self.desc}")
        if self.desc.k == 1:
            return FieldElement((pow(self.coeffs[0], -1, self.desc.p),), self.desc)
        return self ** (self.desc.q - 2)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        desc = self.desc
        if desc.k == 1:
            return FieldElement((pow(self.coeffs[0], e, desc.p),), desc)
        result = desc.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self) -> "FieldElement":
        return self ** self.desc.p

    # Comparaisons

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.desc(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.desc == other.desc and self.coeffs == other.coeffs

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.coeffs, self.desc))

    def __repr__(self):
        if self.desc.k == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else (f"{c}*a" if i == 1 else f"{c}*a^{i}"))
        return " + ".join(reversed(terms)) or "0"

    # Ordre multiplicatif et racines carrées

    def mult_order(self) -> int:
        """Plus petit e >= 1 tel que x^e = 1."""
        if self.is_zero():
            raise ZeroElement("l'ordre multiplicatif de 0 n'est pas défini")
        order = self.desc.q - 1
        for prime, exp in _factor(order).items():
            for _ in range(exp):
                if (self ** (order // prime)).is_one():
                    order //= prime
                else:
                    break
        return order

    def is_square(self) -> bool:
        if self.is_zero():
            return True
        return (self ** ((self.desc.q - 1) // 2)).is_one()

    def sqrt(self) -> "FieldElement":
        """Une racine carrée (Tonelli-Shanks), NonSquare sinon."""
        desc = self.desc
        if self.is_zero():
            return self
        if desc.k == 1:
            root = sqrt_mod(self.coeffs[0], desc.p)
            if root is None:
                raise NonSquare(f"{self} n'est pas un carré dans {desc}")
            return desc(int(root))
        if not self.is_square():
            raise NonSquare(f"{self} n'est pas un carré dans {desc}")
        q = desc.q
        if q % 4 == 3:
            return self ** ((q + 1) // 4)
        s, odd = 0, q - 1
        while odd % 2 == 0:
            odd //= 2
            s += 1
        z = _non_residue(desc)
        m_, c, t, r = s, z ** odd, self ** odd, self ** ((odd + 1) // 2)
        while not t.is_one():
            i, t2 = 0, t
            while not t2.is_one():
                t2 = t2 * t2
                i += 1
            b = c ** (2 ** (m_ - i - 1))
            m_, c = i, b * b
            t, r = t * c, r * b
        return r


@lru_cache(maxsize=None)
def _factor(n: int) -> dict:
    return factorint(n)


@lru_cache(maxsize=None)
def _non_residue(desc: FieldDesc) -> FieldElement:
    for n in range(2, desc.q):
        z = desc.from_int(n)
        if not z.is_square():
            return z
    raise NonSquare(f"aucun non-résidu dans {desc}")


def frobenius(x: FieldElement) -> FieldElement:
    return x.frobenius()


def mult_order(x: FieldElement) -> int:
    return x.mult_order()


@lru_cache(maxsize=None)
def mu_generator(desc: FieldDesc, m: int) -> FieldElement:
    """
    Générateur canonique de μ_m : le plus petit élément (ordre lexicographique
    des coefficients) d'ordre multiplicatif exactement m.
    """
    if (desc.q - 1) % m:
        raise RootsOfUnityMissing(f"μ_{m} n'est pas contenu dans {desc}")
    if m == 1:
        return desc.one()
    cofactor = (desc.q - 1) // m
    h = None
    for n in range(2, desc.q):
        cand = desc.from_int(n) ** cofactor
        if cand.mult_order() == m:
            h = cand
            break
    generators = []
    power = desc.one()
    for j in range(1, m + 1):
        power = power * h
        if gcd(j, m) == 1:
            generators.append(power)
    return min(generators, key=lambda g: g.sort_key())


def square_root_of_minus_one(desc: FieldDesc) -> FieldElement:
    """Racine canonique de -1 : la plus petite des deux, NonSquare si absente."""
    root = desc(-1).sqrt()
    return min(root, -root, key=lambda r: r.sort_key())
