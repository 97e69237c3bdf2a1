"""
Petits outils d'arithmétique modulaire : matrices 2x2 sur Z/mZ, congruences
linéaires, restes chinois et contrôle de friabilité.
"""
from math import gcd
from typing import List, Sequence, Tuple

from sympy import factorint
from sympy.polys.domains import ZZ
from sympy.ntheory.modular import crt

from ..core.config import settings
from ..core.errors import BudgetExceeded, NotSmooth

Matrix = Tuple[Tuple[int, int], Tuple[int, int]]
Vector = Tuple[int, int]


def mat(a: int, b: int, c: int, d: int, m: int) -> Matrix:
    return ((a % m, b % m), (c % m, d % m))


def mat_mul(A: Matrix, B: Matrix, m: int) -> Matrix:
    return mat(
        A[0][0] * B[0][0] + A[0][1] * B[1][0],
        A[0][0] * B[0][1] + A[0][1] * B[1][1],
        A[1][0] * B[0][0] + A[1][1] * B[1][0],
        A[1][0] * B[0][1] + A[1][1] * B[1][1],
        m,
    )


def mat_vec(A: Matrix, v: Sequence[int], m: int) -> Vector:
    return ((A[0][0] * v[0] + A[0][1] * v[1]) % m, (A[1][0] * v[0] + A[1][1] * v[1]) % m)


def mat_det(A: Matrix) -> int:
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def mat_inv(A: Matrix, m: int) -> Matrix:
    det_inv = pow(mat_det(A) % m, -1, m)
    return mat(A[1][1] * det_inv, -A[0][1] * det_inv, -A[1][0] * det_inv, A[0][0] * det_inv, m)


def mat_from_columns(c1: Sequence[int], c2: Sequence[int], m: int) -> Matrix:
    return mat(c1[0], c2[0], c1[1], c2[1], m)


def is_unit(x: int, m: int) -> bool:
    return gcd(x % m, m) == 1


def prime_powers(m: int) -> List[Tuple[int, int, int]]:
    """Liste (q, k, q^k) des facteurs primaires de m, par q croissant."""
    return [(q, k, q ** k) for q, k in sorted(factorint(m).items())]


def assert_smooth(m: int, bound: int = None) -> None:
    bound = bound or settings.DLOG_SMOOTHNESS_BOUND
    if m > 1 and max(factorint(m)) > bound:
        raise NotSmooth(f"{m} a un facteur premier > {bound}")


def crt_combine(residues: Sequence[int], moduli: Sequence[int]) -> int:
    if not moduli:
        return 0
    result = crt(list(moduli), [r % q for r, q in zip(residues, moduli)])
    return int(result[0])


def solve_congruence(a: int, b: int, m: int) -> List[int]:
    """Toutes les solutions de a·x ≡ b (mod m)."""
    a, b = a % m, b % m
    g = gcd(a, m)
    if b % g:
        return []
    step = m // g
    if step == 1:
        return list(range(m))
    x0 = (b // g) * pow(a // g, -1, step) % step
    return [x0 + j * step for j in range(g)]


def solve_linear_2x2(A: Matrix, w: Sequence[int], m: int) -> List[Vector]:
    """
    Toutes les solutions x de A·x ≡ w (mod m).

    Réduction triangulaire par une matrice unimodulaire sur la première colonne,
    puis résolution de deux congruences scalaires.
    """
    a11, a12 = A[0][0] % m, A[0][1] % m
    a21, a22 = A[1][0] % m, A[1][1] % m
    w1, w2 = w[0] % m, w[1] % m
    g = gcd(a11, a21)
    if g == 0:
        second = sorted(set(solve_congruence(a12, w1, m)) & set(solve_congruence(a22, w2, m)))
        if m * len(second) > settings.enumeration_budget:
            raise BudgetExceeded("trop de solutions pour le système linéaire")
        return [(x1, x2) for x1 in range(m) for x2 in second]
    s, t, _ = (int(v) for v in ZZ.gcdex(ZZ(a11), ZZ(a21)))
    c = s * a12 + t * a22
    e = (a11 * a22 - a21 * a12) // g
    r1 = s * w1 + t * w2
    r2 = (a11 * w2 - a21 * w1) // g
    solutions = []
    for x2 in solve_congruence(e, r2, m):
        for x1 in solve_congruence(g, r1 - c * x2, m):
            solutions.append((x1, x2))
    if len(solutions) > settings.enumeration_budget:
        raise BudgetExceeded("trop de solutions pour le système linéaire")
    return sorted(solutions)
