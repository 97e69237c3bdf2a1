import pytest

from sesqui.core.errors import NotSmooth
from sesqui.services.modular import (
    assert_smooth,
    crt_combine,
    mat,
    mat_inv,
    mat_mul,
    prime_powers,
    solve_congruence,
    solve_linear_2x2,
)


def _brute(A, w, m):
    return sorted(
        (x1, x2) for x1 in range(m) for x2 in range(m)
        if (A[0][0] * x1 + A[0][1] * x2 - w[0]) % m == 0 and (A[1][0] * x1 + A[1][1] * x2 - w[1]) % m == 0
    )


@pytest.mark.parametrize("A, w, m", [
    (((3, 5), (6, 1)), (4, 7), 15),
    (((2, 1), (4, 3)), (0, 6), 12),
    (((0, 3), (9, 6)), (3, 0), 27),
    (((5, 10), (10, 5)), (5, 0), 25),
    (((0, 0), (0, 4)), (0, 8), 12),
])
def test_solve_linear_2x2_matches_enumeration(A, w, m):
    """Teste la résolution de A·x ≡ w (mod m) contre une énumération directe"""
    assert solve_linear_2x2(A, w, m) == _brute(A, w, m)


def test_solve_congruence():
    """Teste a·x ≡ b (mod m) avec et sans solution"""
    assert solve_congruence(3, 6, 15) == [2, 7, 12]
    assert solve_congruence(3, 5, 15) == []
    assert solve_congruence(0, 0, 4) == [0, 1, 2, 3]


def test_crt_and_prime_powers():
    """Teste les restes chinois et la décomposition en facteurs primaires"""
    assert crt_combine([2, 3], [3, 5]) == 8
    assert crt_combine([], []) == 0
    assert prime_powers(540) == [(2, 2, 4), (3, 3, 27), (5, 1, 5)]


def test_matrix_inverse():
    """Teste l'inverse d'une matrice 2x2 modulo 15"""
    A = mat(2, 1, 7, 3, 15)
    assert mat_mul(A, mat_inv(A, 15), 15) == ((1, 0), (0, 1))


def test_assert_smooth():
    """Teste le refus d'un entier ayant un grand facteur premier"""
    assert_smooth(540)
    with pytest.raises(NotSmooth):
        assert_smooth(2 * 1009, bound=1000)
