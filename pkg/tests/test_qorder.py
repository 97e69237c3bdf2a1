import pytest

from sesqui.core.errors import NoSolution, NotImaginaryQuadratic, ZeroCoordinate
from sesqui.services.ffield import make_field
from sesqui.services.qorder import OrderDesc, PairValue, norms_mod, pair_pow, rho, solve_lambda, unit_sqrts

ZI = OrderDesc(0, 1)


def test_order_validation():
    """Teste le refus des ordres non quadratiques imaginaires"""
    with pytest.raises(NotImaginaryQuadratic):
        OrderDesc(3, 1)
    with pytest.raises(NotImaginaryQuadratic):
        OrderDesc(2, 1)
    assert OrderDesc(2, 1, allow_degenerate=True).disc == 0


def test_element_arithmetic():
    """Teste l'arithmétique de Z[i]"""
    alpha = ZI(2, 1)
    assert alpha * alpha.conj() == ZI(5)
    assert alpha.norm() == 5
    assert alpha.trace() == 4
    assert ZI.tau ** 2 == ZI(-1)
    assert (alpha * 7).mod(5) == ZI(4, 2)


def test_rho_is_multiplication_matrix():
    """Teste la matrice de multiplication dans la base (1, τ)"""
    assert rho(ZI(2, 1)) == ((2, -1), (1, 2))
    order = OrderDesc(1, 2)
    assert rho(order.tau) == ((0, -2), (1, 1))


def test_pair_pow_matches_rho():
    """Teste la puissance d'une paire par un élément de l'ordre"""
    F = make_field(541)
    v = PairValue(F(5), F(25))
    w = pair_pow(v, ZI(2, 1))
    assert w.x == F(5) ** 2 * F(25) ** -1
    assert w.y == F(5) * F(25) ** 2
    assert pair_pow(v, 3) == PairValue(F(125), F(25) ** 3)
    with pytest.raises(ZeroCoordinate):
        PairValue(F(0), F(1))


def test_norms_mod():
    """Teste l'ensemble des normes modulo m"""
    assert norms_mod(ZI, 5) == {0, 1, 2, 3, 4}
    assert norms_mod(ZI, 3) == {0, 1, 2}


def test_unit_sqrts():
    """Teste les racines carrées modulo m"""
    assert unit_sqrts(27, 1) == [1, 26]
    assert unit_sqrts(8, 1) == [1, 3, 5, 7]
    assert unit_sqrts(5, 2) == []


def test_solve_lambda():
    """Teste la résolution de λ par sa norme et son carré"""
    solutions = solve_lambda(2, (0, 2), 5, ZI)
    assert ZI(1, 1) in solutions
    for lam in solutions:
        assert lam.norm() % 5 == 2
        assert (lam * lam).mod(5) == ZI(0, 2)
    with pytest.raises(NoSolution):
        solve_lambda(2, (1, 0), 5, ZI)
