import random

import pytest

from sesqui.core.errors import ConjugateNotInvertible, PointNotInTorsion, WrongOrder
from sesqui.services.curve import torsion_basis, velu_isogeny
from sesqui.services.ffield import mu_generator
from sesqui.services.orientation import apply, max_s, module_generator, orientation_from_endo, transport
from sesqui.services.pairings import (
    ReducedPairValue,
    literal_form,
    self_pairing_order,
    sesqui_direct,
    sesqui_T,
    sesqui_T_alpha,
    tate,
    tate_reduced,
)
from sesqui.services.qorder import OrderDesc

ZI = OrderDesc(0, 1)


def _random_points(orient, rng, count):
    return [orient.random_point(rng) for _ in range(count)]


def test_reduced_tate_is_bilinear(orient541, rng):
    """Teste la bilinéarité de l'accouplement de Tate réduit"""
    P, Q = orient541.basis
    t = tate_reduced(P, Q, 5, rng)
    assert t ** 5 == 1
    assert tate_reduced(2 * P, Q, 5, rng) == t ** 2
    assert tate_reduced(P, 3 * Q, 5, rng) == t ** 3
    assert tate_reduced(P, Q, 5, random.Random(99)) == t


def test_tate_requires_torsion_point(orient541, rng):
    """Teste le refus d'un premier argument hors de E[m]"""
    E = orient541.curve
    R = E.point(0, 0)
    with pytest.raises(PointNotInTorsion):
        tate(R, orient541.basis[0], 5, rng)


def test_published_self_pairing(orient541, rng):
    """Teste T̂([3]P + Q, [3]P + Q) = (g^3, g^4) avec g = 48"""
    P, Q = orient541.basis
    R = 3 * P + Q
    value = sesqui_T(R, R, 5, orient541, rng)
    g = mu_generator(orient541.curve.field, 5)
    assert g == 48
    assert value.logs == (3, 4)
    assert value.value.x == g ** 3 and value.value.y == g ** 4


def test_sesquilinearity(orient541, rng):
    """Teste T̂([α]P, Q) = T̂(P, Q)^ᾱ et T̂(P, [α]Q) = T̂(P, Q)^α"""
    for alpha in (ZI(2, 1), ZI(0, 1), ZI(3, 4)):
        for P, Q in zip(_random_points(orient541, rng, 3), _random_points(orient541, rng, 3)):
            base = sesqui_T(P, Q, 5, orient541, rng)
            left = sesqui_T(apply(orient541, alpha, P), Q, 5, orient541, rng)
            right = sesqui_T(P, apply(orient541, alpha, Q), 5, orient541, rng)
            assert left.logs == base.pow(alpha.conj()).logs
            assert right.logs == base.pow(alpha).logs


def test_additivity(orient541, rng):
    """Teste l'additivité en chaque argument"""
    P1, P2, Q = _random_points(orient541, rng, 3)
    total = sesqui_T(P1 + P2, Q, 5, orient541, rng)
    assert total.logs == (sesqui_T(P1, Q, 5, orient541, rng) * sesqui_T(P2, Q, 5, orient541, rng)).logs


def test_literal_formula_agrees(orient541, rng):
    """Teste que la formule littérale donne la même valeur que T̂"""
    for P, Q in zip(_random_points(orient541, rng, 4), _random_points(orient541, rng, 4)):
        assert literal_form(P, Q, 5, orient541, rng).logs == sesqui_T(P, Q, 5, orient541, rng).logs


def test_self_pairing_order_sandwich(orient541, rng):
    """Teste s | ordre de T̂(P, P) | 2s^2 sur tous les points d'ordre 5"""
    P, Q = orient541.basis
    for a in range(5):
        for b in range(5):
            if a == b == 0:
                continue
            R = a * P + b * Q
            s = max_s(orient541, R)
            order = self_pairing_order(R, 5, orient541)
            assert order % s == 0
            assert (2 * s * s) % order == 0
    with pytest.raises(WrongOrder):
        self_pairing_order(0 * P, 5, orient541)


def test_non_degenerate_on_generator(orient541, rng):
    """Teste que T̂(P, P) est d'ordre m pour un générateur du module"""
    P, Q = orient541.basis
    assert sesqui_T(P + Q, P + Q, 5, orient541, rng).order() == 5
    assert sesqui_T(P, P, 5, orient541, rng).is_trivial()


def test_compatible_with_isogeny(orient541, rng):
    """Teste T̂'(φP, φQ) = T̂(P, Q)^deg φ pour l'orientation transportée"""
    phi = velu_isogeny(orient541.curve.point(0, 0), 2)
    moved = transport(orient541, phi, torsion_basis(phi.codomain, 5, rng))
    for P, Q in zip(_random_points(orient541, rng, 3), _random_points(orient541, rng, 3)):
        before = sesqui_T(P, Q, 5, orient541, rng)
        after = sesqui_T(phi(P), phi(Q), 5, moved, rng)
        assert after.logs == before.pow(2).logs


def test_coherent_with_divisors_of_m(gaussian1861, rng):
    """Teste la cohérence entre T̂ sur E[15] et T̂ sur E[5]"""
    orient15 = gaussian1861.orient
    E = orient15.curve
    orient5 = orientation_from_endo(E, 5, torsion_basis(E, 5, rng), "i", ZI)
    for _ in range(3):
        P, Q = orient5.random_point(rng), orient5.random_point(rng)
        assert sesqui_T(P, Q, 15, orient15, rng).value == sesqui_T(P, Q, 5, orient5, rng).value


def test_direct_definition_matches(orient541, rng):
    """Teste la définition directe par fonctions contre T̂ pour α = m"""
    alpha = ZI(5)
    for P, Q in zip(_random_points(orient541, rng, 4), _random_points(orient541, rng, 4)):
        direct = sesqui_direct(P, Q, alpha, orient541, rng=rng)
        assert direct.logs == sesqui_T(P, Q, 5, orient541, rng).logs


def test_alpha_pairing_integer(orient541, rng):
    """Teste T̂_α pour α = 5 : la valeur tordue seule, conjugué non inversible"""
    P, Q = orient541.basis
    result = sesqui_T_alpha(P + Q, Q, ZI(5), orient541, rng)
    assert result.twisted.logs == sesqui_T(P + Q, Q, 5, orient541, rng).logs
    assert not result.conjugate_invertible
    with pytest.raises(ConjugateNotInvertible):
        sesqui_T_alpha(P + Q, Q, ZI(5), orient541, rng, strict=True)


def test_alpha_pairing_split_prime(orient541, rng):
    """Teste T̂_α pour α = 2 - i (noyau de 2 + i conjugué) : ᾱ inversible modulo α"""
    P, Q = orient541.basis
    alpha = ZI(2, -1)
    # ᾱ = 2 + i tue P
    result = sesqui_T_alpha(P, Q, alpha, orient541, rng)
    assert result.conjugate_invertible
    assert result.value.pow(alpha.conj()).logs == result.twisted.logs
    with pytest.raises(PointNotInTorsion):
        sesqui_T_alpha(Q, Q, alpha, orient541, rng)


def test_reduced_value_from_logs(orient541):
    """Teste la construction d'une valeur réduite à partir de logarithmes"""
    F = orient541.curve.field
    value = ReducedPairValue.from_logs(F, 5, (2, 7))
    assert value.logs == (2, 2)
    assert value.value.x == F(140)
    assert value.order() == 5
    assert ReducedPairValue.from_logs(F, 5, (0, 0)).is_trivial()


def test_self_pairing_order_matches_module(orient541, rng):
    """Teste m' = 5 exactement si OP = E[5] et m' = 1 exactement si OP = ZP"""
    P, Q = orient541.basis
    seen = set()
    for a in range(5):
        for b in range(5):
            if a == b == 0:
                continue
            R = a * P + b * Q
            s = max_s(orient541, R)
            order = self_pairing_order(R, 5, orient541, rng=rng)
            assert s in (1, 5)
            assert order == s
            seen.add(s)
    assert seen == {1, 5}
    assert self_pairing_order(P, 5, orient541, rng=rng) == 1
    assert self_pairing_order(P + Q, 5, orient541, rng=rng) == 5


def test_sesquilinearity_composite_level(gaussian1861, rng):
    """Teste la sesquilinéarité de T̂ sur E[15]"""
    orient = gaussian1861.orient
    for alpha in (ZI(2, 1), ZI(0, 1), ZI(7, 4)):
        for P, Q in zip(_random_points(orient, rng, 2), _random_points(orient, rng, 2)):
            base = sesqui_T(P, Q, 15, orient, rng)
            left = sesqui_T(apply(orient, alpha, P), Q, 15, orient, rng)
            right = sesqui_T(P, apply(orient, alpha, Q), 15, orient, rng)
            assert left.logs == base.pow(alpha.conj()).logs
            assert right.logs == base.pow(alpha).logs


def test_compatible_with_isogeny_composite_level(gaussian1861, rng):
    """Teste T̂'(φP, φQ) = T̂(P, Q)^deg φ sur E[15]"""
    orient = gaussian1861.orient
    phi = velu_isogeny(orient.curve.point(0, 0), 2)
    moved = transport(orient, phi, torsion_basis(phi.codomain, 15, rng))
    for P, Q in zip(_random_points(orient, rng, 3), _random_points(orient, rng, 3)):
        before = sesqui_T(P, Q, 15, orient, rng)
        after = sesqui_T(phi(P), phi(Q), 15, moved, rng)
        assert after.logs == before.pow(2).logs


def test_non_degenerate_composite_level(gaussian1861, rng):
    """Teste que T̂(R, R) est d'ordre 15 pour un générateur R de E[15]"""
    orient = gaussian1861.orient
    R = module_generator(orient, rng)
    assert max_s(orient, R) == 15
    assert sesqui_T(R, R, 15, orient, rng).order() == 15
    assert self_pairing_order(R, 15, orient, rng=rng) == 15
    # un point de E[15] non nul s'accouple non trivialement avec l'un des vecteurs de base
    P = orient.random_point(rng)
    if not P.is_infinity:
        assert any(not sesqui_T(P, B, 15, orient, rng).is_trivial() for B in orient.basis)
