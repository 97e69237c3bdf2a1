import random

import pytest

from sesqui.core.errors import BudgetExceeded, Reject
from sesqui.services.curve import isogeny_kernel, velu_isogeny
from sesqui.services.oracle import cyclic_subgroups, isogeny_oracle


@pytest.fixture(scope="module")
def two_isogeny(f541):
    E = f541.curve
    return velu_isogeny(E.point(0, 0), 2)


def test_three_rational_two_isogenies(f541):
    """Teste les trois sous-groupes d'ordre 2 de y^2 = x^3 + x sur F_541"""
    subgroups = cyclic_subgroups(f541.curve, 2, random.Random(0))
    assert len(subgroups) == 3
    assert f541.curve.point(0, 0) in subgroups


def test_oracle_recovers_isogeny(f541, two_isogeny):
    """Teste que l'oracle retrouve φ à partir de son action sur E[5]"""
    P, Q = f541.orient.basis
    phi = two_isogeny
    found = isogeny_oracle(f541.curve, phi.codomain, 2, (P, Q), (phi(P), phi(Q)), 5, random.Random(1))
    assert found(P) == phi(P) and found(Q) == phi(Q)
    assert set(isogeny_kernel(found)) == {f541.curve.infinity, f541.curve.point(0, 0)}


def test_oracle_accepts_negated_action(f541, two_isogeny):
    """Teste que -φ est retrouvé avec le même noyau"""
    P, Q = f541.orient.basis
    phi = two_isogeny
    found = isogeny_oracle(f541.curve, phi.codomain, 2, (P, Q), (-phi(P), -phi(Q)), 5)
    assert found(P) == -phi(P)


def test_oracle_rejects_weil_violation(f541, two_isogeny):
    """Teste le rejet d'images incompatibles avec l'accouplement de Weil"""
    P, Q = f541.orient.basis
    phi = two_isogeny
    with pytest.raises(Reject):
        isogeny_oracle(f541.curve, phi.codomain, 2, (P, Q), (phi(P), 2 * phi(Q)), 5)
    with pytest.raises(Reject):
        isogeny_oracle(f541.curve, phi.codomain, 2, (P, Q), (phi(Q), phi(P)), 5)


def test_oracle_identity(f541):
    """Teste le degré 1 : un automorphisme convient"""
    P, Q = f541.orient.basis
    E = f541.curve
    found = isogeny_oracle(E, E, 1, (P, Q), (-P, -Q), 5)
    assert found(P + Q) == -(P + Q)


def test_oracle_refusals(f541, two_isogeny):
    """Teste les refus : m^2 <= 4d et degrés hors budget"""
    P, Q = f541.orient.basis
    E2 = two_isogeny.codomain
    with pytest.raises(Reject):
        isogeny_oracle(f541.curve, E2, 2, (P, Q), (P, Q), 2)
    with pytest.raises(BudgetExceeded):
        isogeny_oracle(f541.curve, E2, 17, (P, Q), (P, Q), 5)
    with pytest.raises(BudgetExceeded):
        isogeny_oracle(f541.curve, E2, 2 ** 7, (P, Q), (P, Q), 5)
