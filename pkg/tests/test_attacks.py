import random

import pytest

from sesqui.core.errors import (
    MajorityInconclusive,
    NotRamified,
    RamifiedPrime,
    Reject,
    TotientTooSmall,
)
from sesqui.services.attacks import (
    attack_instance,
    candidate_images,
    compare_with_truth,
    is_generator_by_pairing,
    ramified_tau_select,
    recover_norm_lambda,
    recover_orientation,
    sidh1_to_sidh,
)
from sesqui.services.curve import isogeny_kernel
from sesqui.services.modular import is_unit
from sesqui.services.orientation import orientation_from_matrix
from sesqui.services.pairings import ReducedPairValue, sesqui_T
from sesqui.services.qorder import OrderDesc, unit_sqrts

ZI = OrderDesc(0, 1)


@pytest.mark.parametrize("degree", [1, 2, 4])
def test_norm_attack_on_f541(make_instance, degree):
    """Teste la récupération de N(λ) et l'appartenance de φP aux candidats"""
    inst = make_instance("f541", degree, seed=degree)
    report = attack_instance(inst)
    assert report.norm == inst.sealed.norm
    assert compare_with_truth(inst, report)


def test_norm_attack_identity(make_instance):
    """Teste φ = identité : N(λ) cohérent avec λ caché"""
    inst = make_instance("f541", 1, seed=0)
    assert recover_norm_lambda(inst.view()) == inst.sealed.lam.norm() % 5


def test_candidate_set_size(make_instance):
    """Teste le cardinal des candidats contre une énumération directe et la borne"""
    inst = make_instance("gaussian", 2, seed=1, p=541, m=5)
    for nval in range(1, 5):
        candidates = candidate_images(inst.view(), nval=nval)
        brute = {(a, b) for a in range(5) for b in range(5) if (a * a + b * b - nval) % 5 == 0}
        assert len(candidates) == len(brute) == 4
        assert len(candidates) <= candidates.bound == 6
    assert len(candidate_images(inst.view(), nval=0)) == 0


def test_candidate_set_inert(make_instance):
    """Teste la borne q^(k-1)(q+1) dans le cas inerte m = 9"""
    inst = make_instance("gaussian", 2, variant="sidh1", seed=0, p=71, m=9)
    candidates = candidate_images(inst.view(), nval=1)
    assert len(candidates) == 12
    assert candidates.bound == 12


def test_norm_attack_rejects_ramified_m(make_instance):
    """Teste le refus de N(λ) quand m partage un facteur avec Δ"""
    inst = make_instance("wouter", 1, seed=0, r=3)
    with pytest.raises(RamifiedPrime):
        recover_norm_lambda(inst.view())


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_sidh1_split(make_instance, seed):
    """Teste SIDH1 -> SIDH pour m = 5 décomposé dans Z[i]"""
    inst = make_instance("gaussian", 2, variant="sidh1", seed=seed, p=541, m=5)
    action = sidh1_to_sidh(inst.view(), rng=random.Random(seed))
    assert action.matrix == inst.sealed.matrix
    report = attack_instance(inst)
    assert compare_with_truth(inst, report)
    assert set(isogeny_kernel(report.isogeny)) == set(inst.sealed.kernel)


@pytest.mark.parametrize("seed", [0, 1])
def test_sidh1_inert(make_instance, seed):
    """Teste SIDH1 -> SIDH pour m = 9, 3 inerte dans Z[i]"""
    inst = make_instance("gaussian", 2, variant="sidh1", seed=seed, p=71, m=9)
    report = attack_instance(inst)
    assert report.matrix == inst.sealed.matrix
    assert compare_with_truth(inst, report)
    assert "oracle" not in report.notes


@pytest.mark.parametrize("seed", [0, 1])
def test_diagonal_sidh(make_instance, seed):
    """Teste SIDH diagonal sur p = 2917, m = 27"""
    inst = make_instance("gaussian", 2, variant="diagonal", seed=seed, p=2917, m=27)
    report = attack_instance(inst)
    assert compare_with_truth(inst, report)


def test_diagonal_needs_large_m(make_instance):
    """Teste le rejet de SIDH diagonal quand m <= 4d"""
    inst = make_instance("f541", 2, variant="diagonal", seed=5)
    with pytest.raises(Reject):
        attack_instance(inst)


def test_ramified_tau_selection():
    """Teste la sélection de τ' : m impair, m ≡ 2 mod 4, m non ramifié"""
    selected = ramified_tau_select(OrderDesc(0, 27), 27)
    assert selected.m_prime == 27
    assert selected.tau == OrderDesc(0, 27)(-108, 2)
    assert selected.tau.trace() % 27 == 0 and selected.tau.norm() % 27 == 0
    degenerate = ramified_tau_select(ZI, 2)
    assert degenerate.m_prime == 1 and degenerate.degenerate
    with pytest.raises(NotRamified):
        ramified_tau_select(OrderDesc(0, 5), 3)


@pytest.mark.parametrize("seed", [0, 1])
def test_ramified_attack(make_instance, seed):
    """Teste l'attaque ramifiée sur p = 107, m = 27"""
    inst = make_instance("wouter", 2, variant="ramified", seed=seed, r=3)
    report = attack_instance(inst)
    assert compare_with_truth(inst, report)
    assert len(report.candidates) <= report.candidates.bound


def test_two_orientation_attack(make_instance):
    """Teste l'attaque à deux orientations (i et π) sur p = 11, m = 3"""
    inst = make_instance("gaussian", 2, variant="two-orient", seed=0, p=11, m=3)
    report = attack_instance(inst)
    assert compare_with_truth(inst, report)
    assert report.lam is not None


def test_recover_orientation_f541(f541):
    """Teste la récupération de M = [[3, 3], [0, 2]] par un oracle T̂"""
    orient = f541.orient
    rng = random.Random(11)

    def oracle(P, Q):
        return sesqui_T(P, Q, 5, orient, rng)

    M = recover_orientation(f541.curve, 5, orient.basis, oracle, ZI, random.Random(0))
    assert M == ((3, 3), (0, 2))


@pytest.mark.slow
def test_recover_orientation_success_rate(f541):
    """Teste le taux de réussite du vote majoritaire sur 100 graines"""
    orient = f541.orient

    def oracle(P, Q):
        return sesqui_T(P, Q, 5, orient)

    successes = 0
    for seed in range(100):
        try:
            M = recover_orientation(f541.curve, 5, orient.basis, oracle, ZI, random.Random(seed))
        except MajorityInconclusive:
            continue
        successes += M == orient.matrix
    assert successes >= 95


def test_recover_orientation_scalar(f541):
    """Teste qu'une orientation scalaire (appariements triviaux) ne donne aucune majorité"""
    scalar = OrderDesc(2, 1, allow_degenerate=True)
    orient = orientation_from_matrix(f541.curve, 5, f541.orient.basis, ((1, 0), (0, 1)), scalar)

    def oracle(P, Q):
        return sesqui_T(P, Q, 5, orient)

    with pytest.raises(MajorityInconclusive):
        recover_orientation(f541.curve, 5, orient.basis, oracle, scalar, random.Random(0))


def test_recover_orientation_guards(f541):
    """Teste les gardes : φ(m) trop petit en mode strict et m ramifié"""
    F = f541.curve.field

    def trivial(P, Q):
        return ReducedPairValue.from_logs(F, 5, (0, 0))

    with pytest.raises(TotientTooSmall):
        recover_orientation(f541.curve, 6, f541.orient.basis, trivial, ZI, strict=True)
    with pytest.raises(TotientTooSmall):
        recover_orientation(f541.curve, 5, f541.orient.basis, trivial, ZI, strict=True)
    with pytest.raises(RamifiedPrime):
        recover_orientation(f541.curve, 7, f541.orient.basis, trivial, OrderDesc(0, 7))
    with pytest.raises(MajorityInconclusive):
        recover_orientation(f541.curve, 5, f541.orient.basis, trivial, ZI)


@pytest.mark.slow
@pytest.mark.parametrize("degree", [2, 4])
def test_norm_attack_sweep(make_instance, degree):
    """Teste l'attaque sur N(λ) sur dix graines par degré"""
    for seed in range(10):
        inst = make_instance("gaussian", degree, seed=seed, p=541, m=5)
        assert compare_with_truth(inst, attack_instance(inst))


@pytest.mark.slow
def test_sidh1_sweep(make_instance):
    """Teste SIDH1 -> SIDH sur dix graines, cas décomposé et inerte"""
    for seed in range(10):
        for p, m in ((541, 5), (71, 9)):
            inst = make_instance("gaussian", 2, variant="sidh1", seed=seed, p=p, m=m)
            assert compare_with_truth(inst, attack_instance(inst))


def test_generator_detected_by_self_pairing(f541):
    """Teste qu'un auto-appariement d'ordre m signale un O-générateur"""
    orient = f541.orient
    P, Q = orient.basis
    assert is_generator_by_pairing(orient, P + Q, random.Random(0))
    assert not is_generator_by_pairing(orient, P, random.Random(0))


def test_candidate_images_from_generators(make_instance):
    """Teste les candidats calculés à partir de P et P' seuls, sans N(λ) fourni"""
    inst = make_instance("f541", 2, seed=2)
    view = inst.view()
    candidates = candidate_images(view, view.generator, view.generator_image, rng=random.Random(0))
    assert candidates.params["norm"] == inst.sealed.norm
    assert inst.sealed.isogeny(inst.generator) in candidates
    explicit = candidate_images(view, nval=inst.sealed.norm)
    assert set(candidates) == set(explicit)


@pytest.mark.slow
def test_diagonal_sidh_sweep(make_instance):
    """Teste SIDH diagonal sur dix graines, avec au plus six racines carrées candidates"""
    for seed in range(10):
        inst = make_instance("gaussian", 2, variant="diagonal", seed=seed, p=2917, m=27)
        view = inst.view()
        rng = random.Random(seed)
        nval = recover_norm_lambda(view, view.orient.basis[0], view.payload["P_img"], rng)
        roots = [x for x in unit_sqrts(27, nval) if is_unit(x, 27)]
        assert 1 <= len(roots) <= 6
        assert compare_with_truth(inst, attack_instance(inst))


@pytest.mark.slow
def test_two_orientation_sweep(make_instance):
    """Teste l'attaque à deux orientations sur cinq graines"""
    for seed in range(5):
        inst = make_instance("gaussian", 2, variant="two-orient", seed=seed, p=11, m=3)
        report = attack_instance(inst)
        assert report.lam is not None
        assert compare_with_truth(inst, report)
