import random

import pytest
from pydantic import ValidationError

from sesqui.core.errors import (
    BadKernelOrder,
    BudgetExceeded,
    CompositeModulus,
    MalformedInstanceError,
    NoSplitPrimeKernel,
    RootsOfUnityMissing,
    UnknownEndomorphism,
)
from sesqui.models.instance import InstanceSpec
from sesqui.services.curve import point_order
from sesqui.services.instances import (
    dump_instance,
    example_f541,
    gaussian,
    gen_instance,
    instance_to_model,
    load_instance,
    oriented_kernels,
    save_instance,
    wouter,
)
from sesqui.services.orientation import apply, is_module_generator


def test_generation_is_deterministic():
    """Teste que la même graine produit exactement la même instance"""
    spec = InstanceSpec(family="gaussian", p=541, m=5, degree=2, variant="sidh1")
    assert dump_instance(gen_instance(spec, 7)) == dump_instance(gen_instance(spec, 7))


def test_sealed_truth_is_consistent(make_instance):
    """Teste la cohérence du bloc scellé : degré, noyau, λ et N(λ)"""
    inst = make_instance("f541", 2, seed=3)
    sealed = inst.sealed
    assert sealed.isogeny.degree == 2
    assert len(sealed.kernel) == 2
    assert all(sealed.isogeny(R).is_infinity for R in sealed.kernel)
    assert sealed.cyclic
    assert sealed.norm == sealed.lam.norm() % 5
    assert sealed.isogeny(inst.generator) == apply(inst.orient_image, sealed.lam, inst.generator_image)
    assert is_module_generator(inst.orient, inst.generator)
    assert is_module_generator(inst.orient_image, inst.generator_image)


def test_non_cyclic_kernel_of_degree_4(make_instance):
    """Teste l'idéal (2) de norme 4 : noyau E[2], non cyclique"""
    inst = make_instance("f541", 4, seed=1)
    assert len(inst.sealed.kernel) == 4
    assert not inst.sealed.cyclic
    assert all(point_order(R, 2) in (1, 2) for R in inst.sealed.kernel)


def test_oriented_kernels_of_f541():
    """Teste les noyaux orientés de degrés 1, 2 et 4 sur F_541"""
    base = example_f541()
    E = base.curve
    assert oriented_kernels(base, 1) == [(E.infinity,)]
    kernels = oriented_kernels(base, 2, random.Random(0))
    assert len(kernels) == 1
    assert set(kernels[0]) == {E.infinity, E.point(0, 0)}
    assert len(oriented_kernels(base, 4, random.Random(0))[0]) == 4


def test_degree_errors():
    """Teste les degrés refusés : inerte, non premier à m, hors budget"""
    with pytest.raises(NoSplitPrimeKernel):
        gen_instance(InstanceSpec(family="gaussian", p=541, m=5, degree=3), 0)
    with pytest.raises(BadKernelOrder):
        gen_instance(InstanceSpec(family="f541", degree=5), 0)
    with pytest.raises(BudgetExceeded):
        gen_instance(InstanceSpec(family="f541", degree=17), 0)


def test_family_errors():
    """Teste les paramètres de famille invalides"""
    with pytest.raises(CompositeModulus):
        wouter(2)
    with pytest.raises(RootsOfUnityMissing):
        gaussian(541, 7)
    with pytest.raises(UnknownEndomorphism):
        gen_instance(InstanceSpec(family="f541", degree=2, variant="two-orient"), 0)
    with pytest.raises(ValidationError):
        InstanceSpec(family="inconnue")
    with pytest.raises(ValidationError):
        InstanceSpec(family="f541", variant="inconnue")


def test_custom_family():
    """Teste la famille custom avec les paramètres de F_541"""
    spec = InstanceSpec(family="custom", p=541, a=1, b=0, m=5, expr="i", t=0, n=1, conductor=1, degree=2)
    inst = gen_instance(spec, 0)
    assert inst.m == 5
    assert inst.sealed.isogeny.degree == 2
    with pytest.raises(MalformedInstanceError):
        gen_instance(InstanceSpec(family="custom", p=541), 0)


def test_view_hides_the_truth(make_instance):
    """Teste que la vue publique ne contient pas le bloc scellé"""
    inst = make_instance("f541", 2, variant="sidh1", seed=2)
    assert inst.view().sealed is None
    assert instance_to_model(inst.view()).sealed is None
    assert set(inst.payload) == {"R", "phi_R"}


def test_save_and_load(make_instance, tmp_path):
    """Teste l'écriture puis la relecture d'une instance"""
    inst = make_instance("f541", 2, variant="diagonal", seed=5)
    path = tmp_path / "instance.json"
    save_instance(inst, path)
    loaded = load_instance(path)
    assert dump_instance(loaded) == dump_instance(inst)
    assert loaded.sealed.isogeny(inst.generator) == inst.sealed.isogeny(inst.generator)


def test_load_rejects_bad_files(tmp_path):
    """Teste le refus d'un fichier absent ou mal formé"""
    with pytest.raises(MalformedInstanceError):
        load_instance(tmp_path / "absent.json")
    bad = tmp_path / "bad.json"
    bad.write_text('{"variant": "norm"}', encoding="utf-8")
    with pytest.raises(MalformedInstanceError):
        load_instance(bad)
