import random

import pytest

from sesqui.models.instance import InstanceSpec
from sesqui.services.instances import example_f541, gaussian, gen_instance


@pytest.fixture(scope="session")
def f541():
    """Courbe y^2 = x^3 + x sur F_541 orientée par Z[i], base publiée de E[5]."""
    return example_f541()


@pytest.fixture(scope="session")
def orient541(f541):
    return f541.orient


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture(scope="session")
def gaussian1861():
    """Cas composite m = 15 (#E = 1800)."""
    return gaussian(1861, 15, random.Random(15))


@pytest.fixture(scope="session")
def make_instance():
    """Fabrique d'instances mises en cache par paramètres."""
    cache = {}

    def _make(family, degree, variant="norm", seed=0, **params):
        key = (family, degree, variant, seed, tuple(sorted(params.items())))
        if key not in cache:
            spec = InstanceSpec(family=family, degree=degree, variant=variant, **params)
            cache[key] = gen_instance(spec, seed)
        return cache[key]

    return _make
