import random

import pytest

from src.config import DEFAULT_SEED
from src.domain import catalog
from src.domain.blowup import balance, build_eg_ball
from src.domain.devball import build_x_ball
from src.domain.groupcalc import GroupCalculator
from src.infrastructure.cubes.cube_list import build_models
from src.infrastructure.services.service_factory import ServiceFactory


@pytest.fixture(autouse=True)
def reset_services():
    ServiceFactory.reset_services()
    yield
    ServiceFactory.reset_services()


@pytest.fixture
def rng() -> random.Random:
    return random.Random(DEFAULT_SEED)


@pytest.fixture
def surface2():
    return catalog.surface_presentation(2)


@pytest.fixture
def dihedral():
    """Dihedral group of order 14: the whole complex X is one 14-gon."""
    return catalog.dihedral_presentation(7)


@pytest.fixture
def z3_z3():
    return catalog.finite_factor_presentation()


@pytest.fixture
def grid():
    return catalog.grid_factor_presentation()


@pytest.fixture
def dihedral_calc(dihedral):
    return GroupCalculator(dihedral)


@pytest.fixture
def dihedral_ball(dihedral, dihedral_calc):
    return build_x_ball(dihedral, 1, dihedral_calc)


@pytest.fixture
def dihedral_balanced(dihedral, dihedral_ball):
    eg = build_eg_ball(dihedral, build_models(dihedral), 1, fibre_radius=1, base=dihedral_ball)
    _, ball = balance(eg, 4)
    return ball
