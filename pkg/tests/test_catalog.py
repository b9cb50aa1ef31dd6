import pytest

from src.domain import catalog
from src.domain.freeprod import check_small_cancellation, pieces, pieces_bruteforce
from src.utils.exceptions import InputError


def test_surface_relator_is_product_of_commutators() -> None:
    p = catalog.surface_presentation(2)
    assert p.name == "surface-2"
    assert len(p.factors) == 4
    assert len(p.relators[0]) == 8
    assert p.relators[0].exponent == 1


def test_fuchsian_adds_cone_points() -> None:
    p = catalog.fuchsian_presentation(2, [3])
    assert p.name == "fuchsian-2-3"
    assert len(p.factors) == 5
    assert len(p.relators[0]) == 9
    assert p.factors[-1].order == 3


def test_fuchsian_rejects_bad_orders() -> None:
    with pytest.raises(InputError):
        catalog.fuchsian_presentation(1, [1])
    with pytest.raises(InputError):
        catalog.fuchsian_presentation(0, [])


def test_dihedral_relator_is_a_power(dihedral) -> None:
    relator = dihedral.relators[0]
    assert relator.exponent == 7
    assert len(relator.base) == 2
    assert relator.alternates


def test_finite_factor_example_passes(z3_z3) -> None:
    assert check_small_cancellation(z3_z3).passed
    assert all(f.is_finite for f in z3_z3.factors)


def test_random_presentations_agree_with_oracle(rng) -> None:
    for _ in range(100):
        p = catalog.random_presentation(rng, relator_count=rng.randint(1, 3), max_length=10)
        assert p.relators
        found = {(pc.left, pc.right): pc.length for pc in pieces(p).pieces}
        assert found == pieces_bruteforce(p)
