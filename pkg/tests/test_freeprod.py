from fractions import Fraction

import pytest

from src.domain.freeprod import (
    AbelianFactor,
    FiniteFactor,
    FreeFactor,
    FreeProduct,
    Presentation,
    check_small_cancellation,
    is_proper_power,
    maximal_common_prefix,
    pieces,
    pieces_bruteforce,
    relator_root,
)
from src.utils.exceptions import InputError, NonNormalFormError, NotWeaklyCyclicallyReducedError


def _zz():
    return [AbelianFactor(0, "a", 1), AbelianFactor(1, "b", 1)]


def test_normalize_cascades_cancellations() -> None:
    fp = FreeProduct(_zz())
    word = [(0, (1,)), (1, (1,)), (1, (-1,)), (0, (-1,))]
    assert fp.normalize(word) == ()


def test_normalize_consolidates_same_factor_neighbours() -> None:
    fp = FreeProduct(_zz())
    assert fp.normalize([(0, (1,)), (0, (2,)), (1, (1,))]) == ((0, (3,)), (1, (1,)))


def test_multiply_and_invert() -> None:
    fp = FreeProduct(_zz())
    w = ((0, (2,)), (1, (-1,)))
    assert fp.multiply(w, fp.invert(w)) == ()
    assert fp.power(w, 2) == w + w
    assert fp.power(w, -1) == fp.invert(w)


def test_duplicate_factor_ids_rejected() -> None:
    with pytest.raises(InputError):
        FreeProduct([AbelianFactor(0, "a", 1), AbelianFactor(0, "b", 1)])


def test_finite_factor_validates_table() -> None:
    with pytest.raises(InputError):
        FiniteFactor(0, "bad", [[0, 1], [0, 1]])


def test_abelian_common_prefix() -> None:
    z = AbelianFactor(0, "a", 1)
    assert z.common_prefix((3,), (2,)) == (2,)
    assert z.common_prefix((3,), (-2,)) is None
    z2 = AbelianFactor(0, "g", 2)
    assert z2.common_prefix((2, -1), (1, -3)) == (1, -1)


def test_free_common_prefix() -> None:
    f = FreeFactor(0, "x", 2)
    assert f.common_prefix((1, 2, 1), (1, 2, -1)) == (1, 2)
    assert f.common_prefix((1,), (2,)) is None


def test_relator_root_of_proper_power() -> None:
    word = ((0, 1), (1, 1)) * 7
    base, exponent = relator_root(word)
    assert base == ((0, 1), (1, 1))
    assert exponent == 7
    assert is_proper_power(word)
    assert not is_proper_power(base)


def test_from_words_rejects_non_normal_form() -> None:
    with pytest.raises(NonNormalFormError):
        Presentation.from_words(_zz(), [((0, (1,)), (0, (1,)))])


def test_pieces_require_weak_cyclic_reduction() -> None:
    p = Presentation.from_words(_zz(), [((0, (1,)), (1, (1,)), (0, (-1,)))])
    with pytest.raises(NotWeaklyCyclicallyReducedError):
        pieces(p)


def test_surface_group_is_small_cancellation(surface2) -> None:
    verdict = check_small_cancellation(surface2)
    assert verdict.passed
    assert verdict.report.max_length == 1
    assert verdict.report.max_ratio == Fraction(1, 8)


def test_dihedral_has_no_pieces(dihedral) -> None:
    verdict = check_small_cancellation(dihedral)
    assert verdict.passed
    assert verdict.report.pieces == []


def test_commutator_fails() -> None:
    torus = Presentation.from_words(_zz(), [((0, (1,)), (1, (1,)), (0, (-1,)), (1, (-1,)))])
    verdict = check_small_cancellation(torus)
    assert not verdict.passed
    assert verdict.violation is not None
    assert verdict.violation.length == 1


def test_grid_pieces_use_partial_syllables(grid) -> None:
    verdict = check_small_cancellation(grid)
    assert verdict.passed
    assert verdict.report.max_length == 2


def test_maximal_common_prefix_stops_at_partial_syllable() -> None:
    fp = FreeProduct(_zz())
    r1 = ((0, (2,)), (1, (1,)), (0, (3,)))
    r2 = ((0, (2,)), (1, (1,)), (0, (1,)), (1, (-1,)))
    assert maximal_common_prefix(fp, r1, r2) == ((0, (2,)), (1, (1,)), (0, (1,)))


def test_pieces_agree_with_bruteforce(surface2, grid) -> None:
    for p in (surface2, grid):
        found = {(pc.left, pc.right): pc.length for pc in pieces(p).pieces}
        assert found == pieces_bruteforce(p)


def test_fingerprint_is_stable(surface2) -> None:
    from src.domain.catalog import surface_presentation

    assert surface2.fingerprint == surface_presentation(2).fingerprint
    assert len(surface2.fingerprint) == 16
