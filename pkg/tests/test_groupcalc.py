import itertools

import pytest

from src.domain.freeprod import AbelianFactor, Presentation
from src.domain.groupcalc import GroupCalculator
from src.utils.exceptions import NonNormalFormError, NotSmallCancellationError

A = (0, 1)
B = (1, 1)


def _alternating(length: int, start):
    letters = (A, B) if start == A else (B, A)
    return tuple(letters[i % 2] for i in range(length))


def test_dehn_reduce_shortens_long_half(dihedral_calc) -> None:
    assert dihedral_calc.dehn_reduce((A, B) * 4) == (B, A) * 3


def test_dehn_reduce_leaves_short_words(dihedral_calc) -> None:
    assert dihedral_calc.dehn_reduce((A, B, A)) == (A, B, A)


def test_relators_are_trivial(dihedral, dihedral_calc) -> None:
    assert dihedral_calc.is_trivial((A, B) * 7)
    for r in dihedral.symmetrized:
        assert dihedral_calc.is_trivial(r)
    assert not dihedral_calc.is_trivial((A, B))


def test_dihedral_has_fourteen_elements(dihedral_calc) -> None:
    words = [()] + [_alternating(n, s) for n in range(1, 9) for s in (A, B)]
    classes = []
    for w in words:
        if not any(dihedral_calc.equal(w, c) for c in classes):
            classes.append(w)
    assert len(words) == 17
    assert len(classes) == 14


def test_equal_is_symmetric(dihedral_calc) -> None:
    words = [_alternating(n, A) for n in range(0, 8)]
    for w1, w2 in itertools.combinations(words, 2):
        assert dihedral_calc.equal(w1, w2) == dihedral_calc.equal(w2, w1)


def test_same_coset(dihedral_calc) -> None:
    assert dihedral_calc.same_coset((A,), (), 0)
    assert not dihedral_calc.same_coset((B,), (), 0)
    assert dihedral_calc.coset_id((B,), 0).confirmed


def test_factor_element(dihedral_calc) -> None:
    assert dihedral_calc.factor_element((A,), 0) == 1


def test_refuses_unverified_presentation() -> None:
    factors = [AbelianFactor(0, "a", 1), AbelianFactor(1, "b", 1)]
    torus = Presentation.from_words(factors, [((0, (1,)), (1, (1,)), (0, (-1,)), (1, (-1,)))])
    with pytest.raises(NotSmallCancellationError):
        GroupCalculator(torus)
    calc = GroupCalculator(torus, verified_required=False)
    assert not calc.verified


def test_rejects_non_normal_words(dihedral_calc) -> None:
    with pytest.raises(NonNormalFormError):
        dihedral_calc.dehn_reduce((A, A))


def _dihedral_element(word):
    """Image in the symmetries of the heptagon: a is the reflection (0, 1), b is (1, 1)."""
    r, s = 0, 0
    for factor, _ in word:
        r2 = 0 if factor == 0 else 1
        r, s = (r + (r2 if s == 0 else -r2)) % 7, s ^ 1
    return r, s


def test_words_up_to_length_eight_fall_into_fourteen_classes(dihedral_calc) -> None:
    fp = dihedral_calc.fp
    words = [w for n in range(9) for w in itertools.product((A, B), repeat=n)]
    assert len(words) == 2 ** 9 - 1
    representatives = []
    classes = {}
    for raw in words:
        w = fp.normalize(raw)
        for i, rep in enumerate(representatives):
            if dihedral_calc.equal(w, rep):
                classes[raw] = i
                break
        else:
            classes[raw] = len(representatives)
            representatives.append(w)
    assert len(representatives) == 14
    expected = {}
    for raw in words:
        expected.setdefault(_dihedral_element(raw), set()).add(raw)
    found = {}
    for raw, i in classes.items():
        found.setdefault(i, set()).add(raw)
    assert sorted(map(sorted, found.values())) == sorted(map(sorted, expected.values()))
