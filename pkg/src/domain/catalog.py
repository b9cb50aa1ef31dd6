"""
Built-in presentations used by the CLI demos, verification sweeps and tests.
"""
import random
from typing import List, Sequence

from src.domain.freeprod import (
    AbelianFactor,
    FactorGroup,
    FiniteFactor,
    FreeProduct,
    Presentation,
    Word,
)
from src.utils.exceptions import InputError


def surface_presentation(genus: int) -> Presentation:
    """
    Closed orientable surface group as a quotient of a free product of 2g copies of Z.

    Factor 2i is <a_{i+1}>, factor 2i+1 is <b_{i+1}>; the relator is the product of commutators.
    """
    return fuchsian_presentation(genus, [])


def fuchsian_presentation(genus: int, cone_orders: Sequence[int]) -> Presentation:
    """
    Fuchsian group with `genus` handles and cone points of the given orders.

    Args:
        genus: Number of handles (g >= 0)
        cone_orders: Orders m_j >= 2 of the elliptic generators c_j

    Returns:
        Presentation over Z^{*2g} * Z/m_1 * ... * Z/m_r with relator [a_1,b_1]...[a_g,b_g] c_1...c_r
    """
    if genus < 0 or any(m < 2 for m in cone_orders):
        raise InputError("Fuchsian data needs genus >= 0 and cone orders >= 2",
                         {"genus": genus, "cone_orders": list(cone_orders)})
    factors: List[FactorGroup] = []
    word = []
    for i in range(genus):
        a = AbelianFactor(2 * i, f"a{i + 1}", 1)
        b = AbelianFactor(2 * i + 1, f"b{i + 1}", 1)
        factors.extend([a, b])
        word.extend([(a.factor_id, (1,)), (b.factor_id, (1,)), (a.factor_id, (-1,)), (b.factor_id, (-1,))])
    for j, order in enumerate(cone_orders):
        c = FiniteFactor.cyclic_group(2 * genus + j, f"c{j + 1}", order)
        factors.append(c)
        word.append((c.factor_id, 1))
    if not word:
        raise InputError("Fuchsian presentation needs at least one generator", {"genus": genus})
    name = f"surface-{genus}" if not cone_orders else f"fuchsian-{genus}-{'-'.join(map(str, cone_orders))}"
    return Presentation.from_words(factors, [FreeProduct(factors).normalize(word)], name)


def dihedral_presentation(n: int) -> Presentation:
    """Z/2 * Z/2 modulo (ab)^n, the dihedral group of order 2n."""
    a = FiniteFactor.cyclic_group(0, "a", 2)
    b = FiniteFactor.cyclic_group(1, "b", 2)
    return Presentation.from_words([a, b], [((0, 1), (1, 1)) * n], f"dihedral-{2 * n}")


def finite_factor_presentation() -> Presentation:
    """Z/3 * Z/3 modulo (ab)^7: finite factors with a C'(1/6) relator."""
    a = FiniteFactor.cyclic_group(0, "a", 3)
    b = FiniteFactor.cyclic_group(1, "b", 3)
    return Presentation.from_words([a, b], [((0, 1), (1, 1)) * 7], "z3-z3-ab7")


def grid_factor_presentation() -> Presentation:
    """Z^2 * Z/2 with a single long alternating relator; exercises grid fibres."""
    g = AbelianFactor(0, "g", 2)
    t = FiniteFactor.cyclic_group(1, "t", 2)
    letters = [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (3, 0), (0, 3)]
    word: List = []
    for vector in letters:
        word.extend([(0, vector), (1, 1)])
    return Presentation.from_words([g, t], [tuple(word)], "grid-z2")


def random_presentation(rng: random.Random, relator_count: int = 3, max_length: int = 10,
                        factor_count: int = 2) -> Presentation:
    """
    Random presentation over Z * Z (* Z ...) with cyclically alternating relators.

    Args:
        rng: Seeded random generator
        relator_count: Number of relators (at least 1)
        max_length: Maximum syllable length of each relator
        factor_count: Number of Z factors

    Returns:
        Presentation whose relators are weakly cyclically reduced
    """
    factors = [AbelianFactor(i, chr(ord("a") + i), 1) for i in range(factor_count)]
    words: List[Word] = []
    for _ in range(relator_count):
        length = rng.randrange(2, max_length + 1, 2) if factor_count == 2 else rng.randint(2, max_length)
        word = []
        previous = None
        for position in range(length):
            choices = [f for f in range(factor_count) if f != previous]
            if position == length - 1 and word:
                choices = [f for f in choices if f != word[0][0]] or choices
            factor = rng.choice(choices)
            exponent = rng.choice([e for e in range(-3, 4) if e])
            word.append((factor, (exponent,)))
            previous = factor
        words.append(tuple(word))
    fp = FreeProduct(factors)
    normalized = [fp.normalize(w) for w in words]
    normalized = [fp.cyclically_reduce(w) for w in normalized if w]
    return Presentation.from_words(factors, [w for w in normalized if w], "random")
