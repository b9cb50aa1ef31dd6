"""
Free product word algebra.

Words are tuples of syllables ``(factor_id, element)`` where consecutive
syllables come from distinct factors and no syllable is the identity of its
factor. Factor elements are canonical per kind, so word equality is tuple
equality:

- finite factors: an index into the multiplication table,
- free abelian factors: a tuple of integers,
- free factors: a freely reduced tuple of non-zero generator indices
  (``-i`` is the inverse of generator ``i``).
"""
import itertools
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from src.utils.constants import DEFAULT_LAMBDA, FACTOR_ABELIAN, FACTOR_FINITE, FACTOR_FREE
from src.utils.exceptions import (
    InputError,
    NonNormalFormError,
    NotWeaklyCyclicallyReducedError,
)
from src.utils.helpers import fingerprint, format_exponent, format_fraction

logger = logging.getLogger(__name__)

Element = Any
Syllable = Tuple[int, Element]
Word = Tuple[Syllable, ...]


class FactorGroup(ABC):
    """
    Abstract base class for factor groups of a free product.
    Every factor kind provides canonical elements, group operations and the
    geodesic-prefix relation used by piece matching.
    """

    kind: str = ""

    def __init__(self, factor_id: int, name: str):
        self.factor_id = factor_id
        self.name = name

    @property
    @abstractmethod
    def identity(self) -> Element:
        pass

    @abstractmethod
    def multiply(self, x: Element, y: Element) -> Element:
        pass

    @abstractmethod
    def inverse(self, x: Element) -> Element:
        pass

    @abstractmethod
    def norm(self, x: Element) -> int:
        """Word length of x in the factor's natural generators."""
        pass

    @abstractmethod
    def elements_within(self, radius: int) -> List[Element]:
        """All elements of norm at most `radius`, sorted by `sort_key`."""
        pass

    @abstractmethod
    def prefixes(self, x: Element) -> List[Element]:
        """
        Non-trivial geodesic prefixes of x (x included).

        A prefix g of x is an element with norm(g) + norm(g^-1 x) == norm(x),
        except for finite factors where only x itself qualifies.
        """
        pass

    @abstractmethod
    def parse(self, raw: Any) -> Element:
        """Convert a JSON value to a canonical element, raising InputError."""
        pass

    @abstractmethod
    def format(self, x: Element) -> str:
        pass

    @abstractmethod
    def describe(self) -> Dict[str, Any]:
        """JSON-ready description, inverse of the presentation loader."""
        pass

    def sort_key(self, x: Element) -> Tuple:
        return (self.norm(x), x)

    def is_identity(self, x: Element) -> bool:
        return x == self.identity

    def common_prefix(self, x: Element, y: Element) -> Optional[Element]:
        """Longest common geodesic prefix of x and y, or None."""
        common = set(self.prefixes(x)) & set(self.prefixes(y))
        if not common:
            return None
        return max(common, key=self.sort_key)

    def is_prefix(self, g: Element, x: Element) -> bool:
        return g in self.prefixes(x)

    @property
    def is_finite(self) -> bool:
        return False


class FiniteFactor(FactorGroup):
    """Finite group given by a multiplication table on 0..n-1."""

    kind = FACTOR_FINITE

    def __init__(self, factor_id: int, name: str, table: Sequence[Sequence[int]], cyclic: bool = False):
        super().__init__(factor_id, name)
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.order = len(self.table)
        self.cyclic = cyclic
        self._validate()
        self._identity = next(
            e for e in range(self.order) if all(self.table[e][x] == x for x in range(self.order))
        )
        self._inverses = tuple(
            next(y for y in range(self.order) if self.table[x][y] == self._identity)
            for x in range(self.order)
        )

    @classmethod
    def cyclic_group(cls, factor_id: int, name: str, order: int) -> "FiniteFactor":
        if order < 1:
            raise InputError(f"Cyclic factor {name} needs a positive order", {"order": order})
        table = [[(x + y) % order for y in range(order)] for x in range(order)]
        return cls(factor_id, name, table, cyclic=True)

    def _validate(self) -> None:
        n = self.order
        if n == 0 or any(len(row) != n for row in self.table):
            raise InputError(f"Factor {self.name}: multiplication table must be square", {"factor": self.factor_id})
        if any(not 0 <= v < n for row in self.table for v in row):
            raise InputError(f"Factor {self.name}: table entries out of range", {"factor": self.factor_id})
        identities = [e for e in range(n) if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n))]
        if len(identities) != 1:
            raise InputError(f"Factor {self.name}: table has no two-sided identity", {"factor": self.factor_id})
        e = identities[0]
        for x in range(n):
            if not any(self.table[x][y] == e and self.table[y][x] == e for y in range(n)):
                raise InputError(f"Factor {self.name}: element {x} has no inverse", {"factor": self.factor_id})
        for x, y, z in itertools.product(range(n), repeat=3):
            if self.table[self.table[x][y]][z] != self.table[x][self.table[y][z]]:
                raise InputError(
                    f"Factor {self.name}: table is not associative",
                    {"factor": self.factor_id, "triple": [x, y, z]},
                )

    @property
    def identity(self) -> int:
        return self._identity

    @property
    def is_finite(self) -> bool:
        return True

    def multiply(self, x: int, y: int) -> int:
        return self.table[x][y]

    def inverse(self, x: int) -> int:
        return self._inverses[x]

    def norm(self, x: int) -> int:
        return 0 if x == self._identity else 1

    def elements_within(self, radius: int) -> List[int]:
        if radius <= 0:
            return [self._identity]
        return sorted(range(self.order), key=self.sort_key)

    def prefixes(self, x: int) -> List[int]:
        return [] if x == self._identity else [x]

    def common_prefix(self, x: int, y: int) -> Optional[int]:
        return x if x == y and x != self._identity else None

    def parse(self, raw: Any) -> int:
        if isinstance(raw, bool) or not isinstance(raw, int) or not 0 <= raw < self.order:
            raise InputError(f"Element {raw!r} is not in finite factor {self.name}", {"factor": self.factor_id})
        return raw

    def format(self, x: int) -> str:
        if self.cyclic:
            return format_exponent(self.name, x)
        return f"{self.name}[{x}]"

    def describe(self) -> Dict[str, Any]:
        if self.cyclic:
            return {"id": self.factor_id, "kind": self.kind, "name": self.name, "order": self.order}
        return {"id": self.factor_id, "kind": self.kind, "name": self.name, "table": [list(r) for r in self.table]}


class AbelianFactor(FactorGroup):
    """Free abelian group Z^d with integer vector elements."""

    kind = FACTOR_ABELIAN

    def __init__(self, factor_id: int, name: str, rank: int):
        super().__init__(factor_id, name)
        if rank < 1:
            raise InputError(f"Factor {name}: rank must be positive", {"factor": factor_id})
        self.rank = rank
        self._identity = (0,) * rank

    @property
    def identity(self) -> Tuple[int, ...]:
        return self._identity

    def multiply(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def inverse(self, x):
        return tuple(-a for a in x)

    def norm(self, x) -> int:
        return sum(abs(a) for a in x)

    def elements_within(self, radius: int):
        ranges = [range(-radius, radius + 1)] * self.rank
        found = [v for v in itertools.product(*ranges) if sum(abs(a) for a in v) <= radius]
        return sorted(found, key=self.sort_key)

    def prefixes(self, x):
        axes = [range(0, a + 1) if a >= 0 else range(a, 1) for a in x]
        return [v for v in itertools.product(*axes) if any(v)]

    def common_prefix(self, x, y):
        combined = tuple(
            (1 if a > 0 else -1) * min(abs(a), abs(b)) if a * b > 0 else 0
            for a, b in zip(x, y)
        )
        return combined if any(combined) else None

    def is_prefix(self, g, x) -> bool:
        return all((a == 0) or (a * b > 0 and abs(a) <= abs(b)) for a, b in zip(g, x)) and any(g)

    def parse(self, raw: Any):
        if isinstance(raw, int) and not isinstance(raw, bool) and self.rank == 1:
            return (raw,)
        if not isinstance(raw, (list, tuple)) or len(raw) != self.rank or not all(
            isinstance(a, int) and not isinstance(a, bool) for a in raw
        ):
            raise InputError(
                f"Element {raw!r} is not a vector of rank {self.rank} for factor {self.name}",
                {"factor": self.factor_id},
            )
        return tuple(raw)

    def format(self, x) -> str:
        if self.rank == 1:
            return format_exponent(self.name, x[0])
        return f"{self.name}({','.join(str(a) for a in x)})"

    def describe(self) -> Dict[str, Any]:
        return {"id": self.factor_id, "kind": self.kind, "name": self.name, "rank": self.rank}


class FreeFactor(FactorGroup):
    """Free group of rank d; elements are freely reduced tuples of +-generator indices."""

    kind = FACTOR_FREE

    def __init__(self, factor_id: int, name: str, rank: int):
        super().__init__(factor_id, name)
        if rank < 1:
            raise InputError(f"Factor {name}: rank must be positive", {"factor": factor_id})
        self.rank = rank

    @property
    def identity(self) -> Tuple[int, ...]:
        return ()

    @staticmethod
    def reduce(letters: Iterable[int]) -> Tuple[int, ...]:
        stack: List[int] = []
        for letter in letters:
            if stack and stack[-1] == -letter:
                stack.pop()
            else:
                stack.append(letter)
        return tuple(stack)

    def multiply(self, x, y):
        return self.reduce(x + y)

    def inverse(self, x):
        return tuple(-a for a in reversed(x))

    def norm(self, x) -> int:
        return len(x)

    def generators(self) -> List[int]:
        """Letters in the fixed direction order 1, -1, 2, -2, ..."""
        return [s * i for i in range(1, self.rank + 1) for s in (1, -1)]

    def elements_within(self, radius: int):
        layer = [()]
        found = [()]
        for _ in range(radius):
            layer = [w + (g,) for w in layer for g in self.generators() if not w or w[-1] != -g]
            found.extend(layer)
        return sorted(found, key=self.sort_key)

    def prefixes(self, x):
        return [x[:i] for i in range(1, len(x) + 1)]

    def common_prefix(self, x, y):
        n = 0
        while n < min(len(x), len(y)) and x[n] == y[n]:
            n += 1
        return x[:n] if n else None

    def parse(self, raw: Any):
        if not isinstance(raw, (list, tuple)) or not all(
            isinstance(a, int) and not isinstance(a, bool) and 0 < abs(a) <= self.rank for a in raw
        ):
            raise InputError(
                f"Element {raw!r} is not a word in the {self.rank} generators of {self.name}",
                {"factor": self.factor_id},
            )
        return self.reduce(raw)

    def format(self, x) -> str:
        if not x:
            return "1"
        return "".join(
            f"{self.name}{abs(a)}" + ("^-1" if a < 0 else "") for a in x
        )

    def describe(self) -> Dict[str, Any]:
        return {"id": self.factor_id, "kind": self.kind, "name": self.name, "rank": self.rank}


class FreeProduct:
    """
    The free product of finitely many factor groups.

    Provides normal forms, multiplication, inversion and cyclic conjugates
    of words in the free product.
    """

    def __init__(self, factors: Sequence[FactorGroup]):
        self.factors: Dict[int, FactorGroup] = {}
        for factor in factors:
            if factor.factor_id in self.factors:
                raise InputError(f"Duplicate factor id {factor.factor_id}", {"factor": factor.factor_id})
            self.factors[factor.factor_id] = factor

    def factor(self, factor_id: int) -> FactorGroup:
        try:
            return self.factors[factor_id]
        except KeyError:
            raise InputError(f"Unknown factor id {factor_id}", {"factor": factor_id}) from None

    def syllable(self, factor_id: int, raw: Any) -> Syllable:
        factor = self.factor(factor_id)
        return (factor_id, factor.parse(raw))

    def normalize(self, syllables: Iterable[Syllable]) -> Word:
        """
        Reduce an arbitrary syllable sequence to normal form.

        Same-factor neighbours are consolidated and identity syllables removed,
        cascading as cancellations expose new neighbours.
        """
        stack: List[Syllable] = []
        for factor_id, element in syllables:
            factor = self.factor(factor_id)
            if factor.is_identity(element):
                continue
            if stack and stack[-1][0] == factor_id:
                combined = factor.multiply(stack.pop()[1], element)
                if not factor.is_identity(combined):
                    stack.append((factor_id, combined))
            else:
                stack.append((factor_id, element))
        return tuple(stack)

    def multiply(self, w1: Word, w2: Word) -> Word:
        return self.normalize(w1 + w2)

    def product(self, *words: Word) -> Word:
        result: Word = ()
        for w in words:
            result = self.multiply(result, w)
        return result

    def invert(self, w: Word) -> Word:
        return tuple((f, self.factors[f].inverse(e)) for f, e in reversed(w))

    def power(self, w: Word, n: int) -> Word:
        if n < 0:
            return self.power(self.invert(w), -n)
        result: Word = ()
        for _ in range(n):
            result = self.multiply(result, w)
        return result

    def conjugate(self, w: Word, g: Word) -> Word:
        """g w g^-1"""
        return self.product(g, w, self.invert(g))

    def is_normal_form(self, w: Sequence[Syllable]) -> bool:
        for i, (factor_id, element) in enumerate(w):
            factor = self.factors.get(factor_id)
            if factor is None or factor.is_identity(element):
                return False
            if i and w[i - 1][0] == factor_id:
                return False
        return True

    def require_normal_form(self, w: Sequence[Syllable], label: str = "word") -> Word:
        if not self.is_normal_form(w):
            raise NonNormalFormError(f"{label} is not in free product normal form", {"word": self.format_word(w)})
        return tuple(w)

    def is_weakly_cyclically_reduced(self, w: Word) -> bool:
        if len(w) <= 1:
            return True
        (f1, x), (f2, y) = w[0], w[-1]
        return not (f1 == f2 and self.factors[f1].is_identity(self.factors[f1].multiply(y, x)))

    def rotate(self, w: Word, i: int) -> Word:
        return self.normalize(w[i:] + w[:i])

    def cyclic_conjugates(self, w: Word) -> List[Word]:
        """Normal forms of all rotations of w, deduplicated and sorted."""
        if not w:
            return [()]
        return sorted({self.rotate(w, i) for i in range(len(w))}, key=self.word_key)

    def cyclically_reduce(self, w: Word) -> Word:
        """Conjugate w until first and last syllables lie in different factors."""
        w = tuple(w)
        while len(w) >= 2 and w[0][0] == w[-1][0]:
            w = self.normalize((w[-1],) + w[:-1])
        return w

    def syllable_key(self, s: Syllable) -> Tuple:
        return (s[0], self.factors[s[0]].sort_key(s[1]))

    def word_key(self, w: Word) -> Tuple:
        """Shortlex order on words."""
        return (len(w), tuple(self.syllable_key(s) for s in w))

    def format_word(self, w: Sequence[Syllable]) -> str:
        if not w:
            return "1"
        parts = []
        for factor_id, element in w:
            factor = self.factors.get(factor_id)
            parts.append(factor.format(element) if factor else f"?{factor_id}")
        return " ".join(parts)

    def word_to_json(self, w: Word) -> List[Dict[str, Any]]:
        return [{"factor": f, "element": list(e) if isinstance(e, tuple) else e} for f, e in w]


def is_proper_power(w: Word) -> bool:
    """Exhaustive divisor check on the cyclic word w."""
    n = len(w)
    return any(n % p == 0 and w[p:] + w[:p] == w for p in range(1, n))


def relator_root(w: Word) -> Tuple[Word, int]:
    """
    Split w as u^d with u not a proper power.

    Args:
        w: A relator word with cyclically alternating factors

    Returns:
        Tuple of (u, d)
    """
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and w[:p] * (n // p) == w:
            return w[:p], n // p
    return w, 1


@dataclass(frozen=True)
class Relator:
    word: Word
    base: Word
    exponent: int

    def __len__(self) -> int:
        return len(self.word)

    @property
    def alternates(self) -> bool:
        """True when the base alternates cyclically (first and last factors differ)."""
        return len(self.base) >= 2 and self.base[0][0] != self.base[-1][0]


class Presentation:
    """
    A quotient G = F / <<R>> of a free product F.

    Args:
        factors: The factor groups of F
        relators: Relators in normal form
    """

    def __init__(self, factors: Sequence[FactorGroup], relators: Sequence[Relator], name: str = ""):
        self.free_product = FreeProduct(factors)
        self.relators: Tuple[Relator, ...] = tuple(relators)
        self.name = name
        for index, relator in enumerate(self.relators):
            self.free_product.require_normal_form(relator.word, f"relator {index}")
            self.free_product.require_normal_form(relator.base, f"base of relator {index}")

    @property
    def factors(self) -> List[FactorGroup]:
        return [self.free_product.factors[f] for f in sorted(self.free_product.factors)]

    @classmethod
    def from_words(cls, factors: Sequence[FactorGroup], words: Sequence[Sequence[Syllable]], name: str = "") -> "Presentation":
        """Build a presentation, extracting each relator's root by periodicity."""
        fp = FreeProduct(factors)
        relators = []
        for index, raw in enumerate(words):
            word = fp.require_normal_form(tuple(raw), f"relator {index}")
            base, exponent = relator_root(word)
            relators.append(Relator(word, base, exponent))
        return cls(factors, relators, name)

    def describe(self) -> Dict[str, Any]:
        fp = self.free_product
        return {
            "name": self.name,
            "factors": [f.describe() for f in self.factors],
            "relators": [
                {"syllables": fp.word_to_json(r.word), "base": fp.word_to_json(r.base), "exponent": r.exponent}
                for r in self.relators
            ],
        }

    @cached_property
    def fingerprint(self) -> str:
        return fingerprint(self.describe())

    @cached_property
    def symmetrized(self) -> Tuple[Word, ...]:
        """Cyclic conjugates of every relator and its inverse, sorted shortlex."""
        fp = self.free_product
        found = set()
        for relator in self.relators:
            found.update(fp.cyclic_conjugates(relator.word))
            found.update(fp.cyclic_conjugates(fp.invert(relator.word)))
        found.discard(())
        return tuple(sorted(found, key=fp.word_key))

    def require_weakly_cyclically_reduced(self) -> None:
        for index, relator in enumerate(self.relators):
            if not self.free_product.is_weakly_cyclically_reduced(relator.word):
                raise NotWeaklyCyclicallyReducedError(index)


@dataclass(frozen=True)
class Piece:
    word: Word
    left: Word
    right: Word

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.length, min(len(self.left), len(self.right)))


@dataclass
class PieceReport:
    pieces: List[Piece] = field(default_factory=list)
    max_ratio: Fraction = Fraction(0)

    @property
    def max_length(self) -> int:
        return max((p.length for p in self.pieces), default=0)


@dataclass
class SmallCancellationVerdict:
    passed: bool
    report: PieceReport
    lam: Fraction
    violation: Optional[Piece] = None


def maximal_common_prefix(fp: FreeProduct, r1: Word, r2: Word) -> Word:
    """
    Longest common weak prefix of r1 and r2.

    Full syllables must agree; the junction syllable may be a common geodesic
    prefix of the next syllables of both words.
    """
    k = 0
    limit = min(len(r1), len(r2))
    while k < limit and r1[k] == r2[k]:
        k += 1
    prefix = r1[:k]
    if k < limit and r1[k][0] == r2[k][0]:
        partial = fp.factors[r1[k][0]].common_prefix(r1[k][1], r2[k][1])
        if partial is not None:
            prefix = prefix + ((r1[k][0], partial),)
    return prefix


def pieces(p: Presentation) -> PieceReport:
    """
    Enumerate the maximal pieces of a presentation.

    Args:
        p: Presentation with weakly cyclically reduced relators

    Returns:
        PieceReport with pieces sorted by (length desc, words) and exact max ratio

    Raises:
        NotWeaklyCyclicallyReducedError: If a relator fails weak cyclic reduction
    """
    p.require_weakly_cyclically_reduced()
    fp = p.free_product
    words = p.symmetrized
    report = PieceReport()
    for r1, r2 in itertools.combinations(words, 2):
        common = maximal_common_prefix(fp, r1, r2)
        if common:
            piece = Piece(common, r1, r2)
            report.pieces.append(piece)
            report.max_ratio = max(report.max_ratio, piece.ratio)
    report.pieces.sort(key=lambda pc: (-pc.length, fp.word_key(pc.word), fp.word_key(pc.left), fp.word_key(pc.right)))
    logger.debug(f"{len(report.pieces)} maximal pieces over {len(words)} symmetrized relators")
    return report


def weak_prefixes(fp: FreeProduct, r: Word) -> set:
    """Every weak prefix of r: full syllables followed by a geodesic prefix of the next one."""
    found = set()
    for j, (factor_id, element) in enumerate(r):
        for partial in fp.factors[factor_id].prefixes(element):
            found.add(r[:j] + ((factor_id, partial),))
    return found


def pieces_bruteforce(p: Presentation) -> Dict[Tuple[Word, Word], int]:
    """
    Independent piece oracle: intersect the full weak-prefix sets of every pair.

    Returns:
        Mapping (r1, r2) -> length of the longest common weak prefix, for pairs with one
    """
    fp = p.free_product
    words = p.symmetrized
    prefix_sets = {w: weak_prefixes(fp, w) for w in words}
    result = {}
    for r1, r2 in itertools.combinations(words, 2):
        common = prefix_sets[r1] & prefix_sets[r2]
        if common:
            result[(r1, r2)] = max(len(c) for c in common)
    return result


def check_small_cancellation(p: Presentation, lam: Fraction = DEFAULT_LAMBDA) -> SmallCancellationVerdict:
    """
    Check the C'(lam) condition |piece| < lam |r| for every relator r a piece prefixes.

    Args:
        p: Presentation to check
        lam: Exact rational threshold

    Returns:
        SmallCancellationVerdict naming the first violating piece on failure
    """
    lam = Fraction(lam)
    for index, relator in enumerate(p.relators):
        p.free_product.require_normal_form(relator.word, f"relator {index}")
    report = pieces(p)
    for piece in report.pieces:
        for r in (piece.left, piece.right):
            if not Fraction(piece.length) < lam * len(r):
                logger.info(
                    f"C'({format_fraction(lam)}) fails: piece of length {piece.length} in relator of length {len(r)}"
                )
                return SmallCancellationVerdict(False, report, lam, piece)
    return SmallCancellationVerdict(True, report, lam)
