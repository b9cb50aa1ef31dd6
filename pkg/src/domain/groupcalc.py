"""
Word problem and coset computations in G = F / <<R>> by Dehn's algorithm over the free product.
"""
import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from src.config import COSET_ELEMENT_RADIUS, COSET_MAX_STATES, DEFAULT_MAX_AREA
from src.domain.freeprod import Element, Presentation, Word, check_small_cancellation
from src.utils.exceptions import NotSmallCancellationError, UndecidedError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CosetKey:
    """
    Canonical key of a right coset H·w of a factor H.

    Attributes:
        factor: Factor id of H
        key: Shortlex-least word found in the bounded closure of w
        confirmed: True when the closure was exhausted within the bounds
    """

    factor: int
    key: Word
    confirmed: bool


class GroupCalculator:
    """
    Dehn-algorithm calculator for a C'(1/6) presentation.

    Args:
        presentation: The presentation of G
        verified_required: Refuse presentations failing C'(1/6); disable only for plumbing smoke tests
        max_area: Depth bound of the coset closure search
        max_states: State bound of the coset closure search
        element_radius: Norm bound on factor elements prepended during coset search
    """

    def __init__(self, presentation: Presentation, verified_required: bool = True,
                 max_area: int = DEFAULT_MAX_AREA, max_states: int = COSET_MAX_STATES,
                 element_radius: int = COSET_ELEMENT_RADIUS):
        self.presentation = presentation
        self.fp = presentation.free_product
        self.max_area = max_area
        self.max_states = max_states
        self.element_radius = element_radius
        self.verified = False
        if verified_required:
            verdict = check_small_cancellation(presentation)
            if not verdict.passed:
                raise NotSmallCancellationError(
                    f"Presentation {presentation.name or presentation.fingerprint} is not C'(1/6); "
                    "Dehn's algorithm is refused",
                    {"violation": self.fp.format_word(verdict.violation.word) if verdict.violation else None},
                )
            self.verified = True
        self._by_first_factor: Dict[int, List[Word]] = {}
        for r in presentation.symmetrized:
            self._by_first_factor.setdefault(r[0][0], []).append(r)
        self._closure = lru_cache(maxsize=4096)(self._coset_closure)
        self._reduce = lru_cache(maxsize=16384)(self._dehn_reduce)

    # --- Dehn replacement ---

    def _match(self, w: Word, i: int, r: Word, k: int) -> Optional[Word]:
        """
        Replacement for w[i:i+k] when it matches r[:k] up to factor-equal end syllables.

        The segment reads z·r[:k]·z' with z, z' in the end factors; r = r[:k]·t gives z·t^-1·z'.
        """
        if w[i][0] != r[0][0] or w[i + k - 1][0] != r[k - 1][0]:
            return None
        if w[i + 1:i + k - 1] != r[1:k - 1]:
            return None
        first = self.fp.factors[r[0][0]]
        z = first.multiply(w[i][1], first.inverse(r[0][1]))
        t_inv = self.fp.invert(r[k:])
        if k == 1:
            return self.fp.normalize(((r[0][0], z),) + t_inv)
        last = self.fp.factors[r[k - 1][0]]
        z_end = last.multiply(last.inverse(r[k - 1][1]), w[i + k - 1][1])
        return self.fp.normalize(((r[0][0], z),) + t_inv + ((r[k - 1][0], z_end),))

    def _linear_step(self, w: Word) -> Optional[Word]:
        """First length-decreasing replacement: start ascending, relators in order, longest match first."""
        n = len(w)
        for i in range(n):
            for r in self._by_first_factor.get(w[i][0], ()):
                for k in range(min(n - i, len(r)), len(r) // 2, -1):
                    replacement = self._match(w, i, r, k)
                    if replacement is None:
                        continue
                    candidate = self.fp.normalize(w[:i] + replacement + w[i + k:])
                    if len(candidate) < n:
                        return candidate
        return None

    def _half_swaps(self, w: Word) -> List[Word]:
        """All exact half-relator replacements that do not lengthen w."""
        n = len(w)
        found = []
        for i in range(n):
            for r in self._by_first_factor.get(w[i][0], ()):
                if len(r) % 2 or i + len(r) // 2 > n:
                    continue
                replacement = self._match(w, i, r, len(r) // 2)
                if replacement is None:
                    continue
                candidate = self.fp.normalize(w[:i] + replacement + w[i + len(r) // 2:])
                if len(candidate) <= n and candidate != w and candidate not in found:
                    found.append(candidate)
        return found

    def _dehn_reduce(self, w: Word, cyclic: bool) -> Word:
        if not cyclic:
            while True:
                step = self._linear_step(w)
                if step is None:
                    return w
                w = step
        w = self.fp.cyclically_reduce(w)
        while True:
            for j in range(len(w)):
                rotated = w[j:] + w[:j]
                step = self._linear_step(rotated)
                if step is not None:
                    w = self.fp.cyclically_reduce(step)
                    break
            else:
                return w

    def dehn_reduce(self, w: Word, cyclic: bool = False) -> Word:
        """
        Apply Dehn replacements until no subword exceeds half of a symmetrized relator.

        Args:
            w: Word in normal form
            cyclic: Scan rotations of the cyclic word; the result is then only a conjugate of w

        Returns:
            Reduced word, equal to w in G when cyclic is False
        """
        w = self.fp.require_normal_form(tuple(w))
        return self._reduce(w, cyclic)

    def is_trivial(self, w: Word) -> bool:
        return not self.dehn_reduce(w, cyclic=True)

    def equal(self, w1: Word, w2: Word) -> bool:
        return self.is_trivial(self.fp.multiply(tuple(w1), self.fp.invert(tuple(w2))))

    # --- Cosets ---

    def _settle(self, state: Word, acc: Element, factor_id: int) -> Tuple[Word, Element]:
        """Dehn-reduce and strip leading H-syllables, keeping w = acc·state."""
        factor = self.fp.factors[factor_id]
        while True:
            state = self._reduce(state, False)
            if state and state[0][0] == factor_id:
                acc = factor.multiply(acc, state[0][1])
                state = state[1:]
                continue
            return state, acc

    def _coset_closure(self, w: Word, factor_id: int) -> Tuple[Dict[Word, Element], bool]:
        factor = self.fp.factor(factor_id)
        window = [h for h in factor.elements_within(self.element_radius) if not factor.is_identity(h)]
        start = self._settle(w, factor.identity, factor_id)
        seen: Dict[Word, Element] = {start[0]: start[1]}
        frontier = deque([(start[0], 0)])
        truncated = False
        while frontier:
            state, depth = frontier.popleft()
            acc = seen[state]
            moves = [self._settle(swapped, acc, factor_id) for swapped in self._half_swaps(state)]
            for h in window:
                prepended = self.fp.normalize(((factor_id, h),) + state)
                moves.append(self._settle(prepended, factor.multiply(acc, factor.inverse(h)), factor_id))
            for nxt, nxt_acc in moves:
                if nxt in seen:
                    continue
                if depth + 1 > self.max_area or len(seen) >= self.max_states:
                    truncated = True
                    continue
                seen[nxt] = nxt_acc
                frontier.append((nxt, depth + 1))
        if truncated:
            logger.debug(f"Coset closure for factor {factor_id} truncated at {len(seen)} states")
        return seen, truncated

    def coset_id(self, w: Word, factor_id: int) -> CosetKey:
        """
        Canonical key of the right coset G_i·w.

        Args:
            w: Word in normal form
            factor_id: Factor id i

        Returns:
            CosetKey with the shortlex-least state of the bounded closure
        """
        w = self.fp.require_normal_form(tuple(w))
        seen, truncated = self._closure(w, factor_id)
        key = min(seen, key=self.fp.word_key)
        return CosetKey(factor_id, key, not truncated)

    def same_coset(self, w1: Word, w2: Word, factor_id: int) -> bool:
        """
        Decide G_i·w1 == G_i·w2.

        Raises:
            UndecidedError: If the keys differ and either closure was truncated
        """
        k1, k2 = self.coset_id(w1, factor_id), self.coset_id(w2, factor_id)
        if k1.key == k2.key:
            return True
        if k1.confirmed and k2.confirmed:
            return False
        raise UndecidedError(
            f"Coset identification for factor {factor_id} is undecided within the search bounds",
            {"factor": factor_id, "max_area": self.max_area, "max_states": self.max_states},
        )

    def factor_element(self, w: Word, factor_id: int) -> Element:
        """
        The element h of G_i with w = h in G.

        Raises:
            UndecidedError: If no representation was found within the search bounds
        """
        w = self.fp.require_normal_form(tuple(w))
        seen, truncated = self._closure(w, factor_id)
        if () in seen:
            return seen[()]
        raise UndecidedError(
            f"Could not express {self.fp.format_word(w)} in factor {factor_id} within the search bounds",
            {"factor": factor_id, "max_area": self.max_area, "exhausted": not truncated},
        )
