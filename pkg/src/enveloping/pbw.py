"""
Normal ordering of words in the enveloping algebra of a Lie superalgebra
given by a basis, an ordering and a bracket on basis letters.
"""

import threading
from fractions import Fraction
from typing import Callable, Hashable, Iterable

from src.utils.logger import setup_logger

logger = setup_logger(__name__)

Word = tuple
WordTerms = dict[Word, Fraction]

BracketFn = Callable[[Hashable, Hashable], Iterable[tuple[Hashable, Fraction]]]


class PBWRewriter:
    """
    Rewrites words of basis letters into the super PBW basis.

    A normal word is non-decreasing in ``key`` with no repeated odd letter.
    Rewriting uses x y = (-1)^{|x||y|} y x + [x, y] for out-of-order
    neighbours and x x = 1/2 [x, x] for an odd letter. Results of inserting a
    letter in front of a normal word are memoized; the memo is shared across
    threads and guarded by a lock.
    """

    def __init__(
        self,
        key: Callable[[Hashable], tuple],
        parity: Callable[[Hashable], int],
        bracket: BracketFn,
        name: str = "pbw",
    ) -> None:
        self.key = key
        self.parity = parity
        self.bracket = bracket
        self.name = name
        self._memo: dict[tuple[Hashable, Word], WordTerms] = {}
        self._lock = threading.Lock()

    def cache_size(self) -> int:
        with self._lock:
            return len(self._memo)

    def clear(self) -> None:
        with self._lock:
            self._memo.clear()

    def insert(self, x: Hashable, word: Word) -> WordTerms:
        """Normal form of x * word, where word is already normal."""
        memo_key = (x, word)
        with self._lock:
            cached = self._memo.get(memo_key)
        if cached is not None:
            return cached
        result = self._insert(x, word)
        with self._lock:
            self._memo[memo_key] = result
        return result

    def _insert(self, x: Hashable, word: Word) -> WordTerms:
        if not word:
            return {(x,): Fraction(1)}
        y = word[0]
        rest = word[1:]
        kx, ky = self.key(x), self.key(y)
        if kx < ky:
            return {(x,) + word: Fraction(1)}
        if x == y:
            if not self.parity(x):
                return {(x,) + word: Fraction(1)}
            result: WordTerms = {}
            for z, c in self.bracket(x, x):
                _add_terms(result, self.insert(z, rest), c / 2)
            return result

        result = {}
        swap = -1 if self.parity(x) and self.parity(y) else 1
        for moved, c in self.insert(x, rest).items():
            _add_terms(result, self.insert(y, moved), swap * c)
        for z, c in self.bracket(x, y):
            _add_terms(result, self.insert(z, rest), c)
        return result

    def normalize(self, word: Iterable[Hashable]) -> WordTerms:
        """Normal form of an arbitrary word."""
        result: WordTerms = {(): Fraction(1)}
        for letter in reversed(tuple(word)):
            step: WordTerms = {}
            for w, c in result.items():
                _add_terms(step, self.insert(letter, w), c)
            result = step
        return result

    def multiply(self, left: Word, right: Word) -> WordTerms:
        """Normal form of left * right for normal words left and right."""
        result: WordTerms = {right: Fraction(1)}
        for letter in reversed(left):
            step: WordTerms = {}
            for w, c in result.items():
                _add_terms(step, self.insert(letter, w), c)
            result = step
        return result

    def word_parity(self, word: Word) -> int:
        return sum(self.parity(x) for x in word) & 1


def _add_terms(target: WordTerms, source: WordTerms, scale: Fraction) -> None:
    if not scale:
        return
    for w, c in source.items():
        total = target.get(w, 0) + scale * c
        if total:
            target[w] = total
        else:
            target.pop(w, None)
