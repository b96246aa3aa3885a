"""
The quotient U-bar = U(W (+) A) / J, realized as A . U(W) with a normal form.

A word is a pair (prefix monomial, normal tuple of Witt letters). Products
merge prefixes in A, move Witt letters right past A-letters with
x a = (-1)^{|x||a|} a x + x(a), and normal-order the Witt letters.
"""

import re
import threading
from fractions import Fraction
from typing import Iterable, Optional, Union

from src.algebra.combination import Combination
from src.algebra.scalars import sign, size, zero_index
from src.algebra.superpoly import (
    Deriv,
    Monomial,
    SuperPoly,
    dt,
    dxi,
    format_monomial,
    mono_mul,
    mono_parity,
)
from src.algebra.witt import (
    Letter,
    WittElem,
    act_letter_mono,
    bracket_letters,
    format_letter,
    letter_parity,
    letter_sort_key,
)
from src.enveloping.pbw import PBWRewriter, WordTerms
from src.utils.errors import SpecParseError

UWord = tuple[Monomial, tuple[Letter, ...]]


class UElem(Combination):
    """Element of U-bar in normal form."""

    def sort_key(self, key: UWord) -> tuple:
        prefix, letters = key
        return (len(letters), tuple(letter_sort_key(x) for x in letters), prefix)

    @classmethod
    def word(cls, prefix: Monomial, letters: Iterable[Letter] = (), coeff=1) -> "UElem":
        """A single word; letters must already be in normal order."""
        return cls({(prefix, tuple(letters)): coeff})

    @classmethod
    def one(cls, m: int) -> "UElem":
        return cls.word((zero_index(m), 0))

    @classmethod
    def from_poly(cls, a: SuperPoly) -> "UElem":
        return cls({(mono, ()): c for mono, c in a.terms.items()})

    @classmethod
    def from_witt(cls, x: WittElem, m: int) -> "UElem":
        unit_prefix = (zero_index(m), 0)
        return cls({(unit_prefix, (letter,)): c for letter, c in x.terms.items()})

    @classmethod
    def deriv(cls, d: Deriv, m: int) -> "UElem":
        return cls.word((zero_index(m), 0), ((zero_index(m), 0, d),))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, UElem):
            return NotImplemented
        return u_product(self, other)

    def parity(self) -> int:
        """Parity of the first term; callers only use homogeneous elements."""
        for key in self.terms:
            return word_parity(key)
        return 0

    def max_letters(self) -> int:
        return max((len(k[1]) for k in self.terms), default=0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{format_word(k)}" for k, c in self.items())


def word_parity(word: UWord) -> int:
    prefix, letters = word
    return (mono_parity(prefix) + sum(letter_parity(x) for x in letters)) & 1


def format_word(word: UWord) -> str:
    prefix, letters = word
    parts = [format_monomial(prefix)] if any(prefix[0]) or prefix[1] else []
    parts += [format_letter(x) for x in letters]
    return " . ".join(parts) if parts else "1"


class UbarEngine:
    """
    Product in U-bar. Holds the letter-ordering rewriter and the memo for
    moving an A-monomial left past a normal tuple of letters.
    """

    def __init__(self) -> None:
        self.rewriter = PBWRewriter(letter_sort_key, letter_parity, bracket_letters, name="ubar")
        self._commute_memo: dict[tuple[tuple[Letter, ...], Monomial], tuple] = {}
        self._lock = threading.Lock()

    def commute(self, letters: tuple[Letter, ...], mono: Monomial) -> tuple[tuple[Fraction, Monomial, tuple[Letter, ...]], ...]:
        """
        Rewrite letters * mono as a sum of c * prefix * subword.

        Every subword is a subsequence of letters and hence still normal.
        """
        memo_key = (letters, mono)
        with self._lock:
            cached = self._commute_memo.get(memo_key)
        if cached is not None:
            return cached
        result = self._commute(letters, mono)
        with self._lock:
            self._commute_memo[memo_key] = result
        return result

    def _commute(self, letters: tuple[Letter, ...], mono: Monomial) -> tuple:
        if not letters:
            return ((Fraction(1), mono, ()),)
        head, last = letters[:-1], letters[-1]
        terms: dict[tuple[Monomial, tuple[Letter, ...]], Fraction] = {}
        # last . mono = (-1)^{|last||mono|} mono . last + last(mono)
        swap = sign(letter_parity(last) * mono_parity(mono))
        for c, prefix, sub in self.commute(head, mono):
            key = (prefix, sub + (last,))
            terms[key] = terms.get(key, 0) + swap * c
        image = act_letter_mono(last, mono)
        if image is not None:
            k, new_mono = image
            for c, prefix, sub in self.commute(head, new_mono):
                key = (prefix, sub)
                terms[key] = terms.get(key, 0) + k * c
        return tuple((c, prefix, sub) for (prefix, sub), c in terms.items() if c)

    def product_words(self, u: UWord, v: UWord) -> WordTerms:
        (a, xs), (b, ys) = u, v
        result: dict[UWord, Fraction] = {}
        for c, prefix, sub in self.commute(xs, b):
            merged = mono_mul(a, prefix)
            if merged is None:
                continue
            s, new_prefix = merged
            for letters, c2 in self.rewriter.multiply(sub, ys).items():
                key = (new_prefix, letters)
                total = result.get(key, 0) + s * c * c2
                if total:
                    result[key] = total
                else:
                    result.pop(key, None)
        return result

    def product(self, u: UElem, v: UElem) -> UElem:
        result = UElem()
        for wu, cu in u.terms.items():
            for wv, cv in v.terms.items():
                for key, c in self.product_words(wu, wv).items():
                    result._accumulate(key, c * cu * cv)
        return result

    def cache_sizes(self) -> dict[str, int]:
        with self._lock:
            commute = len(self._commute_memo)
        return {"letter_insertions": self.rewriter.cache_size(), "commutations": commute}


ENGINE = UbarEngine()


def u_product(u: UElem, v: UElem, engine: Optional[UbarEngine] = None) -> UElem:
    """Associative product of two normal-form elements."""
    return (engine or ENGINE).product(u, v)


def u_bracket(u: UElem, v: UElem, engine: Optional[UbarEngine] = None) -> UElem:
    """Supercommutator, extended bilinearly over homogeneous terms."""
    engine = engine or ENGINE
    result = UElem()
    for wu, cu in u.terms.items():
        for wv, cv in v.terms.items():
            pu, pv = word_parity(wu), word_parity(wv)
            for key, c in engine.product_words(wu, wv).items():
                result._accumulate(key, c * cu * cv)
            for key, c in engine.product_words(wv, wu).items():
                result._accumulate(key, -sign(pu * pv) * c * cu * cv)
    return result


def u_power_product(factors: Iterable[UElem], m: int) -> UElem:
    result = UElem.one(m)
    for f in factors:
        result = u_product(result, f)
    return result


def normal_letters(letters: Iterable[Letter], m: int, coeff=1) -> UElem:
    """The product of letters in the given order, normal-ordered."""
    unit_prefix = (zero_index(m), 0)
    terms = ENGINE.rewriter.normalize(tuple(letters))
    return UElem({(unit_prefix, w): coeff * c for w, c in terms.items()})


_GENERATOR = re.compile(r"(dt|dxi|t|xi)(\d+)")


def kmn_generator(token: str, m: int) -> UElem:
    """One of t_i, xi_j, d/dt_i, d/dxi_j as an element of U-bar."""
    match = _GENERATOR.fullmatch(token.strip())
    if not match:
        raise SpecParseError(f"unknown Weyl generator '{token}'")
    kind, index = match.group(1), int(match.group(2))
    if kind == "t":
        return UElem.from_poly(SuperPoly.t(index, m))
    if kind == "xi":
        return UElem.from_poly(SuperPoly.xi(index, m))
    return UElem.deriv(dt(index) if kind == "dt" else dxi(index), m)


def kmn_inject(word: Union[str, Iterable[str]], m: int) -> UElem:
    """
    Image in U-bar of a word in the generators of the Weyl superalgebra.

    Args:
        word: Tokens such as "dt1 t1" or ["dxi1", "xi1"], multiplied left to right
        m: Number of even variables

    Returns:
        The normal form of the product
    """
    tokens = word.split() if isinstance(word, str) else list(word)
    return u_power_product((kmn_generator(tok, m) for tok in tokens), m)


def is_in_kmn(u: UElem) -> bool:
    """True when every letter is a constant-coefficient derivation."""
    return all(not any(x[0]) and not x[1] for (_, letters) in u.terms for x in letters)


def prefix_size(word: UWord) -> int:
    prefix = word[0]
    return sum(prefix[0]) + size(prefix[1])
