"""
The homomorphism pi from W (+) A into K_{m,n} (x) U(gl(m,n)).

On a letter t^alpha xi_I D with D in derivation slot c:

    pi = t^alpha xi_I . D (x) 1
         + sum_k alpha_k t^{alpha - e_k} xi_I (x) E_{k,c}
         + (-1)^{|I|-1} sum_k d/dxi_k (t^alpha xi_I) (x) E_{m+k,c}

and pi(a) = a (x) 1 on A.
"""

import threading
from fractions import Fraction
from functools import lru_cache
from typing import Union

from src.algebra.combination import Combination
from src.algebra.glmn import Unit, bracket_units, unit_parity
from src.algebra.scalars import OddSet, shift_index, sign, size, zero_index
from src.algebra.superpoly import SuperPoly, deriv_mono, dxi
from src.algebra.witt import ExtWittElem, Letter, WittElem, bracket_ext, euler, odd_euler
from src.enveloping.pbw import PBWRewriter
from src.enveloping.ubar import ENGINE, UWord, format_word, word_parity
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

TensorKey = tuple[UWord, tuple[Unit, ...]]


@lru_cache(maxsize=None)
def gl_rewriter(m: int) -> PBWRewriter:
    """Normal ordering in U(gl(m,n)); matrix units are ordered lexicographically."""
    return PBWRewriter(
        key=lambda u: u,
        parity=lambda u: unit_parity(u, m),
        bracket=lambda x, y: bracket_units(x, y, m),
        name=f"gl({m},*)",
    )


def gl_word_parity(word: tuple[Unit, ...], m: int) -> int:
    return sum(unit_parity(u, m) for u in word) & 1


class PiImage(Combination):
    """Element of K_{m,n} (x) U(gl(m,n)) with both legs in normal form."""

    def sort_key(self, key: TensorKey) -> tuple:
        kword, glword = key
        return (len(kword[1]), len(glword), kword[0], tuple((x[2].odd, x[2].index) for x in kword[1]), glword)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (kword, glword), c in self.items():
            gl = " ".join(f"E{a},{b}" for a, b in glword) or "1"
            parts.append(f"({c})*[{format_word(kword)}] (x) [{gl}]")
        return " + ".join(parts)


class TensorAlgebra:
    """Products and supercommutators in K_{m,n} (x) U(gl(m,n))."""

    def __init__(self, m: int, n: int) -> None:
        self.m = m
        self.n = n
        self.gl = gl_rewriter(m)

    def term_parity(self, key: TensorKey) -> int:
        kword, glword = key
        return (word_parity(kword) + gl_word_parity(glword, self.m)) & 1

    def product_terms(self, left: TensorKey, right: TensorKey) -> dict[TensorKey, Fraction]:
        """(a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd."""
        (a, b), (c, d) = left, right
        s = sign(gl_word_parity(b, self.m) * word_parity(c))
        out: dict[TensorKey, Fraction] = {}
        gl_terms = self.gl.multiply(b, d)
        for kword, ck in ENGINE.product_words(a, c).items():
            for glword, cg in gl_terms.items():
                key = (kword, glword)
                out[key] = out.get(key, 0) + s * ck * cg
        return out

    def product(self, p: PiImage, q: PiImage) -> PiImage:
        result = PiImage()
        for kp, cp in p.terms.items():
            for kq, cq in q.terms.items():
                for key, c in self.product_terms(kp, kq).items():
                    result._accumulate(key, c * cp * cq)
        return result

    def bracket(self, p: PiImage, q: PiImage) -> PiImage:
        result = PiImage()
        for kp, cp in p.terms.items():
            for kq, cq in q.terms.items():
                s = sign(self.term_parity(kp) * self.term_parity(kq))
                for key, c in self.product_terms(kp, kq).items():
                    result._accumulate(key, c * cp * cq)
                for key, c in self.product_terms(kq, kp).items():
                    result._accumulate(key, -s * c * cp * cq)
        return result


class PiHomomorphism:
    """
    pi on basis letters and A-monomials, with images cached per letter.

    Subclasses may override ``odd_coefficient_sign`` to study altered maps.
    """

    def __init__(self, m: int, n: int) -> None:
        self.m = m
        self.n = n
        self.algebra = TensorAlgebra(m, n)
        self._cache: dict[Letter, PiImage] = {}
        self._lock = threading.Lock()

    def odd_coefficient_sign(self, odd: OddSet) -> int:
        """The factor (-1)^{|I|-1} in front of the odd-derivative terms."""
        return sign(size(odd) - 1)

    def of_letter(self, letter: Letter) -> PiImage:
        with self._lock:
            cached = self._cache.get(letter)
        if cached is not None:
            return cached
        image = self._of_letter(letter)
        with self._lock:
            self._cache[letter] = image
        return image

    def _of_letter(self, letter: Letter) -> PiImage:
        alpha, odd, d = letter
        m = self.m
        col = d.slot(m)
        terms: dict[TensorKey, Fraction] = {}
        terms[(((alpha, odd), ((zero_index(m), 0, d),)), ())] = Fraction(1)
        for k in range(1, m + 1):
            if alpha[k - 1]:
                key = (((shift_index(alpha, k, -1), odd), ()), ((k, col),))
                terms[key] = terms.get(key, 0) + alpha[k - 1]
        odd_sign = self.odd_coefficient_sign(odd)
        for k in range(1, self.n + 1):
            der = deriv_mono(dxi(k), (alpha, odd))
            if der is not None:
                s, mono = der
                key = ((mono, ()), ((m + k, col),))
                terms[key] = terms.get(key, 0) + odd_sign * s
        return PiImage(terms)

    def of_poly(self, a: SuperPoly) -> PiImage:
        return PiImage({((mono, ()), ()): c for mono, c in a.terms.items()})

    def image(self, x: Union[WittElem, SuperPoly, ExtWittElem]) -> PiImage:
        """Linear extension of pi."""
        if isinstance(x, SuperPoly):
            return self.of_poly(x)
        if isinstance(x, ExtWittElem):
            return self.image(x.wpart) + self.of_poly(x.apart)
        result = PiImage()
        for letter, c in x.terms.items():
            for key, v in self.of_letter(letter).terms.items():
                result._accumulate(key, c * v)
        return result


def _as_ext(x: Union[WittElem, SuperPoly, ExtWittElem]) -> ExtWittElem:
    if isinstance(x, ExtWittElem):
        return x
    if isinstance(x, SuperPoly):
        return ExtWittElem.of(a=x)
    return ExtWittElem.of(x=x)


def verify_pi_homomorphism(
    x: Union[WittElem, SuperPoly, ExtWittElem],
    y: Union[WittElem, SuperPoly, ExtWittElem],
    pi: PiHomomorphism,
) -> bool:
    """pi([x, y]) = [pi(x), pi(y)] exactly."""
    ex, ey = _as_ext(x), _as_ext(y)
    lhs = pi.image(bracket_ext(ex, ey))
    rhs = pi.algebra.bracket(pi.image(ex), pi.image(ey))
    return lhs == rhs


def verify_pi_on_cartan(m: int, n: int, pi: PiHomomorphism | None = None) -> bool:
    """pi(d_i) = d_i (x) 1 + 1 (x) E_ii and pi(delta_j) = delta_j (x) 1 + 1 (x) E_{m+j,m+j}."""
    pi = pi or PiHomomorphism(m, n)
    unit_prefix = (zero_index(m), 0)
    for i in range(1, m + 1):
        (letter,) = euler(i, m).terms
        expected = PiImage({
            ((letter[:2], ((zero_index(m), 0, letter[2]),)), ()): 1,
            ((unit_prefix, ()), ((i, i),)): 1,
        })
        if pi.image(euler(i, m)) != expected:
            return False
    for j in range(1, n + 1):
        (letter,) = odd_euler(j, m).terms
        expected = PiImage({
            ((letter[:2], ((zero_index(m), 0, letter[2]),)), ()): 1,
            ((unit_prefix, ()), ((m + j, m + j),)): 1,
        })
        if pi.image(odd_euler(j, m)) != expected:
            return False
    return True
