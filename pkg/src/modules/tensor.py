"""
Tensor modules F(P, M) = P (x) M over W (+) A.

A acts on the first factor. A Witt letter x acts through pi(x), a sum of
k (x) g with k in K_{m,n} and g in U(gl(m,n)):

    (k (x) g)(p (x) v) = (-1)^{|g||p|} (k p) (x) (g v)
"""

import random
import threading
from dataclasses import dataclass
from itertools import product
from typing import Any, Hashable, Optional, Sequence, Union

from src.algebra.field import SparseVector, vec_add
from src.algebra.glmn import Unit
from src.algebra.scalars import members, sign, zero_index
from src.algebra.superpoly import Monomial, SuperPoly, mono_mul, mono_parity
from src.algebra.witt import (
    CartanWeight,
    Letter,
    WittElem,
    act_letter_mono,
    bracket_letters,
    letter_parity,
    monomials_up_to,
    witt_basis,
)
from src.enveloping.pi_map import PiHomomorphism, gl_word_parity
from src.enveloping.ubar import UWord
from src.models.report_models import BoundednessCertificate, WeightDimRow
from src.modules.weight_module import WeightModule
from src.modules.weyl import WeylGenerator, WeylModule
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

Generator = Union[Letter, Monomial]


def kmn_word(kword: UWord) -> tuple[WeylGenerator, ...]:
    """
    Weyl generators of t^alpha xi_I D_1 ... D_k, left to right.

    The xi's come in ascending order so that the product is xi_I itself.
    """
    (alpha, odd), letters = kword
    word: list[WeylGenerator] = []
    for i, a in enumerate(alpha, start=1):
        word.extend([("t", i)] * a)
    word.extend(("xi", j) for j in members(odd))
    for _alpha, _odd, d in letters:
        word.append(("dxi" if d.odd else "dt", d.index))
    return tuple(word)


def mono_word(mono: Monomial) -> tuple[WeylGenerator, ...]:
    return kmn_word((mono, ()))


class TensorModule(WeightModule):
    """
    P (x) M with W and A actions computed on demand.

    Basis vector p (x) v sits at index p * dim M + v. Generators are the Witt
    letters of degree <= 2; any other letter or A-monomial can still be
    applied through ``apply_basis``.
    """

    def __init__(self, P: WeylModule, M: WeightModule, pi: Optional[PiHomomorphism] = None) -> None:
        self.P = P
        self.M = M
        self.pi = pi or PiHomomorphism(P.m, P.n)
        field = P.field.unify(M.field)
        self.p_lifted = P.lifted(field)
        self.m_lifted = M.lifted(field)
        labels, weights, parities = [], [], []
        for pl, pw, pp in zip(P.labels, P.weights, P.parities):
            for ml, mw, mp in zip(M.labels, M.weights, M.parities):
                labels.append((pl, ml))
                weights.append(pw + mw)
                parities.append((pp + mp) & 1)
        super().__init__(
            f"F({P.name}, {M.name})", P.m, P.n, field, labels, weights, parities, {},
            meta={"kind": "tensor", "P": P.meta, "M": M.meta},
        )
        self._letters = witt_basis(P.m, P.n, 2)
        self._cache: dict[tuple[Generator, int], tuple[SparseVector, bool]] = {}
        self._p_words: dict[tuple[tuple, int], tuple[SparseVector, bool]] = {}
        self._m_words: dict[tuple[tuple[Unit, ...], int], tuple[SparseVector, bool]] = {}
        self._lock = threading.Lock()
        logger.info(f"Built {self.summary()}")

    def generators(self) -> list[Hashable]:
        return list(self._letters)

    def is_truncated(self) -> bool:
        return self.P.is_truncated() or self.M.is_truncated()

    def vector(self, p_label: Hashable, m_label: Hashable) -> int:
        return self.P.index[p_label] * self.M.dim + self.M.index[m_label]

    def split(self, col: int) -> tuple[int, int]:
        return divmod(col, self.M.dim)

    def _on_p(self, word: tuple, p: int) -> tuple[SparseVector, bool]:
        key = (word, p)
        cached = self._p_words.get(key)
        if cached is None:
            cached = self.p_lifted.apply_word(word, {p: self.field.one})
            self._p_words[key] = cached
        return cached

    def _on_m(self, word: tuple[Unit, ...], v: int) -> tuple[SparseVector, bool]:
        key = (word, v)
        cached = self._m_words.get(key)
        if cached is None:
            cached = self.m_lifted.apply_word(word, {v: self.field.one})
            self._m_words[key] = cached
        return cached

    def apply_basis(self, gen: Hashable, col: int) -> tuple[SparseVector, bool]:
        key = (gen, col)
        with self._lock:
            cached = self._cache.get(key)
        if cached is not None:
            return cached
        if len(gen) == 2:
            result = self._act_mono(gen, col)
        else:
            result = self._act_letter(gen, col)
        with self._lock:
            self._cache[key] = result
        return result

    def _act_mono(self, mono: Monomial, col: int) -> tuple[SparseVector, bool]:
        p, v = self.split(col)
        image, clean = self._on_p(mono_word(mono), p)
        width = self.M.dim
        return {q * width + v: c for q, c in image.items()}, clean

    def _act_letter(self, letter: Letter, col: int) -> tuple[SparseVector, bool]:
        p, v = self.split(col)
        width = self.M.dim
        out: SparseVector = {}
        clean = True
        for (kword, glword), c in self.pi.of_letter(letter).terms.items():
            glpart, ok_m = self._on_m(glword, v)
            if not glpart and ok_m:
                continue
            kpart, ok_p = self._on_p(kmn_word(kword), p)
            clean = clean and ok_m and ok_p
            if not kpart or not glpart:
                continue
            s = sign(gl_word_parity(glword, self.m) * self.P.parities[p])
            scale = self.field.convert(s * c)
            for q, a in kpart.items():
                for w, b in glpart.items():
                    vec_add(out, {q * width + w: a * b}, scale)
        return out, clean

    def summary(self) -> str:
        return f"{self.name}: dim {self.dim} = {self.P.dim} x {self.M.dim}, {len(self.weight_spaces())} weights"


def build_tensor_module(P: WeylModule, M: WeightModule, pi: Optional[PiHomomorphism] = None) -> TensorModule:
    return TensorModule(P, M, pi)


def act(F: TensorModule, x: Union[Letter, WittElem], w: dict[int, Any]) -> tuple[SparseVector, bool]:
    """Action of a Witt letter or element on a vector of F."""
    if not isinstance(x, WittElem):
        return F.apply(x, w)
    out: SparseVector = {}
    clean = True
    for letter, c in x.terms.items():
        image, ok = F.apply(letter, w)
        clean = clean and ok
        vec_add(out, image, F.field.convert(c))
    return out, clean


def act_poly(F: TensorModule, a: Union[Monomial, SuperPoly], w: dict[int, Any]) -> tuple[SparseVector, bool]:
    """Action of an A-monomial or element on a vector of F."""
    if not isinstance(a, SuperPoly):
        return F.apply(a, w)
    out: SparseVector = {}
    clean = True
    for mono, c in a.terms.items():
        image, ok = F.apply(mono, w)
        clean = clean and ok
        vec_add(out, image, F.field.convert(c))
    return out, clean


# Weight tables and boundedness


def lambda_parts(M: WeightModule) -> list[tuple]:
    return sorted({w.lam for w in M.weights}, key=lambda lam: tuple(v.sort_key() for v in lam))


def is_reliable(F: TensorModule, weight: CartanWeight) -> bool:
    """
    The weight space of F at ``weight`` is complete in the window.

    Every decomposition weight = weight(p) + weight(v) must have a complete
    M weight space and a P weight that the window does not cut off.
    """
    n = F.n
    for lam in lambda_parts(F.M):
        for eps in product((0, 1), repeat=n):
            nu = CartanWeight(lam, tuple(mu - e for mu, e in zip(weight.mu, eps)))
            if not F.M.covers(nu):
                return False
            if F.P.classify(weight - nu) == "beyond":
                return False
    return True


def reliable_weights(F: TensorModule) -> list[CartanWeight]:
    return [w for w in sorted(F.weight_spaces(), key=CartanWeight.sort_key) if is_reliable(F, w)]


def weight_dim_table(F: TensorModule) -> dict[CartanWeight, int]:
    """Dimension of every weight space present in the window, in weight order."""
    dims = F.weight_dims()
    return {w: dims[w] for w in sorted(dims, key=CartanWeight.sort_key)}


def weight_dim_rows(F: TensorModule) -> list[WeightDimRow]:
    return [
        WeightDimRow(weight=w.labels(), dim=d, reliable=is_reliable(F, w))
        for w, d in weight_dim_table(F).items()
    ]


def support_is_coset(module: WeightModule) -> bool:
    """All weights differ from one another by integer vectors."""
    weights = list(module.weight_spaces())
    return all((w - weights[0]).is_integral() for w in weights[1:])


def certify_bounded(F: TensorModule) -> BoundednessCertificate:
    """
    Compare the window against 2^{mn} N dim V1.

    N and dim V1 come from the outer tensor V1 (x) V2 that M was induced from;
    other modules fall back to their own largest weight multiplicity. Only
    complete weight spaces of M and reliable weights of F are counted.
    """
    M = F.M
    N = M.meta.get("v2_max_weight_dim", M.max_weight_dim())
    dim_v1 = M.meta.get("dim_v1", 1)
    bound = 2 ** (F.m * F.n) * N * dim_v1
    pair_count = 2 ** F.n * len(lambda_parts(M))

    module_max = max((d for w, d in M.weight_dims().items() if M.covers(w)), default=0)
    reliable = reliable_weights(F)
    dims = F.weight_dims()
    observed = max((dims[w] for w in reliable), default=0)
    bounded = module_max <= bound and observed <= pair_count * bound
    certificate = BoundednessCertificate(
        N=N,
        dim_v1=dim_v1,
        bound=bound,
        pair_count=pair_count,
        observed_max=observed,
        within_bound=observed <= bound,
        within_pair_bound=observed <= pair_count * bound,
        module_observed_max=module_max,
        reliable_weights=len(reliable),
        verdict="bounded" if bounded else "violated",
        meaningful=M.meta.get("kind") == "simple_top",
    )
    if not bounded:
        logger.warning(f"{F.name}: observed {observed} (module {module_max}) against bound {bound}")
    logger.info(f"Certificate for {F.name}: bound {bound}, observed {observed}, {len(reliable)} reliable weights")
    return certificate


# AW axioms


def _difference(F: TensorModule, left: SparseVector, right: SparseVector) -> bool:
    return bool(vec_add(dict(left), right, F.field.convert(-1)))


def weight_module_axiom(F: TensorModule, x: Letter, y: Letter, w: dict[int, Any]) -> Optional[bool]:
    """
    [x, y] w = x y w - (-1)^{|x||y|} y x w, or None when the window cuts in.
    """
    xy, ok1 = F.apply_word((x, y), w)
    yx, ok2 = F.apply_word((y, x), w)
    bracket, ok3 = act(F, WittElem(bracket_letters(x, y)), w)
    if not (ok1 and ok2 and ok3):
        return None
    lhs = vec_add(dict(xy), yx, F.field.convert(-sign(letter_parity(x) * letter_parity(y))))
    return not _difference(F, lhs, bracket)


def associativity_axiom(F: TensorModule, a: Monomial, b: Monomial, w: dict[int, Any]) -> Optional[bool]:
    """a (b w) = (ab) w."""
    nested, ok1 = F.apply_word((a, b), w)
    merged = mono_mul(a, b)
    if merged is None:
        direct, ok2 = {}, True
    else:
        s, ab = merged
        direct, ok2 = act_poly(F, SuperPoly({ab: s}), w)
    if not (ok1 and ok2):
        return None
    return not _difference(F, nested, direct)


def unit_axiom(F: TensorModule, w: dict[int, Any]) -> Optional[bool]:
    image, ok = F.apply((zero_index(F.m), 0), w)
    if not ok:
        return None
    return not _difference(F, image, w)


def mixed_axiom(F: TensorModule, x: Letter, a: Monomial, w: dict[int, Any]) -> Optional[bool]:
    """[x, a] w = x a w - (-1)^{|x||a|} a x w with [x, a] = x(a)."""
    xa, ok1 = F.apply_word((x, a), w)
    ax, ok2 = F.apply_word((a, x), w)
    image = act_letter_mono(x, a)
    bracket, ok3 = ({}, True) if image is None else act_poly(F, SuperPoly({image[1]: image[0]}), w)
    if not (ok1 and ok2 and ok3):
        return None
    lhs = vec_add(dict(xa), ax, F.field.convert(-sign(letter_parity(x) * mono_parity(a))))
    return not _difference(F, lhs, bracket)


@dataclass(frozen=True)
class AxiomInstance:
    kind: str
    args: tuple
    col: int

    def describe(self, F: TensorModule) -> dict:
        return {"kind": self.kind, "args": [str(a) for a in self.args], "vector": str(F.labels[self.col])}


def sample_axiom_instances(
    F: TensorModule,
    samples: int = 500,
    seed: int = 0,
    letters: Optional[Sequence[Letter]] = None,
    vectors: Optional[Sequence[int]] = None,
) -> list[AxiomInstance]:
    """Seeded draw of axiom checks spread over the four axiom kinds."""
    rng = random.Random(seed)
    letters = list(letters if letters is not None else witt_basis(F.m, F.n, 2))
    monos = monomials_up_to(F.m, F.n, 2)
    cols = list(vectors if vectors is not None else range(F.dim))
    instances = []
    if not cols:
        return instances
    for k in range(samples):
        col = rng.choice(cols)
        kind = ("bracket", "mixed", "assoc", "unit")[k % 4]
        if kind == "bracket":
            args = (rng.choice(letters), rng.choice(letters))
        elif kind == "mixed":
            args = (rng.choice(letters), rng.choice(monos))
        elif kind == "assoc":
            args = (rng.choice(monos), rng.choice(monos))
        else:
            args = ()
        instances.append(AxiomInstance(kind, args, col))
    return instances


def check_axiom_instance(F: TensorModule, instance: AxiomInstance) -> Optional[bool]:
    w = {instance.col: F.field.one}
    if instance.kind == "bracket":
        return weight_module_axiom(F, *instance.args, w)
    if instance.kind == "mixed":
        return mixed_axiom(F, *instance.args, w)
    if instance.kind == "assoc":
        return associativity_axiom(F, *instance.args, w)
    return unit_axiom(F, w)


def verify_aw_axioms(
    F: TensorModule,
    samples: int = 500,
    seed: int = 0,
    letters: Optional[Sequence[Letter]] = None,
    vectors: Optional[Sequence[int]] = None,
) -> bool:
    """
    A-associativity, the unit, [x, a] and [x, y] compatibility on seeded samples.

    Samples touching the window edge are skipped; at least one must be checked.
    """
    checked = 0
    for instance in sample_axiom_instances(F, samples, seed, letters, vectors):
        verdict = check_axiom_instance(F, instance)
        if verdict is None:
            continue
        checked += 1
        if not verdict:
            logger.error(f"{F.name}: {instance.kind} axiom fails at {instance.describe(F)}")
            return False
    logger.debug(f"{F.name}: {checked} of {samples} axiom samples checked")
    return checked > 0
