"""
Omega annihilation and the A-cover (W (x) V) / X(V) on a window.

W (x) V is truncated to letters of degree <= D - s; the A-action
a . (x (x) v) = (a x) (x) v is tested with monomials of degree <= s, so every
letter met stays of degree <= D. theta(x (x) v) = x . v.
"""

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Any, Literal, Optional, Sequence

from config.settings import settings
from src.algebra.field import SparseVector, Subspace, kernel, rank, vec_add
from src.algebra.scalars import all_odd_sets, sign, size
from src.algebra.superpoly import SuperPoly, all_derivs
from src.algebra.witt import (
    CartanWeight,
    Letter,
    WittElem,
    bracket_letters,
    letter_parity,
    letter_weight,
    monomials_up_to,
    witt_basis,
)
from src.enveloping.omega import OmegaSpec, omega
from src.enveloping.xelem import a_times_w
from src.models.report_models import AnnihilationReport, CoverReport, WeightDimRow
from src.modules.tensor import TensorModule, act, reliable_weights
from src.modules.weight_module import WeightModule, closure
from src.utils.errors import TrivialModuleError, WindowError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

PairKey = tuple[Letter, int]
ProbeResult = Literal["proper", "full", "inconclusive"]


def interior_vectors(V: TensorModule) -> list[int]:
    """Basis vectors of V whose weight space is complete in the window."""
    spaces = V.weight_spaces()
    return [k for w in reliable_weights(V) for k in spaces[w]]


# Omega annihilation


def omega_grid(m: int, n: int, r: int, entry_max: int) -> list[OmegaSpec]:
    """Every omega^{r,j,D,D'}_{alpha,beta,I,J} with alpha, beta entries <= entry_max."""
    exponents = list(product(range(entry_max + 1), repeat=m))
    derivs = all_derivs(m, n)
    odd_sets = all_odd_sets(n)
    return [
        omega(alpha, beta, odd_first, odd_second, r, j, first, second)
        for alpha in exponents
        for beta in exponents
        for odd_first in odd_sets
        for odd_second in odd_sets
        for j in range(1, m + 1)
        for first in derivs
        for second in derivs
    ]


def apply_omega(V: WeightModule, spec: OmegaSpec, w: dict[int, Any]) -> tuple[SparseVector, bool]:
    """sum_i (-1)^i C(r, i) left_i . right_i . w through the action of V."""
    out: SparseVector = {}
    clean = True
    for c, left, right in spec.terms():
        image, ok = V.apply_word((left, right), w)
        clean = clean and ok
        vec_add(out, image, V.field.convert(c))
    return out, clean


def _describe_spec(spec: OmegaSpec) -> dict:
    return {
        "r": spec.r,
        "j": spec.j,
        "alpha": list(spec.alpha),
        "beta": list(spec.beta),
        "odd_first": spec.odd_first,
        "odd_second": spec.odd_second,
        "first": str(spec.first),
        "second": str(spec.second),
    }


def _scan_order(
    V: TensorModule, specs: Sequence[OmegaSpec], vectors: Sequence[int]
) -> tuple[int, Optional[dict]]:
    """(clean applications, first nonzero witness) for one order."""

    def scan(spec: OmegaSpec) -> tuple[int, Optional[dict]]:
        clean_count = 0
        for col in vectors:
            image, clean = apply_omega(V, spec, {col: V.field.one})
            if not clean:
                continue
            clean_count += 1
            if image:
                return clean_count, {
                    **_describe_spec(spec),
                    "vector": str(V.labels[col]),
                    "image": {str(V.labels[k]): V.field.format(c) for k, c in sorted(image.items())},
                }
        return clean_count, None

    if settings.workers > 1:
        with ThreadPoolExecutor(max_workers=settings.workers) as pool:
            results = list(pool.map(scan, specs))
    else:
        results = [scan(spec) for spec in specs]
    total = sum(count for count, _ in results)
    witness = next((w for _, w in results if w is not None), None)
    return total, witness


def omega_annihilation_search(
    V: TensorModule,
    r_max: Optional[int] = None,
    samples: int = 500,
    seed: int = 0,
    entry_max: Optional[int] = None,
    vectors: Optional[Sequence[int]] = None,
) -> AnnihilationReport:
    """
    Smallest r such that every sampled omega of order r kills every sampled vector.

    Grids larger than ``samples`` are subsampled with a seeded generator.
    Applications that touch a window edge are skipped.

    Raises:
        WindowError: If no vector of V lies in the interior of the window
    """
    r_max = settings.default_rmax if r_max is None else r_max
    entry_max = settings.omega_entry_max if entry_max is None else entry_max
    vectors = list(vectors) if vectors is not None else interior_vectors(V)
    if not vectors:
        raise WindowError(f"{V.name} has no interior vectors")
    rng = random.Random(seed)
    report = AnnihilationReport(r_range=[0, r_max], vectors=len(vectors))
    witnesses: dict[int, Optional[dict]] = {}
    for r in range(r_max + 1):
        specs = omega_grid(V.m, V.n, r, entry_max)
        if len(specs) > samples:
            specs = rng.sample(specs, samples)
        report.samples = max(report.samples, len(specs))
        clean, witness = _scan_order(V, specs, vectors)
        report.clean_pairs[r] = clean
        report.annihilates[r] = clean > 0 and witness is None
        witnesses[r] = witness
        if clean == 0:
            logger.warning(f"{V.name}: no omega application of order {r} stayed inside the window")
        logger.debug(f"{V.name}: order {r} annihilates={report.annihilates[r]} on {clean} applications")

    if not any(report.clean_pairs.values()):
        raise WindowError(f"{V.name}: every omega application left the window")
    for r in range(r_max + 1):
        if report.annihilates[r]:
            report.minimal_r = r
            if r > 0:
                report.witness = witnesses[r - 1]
            break
    report.monotone = all(
        report.annihilates[r + 1] for r in range(r_max) if report.annihilates[r]
    )
    if report.minimal_r is None:
        logger.warning(f"{V.name}: no order up to {r_max} annihilates the samples")
    else:
        logger.info(f"{V.name}: minimal annihilating order {report.minimal_r}")
    return report


# The A-cover


@dataclass
class CoverWindow:
    """W (x) V on a window with theta, X(V) and block reliability."""

    V: WeightModule
    letter_degree: int
    mono_degree: int
    blocks: dict[CartanWeight, list[PairKey]] = dc_field(default_factory=dict)
    kernels: dict[CartanWeight, list[SparseVector]] = dc_field(default_factory=dict)
    reliable: dict[CartanWeight, bool] = dc_field(default_factory=dict)
    monos: list = dc_field(default_factory=list)
    _x_cache: dict[CartanWeight, Subspace] = dc_field(default_factory=dict, repr=False)
    _below_cache: dict[CartanWeight, Subspace] = dc_field(default_factory=dict, repr=False)

    def block_of(self, weight: CartanWeight) -> list[PairKey]:
        return self.blocks.get(weight, [])

    def x_space(self, weight: CartanWeight) -> Subspace:
        space = Subspace(self.V.field)
        for vec in self.kernels.get(weight, []):
            space.add(vec)
        return space

    def x_contains(self, weight: CartanWeight, element: SparseVector) -> bool:
        if weight not in self._x_cache:
            self._x_cache[weight] = self.x_space(weight)
        return self._x_cache[weight].contains(element)

    def x_space_below(self, weight: CartanWeight) -> Subspace:
        """X(V) at ``weight`` cut out by the monomials of degree < mono_degree only."""
        if weight not in self._below_cache:
            monos = [mono for mono in self.monos if sum(mono[0]) + size(mono[1]) < self.mono_degree]
            pairs = self.block_of(weight)
            rows, _ = _a_rows(self, pairs, monos)
            space = Subspace(self.V.field)
            for vec in kernel(rows, pairs, self.V.field):
                space.add(vec)
            self._below_cache[weight] = space
        return self._below_cache[weight]

    def cover_dims(self) -> dict[CartanWeight, int]:
        return {w: len(pairs) - len(self.kernels[w]) for w, pairs in self.blocks.items()}

    def reliable_weights(self) -> list[CartanWeight]:
        return [w for w in sorted(self.blocks, key=CartanWeight.sort_key) if self.reliable[w]]


def theta(V: WeightModule, letter: Letter, col: int) -> tuple[SparseVector, bool]:
    return V.apply(letter, {col: V.field.one})


def theta_of(V: WeightModule, element: dict[PairKey, Any]) -> tuple[SparseVector, bool]:
    out: SparseVector = {}
    clean = True
    for (letter, col), c in element.items():
        image, ok = theta(V, letter, col)
        clean = clean and ok
        vec_add(out, image, c)
    return out, clean


def w_on_pairs(V: WeightModule, x: Letter, element: dict[PairKey, Any]) -> tuple[dict[PairKey, Any], bool]:
    """x . (y (x) v) = [x, y] (x) v + (-1)^{|x||y|} y (x) x . v"""
    out: dict[PairKey, Any] = {}
    clean = True
    for (y, col), c in element.items():
        for z, k in bracket_letters(x, y):
            vec_add(out, {(z, col): c}, V.field.convert(k))
        image, ok = V.apply(x, {col: V.field.one})
        clean = clean and ok
        s = V.field.convert(sign(letter_parity(x) * letter_parity(y)))
        for row, value in image.items():
            vec_add(out, {(y, row): value}, s * c)
    return out, clean


def a_on_pairs(V: WeightModule, mono, element: dict[PairKey, Any]) -> dict[PairKey, Any]:
    """a . (y (x) v) = (a y) (x) v"""
    a = SuperPoly({mono: 1})
    out: dict[PairKey, Any] = {}
    for (y, col), c in element.items():
        for z, k in a_times_w(a, WittElem({y: 1})).terms.items():
            vec_add(out, {(z, col): c}, V.field.convert(k))
    return out


def _a_rows(C: CoverWindow, pairs: list[PairKey], monos: Optional[list] = None) -> tuple[list[dict], bool]:
    """Functionals pair -> coordinate of theta(a . pair), one per (a, V basis vector)."""
    V = C.V
    rows: dict[tuple, dict] = {}
    clean = True
    for mono in C.monos if monos is None else monos:
        a = SuperPoly({mono: 1})
        for key in pairs:
            letter, col = key
            image, ok = act(V, a_times_w(a, WittElem({letter: 1})), {col: V.field.one})
            clean = clean and ok
            for row, c in image.items():
                rows.setdefault((mono, row), {})[key] = c
    return list(rows.values()), clean


def is_trivial(V: WeightModule, max_degree: int = 2) -> bool:
    """Every Witt letter of degree <= max_degree acts by zero on every basis vector."""
    for letter in witt_basis(V.m, V.n, max_degree):
        for col in range(V.dim):
            image, _ = V.apply(letter, {col: V.field.one})
            if image:
                return False
    return True


def build_cover(V: WeightModule, degree: int = 6, mono_degree: int = 2) -> CoverWindow:
    """
    W (x) V and X(V) = {u in ker theta : a . u in ker theta for deg a <= s}, per weight block.

    A block is reliable when every theta(a . (x (x) v)) it needs was computed
    without truncation; X(V) is then exact on it for the tested a.

    Raises:
        TrivialModuleError: If W acts by zero on V
        WindowError: If the letter window is empty
    """
    if degree < mono_degree:
        raise WindowError(f"letter window {degree} is smaller than the A-degree {mono_degree}")
    if is_trivial(V):
        raise TrivialModuleError(f"W acts trivially on {V.name}; no cover is built")
    letters = witt_basis(V.m, V.n, degree - mono_degree)
    cover = CoverWindow(V, degree - mono_degree, mono_degree, monos=monomials_up_to(V.m, V.n, mono_degree))
    for letter in letters:
        lw = letter_weight(letter, V.n)
        for col, vw in enumerate(V.weights):
            cover.blocks.setdefault(lw + vw, []).append((letter, col))
    for weight, pairs in cover.blocks.items():
        rows, clean = _a_rows(cover, pairs)
        cover.kernels[weight] = kernel(rows, pairs, V.field)
        cover.reliable[weight] = clean
    unreliable = sum(1 for ok in cover.reliable.values() if not ok)
    logger.info(f"Cover of {V.name}: {len(cover.blocks)} blocks, {unreliable} touching the window edge")
    return cover


def relation_element(spec: OmegaSpec, V: WeightModule, col: int) -> tuple[dict[PairKey, Any], bool]:
    """sum_i (-1)^i C(r, i) left_i (x) right_i . v as a vector of W (x) V."""
    out: dict[PairKey, Any] = {}
    clean = True
    for c, left, right in spec.terms():
        image, ok = V.apply(right, {col: V.field.one})
        clean = clean and ok
        for row, value in image.items():
            vec_add(out, {(left, row): value}, V.field.convert(c))
    return out, clean


def verify_cover_relation(
    C: CoverWindow, r: int, entry_max: Optional[int] = None, vectors: Optional[Sequence[int]] = None
) -> tuple[int, int]:
    """
    Membership of the alternating relations of order r in X(V).

    Only instances whose letters fit the window and whose block is reliable
    are tested.

    Returns:
        (checked, failed)
    """
    V = C.V
    entry_max = settings.omega_entry_max if entry_max is None else entry_max
    cols = list(vectors) if vectors is not None else range(V.dim)
    checked = failed = 0
    for spec in omega_grid(V.m, V.n, r, entry_max):
        top = spec.terms()[0][1]
        if sum(top[0]) + size(top[1]) > C.letter_degree:
            continue
        for col in cols:
            element, clean = relation_element(spec, V, col)
            if not clean or not element:
                continue
            weight = letter_weight(top, V.n) + letter_weight(spec.terms()[0][2], V.n) + V.weights[col]
            if not C.reliable.get(weight, False):
                continue
            checked += 1
            if not C.x_contains(weight, element):
                failed += 1
                logger.error(f"relation {_describe_spec(spec)} on {V.labels[col]} is not in X(V)")
    logger.info(f"Cover relation of order {r}: {checked} checked, {failed} failed")
    return checked, failed


def b_letters(C: CoverWindow, r: int) -> set[Letter]:
    """Window letters t^alpha xi_I D with every alpha_i <= r."""
    return {x for pairs in C.blocks.values() for x, _ in pairs if all(a <= r for a in x[0])}


def verify_B_spanning(C: CoverWindow, r: int) -> bool:
    """W (x) V = B (x) V + X(V) on every reliable block."""
    allowed = b_letters(C, r)
    for weight in C.reliable_weights():
        pairs = C.block_of(weight)
        space = C.x_space(weight)
        for key in pairs:
            if key[0] in allowed:
                space.add({key: C.V.field.one})
        if space.dim != len(pairs):
            logger.error(f"B (x) V + X(V) has dim {space.dim} of {len(pairs)} at {weight}")
            return False
    return True


def b_dimension(m: int, n: int, r: int) -> int:
    return (r + 1) ** m * 2 ** n * (m + n)


def check_cover_bound(C: CoverWindow, r: int) -> bool:
    """dim of the cover at each reliable weight <= dim B * largest weight multiplicity of V."""
    bound = b_dimension(C.V.m, C.V.n, r) * C.V.max_weight_dim()
    dims = C.cover_dims()
    ok = all(dims[w] <= bound for w in C.reliable_weights())
    if not ok:
        logger.warning(f"cover dims exceed {bound} on reliable blocks")
    return ok


def theta_surjective(C: CoverWindow) -> bool:
    """theta maps each reliable block onto the V weight space of the same weight."""
    V = C.V
    spaces = V.weight_spaces()
    for weight in C.reliable_weights():
        targets = spaces.get(weight)
        if not targets:
            continue
        images = [theta(V, letter, col)[0] for letter, col in C.block_of(weight)]
        if rank(images, targets, V.field) != len(targets):
            return False
    return True


def verify_theta_equivariant(
    C: CoverWindow, samples: int = 200, seed: int = 0, vectors: Optional[Sequence[int]] = None
) -> tuple[int, int]:
    """
    theta(x . (y (x) v)) = x . theta(y (x) v) on sampled window letters x, y
    and interior vectors v. Samples touching a window edge are skipped.

    Returns:
        (checked, failed)

    Raises:
        WindowError: If there are no letters or no interior vectors to sample
    """
    V = C.V
    letters = witt_basis(V.m, V.n, C.letter_degree)
    if vectors is not None:
        cols = list(vectors)
    else:
        cols = interior_vectors(V) if isinstance(V, TensorModule) else list(range(V.dim))
    if not letters or not cols:
        raise WindowError(f"{V.name}: nothing to sample for theta")
    rng = random.Random(seed)
    checked = failed = 0
    for _ in range(samples):
        x, y, col = rng.choice(letters), rng.choice(letters), rng.choice(cols)
        moved, ok1 = w_on_pairs(V, x, {(y, col): V.field.one})
        lhs, ok2 = theta_of(V, moved)
        inner, ok3 = theta(V, y, col)
        rhs, ok4 = V.apply(x, inner)
        if not (ok1 and ok2 and ok3 and ok4):
            continue
        checked += 1
        if vec_add(dict(lhs), rhs, V.field.convert(-1)):
            failed += 1
            logger.error(f"theta is not W-linear at x={x}, y={y}, v={V.labels[col]}")
    logger.info(f"theta equivariance: {checked} checked, {failed} failed")
    return checked, failed


def _image_block(C: CoverWindow, image: dict[PairKey, Any]) -> Optional[CartanWeight]:
    """Weight of a homogeneous image when all its pairs lie in one reliable block."""
    letter, col = next(iter(image))
    weight = letter_weight(letter, C.V.n) + C.V.weights[col]
    if not C.reliable.get(weight, False):
        return None
    block = set(C.block_of(weight))
    return weight if all(key in block for key in image) else None


def verify_x_stable(C: CoverWindow) -> tuple[int, int]:
    """
    Closure of X(V) under the generators on reliable blocks.

    Letters of degree <= 1 keep X(V) in X(V). Multiplication by t_i or xi_j
    costs one degree of the testing monomials, so a . X(V) is compared with
    the space cut out by monomials of degree < mono_degree. Images leaving
    the window or landing in an unreliable block are skipped.

    Returns:
        (checked, failed)
    """
    V = C.V
    letters = witt_basis(V.m, V.n, 1)
    monos = [mono for mono in monomials_up_to(V.m, V.n, 1) if sum(mono[0]) + size(mono[1]) == 1]
    checked = failed = 0
    for weight in C.reliable_weights():
        for u in C.kernels[weight]:
            for x in letters:
                image, clean = w_on_pairs(V, x, u)
                if not clean:
                    continue
                target = _image_block(C, image) if image else weight
                if target is None:
                    continue
                checked += 1
                if image and not C.x_contains(target, image):
                    failed += 1
                    logger.error(f"X(V) at {weight} is not stable under {x}")
            if C.mono_degree < 1:
                continue
            for mono in monos:
                image = a_on_pairs(V, mono, u)
                target = _image_block(C, image) if image else weight
                if target is None:
                    continue
                checked += 1
                if image and not C.x_space_below(target).contains(image):
                    failed += 1
                    logger.error(f"X(V) at {weight} is not stable under the monomial {mono}")
    logger.info(f"X(V) stability: {checked} checked, {failed} failed")
    return checked, failed


def cover_report(
    V: TensorModule,
    r: Optional[int],
    degree: int = 6,
    mono_degree: int = 2,
    samples: int = 200,
    seed: int = 0,
) -> CoverReport:
    """Build the cover, check theta and X(V), and run the relation, spanning and bound checks at order r."""
    cover = build_cover(V, degree, mono_degree)
    rows = [
        WeightDimRow(weight=w.labels(), dim=d, reliable=cover.reliable[w])
        for w, d in sorted(cover.cover_dims().items(), key=lambda item: item[0].sort_key())
    ]
    report = CoverReport(
        minimal_r=r,
        cover_dims=rows,
        edge_flags={
            "reliable": sum(1 for ok in cover.reliable.values() if ok),
            "unreliable": sum(1 for ok in cover.reliable.values() if not ok),
        },
    )
    report.theta_checked, report.theta_failed = verify_theta_equivariant(cover, samples, seed)
    report.stability_checked, report.stability_failed = verify_x_stable(cover)
    if r is not None:
        report.relation_checked, report.relation_failed = verify_cover_relation(cover, r)
        report.b_spanning = verify_B_spanning(cover, r)
        report.bound_respected = check_cover_bound(cover, r)
    return report


# Submodule probe


def submodule_probe(F: WeightModule, v: dict[int, Any], interior: Optional[Sequence[int]] = None) -> ProbeResult:
    """
    Close v under the Witt generators of F.

    "full" when the closure contains every interior basis vector, "proper"
    when it is strictly smaller and never touched a window edge.
    """
    if interior is None:
        interior = interior_vectors(F) if isinstance(F, TensorModule) else range(F.dim)
    space, clean = closure(F, [v] if v else [])
    if all(space.contains({k: F.field.one}) for k in interior):
        return "full"
    if clean:
        return "proper"
    return "inconclusive"
