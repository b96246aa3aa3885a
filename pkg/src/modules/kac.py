"""
Kac modules K(V) = Ind(V) over gl(m,n) and their simple tops L(V).

K(V) has basis f_S (x) v where S is a strictly increasing tuple of lowering
units E_{m+j,i} and f_S their product in that order. 1 (x) V is even and the
Lambda-degree |S| sets the rest of the parity. gl(m,n)_1 kills 1 (x) V.
"""

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Any, Hashable, Optional

from config.settings import settings
from src.algebra.field import SparseVector, Subspace, kernel, vec_add
from src.algebra.glmn import Unit, all_units, bracket_units, lowering_units, raising_units, unit_degree, unit_parity
from src.algebra.scalars import sign
from src.algebra.witt import CartanWeight
from src.modules.weight_module import ActionTable, WeightModule, closure
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

KacKey = tuple[tuple[Unit, ...], int]


def unit_weight(u: Unit, m: int, n: int) -> CartanWeight:
    """Weight eps_a - eps_b of E_ab."""
    entries = [0] * (m + n)
    entries[u[0] - 1] += 1
    entries[u[1] - 1] -= 1
    return CartanWeight.of(entries[:m], entries[m:])


def _insert_lowering(s: Unit, subset: tuple[Unit, ...]) -> Optional[tuple[int, tuple[Unit, ...]]]:
    """f_s f_T = (-1)^{#{t in T: t < s}} f_{T u s}, or None when s is in T."""
    if s in subset:
        return None
    before = sum(1 for t in subset if t < s)
    return sign(before), tuple(sorted(subset + (s,)))


@dataclass
class KacModule:
    base: WeightModule
    total: WeightModule
    degree: list[int] = dc_field(default_factory=list)

    @property
    def m(self) -> int:
        return self.total.m

    @property
    def n(self) -> int:
        return self.total.n

    def degree_zero(self) -> list[int]:
        return [k for k, d in enumerate(self.degree) if d == 0]

    def degree_single_valued(self) -> bool:
        """Each weight space lies in a single Lambda^k (x) V."""
        for indices in self.total.weight_spaces().values():
            if len({self.degree[k] for k in indices}) > 1:
                return False
        return True


class _Straightener:
    """Action of matrix units on f_S (x) v by recursive super-straightening."""

    def __init__(self, base: WeightModule, m: int, n: int) -> None:
        self.base = base
        self.m = m
        self.n = n
        self.field = base.field
        self._memo: dict[tuple[Unit, tuple[Unit, ...], int], tuple[dict, bool]] = {}

    def act(self, x: Unit, subset: tuple[Unit, ...], k: int) -> tuple[dict[KacKey, Any], bool]:
        key = (x, subset, k)
        if key not in self._memo:
            self._memo[key] = self._act(x, subset, k)
        return self._memo[key]

    def _act(self, x: Unit, subset: tuple[Unit, ...], k: int) -> tuple[dict[KacKey, Any], bool]:
        m = self.m
        if not subset:
            deg = unit_degree(x, m)
            if deg == 1:
                return {}, True
            if deg == -1:
                return {((x,), k): self.field.one}, True
            column, clean = self.base.apply_basis(x, k)
            return {((), row): c for row, c in column.items()}, clean
        first, rest = subset[0], subset[1:]
        out: dict[KacKey, Any] = {}
        # x f_first w = (-1)^{|x|} f_first (x w) + [x, f_first] w
        inner, clean = self.act(x, rest, k)
        sx = self.field.convert(sign(unit_parity(x, m)))
        for (subset2, v), c in inner.items():
            inserted = _insert_lowering(first, subset2)
            if inserted is None:
                continue
            s, merged = inserted
            vec_add(out, {(merged, v): c}, sx * self.field.convert(s))
        for z, c in bracket_units(x, first, m):
            part, ok = self.act(z, rest, k)
            clean = clean and ok
            vec_add(out, part, self.field.convert(c))
        return out, clean


def kac_module(base: WeightModule) -> KacModule:
    """
    Induce a gl(m,n)_0-module to gl(m,n) with gl(m,n)_1 acting by zero.

    Args:
        base: Weight module over gl(m,n)_0 with generators among the even units

    Returns:
        KacModule whose total module carries every matrix unit
    """
    m, n = base.m, base.n
    lowering = lowering_units(m, n)
    subsets = [c for size in range(len(lowering) + 1) for c in combinations(lowering, size)]
    keys: list[KacKey] = [(s, k) for s in subsets for k in range(base.dim)]
    index = {key: i for i, key in enumerate(keys)}
    shift = {s: _subset_weight(s, m, n) for s in subsets}
    weights = [base.weights[k] + shift[s] for s, k in keys]
    parities = [(len(s) + base.parities[k]) & 1 for s, k in keys]

    straightener = _Straightener(base, m, n)
    actions: ActionTable = {}
    edges: dict[Hashable, set[int]] = {}
    for x in all_units(m, n):
        table: dict[int, dict] = {}
        for col, (s, k) in enumerate(keys):
            image, clean = straightener.act(x, s, k)
            if not clean:
                edges.setdefault(x, set()).add(col)
            if image:
                table[col] = {index[key]: c for key, c in image.items()}
        actions[x] = table

    def coverage(weight: CartanWeight) -> bool:
        return all(base.covers(weight - shift[s]) for s in subsets)

    total = WeightModule(
        f"K({base.name})",
        m,
        n,
        base.field,
        [(tuple(s), base.labels[k]) for s, k in keys],
        weights,
        parities,
        actions,
        edges,
        coverage if base.coverage is not None else None,
        {**base.meta, "kind": "kac", "base": base.name},
    )
    logger.info(f"Built {total.summary()} from base of dim {base.dim}")
    return KacModule(base, total, [len(s) for s, _ in keys])


def _subset_weight(subset: tuple[Unit, ...], m: int, n: int) -> CartanWeight:
    total = CartanWeight.zero(m, n)
    for u in subset:
        total = total + unit_weight(u, m, n)
    return total


@dataclass
class SimpleTop:
    quotient: WeightModule
    radical_dims: dict[CartanWeight, int]
    approximate: bool
    cyclic: Optional[bool] = None

    @property
    def certified(self) -> bool:
        return not self.approximate and bool(self.cyclic)


def _raising_clean(kac: KacModule) -> list[bool]:
    """Basis vectors whose every chain of raising actions avoids truncation."""
    total = kac.total
    raising = raising_units(kac.m, kac.n)
    clean = [True] * total.dim
    for k in sorted(range(total.dim), key=lambda i: kac.degree[i]):
        for x in raising:
            column, ok = total.apply_basis(x, k)
            if not ok or not all(clean[row] for row in column):
                clean[k] = False
                break
    return clean


def simple_top(kac: KacModule, generators: str = "raising") -> SimpleTop:
    """
    L(V) = K(V) / N where N is the largest submodule inside ker(projection to Lambda^0).

    The annihilator of N is the closure of the Lambda^0 coordinate functionals
    under phi -> phi o rho(g). U(gl) = U(g_-1) U(g_0) U(g_1) and g_0 preserves
    Lambda^0, so the raising units already give the whole closure; pass
    ``generators="all"`` to close under every matrix unit instead.
    """
    total = kac.total
    field = total.field
    if generators == "raising":
        gens = raising_units(kac.m, kac.n)
    else:
        gens = total.generators()
    transposed = {g: total.transposed(g) for g in gens}

    functionals = Subspace(field)
    queue = []
    for k in kac.degree_zero():
        phi = {k: field.one}
        if functionals.add(phi):
            queue.append(phi)
    while queue:
        phi = queue.pop()
        for g in gens:
            image: SparseVector = {}
            for row, c in phi.items():
                vec_add(image, transposed[g].get(row, {}), c)
            if image and functionals.add(image):
                queue.append(image)

    pivots = functionals.pivots()
    rows = [functionals.rows[p] for p in pivots]
    position = {p: i for i, p in enumerate(pivots)}
    actions: ActionTable = {}
    edges: dict[Hashable, set[int]] = {}
    for g in total.generators():
        table: dict[int, dict] = {}
        for i, p in enumerate(pivots):
            column, ok = total.apply_basis(g, p)
            if not ok:
                edges.setdefault(g, set()).add(i)
            coords: SparseVector = {}
            for j, row in enumerate(rows):
                value = field.zero
                for key, c in column.items():
                    r = row.get(key)
                    if r:
                        value += r * c
                if value:
                    coords[j] = value
            if coords:
                table[i] = coords
        actions[g] = table

    dims = total.weight_dims()
    kept: dict[CartanWeight, int] = {}
    for p in pivots:
        kept[total.weights[p]] = kept.get(total.weights[p], 0) + 1
    radical_dims = {w: d - kept.get(w, 0) for w, d in dims.items()}

    approximate = total.is_truncated()
    clean = _raising_clean(kac) if approximate else None
    spaces = total.weight_spaces()

    def coverage(weight: CartanWeight) -> bool:
        if not total.covers(weight):
            return False
        return clean is None or all(clean[k] for k in spaces.get(weight, ()))

    quotient = WeightModule(
        f"L({kac.base.name})",
        kac.m,
        kac.n,
        field,
        [total.labels[p] for p in pivots],
        [total.weights[p] for p in pivots],
        [total.parities[p] for p in pivots],
        actions,
        edges,
        coverage if approximate or total.coverage is not None else None,
        {**total.meta, "kind": "simple_top", "kac_dim": total.dim, "approximate": approximate},
    )
    top = SimpleTop(quotient, radical_dims, approximate)
    if approximate:
        logger.warning(f"{quotient.name} computed on a truncated Kac module; result is approximate")
    elif quotient.dim <= settings.cyclicity_max_dim:
        top.cyclic = cyclicity_certificate(quotient)
    logger.info(f"Simple top {quotient.name}: dim {quotient.dim} of {total.dim}")
    return top


def cyclicity_certificate(module: WeightModule) -> bool:
    """Every basis weight vector generates the whole module."""
    for k in range(module.dim):
        space, _ = closure(module, [{k: module.field.one}])
        if space.dim != module.dim:
            logger.error(f"{module.name}: basis vector {module.labels[k]} generates dim {space.dim}")
            return False
    return True


def brute_force_radical(kac: KacModule, word_length: Optional[int] = None) -> dict[CartanWeight, int]:
    """
    Per-weight dimension of {v : proj_0(w . v) = 0 for all generator words w}.

    Words run over every matrix unit up to ``word_length`` (default mn + 2),
    which exceeds the mn raising steps any vector needs to reach Lambda^0.
    """
    total = kac.total
    field = total.field
    length = kac.m * kac.n + 2 if word_length is None else word_length
    degree_zero = set(kac.degree_zero())
    gens = total.generators()
    result: dict[CartanWeight, int] = {}
    for weight, indices in total.weight_spaces().items():
        # images of each basis vector of the weight space under all words so far
        frontier = [{k: {k: field.one} for k in indices}]
        functionals: list[dict] = []
        seen: set = set()
        for _ in range(length + 1):
            next_frontier = []
            for images in frontier:
                for row in degree_zero:
                    functional = {k: images[k][row] for k in indices if images[k].get(row)}
                    if functional:
                        functionals.append(functional)
                signature = tuple(sorted((k, tuple(sorted(v.items()))) for k, v in images.items()))
                if signature in seen:
                    continue
                seen.add(signature)
                for g in gens:
                    moved = {k: total.apply(g, v)[0] for k, v in images.items()}
                    if any(moved.values()):
                        next_frontier.append(moved)
            frontier = next_frontier
        result[weight] = len(kernel(functionals, indices, field))
    return result
