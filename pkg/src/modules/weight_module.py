"""
Weight modules given by explicit action tables.

A module has an indexed basis. Each basis vector carries a Cartan weight and
a parity, and each generator acts through a sparse table
``actions[gen][col] = {row: coeff}``. Modules built on a finite window record
every (generator, column) whose true image leaves the window in ``edges``.
"""

from collections import deque
from typing import Any, Callable, Hashable, Iterable, Mapping, Optional

from src.algebra.field import CoefficientField, SparseVector, Subspace, vec_add
from src.algebra.glmn import bracket_units, unit_parity
from src.algebra.scalars import sign
from src.algebra.witt import CartanWeight
from src.utils.errors import DimensionMismatchError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

ActionTable = dict[Hashable, dict[int, dict[int, Any]]]


class WeightModule:
    """
    Finite (or window-truncated) weight module with sparse action tables.

    Args:
        name: Short description used in logs and reports
        m: Even rank of the acting algebra
        n: Odd rank of the acting algebra
        field: Coefficient field of the action tables
        labels: Basis labels, unique and hashable
        weights: Cartan weight of each basis vector
        parities: Parity of each basis vector
        actions: Sparse action tables keyed by generator
        edges: Columns whose image under a generator was truncated
        coverage: Optional predicate telling whether a weight space is complete
        meta: Free-form description of how the module was built
    """

    def __init__(
        self,
        name: str,
        m: int,
        n: int,
        field: CoefficientField,
        labels: list[Hashable],
        weights: list[CartanWeight],
        parities: list[int],
        actions: ActionTable,
        edges: Optional[dict[Hashable, set[int]]] = None,
        coverage: Optional[Callable[[CartanWeight], bool]] = None,
        meta: Optional[dict] = None,
    ) -> None:
        if not len(labels) == len(weights) == len(parities):
            raise DimensionMismatchError(
                f"{name}: {len(labels)} labels, {len(weights)} weights, {len(parities)} parities"
            )
        self.name = name
        self.m = m
        self.n = n
        self.field = field
        self.labels = list(labels)
        self.weights = list(weights)
        self.parities = list(parities)
        self.actions = actions
        self.edges = edges or {}
        self.coverage = coverage
        self.meta = meta or {}
        self.index = {label: k for k, label in enumerate(self.labels)}
        self._spaces: Optional[dict[CartanWeight, list[int]]] = None

    @property
    def dim(self) -> int:
        return len(self.labels)

    def generators(self) -> list[Hashable]:
        return list(self.actions)

    def is_truncated(self) -> bool:
        return any(self.edges.values())

    def weight_spaces(self) -> dict[CartanWeight, list[int]]:
        """Basis indices grouped by weight."""
        if self._spaces is None:
            spaces: dict[CartanWeight, list[int]] = {}
            for k, w in enumerate(self.weights):
                spaces.setdefault(w, []).append(k)
            self._spaces = spaces
        return self._spaces

    def weight_dims(self) -> dict[CartanWeight, int]:
        return {w: len(ks) for w, ks in self.weight_spaces().items()}

    def max_weight_dim(self) -> int:
        return max(self.weight_dims().values(), default=0)

    def covers(self, weight: CartanWeight) -> bool:
        """True when the weight space at ``weight`` is complete in this basis."""
        return True if self.coverage is None else self.coverage(weight)

    def apply_basis(self, gen: Hashable, col: int) -> tuple[SparseVector, bool]:
        """Image of basis vector ``col`` and whether it was computed without truncation."""
        column = self.actions.get(gen, {}).get(col, {})
        return column, col not in self.edges.get(gen, ())

    def apply(self, gen: Hashable, vector: Mapping[int, Any]) -> tuple[SparseVector, bool]:
        result: SparseVector = {}
        clean = True
        for col, c in vector.items():
            column, ok = self.apply_basis(gen, col)
            clean = clean and ok
            vec_add(result, column, c)
        return result, clean

    def apply_word(self, word: Iterable[Hashable], vector: Mapping[int, Any]) -> tuple[SparseVector, bool]:
        """Apply generators right to left, as in the product g_1 g_2 ... g_k."""
        current: SparseVector = dict(vector)
        clean = True
        for gen in reversed(tuple(word)):
            current, ok = self.apply(gen, current)
            clean = clean and ok
        return current, clean

    def transposed(self, gen: Hashable) -> dict[int, dict[int, Any]]:
        """rows -> {col: coeff} for one generator."""
        out: dict[int, dict[int, Any]] = {}
        for col, column in self.actions.get(gen, {}).items():
            for row, c in column.items():
                out.setdefault(row, {})[col] = c
        return out

    def lifted(self, field: CoefficientField) -> "WeightModule":
        """The same module with coefficients moved into ``field``."""
        if field == self.field:
            return self
        actions = {
            gen: {col: {row: field.lift(c, self.field) for row, c in column.items()} for col, column in table.items()}
            for gen, table in self.actions.items()
        }
        return WeightModule(
            self.name, self.m, self.n, field, self.labels, self.weights, self.parities,
            actions, self.edges, self.coverage, dict(self.meta),
        )

    def summary(self) -> str:
        return f"{self.name}: dim {self.dim}, {len(self.weight_spaces())} weights, truncated={self.is_truncated()}"

    def __repr__(self) -> str:
        return f"WeightModule({self.summary()})"


def closure(
    module: WeightModule,
    start: Iterable[Mapping[int, Any]],
    generators: Optional[Iterable[Hashable]] = None,
) -> tuple[Subspace, bool]:
    """
    Smallest generator-stable subspace containing ``start``.

    Returns:
        The subspace and whether no truncated action was used
    """
    gens = list(module.generators() if generators is None else generators)
    space = Subspace(module.field)
    queue: deque = deque()
    for v in start:
        if space.add(v):
            queue.append(dict(v))
    clean = True
    while queue:
        v = queue.popleft()
        for gen in gens:
            image, ok = module.apply(gen, v)
            clean = clean and ok
            if image and space.add(image):
                queue.append(image)
    return space, clean


def verify_representation(module: WeightModule, bracket: Optional[Callable] = None) -> bool:
    """
    rho([x, y]) = rho(x) rho(y) - (-1)^{|x||y|} rho(y) rho(x) on every basis vector.

    Generators are gl(m,n) matrix units unless ``bracket`` supplies another
    structure as (x, y) -> [(z, c), ...]. Vectors whose computation touches a
    truncated action are skipped.
    """
    m = module.m
    field = module.field
    bracket = bracket or (lambda x, y: bracket_units(x, y, m))
    gens = module.generators()
    for x in gens:
        for y in gens:
            s = sign(unit_parity(x, m) * unit_parity(y, m))
            for col in range(module.dim):
                basis = {col: field.one}
                xy, ok1 = module.apply_word((x, y), basis)
                yx, ok2 = module.apply_word((y, x), basis)
                rhs: SparseVector = {}
                ok3 = True
                for z, c in bracket(x, y):
                    image, ok = module.apply(z, basis)
                    ok3 = ok3 and ok
                    vec_add(rhs, image, field.convert(c))
                if not (ok1 and ok2 and ok3):
                    continue
                lhs = vec_add(dict(xy), yx, field.convert(-s))
                if vec_add(lhs, rhs, field.convert(-1)):
                    logger.error(f"{module.name}: representation fails for {x}, {y} at {module.labels[col]}")
                    return False
    return True


def parity_shift(module: WeightModule) -> WeightModule:
    """Pi M: same action tables, flipped parities."""
    return WeightModule(
        f"Pi({module.name})", module.m, module.n, module.field, module.labels, module.weights,
        [1 - p for p in module.parities], module.actions, module.edges, module.coverage,
        {**module.meta, "parity_shifted": True},
    )


def outer_tensor(v1: WeightModule, v2: WeightModule) -> WeightModule:
    """
    V1 (x) V2 as a module over gl(m,n)_0 = gl_m (+) gl_n.

    v1 is a gl_m-module and v2 a gl_n-module, both with generators (a, b).
    gl_n units are renumbered to (m + a, m + b). Weights are (lambda of v1, lambda of v2).
    """
    m, n = v1.m, v2.m
    field = v1.field.unify(v2.field)
    left, right = v1.lifted(field), v2.lifted(field)
    labels, weights, parities = [], [], []
    for i, (la, wa, pa) in enumerate(zip(left.labels, left.weights, left.parities)):
        for j, (lb, wb, pb) in enumerate(zip(right.labels, right.weights, right.parities)):
            labels.append((la, lb))
            weights.append(CartanWeight(wa.lam, wb.lam))
            parities.append((pa + pb) & 1)
    width = right.dim
    actions: ActionTable = {}
    edges: dict[Hashable, set[int]] = {}
    for gen, table in left.actions.items():
        out = actions.setdefault(gen, {})
        for col, column in table.items():
            for j in range(width):
                out[col * width + j] = {row * width + j: c for row, c in column.items()}
        for col in left.edges.get(gen, ()):
            edges.setdefault(gen, set()).update(col * width + j for j in range(width))
    for (a, b), table in right.actions.items():
        gen = (m + a, m + b)
        out = actions.setdefault(gen, {})
        for col, column in table.items():
            for i in range(left.dim):
                # gl_n units are even, so no sign passes over v1
                out[i * width + col] = {i * width + row: c for row, c in column.items()}
        for col in right.edges.get((a, b), ()):
            edges.setdefault(gen, set()).update(i * width + col for i in range(left.dim))

    def coverage(weight: CartanWeight) -> bool:
        return right.covers(CartanWeight(weight.mu, ()))

    module = WeightModule(
        f"{v1.name} (x) {v2.name}", m, n, field, labels, weights, parities, actions, edges,
        coverage if right.coverage is not None else None,
        {
            "kind": "outer",
            "dim_v1": v1.dim,
            "v2_max_weight_dim": v2.max_weight_dim(),
            "v1": v1.meta,
            "v2": v2.meta,
        },
    )
    logger.info(f"Built {module.summary()}")
    return module
