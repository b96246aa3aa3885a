"""
Finite-dimensional simple gl_m-modules V(lambda).

V(lambda) = det^{lambda_m} (x) V(lambda - lambda_m), and the polynomial part is
the cyclic span, under the lowering operators E_ij (i > j), of the
column-antisymmetrized highest weight vector inside the tensor power of the
natural module.
"""

from collections import deque
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from src.algebra.field import CoefficientField, SparseVector, Subspace, vec_add
from src.algebra.witt import CartanWeight
from src.modules.weight_module import ActionTable, WeightModule
from src.utils.errors import InvalidWeightError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

TensorWord = tuple[int, ...]


def check_dominant(lam: Sequence) -> tuple[int, ...]:
    """
    Raises:
        InvalidWeightError: If lam is not a non-increasing integer sequence
    """
    values = []
    for v in lam:
        q = Fraction(v)
        if q.denominator != 1:
            raise InvalidWeightError(f"highest weight {tuple(lam)} is not integral")
        values.append(int(q))
    if any(a < b for a, b in zip(values, values[1:])):
        raise InvalidWeightError(f"highest weight {tuple(values)} is not dominant")
    return tuple(values)


def weyl_dimension(lam: Sequence[int]) -> int:
    """prod_{i<j} (lam_i - lam_j + j - i) / (j - i)."""
    lam = check_dominant(lam)
    result = Fraction(1)
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            result *= Fraction(lam[i] - lam[j] + j - i, j - i)
    return int(result)


def _permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inversions & 1 else 1


def highest_weight_vector(partition: Sequence[int], field: CoefficientField) -> SparseVector:
    """
    Tensor product over the Young diagram columns of e_1 ^ ... ^ e_c,
    written out in the tensor power of the natural module.
    """
    columns = [sum(1 for part in partition if part >= k) for k in range(1, (partition[0] if partition else 0) + 1)]
    vector: SparseVector = {(): field.one}
    for c in columns:
        block = {
            tuple(i + 1 for i in perm): field.convert(_permutation_sign(perm))
            for perm in permutations(range(c))
        }
        product: SparseVector = {}
        for word, a in vector.items():
            for piece, b in block.items():
                vec_add(product, {word + piece: a * b})
        vector = product
    return vector


def act_on_tensor(i: int, j: int, vector: SparseVector) -> SparseVector:
    """E_ij acting as a derivation: replace one e_j by e_i."""
    result: SparseVector = {}
    for word, c in vector.items():
        for pos, letter in enumerate(word):
            if letter == j:
                target = word[:pos] + (i,) + word[pos + 1:]
                vec_add(result, {target: c})
    return result


def _word_weight(word: TensorWord, m: int) -> tuple[int, ...]:
    counts = [0] * m
    for letter in word:
        counts[letter - 1] += 1
    return tuple(counts)


def build_glm_simple(lam: Sequence, m: int, name: str = "") -> WeightModule:
    """
    The simple gl_m-module of highest weight lam.

    Args:
        lam: Dominant integral weight lam_1 >= ... >= lam_m
        m: Rank

    Returns:
        WeightModule with generators (i, j) for the matrix units E_ij

    Raises:
        InvalidWeightError: If lam is not dominant integral or has the wrong length
    """
    lam = check_dominant(lam)
    if len(lam) != m:
        raise InvalidWeightError(f"highest weight {lam} does not have length {m}")
    field = CoefficientField()
    shift = lam[-1] if m else 0
    partition = tuple(x - shift for x in lam)

    # weight space by weight space, each a Subspace of tensor words
    spaces: dict[tuple[int, ...], Subspace] = {}
    start = highest_weight_vector(partition, field)
    top = tuple(partition)
    spaces[top] = Subspace(field)
    spaces[top].add(start)
    queue = deque([start])
    lowering = [(i, j) for i in range(1, m + 1) for j in range(1, m + 1) if i > j]
    while queue:
        v = queue.popleft()
        for i, j in lowering:
            image = act_on_tensor(i, j, v)
            if not image:
                continue
            weight = _word_weight(next(iter(image)), m)
            space = spaces.setdefault(weight, Subspace(field))
            if space.add(image):
                queue.append(image)

    basis_rows: list[tuple[tuple[int, ...], SparseVector]] = []
    position: dict[tuple[tuple[int, ...], TensorWord], int] = {}
    for weight in sorted(spaces, reverse=True):
        for pivot in spaces[weight].pivots():
            position[(weight, pivot)] = len(basis_rows)
            basis_rows.append((weight, spaces[weight].rows[pivot]))
    labels = [("v", tuple(w + shift for w in weight), k) for k, (weight, _row) in enumerate(basis_rows)]
    weights = [CartanWeight.of([w + shift for w in weight], []) for weight, _row in basis_rows]

    actions: ActionTable = {}
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            table: dict[int, dict] = {}
            for col, (weight, row) in enumerate(basis_rows):
                if i == j:
                    value = field.convert(weight[i - 1] + shift)
                    if value:
                        table[col] = {col: value}
                    continue
                image = act_on_tensor(i, j, row)
                if not image:
                    continue
                target = _word_weight(next(iter(image)), m)
                coords = spaces[target].coordinates(image)
                table[col] = {position[(target, p)]: c for p, c in coords.items()}
            actions[(i, j)] = table

    module = WeightModule(
        name or f"V{lam}",
        m,
        0,
        field,
        labels,
        weights,
        [0] * len(labels),
        actions,
        meta={"kind": "glm_simple", "highest_weight": list(lam)},
    )
    logger.info(f"Built {module.summary()}")
    return module
