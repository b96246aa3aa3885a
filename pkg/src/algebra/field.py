"""
Exact coefficient fields for module computations and the sparse linear
algebra built on them.

Module actions carry coefficients that may depend on formal shifts
(lambda_i, gamma_j). They live in sympy's QQ, or in the rational function
field QQ(symbols) when formal parameters are present, so zero tests and
ranks stay exact.
"""

from fractions import Fraction
from typing import Any, Hashable, Iterable, Mapping

import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from src.algebra.scalars import WeightParam

SparseVector = dict[Hashable, Any]


class CoefficientField:
    """QQ or QQ(symbols), with conversions from the toolkit's scalar types."""

    def __init__(self, symbols: Iterable[str] = ()) -> None:
        self.symbols = tuple(sorted(set(symbols)))
        if self.symbols:
            self.domain = QQ.frac_field(*(sympy.Symbol(s) for s in self.symbols))
        else:
            self.domain = QQ
        self.zero = self.domain.zero
        self.one = self.domain.one

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CoefficientField) and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        return f"CoefficientField({', '.join(self.symbols) or 'QQ'})"

    def unify(self, other: "CoefficientField") -> "CoefficientField":
        if set(other.symbols) <= set(self.symbols):
            return self
        return CoefficientField(self.symbols + other.symbols)

    def convert(self, value: Any) -> Any:
        """Convert an int, Fraction, WeightParam or sympy expression."""
        if isinstance(value, (int, Fraction)):
            q = QQ(value.numerator, value.denominator)
            return q if not self.symbols else self.domain.convert_from(q, QQ)
        if isinstance(value, WeightParam):
            if not value.is_formal:
                return self.convert(value.offset)
            return self.domain.from_sympy(value.as_expr())
        return self.domain.from_sympy(sympy.sympify(value))

    def lift(self, value: Any, source: "CoefficientField") -> Any:
        """Move an element of another CoefficientField into this one."""
        if source == self:
            return value
        return self.domain.convert_from(value, source.domain)

    def is_zero(self, value: Any) -> bool:
        return not value

    def format(self, value: Any) -> str:
        expr = self.domain.to_sympy(value)
        if expr.is_Rational:
            return f"{expr.p}/{expr.q}"
        return str(expr)

    def specialize(self, value: Any, values: Mapping[str, Fraction]) -> Any:
        """Evaluate some symbols at rationals, staying in this field."""
        expr = self.domain.to_sympy(value)
        subs = {sympy.Symbol(k): sympy.Rational(v.numerator, v.denominator) for k, v in values.items()}
        return self.domain.from_sympy(expr.subs(subs))


# Sparse vectors


def vec_add(target: SparseVector, source: Mapping, scale: Any = None) -> SparseVector:
    """target += scale * source, dropping zeros; returns target."""
    for key, value in source.items():
        term = value if scale is None else scale * value
        total = target.get(key)
        total = term if total is None else total + term
        if total:
            target[key] = total
        else:
            target.pop(key, None)
    return target


def vec_scale(source: Mapping, scale: Any) -> SparseVector:
    if not scale:
        return {}
    return {k: scale * v for k, v in source.items() if scale * v}


def vec_is_zero(source: Mapping) -> bool:
    return all(not v for v in source.values())


class Subspace:
    """
    Incrementally maintained row-echelon basis of a subspace of K^(keys).

    Each stored row has coefficient one at its pivot and zero at every other
    pivot, so membership and coordinates are read off directly.
    """

    def __init__(self, field: CoefficientField) -> None:
        self.field = field
        self.rows: dict[Hashable, SparseVector] = {}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vector: Mapping) -> SparseVector:
        """Residue of vector modulo the subspace."""
        residue = {k: v for k, v in vector.items() if v}
        for pivot, row in self.rows.items():
            c = residue.get(pivot)
            if c:
                vec_add(residue, row, -c)
        return residue

    def add(self, vector: Mapping) -> bool:
        """Add vector; returns True when the dimension grew."""
        residue = self.reduce(vector)
        if not residue:
            return False
        pivot = min(residue)
        inverse = self.field.domain.quo(self.field.one, residue[pivot])
        new_row = vec_scale(residue, inverse)
        for key, row in self.rows.items():
            c = row.get(pivot)
            if c:
                vec_add(row, new_row, -c)
        self.rows[pivot] = new_row
        return True

    def contains(self, vector: Mapping) -> bool:
        return not self.reduce(vector)

    def coordinates(self, vector: Mapping) -> SparseVector:
        """Coordinates along the pivots, assuming vector lies in the span."""
        return {p: vector[p] for p in self.rows if vector.get(p)}

    def pivots(self) -> list[Hashable]:
        return sorted(self.rows)


def span_dimension(vectors: Iterable[Mapping], field: CoefficientField) -> int:
    space = Subspace(field)
    for v in vectors:
        space.add(v)
    return space.dim


def kernel(
    rows: list[Mapping], columns: list[Hashable], field: CoefficientField
) -> list[SparseVector]:
    """
    Basis of {c : sum_k c_k row_i[k] = 0 for all i}, keyed by columns.

    Args:
        rows: Linear functionals as sparse maps column -> coefficient
        columns: Ordered unknowns
        field: Coefficient field

    Returns:
        Kernel basis vectors as sparse maps column -> coefficient
    """
    if not columns:
        return []
    if not rows:
        return [{c: field.one} for c in columns]
    index = {c: i for i, c in enumerate(columns)}
    dod = {}
    for i, row in enumerate(rows):
        entries = {index[k]: v for k, v in row.items() if v and k in index}
        if entries:
            dod[i] = entries
    if not dod:
        return [{c: field.one} for c in columns]
    matrix = DomainMatrix(dod, (len(rows), len(columns)), field.domain)
    null = matrix.to_field().nullspace().to_list()
    basis = []
    for vec in null:
        sparse = {columns[j]: x for j, x in enumerate(vec) if x}
        if sparse:
            basis.append(sparse)
    return basis


def rank(rows: list[Mapping], columns: list[Hashable], field: CoefficientField) -> int:
    """Rank of the matrix whose rows are the given sparse vectors."""
    if not rows or not columns:
        return 0
    index = {c: i for i, c in enumerate(columns)}
    dod = {}
    for i, row in enumerate(rows):
        entries = {index[k]: v for k, v in row.items() if v}
        if entries:
            dod[i] = entries
    if not dod:
        return 0
    matrix = DomainMatrix(dod, (len(rows), len(columns)), field.domain)
    return matrix.to_field().rank()
