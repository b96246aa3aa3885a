"""
Simple weight modules over the Weyl superalgebra K_{m,n}.

Each even variable carries one factor: t^lambda C[t^{+-1}] (shifted Laurent),
C[t] (poly) or C[t^{+-1}]/C[t] (Laurent mod poly). The odd variables carry the
exterior algebra. Basis vectors are (k, E): the exponent vector k and the
bitmask E of the present xi's.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Literal, Mapping, Optional, Sequence

from src.algebra.field import CoefficientField
from src.algebra.scalars import WeightParam, all_odd_sets, count_below, non_integral_shift, sign, size
from src.algebra.witt import CartanWeight
from src.modules.weight_module import ActionTable, WeightModule, closure
from src.utils.errors import InvalidWeightError, SpecParseError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

FactorKind = Literal["laurent", "poly", "laurent_mod_poly"]
Placement = Literal["inside", "outside", "beyond"]
WeylGenerator = tuple[str, int]


@dataclass(frozen=True)
class WeylFactorSpec:
    kind: FactorKind
    shift: Optional[WeightParam] = None

    def __post_init__(self) -> None:
        if self.kind == "laurent":
            if self.shift is None or self.shift.is_integral:
                raise InvalidWeightError(f"shifted Laurent factor needs a non-integral shift, got {self.shift}")
        elif self.shift is not None:
            raise InvalidWeightError(f"factor {self.kind} takes no shift")

    def offset(self) -> WeightParam:
        return self.shift if self.shift is not None else WeightParam()

    def exponent_range(self, window: int) -> range:
        if self.kind == "poly":
            return range(0, window + 1)
        if self.kind == "laurent_mod_poly":
            return range(-window, 0)
        return range(-window, window + 1)

    def support(self) -> str:
        if self.kind == "poly":
            return "Z+"
        if self.kind == "laurent_mod_poly":
            return "-N"
        return f"{self.shift}+Z"

    def __str__(self) -> str:
        if self.kind == "poly":
            return "P"
        if self.kind == "laurent_mod_poly":
            return "LmodP"
        return f"L({self.shift})"


@dataclass(frozen=True)
class WeylSupport:
    """Product-form support X_1 x ... x X_m x {0,1}^n."""

    even: tuple[str, ...]
    n: int

    def __str__(self) -> str:
        parts = list(self.even)
        if self.n:
            parts.append("{0,1}" if self.n == 1 else f"{{0,1}}^{self.n}")
        return " x ".join(parts) if parts else "{0}"


_FACTOR = re.compile(r"^(P|LmodP|L\(\s*([^)]+?)\s*\))$")


def parse_p_spec(text: str, m: Optional[int] = None) -> list[WeylFactorSpec]:
    """
    Parse "P,LmodP,L(lambda1),L(1/2)" into factor specs.

    Raises:
        SpecParseError: On malformed tokens or a count different from m
        InvalidWeightError: On an integral rational shift
    """
    tokens = [tok.strip() for tok in text.split(",")] if text.strip() else []
    specs = []
    for tok in tokens:
        match = _FACTOR.match(tok)
        if not match:
            raise SpecParseError(f"cannot parse Weyl factor '{tok}'")
        if match.group(1) == "P":
            specs.append(WeylFactorSpec("poly"))
        elif match.group(1) == "LmodP":
            specs.append(WeylFactorSpec("laurent_mod_poly"))
        else:
            arg = match.group(2)
            if re.fullmatch(r"[A-Za-z_]\w*", arg):
                specs.append(WeylFactorSpec("laurent", non_integral_shift(arg)))
            else:
                try:
                    value = Fraction(arg)
                except ValueError as e:
                    raise SpecParseError(f"bad shift '{arg}' in '{tok}'") from e
                specs.append(WeylFactorSpec("laurent", non_integral_shift(value)))
    if m is not None and len(specs) != m:
        raise SpecParseError(f"p-spec '{text}' has {len(specs)} factors, expected {m}")
    return specs


def specialize_specs(specs: Sequence[WeylFactorSpec], values: Mapping[str, Fraction]) -> list[WeylFactorSpec]:
    """
    Substitute rationals for formal shifts.

    Raises:
        InvalidWeightError: If a substituted shift becomes an integer
    """
    out = []
    for spec in specs:
        if spec.kind == "laurent" and spec.shift.is_formal:
            shift = spec.shift.specialize(values)
            if shift.is_integral:
                raise InvalidWeightError(f"specializing {spec.shift} gives the integer {shift}")
            out.append(WeylFactorSpec("laurent", shift))
        else:
            out.append(spec)
    return out


def weyl_support(specs: Sequence[WeylFactorSpec], n: int) -> WeylSupport:
    return WeylSupport(tuple(s.support() for s in specs), n)


def weyl_generators(m: int, n: int) -> list[WeylGenerator]:
    gens = [("t", i) for i in range(1, m + 1)] + [("dt", i) for i in range(1, m + 1)]
    gens += [("xi", j) for j in range(1, n + 1)] + [("dxi", j) for j in range(1, n + 1)]
    return gens


def generator_parity(gen: WeylGenerator) -> int:
    return 1 if gen[0] in ("xi", "dxi") else 0


def weyl_action(
    specs: Sequence[WeylFactorSpec], gen: WeylGenerator, label: tuple[tuple[int, ...], int]
) -> tuple[Optional[WeightParam], Optional[tuple[tuple[int, ...], int]]]:
    """
    Action of one generator on a basis vector, ignoring windows.

    Returns:
        (coefficient, target label); (None, None) when the result is zero
    """
    kind, index = gen
    k, odd = label
    if kind in ("t", "dt"):
        spec = specs[index - 1]
        e = k[index - 1]
        if kind == "t":
            if spec.kind == "laurent_mod_poly" and e + 1 == 0:
                return None, None
            target = e + 1
            coeff = WeightParam.of(1)
        else:
            coeff = spec.offset() + e
            if spec.kind == "poly" and e == 0:
                return None, None
            target = e - 1
        return coeff, (tuple(target if i == index - 1 else v for i, v in enumerate(k)), odd)
    bit = 1 << (index - 1)
    s = sign(count_below(odd, index))
    if kind == "xi":
        if odd & bit:
            return None, None
        return WeightParam.of(s), (k, odd | bit)
    if not odd & bit:
        return None, None
    return WeightParam.of(s), (k, odd & ~bit)


class WeylModule(WeightModule):
    """A catalog module P, window-truncated on its infinite factors."""

    def __init__(self, specs: Sequence[WeylFactorSpec], n: int, window: int) -> None:
        self.specs = list(specs)
        self.window = window
        m = len(self.specs)
        field = CoefficientField(sym for s in self.specs if s.shift is not None for sym in s.shift.symbols())
        exponents = list(product(*(s.exponent_range(window) for s in self.specs)))
        labels = [(k, odd) for k in exponents for odd in all_odd_sets(n)]
        index = {label: i for i, label in enumerate(labels)}
        weights = [
            CartanWeight(
                tuple(s.offset() + e for s, e in zip(self.specs, k)),
                tuple(WeightParam.of(1 if odd >> j & 1 else 0) for j in range(n)),
            )
            for k, odd in labels
        ]
        actions: ActionTable = {}
        edges: dict = {}
        for gen in weyl_generators(m, n):
            table: dict[int, dict] = {}
            for col, label in enumerate(labels):
                coeff, target = weyl_action(self.specs, gen, label)
                if target is None:
                    continue
                row = index.get(target)
                if row is None:
                    edges.setdefault(gen, set()).add(col)
                    continue
                table[col] = {row: field.convert(coeff)}
            actions[gen] = table
        super().__init__(
            "P[" + ",".join(str(s) for s in self.specs) + f"; n={n}, w={window}]",
            m,
            n,
            field,
            labels,
            weights,
            [size(odd) & 1 for _, odd in labels],
            actions,
            edges,
            self.covers_weight,
            {"kind": "weyl", "p_spec": [str(s) for s in self.specs], "window": window},
        )
        logger.info(f"Built {self.summary()}")

    def classify(self, weight: CartanWeight) -> Placement:
        """
        "outside" the support, "inside" the window, or in the support but "beyond" the window.
        """
        beyond = False
        for spec, value in zip(self.specs, weight.lam):
            k = value - spec.offset()
            if not k.is_integral:
                return "outside"
            e = int(k.offset)
            if spec.kind == "poly" and e < 0:
                return "outside"
            if spec.kind == "laurent_mod_poly" and e >= 0:
                return "outside"
            if e not in spec.exponent_range(self.window):
                beyond = True
        for value in weight.mu:
            if value not in (WeightParam.of(0), WeightParam.of(1)):
                return "outside"
        return "beyond" if beyond else "inside"

    def covers_weight(self, weight: CartanWeight) -> bool:
        return self.classify(weight) != "beyond"

    def support(self) -> WeylSupport:
        return weyl_support(self.specs, self.n)

    def vector_label(self, exponents: Sequence[int], odd: Sequence[int] = ()) -> int:
        """Index of t^k xi_E from an exponent list and 1-based odd indices."""
        mask = 0
        for j in odd:
            mask |= 1 << (j - 1)
        return self.index[(tuple(exponents), mask)]


def build_weyl_module(specs: Sequence[WeylFactorSpec], n: int, window: int) -> WeylModule:
    return WeylModule(specs, n, window)


def specialize(module: WeylModule, values: Mapping[str, Fraction]) -> WeylModule:
    """Rebuild with some formal shifts replaced by non-integral rationals."""
    return WeylModule(specialize_specs(module.specs, values), module.n, module.window)


def verify_kmn_relations(module: WeylModule) -> bool:
    """
    [d/dt_i, t_k] = delta_ik, {d/dxi_j, xi_l} = delta_jl and every other pair
    of generators supercommutes, on every basis vector away from the edges.
    """
    field = module.field
    gens = weyl_generators(module.m, module.n)
    for g in gens:
        for h in gens:
            s = sign(generator_parity(g) * generator_parity(h))
            expected = 0
            if g[1] == h[1]:
                if (g[0], h[0]) in (("dt", "t"), ("dxi", "xi"), ("xi", "dxi")):
                    expected = 1
                elif (g[0], h[0]) == ("t", "dt"):
                    expected = -1
            for col in range(module.dim):
                basis = {col: field.one}
                gh, ok1 = module.apply_word((g, h), basis)
                hg, ok2 = module.apply_word((h, g), basis)
                if not (ok1 and ok2):
                    continue
                diff = dict(gh)
                for row, c in hg.items():
                    diff[row] = diff.get(row, field.zero) - field.convert(s) * c
                diff[col] = diff.get(col, field.zero) - field.convert(expected)
                if any(diff.values()):
                    logger.error(f"relation fails for {g}, {h} at {module.labels[col]}")
                    return False
    return True


def strict_cyclicity(module: WeylModule) -> bool:
    """Every basis vector generates the whole window under the generators."""
    for k in range(module.dim):
        space, _ = closure(module, [{k: module.field.one}])
        if space.dim != module.dim:
            logger.warning(f"{module.labels[k]} generates only {space.dim} of {module.dim}")
            return False
    return True
