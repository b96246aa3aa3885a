"""
Simple bounded gl_n-modules: finite-dimensional ones, and the Laurent family
x^gamma C[x_1^{+-1}, ..., x_n^{+-1}]_0 on which E_ij acts as x_i d/dx_j.
"""

from itertools import product
from typing import Optional, Sequence, Union

from src.algebra.field import CoefficientField
from src.algebra.scalars import WeightParam, non_integral_shift
from src.algebra.witt import CartanWeight
from src.modules.glm_simple import build_glm_simple
from src.modules.weight_module import ActionTable, WeightModule
from src.utils.errors import InvalidConfigError, InvalidWeightError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

GammaLike = Union[str, WeightParam, int]


def laurent_exponents(n: int, window: int) -> list[tuple[int, ...]]:
    """All nu in Z^n with sum 0 and |nu_i| <= window."""
    return [nu for nu in product(range(-window, window + 1), repeat=n) if sum(nu) == 0]


def default_gamma(n: int) -> list[WeightParam]:
    return [WeightParam.symbol(f"gamma{j}") for j in range(1, n + 1)]


def _gamma_param(value: GammaLike) -> WeightParam:
    if isinstance(value, WeightParam):
        if value.is_integral:
            raise InvalidWeightError(f"Laurent shift {value} must not be an integer")
        return value
    return non_integral_shift(value)


def build_laurent(n: int, gamma: Optional[Sequence[GammaLike]] = None, window: int = 2) -> WeightModule:
    """
    Basis x^{gamma + nu}, nu in Z^n with sum 0 inside the window.

    E_ij x^{gamma+nu} = (gamma+nu)_j x^{gamma+nu+e_i-e_j}; images leaving the
    window are recorded as edges.

    Raises:
        InvalidWeightError: If some gamma_i is an integer
    """
    if n < 1:
        raise InvalidConfigError("the Laurent family needs n >= 1")
    shifts = [_gamma_param(g) for g in (gamma if gamma is not None else default_gamma(n))]
    if len(shifts) != n:
        raise InvalidWeightError(f"expected {n} Laurent shifts, got {len(shifts)}")
    field = CoefficientField(s for g in shifts for s in g.symbols())
    exponents = laurent_exponents(n, window)
    index = {nu: k for k, nu in enumerate(exponents)}
    weights = [CartanWeight(tuple(g + v for g, v in zip(shifts, nu)), ()) for nu in exponents]

    actions: ActionTable = {}
    edges: dict = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            table: dict[int, dict] = {}
            for col, nu in enumerate(exponents):
                coeff = field.convert(shifts[j - 1] + nu[j - 1])
                target = tuple(v + (1 if k == i - 1 else 0) - (1 if k == j - 1 else 0) for k, v in enumerate(nu))
                row = index.get(target)
                if row is None:
                    edges.setdefault((i, j), set()).add(col)
                    continue
                table[col] = {row: coeff}
            actions[(i, j)] = table

    def coverage(weight: CartanWeight) -> bool:
        nu = [w - g for w, g in zip(weight.lam, shifts)]
        if not all(v.is_integral for v in nu) or sum(int(v.offset) for v in nu) != 0:
            return True
        return max(abs(int(v.offset)) for v in nu) <= window

    module = WeightModule(
        f"Laurent({', '.join(str(g) for g in shifts)})",
        n,
        0,
        field,
        [("x", nu) for nu in exponents],
        weights,
        [0] * len(exponents),
        actions,
        edges,
        coverage,
        {"kind": "laurent", "gamma": [str(g) for g in shifts], "window": window},
    )
    logger.info(f"Built {module.summary()}")
    return module


def build_gln_bounded(
    kind: str,
    n: int,
    lam: Optional[Sequence[int]] = None,
    gamma: Optional[Sequence[GammaLike]] = None,
    window: int = 2,
) -> WeightModule:
    """
    A simple bounded gl_n-module.

    Args:
        kind: "finite" or "laurent"
        n: Rank
        lam: Highest weight for the finite kind (default trivial)
        gamma: Shifts for the Laurent kind (default formal gamma1..gamman)
        window: Exponent bound for the Laurent kind

    Raises:
        InvalidConfigError: For an unknown kind
    """
    if kind == "finite":
        return build_glm_simple(lam if lam is not None else [0] * n, n)
    if kind == "laurent":
        return build_laurent(n, gamma, window)
    raise InvalidConfigError(f"unknown bounded module kind '{kind}'")
