"""
Text specs for the modules the CLI and the suites build.

    --v1  "trivial" | "natural" | "2,1,0"            (gl_m highest weight)
    --v2  the same for gl_n, or "laurent" | "laurent(1/2,g2)"
"""

import re
from fractions import Fraction
from typing import Mapping, Optional

from src.modules.glm_simple import build_glm_simple
from src.modules.gln_bounded import build_laurent
from src.modules.kac import kac_module, simple_top
from src.modules.tensor import TensorModule
from src.modules.weight_module import WeightModule, outer_tensor
from src.modules.weyl import build_weyl_module, parse_p_spec, specialize_specs
from src.utils.errors import SpecParseError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

_LAURENT = re.compile(r"^laurent(?:\((.*)\))?$")


def parse_highest_weight(text: str, rank: int) -> tuple[int, ...]:
    text = text.strip()
    if text == "trivial":
        return (0,) * rank
    if text == "natural":
        return (1,) + (0,) * (rank - 1) if rank else ()
    try:
        values = [Fraction(tok) for tok in text.split(",")] if text else []
    except ValueError as e:
        raise SpecParseError(f"cannot parse highest weight '{text}'") from e
    if len(values) != rank:
        raise SpecParseError(f"highest weight '{text}' needs {rank} entries")
    if any(v.denominator != 1 for v in values):
        raise SpecParseError(f"highest weight '{text}' is not integral")
    return tuple(int(v) for v in values)


def parse_v1(text: str, m: int) -> WeightModule:
    """Finite-dimensional simple gl_m-module."""
    return build_glm_simple(parse_highest_weight(text, m), m)


def parse_v2(text: str, n: int, window: int = 2) -> WeightModule:
    """Simple bounded gl_n-module: finite, or a Laurent module cut to ``window``."""
    match = _LAURENT.match(text.strip())
    if match is None:
        return build_glm_simple(parse_highest_weight(text, n), n)
    if match.group(1) is None:
        return build_laurent(n, None, window)
    tokens = [tok.strip() for tok in match.group(1).split(",")]
    gamma = []
    for tok in tokens:
        if re.fullmatch(r"[A-Za-z_]\w*", tok):
            gamma.append(tok)
        else:
            try:
                gamma.append(Fraction(tok))
            except ValueError as e:
                raise SpecParseError(f"bad Laurent shift '{tok}'") from e
    return build_laurent(n, gamma, window)


def build_gl_module(v1: str, v2: str, m: int, n: int, window: int = 2, top: bool = True) -> WeightModule:
    """L(V1 (x) V2), or the whole Kac module when ``top`` is False."""
    base = outer_tensor(parse_v1(v1, m), parse_v2(v2, n, window))
    kac = kac_module(base)
    if not top:
        return kac.total
    return simple_top(kac).quotient


def build_fpm(
    p_spec: Optional[str],
    v1: str,
    v2: str,
    m: int,
    n: int,
    window: int,
    gl_window: int = 2,
    top: bool = True,
    specialize: Optional[Mapping[str, Fraction]] = None,
) -> TensorModule:
    """
    F(P, M) from text specs; ``p_spec`` defaults to C[t] in every even variable.

    ``specialize`` substitutes non-integral rationals for named shifts in P.
    """
    specs = parse_p_spec(p_spec if p_spec is not None else ",".join(["P"] * m), m)
    if specialize:
        specs = specialize_specs(specs, specialize)
    P = build_weyl_module(specs, n, window)
    M = build_gl_module(v1, v2, m, n, gl_window, top)
    return TensorModule(P, M)
