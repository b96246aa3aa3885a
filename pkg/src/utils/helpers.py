from fractions import Fraction
from typing import Any, Optional

from src.algebra.superpoly import Deriv


def report_filename(kind: str, m: int, n: int, extension: Optional[str] = "json") -> str:
    """
    Build the file name of a report, keyed by what produced it and the ranks.

    Args:
        kind: Suite name or table kind, e.g. "pi-hom" or "fpm-dims"
        m: Even rank
        n: Odd rank
        extension: File extension without the dot; None for a bare stem

    Returns:
        Safe filename string

    Examples:
        >>> report_filename('pi-hom', 1, 1)
        'pi-hom_m1_n1.json'
        >>> report_filename('fpm dims', 2, 1, 'csv')
        'fpm-dims_m2_n1.csv'
    """
    stem = "-".join(kind.split()) or "report"
    stem = f"{stem}_m{m}_n{n}"
    if extension is None:
        return stem
    return f"{stem}.{extension}"


def to_jsonable(value: Any) -> Any:
    """
    Scalars become "p/q" strings and derivations their text form; containers recurse.

    Examples:
        >>> to_jsonable({'c': Fraction(-1, 2), 'alpha': (1, 0)})
        {'c': '-1/2', 'alpha': [1, 0]}
    """
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, Deriv):
        return str(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    return str(value)
