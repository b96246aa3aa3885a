"""
Verification suites: parameter generators, checkers and report assembly.

Each suite yields SuiteItems in shrink order (total degree, then odd-set
sizes, then lexicographic), so the first failing item is the minimal
counterexample. Items run on a thread pool when more than one worker is
configured; results keep generation order.
"""

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Any, Callable, Iterator, Optional, Union

from config.settings import settings
from src.algebra.glmn import GlElem, all_units, glmn_bracket, modulo_m2delta, pi3, unit_parity
from src.algebra.scalars import all_odd_sets, sign, size
from src.algebra.superpoly import SuperPoly, all_derivs
from src.algebra.witt import (
    Letter,
    WittElem,
    bracket_w,
    format_letter,
    letter_parity,
    letter_sort_key,
    monomials_up_to,
    witt_basis,
)
from src.enveloping.omega import omega, verify_omega_recurrence, verify_omega_reduction
from src.enveloping.pi_map import PiHomomorphism, verify_pi_homomorphism, verify_pi_on_cartan
from src.enveloping.xelem import d_subalgebra_abelian, verify_eta, verify_pi2, verify_round_trip, verify_T_central
from src.models.report_models import IdentityResult, Report, RunConfig
from src.modules.catalog import build_fpm
from src.modules.cover import cover_report, omega_annihilation_search
from src.modules.glm_simple import build_glm_simple
from src.modules.kac import brute_force_radical, kac_module, simple_top
from src.modules.tensor import check_axiom_instance, sample_axiom_instances
from src.modules.weight_module import outer_tensor, verify_representation
from src.utils.errors import InvalidConfigError
from src.utils.helpers import to_jsonable
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

Outcome = Union[Optional[bool], tuple[bool, dict]]


@dataclass
class SuiteItem:
    identity: str
    order: tuple
    parameters: dict
    check: Callable[[], Outcome]


def _letter_order(*letters: Letter) -> tuple:
    return (
        sum(sum(x[0]) + size(x[1]) for x in letters),
        sum(size(x[1]) for x in letters),
        tuple(letter_sort_key(x) for x in letters),
    )


def _mono_order(mono) -> tuple:
    return (sum(mono[0]) + size(mono[1]), size(mono[1]), mono)


# Witt superalgebra


def _jacobi_sum(x: WittElem, y: WittElem, z: WittElem) -> WittElem:
    px, py, pz = x.parity(), y.parity(), z.parity()
    return (
        bracket_w(x, bracket_w(y, z)).scale(sign(px * pz))
        + bracket_w(y, bracket_w(z, x)).scale(sign(py * px))
        + bracket_w(z, bracket_w(x, y)).scale(sign(pz * py))
    )


def jacobi_items(cfg: RunConfig) -> Iterator[SuiteItem]:
    letters = witt_basis(cfg.m, cfg.n, cfg.degree)
    for x, y in combinations_with_replacement(letters, 2):
        def skew(x=x, y=y) -> Outcome:
            wx, wy = WittElem({x: 1}), WittElem({y: 1})
            total = bracket_w(wx, wy) + bracket_w(wy, wx).scale(sign(letter_parity(x) * letter_parity(y)))
            return total.is_zero(), {"sum": str(total)}

        yield SuiteItem("skew-symmetry", _letter_order(x, y), {"x": format_letter(x), "y": format_letter(y)}, skew)
    rng = random.Random(cfg.seed)
    for _ in range(cfg.samples if letters else 0):
        x, y, z = (rng.choice(letters) for _ in range(3))

        def jacobi(x=x, y=y, z=z) -> Outcome:
            total = _jacobi_sum(WittElem({x: 1}), WittElem({y: 1}), WittElem({z: 1}))
            return total.is_zero(), {"sum": str(total)}

        params = {"x": format_letter(x), "y": format_letter(y), "z": format_letter(z)}
        yield SuiteItem("super-jacobi", _letter_order(x, y, z), params, jacobi)


def lemma_compute_items(cfg: RunConfig) -> Iterator[SuiteItem]:
    letters = [x for x in witt_basis(cfg.m, cfg.n, cfg.degree) if sum(x[0]) + size(x[1]) > 0]
    monos = monomials_up_to(cfg.m, cfg.n, cfg.degree)
    derivs = all_derivs(cfg.m, cfg.n)
    for x in letters:
        for mono in monos:
            yield SuiteItem(
                "x-commutes-with-a",
                _letter_order(x) + _mono_order(mono),
                {"x": format_letter(x), "a": to_jsonable(mono)},
                lambda x=x, mono=mono: verify_T_central(x[0], x[1], x[2], SuperPoly({mono: 1})),
            )
        for d in derivs:
            yield SuiteItem(
                "x-commutes-with-delta",
                _letter_order(x) + (d.slot(cfg.m),),
                {"x": format_letter(x), "d": str(d)},
                lambda x=x, d=d: verify_T_central(x[0], x[1], x[2], d),
            )


def a_basis_items(cfg: RunConfig) -> Iterator[SuiteItem]:
    for x in witt_basis(cfg.m, cfg.n, cfg.degree):
        yield SuiteItem("round-trip", _letter_order(x), {"x": format_letter(x)}, lambda x=x: verify_round_trip(x))
        yield SuiteItem("eta-expansion", _letter_order(x), {"x": format_letter(x)}, lambda x=x: verify_eta(x))


def pi_hom_items(cfg: RunConfig) -> Iterator[SuiteItem]:
    pi = PiHomomorphism(cfg.m, cfg.n)
    yield SuiteItem("pi-on-cartan", (0,), {}, lambda: verify_pi_on_cartan(cfg.m, cfg.n, pi))
    letters = witt_basis(cfg.m, cfg.n, cfg.degree)
    monos = monomials_up_to(cfg.m, cfg.n, cfg.degree)
    for x, y in combinations_with_replacement(letters, 2):
        yield SuiteItem(
            "pi-bracket",
            _letter_order(x, y),
            {"x": format_letter(x), "y": format_letter(y)},
            lambda x=x, y=y: verify_pi_homomorphism(WittElem({x: 1}), WittElem({y: 1}), pi),
        )
    for x in letters:
        for mono in monos:
            yield SuiteItem(
                "pi-bracket-with-a",
                _letter_order(x) + _mono_order(mono),
                {"x": format_letter(x), "a": to_jsonable(mono)},
                lambda x=x, mono=mono: verify_pi_homomorphism(WittElem({x: 1}), SuperPoly({mono: 1}), pi),
            )


def pi2_hom_items(cfg: RunConfig) -> Iterator[SuiteItem]:
    letters = [x for x in witt_basis(cfg.m, cfg.n, cfg.degree) if sum(x[0]) + size(x[1]) >= 1]
    for x, y in combinations_with_replacement(letters, 2):
        yield SuiteItem(
            "x-map-bracket",
            _letter_order(x, y),
            {"x": format_letter(x), "y": format_letter(y)},
            lambda x=x, y=y: verify_pi2(WittElem({x: 1}), WittElem({y: 1})),
        )


def d_abelian_items(cfg: RunConfig) -> Iterator[SuiteItem]:
    yield SuiteItem("d-abelian", (0,), {"m": cfg.m, "n": cfg.n}, lambda: d_subalgebra_abelian(cfg.m, cfg.n))


# gl(m,n)


def glmn_jacobi_items(cfg: RunConfig) -> Iterator[SuiteItem]:
    m = cfg.m
    units = all_units(cfg.m, cfg.n)
    for x, y, z in product(units, repeat=3):
        def check(x=x, y=y, z=z) -> Outcome:
            ex, ey, ez = (GlElem.unit(*u) for u in (x, y, z))
            px, py, pz = (unit_parity(u, m) for u in (x, y, z))
            total = (
                glmn_bracket(ex, glmn_bracket(ey, ez, m), m).scale(sign(px * pz))
                + glmn_bracket(ey, glmn_bracket(ez, ex, m), m).scale(sign(py * px))
                + glmn_bracket(ez, glmn_bracket(ex, ey, m), m).scale(sign(pz * py))
            )
            return total.is_zero(), {"sum": str(total)}

        order = (sum(unit_parity(u, m) for u in (x, y, z)), x, y, z)
        yield SuiteItem("glmn-jacobi", order, {"x": list(x), "y": list(y), "z": list(z)}, check)


def pi3_items(cfg: RunConfig) -> Iterator[SuiteItem]:
    m, n = cfg.m, cfg.n
    for x, y in product(all_units(m, n), repeat=2):
        def check(x=x, y=y) -> Outcome:
            ex, ey = GlElem.unit(*x), GlElem.unit(*y)
            lhs = pi3(glmn_bracket(ex, ey, m), m, n)
            rhs = modulo_m2delta(bracket_w(pi3(ex, m, n), pi3(ey, m, n)))
            return lhs == rhs, {"lhs": str(lhs), "rhs": str(rhs)}

        order = (unit_parity(x, m) + unit_parity(y, m), x, y)
        yield SuiteItem("pi3-transport", order, {"x": list(x), "y": list(y)}, check)


def _dominant_weights(rank: int, bound: int) -> list[tuple[int, ...]]:
    entries = range(bound, -bound - 1, -1)
    return [w for w in product(entries, repeat=rank) if all(a >= b for a, b in zip(w, w[1:]))]


def kac_pairs(m: int, n: int, count: int = 10) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """The count smallest (lambda1, lambda2), widening the entry range until there are enough."""
    bound = 1
    pairs = list(product(_dominant_weights(m, bound), _dominant_weights(n, bound)))
    while len(pairs) < count and bound < count:
        bound += 1
        pairs = list(product(_dominant_weights(m, bound), _dominant_weights(n, bound)))
    return sorted(pairs, key=lambda p: (sum(abs(v) for v in p[0] + p[1]), p))[:count]


def kac_items(cfg: RunConfig) -> Iterator[SuiteItem]:
    m, n = cfg.m, cfg.n
    pairs = kac_pairs(m, n)
    for lam1, lam2 in pairs:
        def check(lam1=lam1, lam2=lam2) -> Outcome:
            base = outer_tensor(build_glm_simple(lam1, m), build_glm_simple(lam2, n))
            kac = kac_module(base)
            detail: dict[str, Any] = {"dim_v": base.dim, "dim_k": kac.total.dim}
            if kac.total.dim != 2 ** (m * n) * base.dim:
                return False, detail
            if not verify_representation(kac.total):
                return False, {**detail, "representation": False}
            if kac.total.dim <= settings.oracle_max_dim:
                top = simple_top(kac)
                oracle = brute_force_radical(kac)
                detail["dim_l"] = top.quotient.dim
                mismatch = {
                    str(w): (top.radical_dims.get(w, 0), oracle.get(w, 0))
                    for w in set(top.radical_dims) | set(oracle)
                    if top.radical_dims.get(w, 0) != oracle.get(w, 0)
                }
                if mismatch:
                    return False, {**detail, "radical_mismatch": mismatch}
            return True, detail

        yield SuiteItem("kac-module", (sum(abs(v) for v in lam1 + lam2), lam1, lam2), {"v1": list(lam1), "v2": list(lam2)}, check)


# Tensor modules and omega


def _no_even_variables(suite: str) -> SuiteItem:
    # omega operators need an even direction j
    return SuiteItem(suite, (0,), {"reason": "m = 0"}, lambda: None)


def aw_axiom_items(cfg: RunConfig) -> Iterator[SuiteItem]:
    F = build_fpm(None, "trivial", "trivial", cfg.m, cfg.n, cfg.window)
    for k, instance in enumerate(sample_axiom_instances(F, cfg.samples, cfg.seed)):
        yield SuiteItem(
            f"aw-{instance.kind}",
            (k,),
            instance.describe(F),
            lambda instance=instance: check_axiom_instance(F, instance),
        )


def _omega_params(cfg: RunConfig, extra: int = 0) -> Iterator[tuple]:
    entry = settings.omega_entry_max
    exponents = sorted(product(range(entry + 1), repeat=cfg.m), key=lambda a: (sum(a), a))
    odd_sets = all_odd_sets(cfg.n)
    derivs = all_derivs(cfg.m, cfg.n)
    indices = [exponents] * (2 + extra)
    for r in (0, 1):
        for idx in product(*indices):
            for odd_first, odd_second in product(odd_sets, repeat=2):
                for j in range(1, cfg.m + 1):
                    for first, second in product(derivs, repeat=2):
                        yield r, idx, odd_first, odd_second, j, first, second


def omega_recurrence_items(cfg: RunConfig) -> Iterator[SuiteItem]:
    if cfg.m < 1:
        yield _no_even_variables("omega-recurrence")
        return
    for r, (alpha, beta), odd_first, odd_second, j, first, second in _omega_params(cfg):
        spec = omega(alpha, beta, odd_first, odd_second, r, j, first, second)
        order = (sum(alpha) + sum(beta) + r, size(odd_first) + size(odd_second), alpha, beta, odd_first, odd_second)
        params = {
            "alpha": list(alpha), "beta": list(beta), "I": odd_first, "J": odd_second,
            "r": r, "j": j, "d": str(first), "d2": str(second),
        }
        yield SuiteItem("omega-recurrence", order, params, lambda spec=spec: verify_omega_recurrence(spec))


def omega_reduction_items(cfg: RunConfig) -> Iterator[SuiteItem]:
    if cfg.m < 1:
        yield _no_even_variables("omega-reduction")
        return
    seen = set()
    for r, (alpha, beta, gamma), odd_i, odd_j, j, d, _ in _omega_params(cfg, extra=1):
        key = (r, alpha, beta, gamma, odd_i, odd_j, j, d)
        if key in seen:
            continue
        seen.add(key)
        order = (sum(alpha) + sum(beta) + sum(gamma) + r, size(odd_i) + size(odd_j), alpha, beta, gamma, odd_i, odd_j)
        params = {
            "alpha": list(alpha), "beta": list(beta), "gamma": list(gamma), "I": odd_i, "J": odd_j,
            "r": r, "j": j, "d": str(d),
        }
        yield SuiteItem(
            "omega-reduction",
            order,
            params,
            lambda a=alpha, b=beta, g=gamma, i=odd_i, jj=odd_j, r=r, j=j, d=d: verify_omega_reduction(a, b, g, i, jj, r, j, d),
        )


def annihilation_items(cfg: RunConfig) -> Iterator[SuiteItem]:
    if cfg.m < 1:
        yield _no_even_variables("annihilation")
        return

    def check() -> Outcome:
        F = build_fpm(None, "trivial", "trivial", cfg.m, cfg.n, cfg.window)
        report = omega_annihilation_search(F, cfg.rmax, cfg.samples, cfg.seed)
        ok = report.minimal_r is not None and report.monotone
        return ok, report.model_dump(mode="json")

    yield SuiteItem("omega-annihilation", (0,), {"window": cfg.window, "rmax": cfg.rmax}, check)


def cover_items(cfg: RunConfig) -> Iterator[SuiteItem]:
    if cfg.m < 1:
        yield _no_even_variables("cover")
        return

    def check() -> Outcome:
        F = build_fpm(None, "trivial", "trivial", cfg.m, cfg.n, cfg.window)
        search = omega_annihilation_search(F, cfg.rmax, cfg.samples, cfg.seed)
        report = cover_report(F, search.minimal_r, samples=cfg.samples, seed=cfg.seed)
        ok = (
            search.minimal_r is not None
            and report.relation_failed == 0
            and report.theta_failed == 0
            and report.stability_failed == 0
            and report.b_spanning
            and report.bound_respected
        )
        return ok, report.model_dump(mode="json")

    yield SuiteItem("a-cover", (0,), {"window": cfg.window, "rmax": cfg.rmax}, check)


SUITES: dict[str, Callable[[RunConfig], Iterator[SuiteItem]]] = {
    "jacobi": jacobi_items,
    "lemma-compute": lemma_compute_items,
    "a-basis": a_basis_items,
    "pi-hom": pi_hom_items,
    "glmn-jacobi": glmn_jacobi_items,
    "pi3-transport": pi3_items,
    "kac-rep": kac_items,
    "aw-axioms": aw_axiom_items,
    "omega-recurrence": omega_recurrence_items,
    "omega-reduction": omega_reduction_items,
    "annihilation": annihilation_items,
    "cover": cover_items,
    "pi2-hom": pi2_hom_items,
    "d-abelian": d_abelian_items,
}


def _run_item(item: SuiteItem) -> IdentityResult:
    start = time.perf_counter()
    outcome = item.check()
    elapsed = time.perf_counter() - start
    detail: Optional[dict] = None
    if isinstance(outcome, tuple):
        outcome, detail = outcome
    status = "skip" if outcome is None else ("pass" if outcome else "fail")
    result = IdentityResult(
        identity=item.identity,
        parameters=item.parameters,
        status=status,
        elapsed=round(elapsed, 6) if settings.report_timings else None,
    )
    if status == "fail":
        result.counterexample = {"parameters": item.parameters, **to_jsonable(detail or {})}
        logger.error(f"{item.identity} failed at {item.parameters}")
    return result


def run_suite(cfg: RunConfig) -> Report:
    """
    Run cfg.suite and assemble its Report.

    Raises:
        InvalidConfigError: If no suite is selected or the suite does not apply to (m, n)
    """
    if cfg.suite is None:
        raise InvalidConfigError("no suite selected")
    start = time.perf_counter()
    items = sorted(SUITES[cfg.suite](cfg), key=lambda item: item.order)
    logger.info(f"Suite {cfg.suite}: {len(items)} items for m={cfg.m}, n={cfg.n}")
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_run_item, items))
    else:
        results = [_run_item(item) for item in items]

    totals = {"pass": 0, "fail": 0, "skip": 0}
    for result in results:
        totals[result.status] += 1
    report = Report(
        suite=cfg.suite,
        parameter_ranges={
            "m": cfg.m, "n": cfg.n, "degree": cfg.degree, "window": cfg.window,
            "rmax": cfg.rmax, "seed": cfg.seed, "samples": cfg.samples,
        },
        totals=totals,
        results=results,
        counterexample=next((r for r in results if r.status == "fail"), None),
        elapsed=round(time.perf_counter() - start, 6) if settings.report_timings else None,
        passed=totals["fail"] == 0,
    )
    logger.info(f"Suite {cfg.suite}: {totals}")
    return report
