import pytest

from src.algebra.field import CoefficientField
from src.algebra.superpoly import dt, dxi
from src.algebra.witt import CartanWeight
from src.modules.catalog import build_fpm
from src.modules.cover import (
    b_dimension,
    build_cover,
    check_cover_bound,
    cover_report,
    omega_annihilation_search,
    submodule_probe,
    theta_surjective,
    verify_B_spanning,
    verify_cover_relation,
    verify_theta_equivariant,
    verify_x_stable,
)
from src.modules.weight_module import WeightModule
from src.utils.errors import TrivialModuleError, WindowError


@pytest.fixture(scope="module")
def polynomials():
    """F(C[t], trivial) over m = n = 1, which is A with its natural action."""
    return build_fpm(None, "trivial", "trivial", 1, 1, window=8)


@pytest.fixture(scope="module")
def cover(polynomials):
    return build_cover(polynomials, degree=6, mono_degree=2)


def test_polynomials_need_order_two(polynomials):
    report = omega_annihilation_search(polynomials, r_max=3)
    assert report.minimal_r == 2
    assert report.annihilates == {0: False, 1: False, 2: True, 3: True}
    assert report.monotone
    assert report.witness is not None
    assert report.witness["r"] == 1
    assert all(count > 0 for count in report.clean_pairs.values())


def test_annihilation_needs_vectors(polynomials):
    with pytest.raises(WindowError):
        omega_annihilation_search(polynomials, r_max=1, vectors=[])


def test_zero_weight_block(polynomials, cover):
    block = cover.block_of(CartanWeight.zero(1, 1))
    letters = {((1,), 0, dt(1)), ((0,), 1, dxi(1)), ((0,), 0, dxi(1)), ((0,), 0, dt(1))}
    assert {letter for letter, _ in block} == letters
    assert len(block) == 4
    assert cover.reliable[CartanWeight.zero(1, 1)]


def test_cover_checks_at_order_two(cover):
    assert b_dimension(1, 1, 2) == 12
    checked, failed = verify_cover_relation(cover, 2)
    assert checked > 0
    assert failed == 0
    assert verify_B_spanning(cover, 2)
    assert check_cover_bound(cover, 2)
    assert theta_surjective(cover)


def test_cover_report(polynomials):
    report = cover_report(polynomials, 2, degree=4, mono_degree=1)
    assert report.minimal_r == 2
    assert report.relation_failed == 0
    assert report.b_spanning
    assert report.bound_respected
    assert report.edge_flags["reliable"] > 0
    assert report.cover_dims
    assert report.theta_checked > 0
    assert report.theta_failed == 0
    assert report.stability_failed == 0


def test_cover_rejects_degenerate_input(polynomials):
    with pytest.raises(WindowError):
        build_cover(polynomials, degree=1, mono_degree=2)
    silent = WeightModule("zero", 1, 1, CoefficientField(), ["v"], [CartanWeight.zero(1, 1)], [0], {})
    with pytest.raises(TrivialModuleError):
        build_cover(silent)


def test_submodule_probe(polynomials):
    one = polynomials.vector(((0,), 0), polynomials.M.labels[0])
    t = polynomials.vector(((1,), 0), polynomials.M.labels[0])
    assert submodule_probe(polynomials, {one: polynomials.field.one}) == "proper"
    assert submodule_probe(polynomials, {t: polynomials.field.one}) == "full"
    assert submodule_probe(polynomials, {}) == "proper"


def test_theta_commutes_with_w(cover):
    checked, failed = verify_theta_equivariant(cover, samples=100, seed=3)
    assert checked > 0
    assert failed == 0


def test_x_is_closed_under_the_generators(cover):
    checked, failed = verify_x_stable(cover)
    assert checked > 0
    assert failed == 0


def test_natural_module_cover():
    natural = build_fpm(None, "natural", "trivial", 1, 1, window=3)
    cover = build_cover(natural, degree=4, mono_degree=1)
    checked, failed = verify_theta_equivariant(cover, samples=200)
    assert checked > 0
    assert failed == 0
    assert verify_x_stable(cover)[1] == 0


def test_theta_needs_something_to_sample(cover):
    with pytest.raises(WindowError):
        verify_theta_equivariant(cover, vectors=[])
