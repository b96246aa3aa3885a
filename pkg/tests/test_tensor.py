import pytest

from src.algebra.superpoly import dt, dxi
from src.modules.catalog import build_fpm, build_gl_module
from src.modules.tensor import (
    TensorModule,
    certify_bounded,
    kmn_word,
    mono_word,
    reliable_weights,
    support_is_coset,
    unit_axiom,
    verify_aw_axioms,
    weight_dim_rows,
    weight_dim_table,
    weight_module_axiom,
)
from src.modules.weight_module import parity_shift
from src.modules.weyl import build_weyl_module, parse_p_spec


def test_weyl_words():
    assert mono_word(((2,), 1)) == (("t", 1), ("t", 1), ("xi", 1))
    assert kmn_word((((1,), 0b10), (((0,), 0, dt(1)), ((0,), 0, dxi(1))))) == (
        ("t", 1), ("xi", 2), ("dt", 1), ("dxi", 1),
    )


def test_trivial_m_gives_the_natural_action():
    F = build_fpm(None, "trivial", "trivial", 1, 1, window=3)
    assert F.M.dim == 1
    v = F.M.labels[0]
    col = F.vector(((2,), 0), v)
    image, clean = F.apply(((1,), 0, dt(1)), {col: F.field.one})
    assert clean
    assert image == {col: F.field.convert(2)}
    assert unit_axiom(F, {col: F.field.one})


def test_aw_axioms_hold():
    assert verify_aw_axioms(build_fpm(None, "trivial", "trivial", 1, 1, window=3), samples=200)
    assert verify_aw_axioms(build_fpm(None, "natural", "trivial", 1, 1, window=3), samples=200, seed=1)
    assert verify_aw_axioms(build_fpm("L(1/2)", "trivial", "trivial", 1, 1, window=2), samples=200, seed=2)


def test_sign_mutation_breaks_the_witt_action(mutated_pi):
    P = build_weyl_module(parse_p_spec("P"), 2, 2)
    M = build_gl_module("trivial", "trivial", 1, 2, top=False)
    x, y = ((0,), 0, dxi(1)), ((0,), 0b11, dxi(2))
    correct = TensorModule(P, M)
    mutated = TensorModule(P, M, mutated_pi(1, 2))
    verdicts = [weight_module_axiom(correct, x, y, {col: correct.field.one}) for col in range(correct.dim)]
    assert all(v is not False for v in verdicts)
    assert any(v is True for v in verdicts)
    assert any(weight_module_axiom(mutated, x, y, {col: mutated.field.one}) is False for col in range(mutated.dim))


def test_weight_table_of_the_natural_action():
    F = build_fpm(None, "trivial", "trivial", 1, 1, window=3)
    rows = weight_dim_rows(F)
    assert len(rows) == F.dim
    assert all(row.dim == 1 for row in rows)
    assert any(row.reliable for row in rows)
    assert reliable_weights(F)
    assert support_is_coset(F)


def test_certificate_bounds():
    trivial = certify_bounded(build_fpm(None, "trivial", "trivial", 1, 1, window=3))
    assert (trivial.N, trivial.dim_v1, trivial.bound) == (1, 1, 2)
    assert trivial.verdict == "bounded"
    assert trivial.meaningful
    assert trivial.within_bound
    assert trivial.within_pair_bound

    natural = certify_bounded(build_fpm(None, "natural", "trivial", 2, 1, window=1))
    assert natural.dim_v1 == 2
    assert natural.bound == 8
    assert natural.verdict == "bounded"
    assert natural.within_pair_bound
    assert natural.within_bound == (natural.observed_max <= natural.bound)


def test_parity_shift_keeps_the_weight_table():
    F = build_fpm(None, "natural", "trivial", 1, 1, window=2)
    shifted = TensorModule(F.P, parity_shift(F.M))
    assert weight_dim_table(shifted) == weight_dim_table(F)
    assert shifted.parities == [1 - p for p in F.parities]


@pytest.mark.parametrize("p_spec, v1, m, n", [
    (None, "natural", 1, 1),
    (None, "trivial", 1, 1),
    ("L(1/2)", "trivial", 1, 1),
    (None, "natural", 2, 1),
])
def test_wider_window_keeps_interior_dims(p_spec, v1, m, n):
    small = build_fpm(p_spec, v1, "trivial", m, n, window=2)
    large = build_fpm(p_spec, v1, "trivial", m, n, window=3)
    interior = reliable_weights(small)
    assert interior
    small_dims, large_dims = weight_dim_table(small), weight_dim_table(large)
    assert {w: large_dims.get(w) for w in interior} == {w: small_dims[w] for w in interior}
