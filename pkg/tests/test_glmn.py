from itertools import product

from src.algebra.glmn import (
    GlElem,
    all_units,
    glmn_bracket,
    lowering_units,
    modulo_m2delta,
    pi3,
    raising_units,
    unit_degree,
    unit_parity,
)
from src.algebra.scalars import sign
from src.algebra.superpoly import dt, dxi
from src.algebra.witt import WittElem, bracket_w


def test_gradation_of_units():
    assert unit_parity((1, 2), 1) == 1
    assert unit_parity((2, 2), 1) == 0
    assert unit_degree((1, 2), 1) == 1
    assert unit_degree((2, 1), 1) == -1
    assert raising_units(2, 1) == [(1, 3), (2, 3)]
    assert lowering_units(2, 1) == [(3, 1), (3, 2)]


def test_odd_units_anticommute_to_the_identity_block():
    e12, e21 = GlElem.unit(1, 2), GlElem.unit(2, 1)
    assert glmn_bracket(e12, e21, 1) == GlElem.unit(1, 1) + GlElem.unit(2, 2)


def test_super_jacobi_on_gl_1_1():
    m = 1
    for x, y, z in product(all_units(1, 1), repeat=3):
        ex, ey, ez = GlElem.unit(*x), GlElem.unit(*y), GlElem.unit(*z)
        px, py, pz = unit_parity(x, m), unit_parity(y, m), unit_parity(z, m)
        total = (
            glmn_bracket(ex, glmn_bracket(ey, ez, m), m).scale(sign(px * pz))
            + glmn_bracket(ey, glmn_bracket(ez, ex, m), m).scale(sign(py * px))
            + glmn_bracket(ez, glmn_bracket(ex, ey, m), m).scale(sign(pz * py))
        )
        assert total.is_zero(), (x, y, z)


def test_pi3_images():
    assert pi3(GlElem.unit(1, 2), 1, 1) == WittElem.letter((1,), 0, dxi(1))
    assert pi3(GlElem.unit(2, 1), 1, 1) == WittElem.letter((0,), 1, dt(1))


def test_pi3_transports_brackets():
    for m, n in [(1, 1), (2, 1), (1, 2)]:
        for x, y in product(all_units(m, n), repeat=2):
            ex, ey = GlElem.unit(*x), GlElem.unit(*y)
            lhs = pi3(glmn_bracket(ex, ey, m), m, n)
            rhs = modulo_m2delta(bracket_w(pi3(ex, m, n), pi3(ey, m, n)))
            assert lhs == rhs, (m, n, x, y)
