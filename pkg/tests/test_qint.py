from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quadfrieze.qint import (
    FieldTag,
    OmegaKind,
    QuadInt,
    QuadRat,
    abs_sq,
    field,
    format_element,
    is_integral,
    parse_element,
    small_elements,
)

from conftest import SQUAREFREE_NEG, field_and_pair


def test_field_tag_validation():
    with pytest.raises(ValueError):
        FieldTag(5)
    with pytest.raises(ValueError):
        FieldTag(-4)
    with pytest.raises(TypeError):
        FieldTag(True)
    assert field(-3) is field(-3)


@pytest.mark.parametrize(
    "d, kind, disc, trace, norm",
    [(-1, OmegaKind.SQRT, -4, 0, 1), (-2, OmegaKind.SQRT, -8, 0, 2), (-3, OmegaKind.HALF_INTEGRAL, -3, 1, 1),
     (-11, OmegaKind.HALF_INTEGRAL, -11, 1, 3), (-13, OmegaKind.SQRT, -52, 0, 13)],
)
def test_omega_data(d, kind, disc, trace, norm):
    t = field(d)
    assert (t.omega_kind, t.disc, t.omega_trace, t.omega_norm) == (kind, disc, trace, norm)
    w = t.omega().to_rat()
    assert w * w == trace * w - norm


@given(field_and_pair())
def test_field_axioms(data):
    _, x, y = data
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) * y == x * y + y * y
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x * y).norm() == x.norm() * y.norm()
    if y != 0:
        assert (x / y) * y == x
        assert y ** -2 * y ** 2 == 1


@given(st.sampled_from(SQUAREFREE_NEG), st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
def test_quadint_matches_quadrat(d, a, b, c, e):
    t = field(d)
    u, v = QuadInt(a, b, t), QuadInt(c, e, t)
    assert (u * v).to_rat() == u.to_rat() * v.to_rat()
    assert (u + v).to_rat() == u.to_rat() + v.to_rat()
    assert u.conj().to_rat() == u.to_rat().conj()
    assert u.norm() == u.to_rat().norm() == abs_sq(u)
    assert is_integral(u.to_rat(), t) == (True, u)
    assert QuadInt.from_rat(u.to_rat(), t) == u


def test_integrality_for_half_integral_omega():
    t = field(-3)
    assert is_integral(QuadRat(Fraction(1, 2), Fraction(1, 2), t))[0]
    assert not is_integral(QuadRat(Fraction(1, 2), 0, t))[0]
    assert not is_integral(QuadRat(0, Fraction(1, 2), t))[0]
    assert not is_integral(QuadRat(Fraction(1, 2), Fraction(1, 2), field(-1)))[0]


def test_rational_mixing_and_mismatch():
    z = QuadRat(1, 2, field(-5))
    assert z + 1 == QuadRat(2, 2, field(-5))
    assert QuadRat(3) == 3 and hash(QuadRat(3)) == hash(3)
    assert QuadRat(3, 0, field(-5)) == QuadRat(3)
    with pytest.raises(ValueError):
        z + QuadRat(0, 1, field(-6))


def _brute_small(d, bound):
    t = field(d)
    out = []
    for a in range(-12, 13):
        for b in range(-12, 13):
            q = QuadInt(a, b, t)
            if q.norm() < bound:
                out.append(q)
    return sorted(out, key=lambda q: (q.norm(), q.a, q.b))


@pytest.mark.parametrize("d", SQUAREFREE_NEG)
@pytest.mark.parametrize("bound", [1, 4, Fraction(17, 2), 25])
def test_small_elements_against_box_search(d, bound):
    assert small_elements(field(d), bound) == _brute_small(d, bound)


def test_small_elements_counts():
    nonzero = lambda d: sum(1 for q in small_elements(field(d), 4) if q.norm() > 0)
    assert nonzero(-3) == 12
    assert len(small_elements(field(-3), 4)) == 13
    # beyond the exceptional fields only 0, 1, -1 are this small
    for d in (-5, -6, -10, -13, -15, -19):
        assert [q for q in small_elements(field(d), 4)] == [QuadInt(0, 0, field(d)), QuadInt(-1, 0, field(d)), QuadInt(1, 0, field(d))]
    for d in (-1, -2, -3, -7, -11):
        assert any(q.b != 0 for q in small_elements(field(d), 4))
    assert small_elements(None, 5) == [0, -1, 1, -2, 2]


@given(st.sampled_from(SQUAREFREE_NEG), st.integers(-9, 9), st.integers(-9, 9), st.integers(1, 7), st.integers(1, 7))
def test_format_parse_round_trip(d, a, b, p, q):
    t = field(d)
    z = QuadRat(Fraction(a, p), Fraction(b, q), t)
    assert parse_element(format_element(z), t) == z
    w = QuadInt(a, b, t).to_rat()
    assert parse_element(format_element(w), t) == w


def test_parse_loose_spellings():
    t = field(-11)
    w = t.omega().to_rat()
    assert parse_element("w", t) == w
    assert parse_element("1-w", t) == w.conj()
    assert parse_element("-2w", t) == -2 * w
    assert parse_element("1/2*sqrt(-3)") == QuadRat(0, Fraction(1, 2), field(-3))
    with pytest.raises(ValueError):
        parse_element("w")
    with pytest.raises(ValueError):
        parse_element("sqrt(-3)", field(-7))
