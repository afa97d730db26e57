import itertools
from fractions import Fraction

import pytest

from quadfrieze.census import (
    CensusResult,
    Positivity,
    SearchConfig,
    SubringReport,
    census_to_json,
    count_by_class,
    enumerate_friezes,
    frieze_subring_report,
    validate_census,
)
from quadfrieze.eta import QuiddityCycle
from quadfrieze.frieze import FriezeClass, extract_quiddity, from_quiddity
from quadfrieze.qint import QuadInt, QuadRat, field, small_elements
from quadfrieze.triangulate import enumerate_triangulations, quiddity_of_triangulation


def _cycles(result):
    return {extract_quiddity(f) for f in result.friezes}


def brute_census(tag, height, bound):
    """Every cycle with entries of norm <= bound whose frieze is non-zero.

    Elements are held as doubled coordinates ``(2x, 2y)`` of ``x + y*sqrt(d)``
    so the check runs on plain integers.
    """
    d = -1 if tag is None else tag.d
    if tag is None:
        r = int(bound**0.5)
        cands = [(2 * a, 0) for a in range(-r, r + 1) if a]
    else:
        cands = [(int(2 * z.x), int(2 * z.y)) for z in (q.to_rat() for q in small_elements(tag, Fraction(bound) + 1))]
        cands = [c for c in cands if c != (0, 0) and c[0] ** 2 - d * c[1] ** 2 <= 4 * bound]

    def mul(u, v):
        return ((u[0] * v[0] + d * u[1] * v[1]) // 2, (u[0] * v[1] + u[1] * v[0]) // 2)

    def sub(u, v):
        return (u[0] - v[0], u[1] - v[1])

    two, zero = (2, 0), (0, 0)
    m = height + 3
    out = set()
    for c in itertools.product(cands, repeat=m):
        # frieze rows by the defining recurrence; quiddity iff every row closes as 1, 0
        ok = True
        for i in range(m):
            prev, cur = zero, two
            for k in range(m - 1):
                prev, cur = cur, sub(mul(c[(i + k) % m], cur), prev)
                if cur == zero and k < m - 3:
                    ok = False
                    break
            if not ok or prev != two or cur != zero:
                ok = False
                break
        if ok:
            out.add(QuiddityCycle([QuadRat(Fraction(x, 2), Fraction(y, 2), tag if y else None) for x, y in c], tag))
    return out


def test_o5_height1_against_brute_force():
    tag = field(-5)
    res = enumerate_friezes(SearchConfig(tag, 1, 16))
    assert len(res) == 4
    assert _cycles(res) == brute_census(tag, 1, 16)
    assert res.complete


@pytest.mark.parametrize("d", [-1, -2, -3, -7])
def test_exceptional_height1_against_brute_force(d):
    tag = field(d)
    res = enumerate_friezes(SearchConfig(tag, 1, 4))
    assert _cycles(res) == brute_census(tag, 1, 4)
    assert not res.complete


@pytest.mark.parametrize("height", [1, 2])
def test_integers_against_brute_force(height):
    res = enumerate_friezes(SearchConfig(None, height, 9))
    assert _cycles(res) == brute_census(None, height, 9)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 5])
def test_positive_integers_are_triangulations(n):
    res = enumerate_friezes(SearchConfig(None, n, positivity=Positivity.POSITIVE_ONLY))
    oracle = {quiddity_of_triangulation(t) for t in enumerate_triangulations(n + 3)}
    assert _cycles(res) == oracle
    assert set(res.classes) == {FriezeClass.CONWAY_COXETER}


def test_all_sign_integer_counts():
    expected = {
        1: {FriezeClass.CONWAY_COXETER: 2, FriezeClass.TWISTED_CONWAY_COXETER: 2},
        2: {FriezeClass.CONWAY_COXETER: 5},
        3: {FriezeClass.CONWAY_COXETER: 14, FriezeClass.TWISTED_CONWAY_COXETER: 14},
        4: {FriezeClass.CONWAY_COXETER: 42},
    }
    for n, want in expected.items():
        counts = count_by_class(enumerate_friezes(SearchConfig(None, n)))
        assert {c: k for c, k in counts.items() if k} == want


def test_output_is_canonical_and_valid():
    res = enumerate_friezes(SearchConfig(field(-7), 2, 9))
    assert validate_census(res)
    again = enumerate_friezes(SearchConfig(field(-7), 2, 9, workers=3))
    assert census_to_json(res) == census_to_json(again)


def test_subring_reports():
    plain = [enumerate_friezes(SearchConfig(field(-10), n, 25)) for n in (1, 2)]
    assert frieze_subring_report(plain).is_integers
    assert str(frieze_subring_report(plain)) == "Z"
    rich = [enumerate_friezes(SearchConfig(field(-2), n, 25)) for n in (1, 2)]
    rep = frieze_subring_report(rich)
    assert rep.is_maximal_order and str(rep) == "O_-2"
    assert rep.contains(field(-2).omega().to_rat())
    assert SubringReport(field(-3), 2).contains(QuadInt(1, 2, field(-3)).to_rat())
    assert not SubringReport(field(-3), 2).contains(field(-3).omega().to_rat())


def test_completeness_notes():
    assert not enumerate_friezes(SearchConfig(field(-6), 2, 4)).complete
    assert enumerate_friezes(SearchConfig(field(-6), 2, 9)).complete
    assert not enumerate_friezes(SearchConfig(field(-11), 1, 25)).complete


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(None, -1)
    with pytest.raises(ValueError):
        SearchConfig(None, 1, 3)
    with pytest.raises(ValueError):
        SearchConfig(None, 1, workers=0)
    assert SearchConfig(None, 3).quiddity_bound_sq == 16


def test_count_by_class_refuses_other_integral():
    res = enumerate_friezes(SearchConfig(None, 1))
    forged = CensusResult(res.config, res.friezes, (FriezeClass.OTHER_INTEGRAL,) * len(res), True, "")
    with pytest.raises(AssertionError):
        count_by_class(forged)
