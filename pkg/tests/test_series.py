import json
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import enumerate_partitions, expand_product, geometric
from rwhopf.series import (
    BiSeries,
    TruncSeries,
    inverse,
    mul,
    partitions,
    plus_factor_exponents,
    product_pow,
)


def S(coeffs, n):
    return TruncSeries.from_coeffs(coeffs, n)


@pytest.mark.parametrize("n, expected", [(0, 1), (4, 5), (10, 42)])
def test_partitions_small(n, expected):
    assert partitions(n) == expected
    assert len(enumerate_partitions(n)) == expected


def test_partitions_match_enumeration():
    for n in range(26):
        assert partitions(n) == len(enumerate_partitions(n))


def test_partitions_negative_is_zero():
    assert partitions(-1) == 0
    assert partitions(-7) == 0


def test_partitions_large_is_exact():
    # known value, well past 64-bit range
    assert partitions(500) == 2300165032574323995027
    assert partitions(1000) == 24061467864032622473692149727991


def test_mul_examples():
    assert mul(S([1, 1], 3), S([1, -1], 3)) == S([1, 0, -1, 0], 3)
    assert mul(S([1, 1], 3), TruncSeries.one(3)) == S([1, 1], 3)
    assert mul(S([1, 1, 1, 1], 4), S([1, 0, 0, 2], 4)) == S([1, 1, 1, 3, 2], 4)


def test_mul_truncation_mismatch():
    with pytest.raises(ValueError):
        mul(TruncSeries.one(3), TruncSeries.one(4))


def test_inverse_examples():
    assert inverse(S([1, 1], 3)) == S([1, -1, 1, -1], 3)
    assert inverse(TruncSeries.one(5)) == TruncSeries.one(5)
    assert inverse(S([1, -1], 4)) == S([1, 1, 1, 1, 1], 4)
    assert inverse(S([-1, 1], 2)) == S([-1, -1, -1], 2)


def test_inverse_needs_unit():
    with pytest.raises(ValueError):
        inverse(S([2, 1], 3))
    with pytest.raises(ValueError):
        inverse(S([0, 1], 3))


def test_product_pow_examples():
    n = 6
    euler = product_pow([(TruncSeries.binomial(m, -1, n), -1) for m in range(1, n + 1)])
    assert list(euler.coeffs) == [1, 1, 2, 3, 5, 7, 11]
    assert product_pow([], 4) == TruncSeries.one(4)
    assert product_pow([(S([1, 1], 2), 2)]) == S([1, 2, 1], 2)


def test_product_pow_empty_needs_trunc():
    with pytest.raises(ValueError):
        product_pow([])


def test_euler_product_is_partitions_to_30():
    n = 30
    euler = product_pow([(TruncSeries.binomial(m, -1, n), -1) for m in range(1, n + 1)])
    assert list(euler.coeffs) == [len(enumerate_partitions(d)) for d in range(n + 1)]
    assert list(euler.coeffs) == expand_product([geometric(m, n) for m in range(1, n + 1)], n)


def test_json_roundtrip():
    s = S([1, -3, 0, 12345678901234567890], 3)
    data = json.loads(json.dumps(s.to_json()))
    assert data == {"trunc": 3, "coeffs": [1, -3, 0, 12345678901234567890]}
    assert TruncSeries.from_json(data) == s


def test_str():
    assert str(S([1, 1, 2, 4], 3)) == "1 + a + 2*a^2 + 4*a^3 + O(a^4)"
    assert str(TruncSeries.zero(2)) == "0 + O(a^3)"


def test_bad_construction():
    with pytest.raises(ValueError):
        TruncSeries(2, (1, 2))


def test_substitute_power():
    f = S([1, 2, 3], 2)
    assert f.substitute_power(2, 5) == S([1, 0, 2, 0, 3, 0], 5)
    with pytest.raises(ValueError):
        f.substitute_power(2, 6)


def test_plus_factor_exponents_recovers_product():
    n = 12
    exps = [0, 2, 0, 1, 3, 0, 0, 0, 0, 0, 0, 1]
    f = product_pow([(TruncSeries.binomial(j, 1, n), c) for j, c in enumerate(exps, 1) if c])
    assert plus_factor_exponents(f) == exps


def test_biseries_exterior_and_total():
    b = BiSeries.exterior_power(2, 3, 4, 8)
    assert [b[(s, 2 * s)] for s in range(4)] == [comb(3, s) for s in range(4)]
    assert b.total_degree(9) == S([1, 0, 0, 3, 0, 0, 3, 0, 0, 1], 9)
    torus = BiSeries.exterior_power(0, 2, 3, 3)
    assert (torus[(1, 0)], torus[(2, 0)], torus[(3, 0)]) == (2, 1, 0)


def test_biseries_product_is_convolution():
    x = BiSeries.exterior_power(1, 1, 3, 4)
    y = BiSeries.exterior_power(1, 1, 3, 4)
    assert x * y == BiSeries.exterior_power(1, 2, 3, 4)


# ---------------------------------------------------------------------------
# properties

coeff = st.integers(min_value=-50, max_value=50)


@st.composite
def series(draw, n=None, unit=False):
    n = draw(st.integers(0, 12)) if n is None else n
    cs = draw(st.lists(coeff, min_size=n + 1, max_size=n + 1))
    if unit:
        cs[0] = draw(st.sampled_from([1, -1]))
    return S(cs, n)


@st.composite
def same_trunc(draw, k, unit=False):
    n = draw(st.integers(0, 12))
    return [draw(series(n, unit)) for _ in range(k)]


@given(series(unit=True))
def test_inverse_property(a):
    assert mul(a, inverse(a)) == TruncSeries.one(a.trunc)


@given(same_trunc(2))
def test_mul_commutative(ab):
    a, b = ab
    assert mul(a, b) == mul(b, a)


@given(same_trunc(3))
def test_mul_associative(abc):
    a, b, c = abc
    assert mul(mul(a, b), c) == mul(a, mul(b, c))


@given(same_trunc(2), st.integers(0, 12))
def test_truncation_consistency(ab, lower):
    a, b = ab
    m = min(lower, a.trunc)
    assert mul(a, b).truncate(m) == mul(a.truncate(m), b.truncate(m))


@settings(max_examples=50)
@given(series(unit=True), st.integers(-4, 4), st.integers(-4, 4))
def test_pow_adds_exponents(a, i, j):
    assert mul(a.pow(i), a.pow(j)) == a.pow(i + j)


@given(st.integers(1, 15))
def test_euler_product_truncation(n):
    euler = product_pow([(TruncSeries.binomial(m, -1, n), -1) for m in range(1, n + 1)])
    assert all(euler[d] == partitions(d) for d in range(n + 1))
