import pytest
from hypothesis import given, settings, strategies as st

from adschur.laurent import (
    LaurentPoly, ONE, ZERO, ExactDivisionError,
    bar, exact_div, parse, qbinom, qint, v_power,
)


small_polys = st.dictionaries(
    st.integers(min_value=-8, max_value=8),
    st.integers(min_value=-20, max_value=20),
    max_size=6,
).map(LaurentPoly)


def test_qint_examples():
    assert qint(0) == ZERO
    assert qint(2) == parse("1 + v^2")
    assert qint(-1) == parse("-v^-2")
    assert qint(1) == ONE
    assert qint(3) == parse("1 + v^2 + v^4")
    # negative values: [a] = (v^{2a}-1)/(v^2-1) exactly
    for a in range(-5, 6):
        assert qint(a) * (v_power(2) - 1) == v_power(2 * a) - 1


def test_qint_positive_shape():
    for a in range(1, 8):
        p = qint(a)
        assert p.has_nonneg_coeffs()
        assert len(list(p.items())) == a


def test_qbinom_examples():
    assert qbinom(5, 0) == ONE
    assert qbinom(3, 1) == qint(3)
    assert qbinom(2, 2) == ONE
    with pytest.raises(ValueError):
        qbinom(2, -1)


def test_qbinom_product_identity():
    # [a, b] * prod_{i<=b} [i] = prod_{i<=b} [a-i+1]
    for a in range(-3, 7):
        for b in range(0, 5):
            lhs = qbinom(a, b)
            rhs = ONE
            for i in range(1, b + 1):
                lhs = lhs * qint(i)
                rhs = rhs * qint(a - i + 1)
            assert lhs == rhs


def test_bar_examples():
    assert bar(parse("1+v^2")) == parse("1+v^-2")
    assert bar(ZERO) == ZERO
    assert bar(qint(2)) * v_power(2) == qint(2)


def test_exact_div_examples():
    assert exact_div(parse("v^2-1"), parse("v-1")) == parse("v+1")
    x = parse("3*v^-2 + 1 + 2*v^4")
    assert exact_div(qint(2) * x, qint(2)) == x
    with pytest.raises(ExactDivisionError):
        exact_div(parse("v+1"), parse("v-1"))
    with pytest.raises(ZeroDivisionError):
        exact_div(ONE, ZERO)


@given(small_polys, small_polys, small_polys)
@settings(max_examples=150)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + ZERO == p
    assert p * ONE == p
    assert p - p == ZERO


@given(small_polys, small_polys)
@settings(max_examples=150)
def test_bar_is_ring_involution(p, q):
    assert bar(bar(p)) == p
    assert bar(p * q) == bar(p) * bar(q)
    assert bar(p + q) == bar(p) + bar(q)


@given(small_polys)
@settings(max_examples=100)
def test_serialization_roundtrip(p):
    assert LaurentPoly.from_json(p.to_json()) == p
    assert parse(str(p)) == p


def test_json_sorted_ascending():
    p = parse("3*v^-2 + 1 + 2*v^4")
    assert p.to_json() == [[-2, 3], [0, 1], [4, 2]]


def test_specialize_v2():
    assert qint(2).specialize_v2(3) == 4
    with pytest.raises(ValueError):
        v_power(1).specialize_v2(3)


def test_shift_and_pow():
    p = parse("1 + v^2")
    assert p.shift(-1) == parse("v^-1 + v")
    assert p ** 2 == p * p
    assert p ** 0 == ONE
