import pytest
from hypothesis import given, strategies as st

from gen import ordinals
from oracles import from_vec, to_vec, vec_add, vec_less
from ordsynth.ordinals import (
    OMEGA,
    OMEGA_OMEGA,
    ONE,
    ZERO,
    Ordinal,
    OrdinalError,
    add,
    compare,
    format_ordinal,
    is_limit,
    is_successor,
    nat_scale,
    natural,
    omega_power,
    omega_times,
    parse_bound,
    parse_ordinal,
    subtract,
)

W = parse_ordinal


def test_compare_examples():
    assert compare(ZERO, ZERO) == 0
    assert compare(W("w^2*1"), W("w*5+3")) == 1
    assert compare(W("w*2+1"), W("w*2+2")) == -1


def test_add_examples():
    assert add(OMEGA, omega_power(2)) == omega_power(2)
    assert add(natural(2), OMEGA) == OMEGA
    assert add(W("w^2+w*3"), W("w*2+5")) == W("w^2+w*5+5")
    a = W("w^3*2+7")
    assert add(a, ZERO) == a and add(ZERO, a) == a


def test_scale_and_powers():
    assert omega_power(0) == ONE
    assert nat_scale(OMEGA, 3) == W("w*3")
    assert nat_scale(W("w+1"), 2) == W("w*2+1")
    assert nat_scale(W("w+1"), 2) == add(W("w+1"), W("w+1"))
    assert nat_scale(W("w^2"), 0) == ZERO
    assert omega_times(W("w*3+2")) == omega_power(2)
    assert omega_times(natural(4)) == OMEGA


def test_limit_and_successor():
    assert is_limit(OMEGA)
    assert not is_limit(W("w+1"))
    assert is_successor(W("w+1"))
    assert not is_limit(ZERO) and not is_successor(ZERO)


def test_text_round_trip():
    assert W("w^2*1+5") == Ordinal(((2, 1), (0, 5)))
    assert format_ordinal(W("w^2*1+5")) == "w^2*1+5"
    assert format_ordinal(W("w^2*3+w*1+4")) == "w^2*3+w*1+4"
    assert str(parse_bound("w^w")) == "w^w" and parse_bound("w^w") is OMEGA_OMEGA
    assert parse_bound("w*2").value == W("w*2")


@pytest.mark.parametrize("text", ["", "w^", "x", "w+w^2", "3+w", "w^2*a", "-1"])
def test_parse_errors(text):
    with pytest.raises(OrdinalError):
        parse_ordinal(text)


def test_constructor_rejects_non_canonical():
    with pytest.raises(OrdinalError):
        Ordinal(((1, 1), (2, 1)))
    with pytest.raises(OrdinalError):
        Ordinal(((1, 0),))


@given(ordinals())
def test_format_parse_round_trip(a):
    assert parse_ordinal(format_ordinal(a)) == a


@given(ordinals(), ordinals())
def test_add_matches_vector_oracle(a, b):
    assert to_vec(add(a, b)) == vec_add(to_vec(a), to_vec(b))
    assert from_vec(to_vec(a)) == a


@given(ordinals(), ordinals())
def test_compare_matches_vector_oracle(a, b):
    expected = -1 if vec_less(to_vec(a), to_vec(b)) else (1 if vec_less(to_vec(b), to_vec(a)) else 0)
    assert compare(a, b) == expected


@given(ordinals(), ordinals(), ordinals())
def test_add_associative(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))


@given(ordinals(), ordinals(), ordinals())
def test_add_strictly_monotone_on_the_right(a, b, c):
    lo, hi = sorted([b, c])
    if lo < hi:
        assert add(a, lo) < add(a, hi)


@given(ordinals(), ordinals())
def test_left_absorption_and_growth(a, b):
    if b.leading_exponent > a.leading_exponent:
        assert add(a, b) == b
    assert a <= add(a, b)
    assert b <= add(a, b)


@given(ordinals(), ordinals())
def test_left_subtraction_inverts_add(a, b):
    assert subtract(a, add(a, b)) == b


@given(ordinals(), st.integers(0, 4))
def test_nat_scale_is_repeated_add(a, n):
    total = ZERO
    for _ in range(n):
        total = add(total, a)
    assert nat_scale(a, n) == total
