from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import gaussian_by_ratio, partitions
from sep_partitions.errors import (
    CoefficientOverflowError,
    IllegalShiftError,
    OutOfRangeError,
    ShapeMismatchError,
)
from sep_partitions.series import (
    INT_MAX,
    Monomial,
    TruncatedSeries,
    coeff,
    collapse_aux,
    gaussian,
    poch_finite,
    poch_infinite,
    series_add,
    series_from_q,
    series_inv_factor,
    series_inv_poch,
    series_mul,
    series_new,
    series_one,
)

X = Monomial(1, (1, 0))
Z = Monomial(1, (0, 1))
ONE2 = Monomial(1, (0, 0))


def q(coeffs, order):
    return series_from_q(coeffs, order)


# --- construction and addition ------------------------------------------------

def test_zero_series_is_empty():
    s = series_new(10, 2)
    assert s.to_dict() == {} and s.order == 10 and s.arity == 2
    assert series_new(0, 0).is_zero()


def test_zero_plus_one_is_constant():
    assert series_new(5, 1) + series_one(5, 1) == series_one(5, 1)


def test_add_cancels_to_zero():
    s = q([1, 2, 0, -4], 5)
    assert (s + (-s)).is_zero()
    assert series_add(s, series_new(5)) == s


def test_add_simple():
    assert q([1, 1], 5) + q([1, -1], 5) == q([2], 5)


def test_shape_mismatch():
    with pytest.raises(ShapeMismatchError):
        series_one(5) + series_one(6)
    with pytest.raises(ShapeMismatchError):
        series_one(5, 1) * series_one(5, 2)


def test_zero_coefficients_are_pruned():
    s = TruncatedSeries(4, 1, {(1, 2): 0, (2, 0): 3, (9, 0): 7})
    assert s.to_dict() == {(2, 0): 3}


def test_bad_keys_rejected():
    with pytest.raises(ValueError):
        TruncatedSeries(4, 1, {(1,): 1})
    with pytest.raises(ValueError):
        TruncatedSeries(4, 1, {(1, -1): 1})


# --- multiplication ------------------------------------------------------------

def test_mul_identity_and_truncation():
    s = q([3, 0, -1, 2], 6)
    assert s * series_one(6) == s
    assert series_mul(q([1, 1], 1), q([1, 1], 1)) == q([1, 2], 1)


def test_geometric_times_factor():
    geo = series_inv_factor(series_one(5), Monomial(), 1)
    assert geo.q_coefficients() == [1] * 6
    assert geo * q([1, -1], 5) == series_one(5)


def test_aux_exponents_add():
    a = series_one(4, 2).shift(1, X)
    b = series_one(4, 2).shift(2, Z)
    assert (a * b).to_dict() == {(3, 1, 1): 1}


def test_scalar_mul():
    assert (q([1, 2], 3) * 3).q_coefficients() == [3, 6, 0, 0]


def _series(arity):
    key = st.tuples(st.integers(0, 8), *[st.integers(0, 3)] * arity)
    return st.dictionaries(key, st.integers(-50, 50), max_size=12).map(
        lambda d: TruncatedSeries(8, arity, d))


@settings(max_examples=60, deadline=None)
@given(st.data(), st.integers(0, 2))
def test_ring_laws(data, arity):
    a, b, c = (data.draw(_series(arity)) for _ in range(3))
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40, deadline=None)
@given(_series(1), st.integers(1, 4), st.integers(-3, 3))
def test_inv_factor_roundtrip(s, d, c):
    mono = Monomial(c, (1,))
    assert s.inv_factor(mono, d).mul_factor(mono, d) == s
    assert s.mul_factor(mono, d).inv_factor(mono, d) == s


# --- coefficient access ----------------------------------------------------------

def test_coeff_access():
    assert coeff(series_new(5, 2), 3, (1, 1)) == 0
    with pytest.raises(OutOfRangeError):
        coeff(series_one(5), 6)


def test_collapse():
    s = TruncatedSeries(4, 2, {(0, 0, 0): 1, (3, 1, 1): 1})
    assert collapse_aux(s) == q([1, 0, 0, 1], 4)
    plain = q([1, 2, 3], 4)
    assert collapse_aux(plain) == plain


def test_collapse_of_okr_product_at_six():
    num = poch_infinite(Monomial(-1, (1, 1)), 3, 3, 6)
    s = series_inv_poch(num, Z, 1, 1)
    assert collapse_aux(s).coeff(6) == 15


def test_overflow_is_checked():
    big = TruncatedSeries(2, 0, {(0,): INT_MAX})
    with pytest.raises(CoefficientOverflowError):
        big + big
    with pytest.raises(CoefficientOverflowError):
        TruncatedSeries(2, 0, {(0,): INT_MAX + 1})


def test_truncate_and_first_difference():
    a = q([1, 2, 3, 4], 3)
    b = q([1, 2, 5, 4], 3)
    assert a.first_difference(b) == ((2,), 3, 5)
    assert a.first_difference(a) is None
    assert a.truncate(1) == b.truncate(1)


# --- Pochhammer products -------------------------------------------------------

def test_poch_finite_examples():
    assert poch_finite(Monomial(), 1, 1, 0, 5) == series_one(5)
    assert poch_finite(Monomial(), 1, 1, 2, 5) == q([1, -1, -1, 1], 5)
    s = poch_finite(Monomial(-1, (1, 1)), 3, 3, 1, 6)
    assert s.to_dict() == {(0, 0, 0): 1, (3, 1, 1): 1}


def test_poch_infinite_examples():
    inv = series_inv_poch(series_one(5), Monomial(), 1, 1)
    assert inv.q_coefficients() == [1, 1, 2, 3, 5, 7]
    s = poch_infinite(Monomial(-1, (1, 1)), 3, 3, 6)
    assert s.to_dict() == {(0, 0, 0): 1, (3, 1, 1): 1, (6, 1, 1): 1}
    assert poch_infinite(Monomial(), 7, 3, 5) == series_one(5)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_poch_infinite_matches_finite(k):
    N = 15
    for d in range(1, N + 1):
        assert poch_infinite(Monomial(), d, k, N) == poch_finite(Monomial(), d, k, (N - d) // k + 1, N)


def test_poch_infinite_rejects_zero_shift():
    with pytest.raises(IllegalShiftError):
        poch_infinite(Monomial(), 0, 1, 5)
    with pytest.raises(IllegalShiftError):
        series_inv_factor(series_one(5), Monomial(), 0)


def test_geometric_in_z():
    s = series_inv_factor(series_one(3, 1), Monomial(1, (1,)), 1)
    assert s.to_dict() == {(i, i): 1 for i in range(4)}


def test_inverse_pair():
    s = q([2, 0, 5, 1], 6)
    assert series_inv_factor(s.mul_factor(Monomial(), 1), Monomial(), 1) == s


def test_partition_counts_by_length():
    s = series_inv_poch(series_one(12, 1), Monomial(1, (1,)), 1, 1)
    assert s.coeff(4, (2,)) == 2
    for n in range(13):
        for m in range(n + 1):
            expected = sum(1 for p in partitions(n) if len(p) == m)
            assert s.coeff(n, (m,)) == expected


# --- Gaussian polynomials -----------------------------------------------------------

def test_gaussian_examples():
    assert gaussian(5, 0, 2).poly == (1,)
    assert gaussian(2, 1, 4).poly == (1, 0, 0, 0, 1)
    assert gaussian(4, 2, 1).poly == (1, 1, 2, 1, 1)
    assert gaussian(4, 2, 1).poly == gaussian_by_ratio(4, 2)


def test_gaussian_zero_cases():
    assert gaussian(3, 4).is_zero()
    assert gaussian(3, -1).is_zero()
    assert gaussian(-1, -1).is_zero()
    assert gaussian(-2, 0).is_zero()


GRID = [(A, B, k) for k in range(1, 6) for A in range(13) for B in range(A + 1)]


def test_gaussian_matches_ratio_definition():
    for A, B, k in GRID:
        assert gaussian(A, B, k).poly == gaussian_by_ratio(A, B, k), (A, B, k)


def test_gaussian_symmetry():
    for A, B, k in GRID:
        assert gaussian(A, B, k).poly == gaussian(A, A - B, k).poly


def test_gaussian_recurrence():
    for A, B, k in GRID:
        if A == 0 or B == 0:
            continue
        left = gaussian(A - 1, B - 1, k).poly
        right = gaussian(A - 1, B, k).poly
        total = [0] * len(gaussian(A, B, k).poly)
        for i, c in enumerate(left):
            total[i] += c
        for i, c in enumerate(right):
            total[i + k * B] += c
        assert tuple(total) == gaussian(A, B, k).poly


def test_gaussian_degree_nonneg_and_value_at_one():
    for A, B, k in GRID:
        g = gaussian(A, B, k)
        assert g.degree == k * B * (A - B)
        assert all(c >= 0 for c in g.poly)
        assert g.at_one() == comb(A, B)


def test_column_sum_identity():
    for A in range(11):
        for B in range(11):
            lhs = gaussian(A + B + 1, B + 1).as_series(200)
            rhs = series_new(200)
            for s in range(A + 1):
                rhs = rhs + gaussian(B + s, B).as_series(200, shift=s)
            assert lhs == rhs


def test_gaussian_deep_row():
    g = gaussian(450, 2)
    assert g.at_one() == comb(450, 2)


def test_gaussian_as_series_with_monomial():
    s = gaussian(2, 1).as_series(5, 2, Monomial(1, (1, 2)), 3)
    assert s.to_dict() == {(3, 1, 2): 1, (4, 1, 2): 1}
