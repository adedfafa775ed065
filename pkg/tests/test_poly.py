import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zdense.errors import NotSquarefree
from zdense.poly import (
    derivative,
    discriminant,
    evaluate,
    index_may_be_nontrivial,
    is_irreducible,
    is_squarefree,
    mul_mod,
    parse_poly,
    poly_str,
    pow_mod,
    real_root_count,
    resultant,
    sturm_count,
)


def from_factors(factors):
    out = [1]
    for f in factors:
        out = [sum(out[i] * f[k - i] for i in range(len(out)) if 0 <= k - i < len(f)) for k in range(len(out) + len(f) - 1)]
    return out


def test_parse_and_print():
    assert parse_poly("x^3-x-1") == [-1, -1, 0, 1]
    assert parse_poly("x**2 - 2") == [-2, 0, 1]
    assert poly_str([-1, -1, 0, 1]) == "x^3 - x - 1"
    with pytest.raises(ValueError):
        parse_poly("x^2 - 1/2")


def test_small_helpers():
    assert evaluate([-2, 0, 1], 3) == 7
    assert derivative([-1, -1, 0, 1]) == [-1, 0, 3]
    assert discriminant([-1, -1, 0, 1]) == -23
    assert discriminant([1, -3, 0, 1]) == 81
    assert is_irreducible([-2, 0, 1]) and not is_irreducible([-1, 0, 1])
    assert not is_squarefree([1, -2, 1])
    with pytest.raises(NotSquarefree):
        real_root_count([1, -2, 1])


def test_index_check():
    assert index_may_be_nontrivial([-8, 0, 1]) == [2]
    assert index_may_be_nontrivial([-5, 0, 1]) == [2]
    assert index_may_be_nontrivial([-2, 0, 1]) == []
    assert index_may_be_nontrivial([-1, -1, 0, 1]) == []


roots_st = st.lists(st.integers(-6, 6), max_size=4, unique=True)
quads_st = st.lists(st.integers(1, 5), max_size=2, unique=True)


@settings(max_examples=200, deadline=None)
@given(roots_st, quads_st, st.integers(-7, 7), st.integers(0, 7))
def test_sturm_counts_known_roots(roots, quads, lo, width):
    factors = [[-r, 1] for r in roots] + [[c, 0, 1] for c in quads]
    f = from_factors(factors)
    if len(f) < 2:
        return
    assert real_root_count(f) == len(roots)
    hi = lo + width
    # roots in (lo, hi], lo and hi themselves are never irrational roots here
    assert sturm_count(f, lo, hi) == sum(1 for r in roots if lo < r <= hi)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4), st.lists(st.integers(-5, 5), min_size=1, max_size=5))
def test_resultant_product_formula(roots, g):
    f = from_factors([[-r, 1] for r in roots])
    expected = 1
    for r in roots:
        expected *= evaluate(g, r)
    if all(c == 0 for c in g):
        expected = 0
    assert resultant(f, g) == Fraction(expected)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=2, max_size=4))
def test_discriminant_of_split_monic(roots):
    f = from_factors([[-r, 1] for r in roots])
    expected = 1
    for a, b in itertools.combinations(roots, 2):
        expected *= (a - b) ** 2
    assert discriminant(f) == expected


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.integers(0, 6))
def test_mul_pow_mod_match_roots(a, b, e):
    f = [-1, -1, 0, 1]
    roots = np.roots(f[::-1])
    ab = mul_mod(a, b, f)
    ae = pow_mod(a, e, f)
    for r in roots:
        va, vb = np.polyval(a[::-1], r), np.polyval(b[::-1], r)
        assert abs(np.polyval(ab[::-1], r) - va * vb) < 1e-9 * max(1, abs(va * vb))
        assert abs(np.polyval(ae[::-1], r) - va**e) < 1e-9 * max(1, abs(va) ** e)
