import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zdense.laurent_witt.gallery import (
    EX3_TEMPLATES,
    ex1_frobenius_coset_scan,
    ex3_check_candidate,
    ex3_equations,
    ex3_scan,
    ex4_element,
    ex4_phi,
    ex4_ppower_scan,
)
from zdense.laurent_witt.laurent import TruncatedLaurent


def L(p, terms, N):
    return TruncatedLaurent.from_dict(p, terms, N)


# ---------------------------------------------------------------- ex1


def test_ex1_small():
    r = ex1_frobenius_coset_scan(2, 4)
    assert r["free_indices"] == [2] and r["elements"] == 2 and r["pairs_checked"] == 1
    assert ex1_frobenius_coset_scan(3, 12, max_elements=4)["elements"] == 4
    with pytest.raises(ValueError):
        ex1_frobenius_coset_scan(3, 5)


@pytest.mark.parametrize("p,N", [(2, 6), (3, 9)])
def test_ex1_against_pth_power_enumeration(p, N):
    """No a = b c^p modulo t^N for any unit c, by enumerating c^p directly."""
    ks = [k for k in range(1, N) if k * p + 1 < N]
    elems = []
    for combo in itertools.product(range(p), repeat=len(ks)):
        terms = {0: 1, 1: 1}
        terms.update({k * p: a for k, a in zip(ks, combo) if a})
        elems.append(L(p, terms, N))
    top = (N - 1) // p
    powers = []
    for coeffs in itertools.product(range(p), repeat=top + 1):
        if coeffs[0]:
            c = L(p, dict(enumerate(coeffs)), N)
            powers.append(c**p)
    for a, b in itertools.combinations(elems, 2):
        assert not any((b * cp).equals(a) for cp in powers)
    assert ex1_frobenius_coset_scan(p, N)["verified"]


# ---------------------------------------------------------------- ex3


def test_ex3_templates_and_rendering():
    assert EX3_TEMPLATES == ("a_k^p=a_{kp}", "-a_{kp+1}=b_k^p", "a_k=0 for k mod p not in {0,1}")
    eqs = ex3_equations(2, 4)
    rendered = [e.render() for e in eqs]
    assert len(eqs) == 2 * 4 + 4
    assert "a_{3}^2=a_{6}" not in rendered  # exponent 6 is beyond the horizon
    assert "a_{1}^2=a_{2}" in rendered and "-a_{3}=b_{1}^2" in rendered
    assert "a_{-1}=0" in [e.render() for e in ex3_equations(3, 3)]


def _member_by_series(p, N, a, b):
    x = L(p, a, N)
    y = L(p, b, N)
    # in characteristic p the p-th power is exact: x^p = sum a_k t^(kp), known modulo t^(pN)
    lhs = x.frobenius() - x
    rhs = y.frobenius().shift(1)
    return (lhs - rhs).is_zero


@pytest.mark.parametrize("p,N", [(2, 2), (2, 3), (3, 2)])
def test_ex3_against_brute_force(p, N):
    window = range(-N, N)
    members = 0
    for vals in itertools.product(range(p), repeat=2 * len(window)):
        a = {k: v for k, v in zip(window, vals[: len(window)]) if v}
        b = {k: v for k, v in zip(window, vals[len(window):]) if v}
        expected = _member_by_series(p, N, a, b)
        assert ex3_check_candidate(p, N, a, b)["member"] == expected, (a, b)
        members += expected
        if expected:
            assert all(k >= 0 for k in a) and all(k >= 0 for k in b)
    assert ex3_scan(p, N)["solution_count"] == members


def test_ex3_candidates():
    bad = ex3_check_candidate(2, 4, {-2: 1}, {})
    assert not bad["member"] and bad["violated"] == "a_{-2}^2=a_{-4}"
    assert ex3_check_candidate(2, 4, {}, {})["member"]
    assert ex3_check_candidate(2, 4, {0: 1}, {})["member"]
    assert not ex3_check_candidate(3, 3, {2: 1}, {})["member"]
    with pytest.raises(ValueError):
        ex3_check_candidate(2, 4, {4: 1}, {})


@pytest.mark.parametrize("p", [2, 3, 5])
def test_ex3_scan_small_horizons(p):
    r = ex3_scan(p, 3 * p)
    assert r["verified"] and r["min_valuation"]["x"] == 0


# ---------------------------------------------------------------- ex4


def test_ex4_example():
    p, N = 2, 8
    x = L(p, {1: 1}, N)
    y = ex4_element(x)
    assert y.equals(L(p, {0: 1, 1: 1}, N))
    gx, g0, g1 = ex4_phi(x, y, L(p, {3: 1}, N))
    assert gx.is_zero and g0.is_zero and g1.equals(y**p)
    z = L(p, {-1: 1}, N)
    zero = TruncatedLaurent.zero(p, N)
    assert all(c.is_zero for c in ex4_phi(zero, zero, z))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(-4, -1), st.integers(1, 4))
def test_ex4_image_valuation_for_negative_x(p, v, c):
    x = L(p, {v: c % p or 1, v + 1: 1}, 10)
    y = ex4_element(x)
    _, _, image = ex4_phi(x, y, TruncatedLaurent.zero(p, 10))
    assert image.valuation() == p * (p * v - 1)


def test_ex4_scan():
    r = ex4_ppower_scan(3, 4, sample_size=50, seed=1)
    assert r["verified"] and r["negative_x_samples"] > 0
    assert r["image_valuation_min"] < 0 and not r["image_bounded_on_sample"]
    assert r == ex4_ppower_scan(3, 4, sample_size=50, seed=1)
