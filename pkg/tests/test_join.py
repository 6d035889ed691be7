import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import toriccontact as tc
from toriccontact.errors import (
    GuaranteeNotApplicableError,
    InvalidArgumentError,
    InvalidKaehlerClassError,
)

from conftest import rand_characteristic_simplex


def test_join_params_validation():
    with pytest.raises(InvalidArgumentError):
        tc.JoinParams(2, 2)
    with pytest.raises(InvalidArgumentError):
        tc.JoinParams(0, 1)


def test_join_is_smooth():
    assert tc.join_is_smooth(tc.JoinParams(1, 1, 1, 1))
    assert tc.join_is_smooth(tc.JoinParams(1, 2, 1, 3))
    assert not tc.join_is_smooth(tc.JoinParams(2, 3, 1, 3))


@given(st.integers(1, 60), st.integers(1, 60), st.integers(1, 12), st.integers(1, 12))
@settings(max_examples=300)
def test_join_is_smooth_matches_gcd_oracle(l1, l2, u1, u2):
    if math.gcd(l1, l2) != 1:
        return
    params = tc.JoinParams(l1, l2, u1, u2)
    assert tc.join_is_smooth(params) == (math.gcd(l1 * u2, l2 * u1) == 1)


def test_join_generators():
    reeb, quot = tc.join_generators(1, 1)
    assert reeb == (Fraction(1, 2), Fraction(1, 2))
    assert quot == (Fraction(1, 2), Fraction(-1, 2))
    reeb, quot = tc.join_generators(3, 5)
    assert reeb == (Fraction(1, 6), Fraction(1, 10))
    assert quot == (Fraction(1, 6), Fraction(-1, 10))
    # sum/difference identities
    assert tuple(a + b for a, b in zip(reeb, quot)) == (Fraction(1, 3), 0)
    assert tuple(a - b for a, b in zip(reeb, quot)) == (0, Fraction(1, 5))


def test_s1_join_cover():
    assert tc.s1_join_cover(1, 7) == (1, 7)
    assert tc.s1_join_cover(5, 1) == (5, 1)


def test_join_polytope_scaling():
    p = tc.join_polytope(tc.segment(), tc.segment(), 2, 3)
    assert sorted(p.vertices)[0] == (Fraction(0), Fraction(0))
    assert sorted(p.vertices)[-1] == (Fraction(2), Fraction(3))
    assert tc.join_polytope(tc.segment(), tc.segment(), 1, 1) == tc.product(
        tc.segment(), tc.segment()
    )


def test_join_polytope_associativity_random():
    rng = random.Random(5)
    for _ in range(50):
        p1 = rand_characteristic_simplex(rng.randint(1, 2), rng)
        p2 = rand_characteristic_simplex(1, rng)
        p3 = rand_characteristic_simplex(rng.randint(1, 2), rng)
        l2 = rng.randint(1, 4)
        l1 = rng.choice([x for x in range(1, 5) if math.gcd(x, l2) == 1])
        l4 = rng.randint(1, 4)
        l3 = rng.choice([x for x in range(1, 5) if math.gcd(x, l4) == 1])
        if math.gcd(l1 * l3, l2) != 1 or math.gcd(l3, l2 * l4) != 1:
            continue
        left = tc.join_polytope(tc.join_polytope(p1, p2, l1, l2), p3, l3, l2 * l4)
        right = tc.join_polytope(p1, tc.join_polytope(p2, p3, l3, l4), l1 * l3, l2)
        assert left == right


def test_reverse_join_golden():
    sol = tc.reverse_join(tc.ReverseJoinProblem(2, 2, 2, 4, 1))
    assert sol.r == Fraction(1, 5)
    assert (sol.w1, sol.w2) == (3, 2)
    assert (sol.l1, sol.l2) == (1, 1)
    assert not sol.joinable


def test_reverse_join_smooth_example():
    sol = tc.reverse_join(tc.ReverseJoinProblem(1, 1, 1, 1, 2))
    assert sol.r == Fraction(1, 2)
    assert (sol.w1, sol.w2) == (3, 1)
    assert (sol.l1, sol.l2) == (1, 2)
    assert sol.joinable and sol.smooth


def test_reverse_join_degenerate():
    sol = tc.reverse_join(tc.ReverseJoinProblem(0, 3, 5, 2, 7))
    assert sol.degenerate_product
    assert sol.joinable
    assert sol.r is None and sol.w1 is None and sol.l1 is None


def test_reverse_join_invalid_class():
    with pytest.raises(InvalidKaehlerClassError):
        tc.ReverseJoinProblem(-3, 1, 1, 2, 1)  # k1/k2 = 2 <= 3 = -n


@given(st.integers(-50, 50), st.integers(1, 20), st.integers(1, 20),
       st.integers(1, 100), st.integers(1, 100))
@settings(max_examples=500)
def test_reverse_join_identities(n, m1, m2, k1, k2):
    if n == 0 or Fraction(k1, k2) <= -n:
        return
    sol = tc.reverse_join(tc.ReverseJoinProblem(n, m1, m2, k1, k2))
    r, w1, w2, l1, l2 = sol.r, sol.w1, sol.w2, sol.l1, sol.l2
    assert 0 < abs(r) < 1 and (r > 0) == (n > 0)
    assert 2 * k1 * r == n * k2 * (1 - r)
    assert r * (w1 * m2 + w2 * m1) == w1 * m2 - w2 * m1
    assert l2 * n == l1 * (w1 * m2 - w2 * m1)
    assert math.gcd(w1, w2) == 1 and math.gcd(l1, l2) == 1
    assert w1 > 0 and w2 > 0 and l1 > 0 and l2 > 0


def test_harder_reverse_guarantee():
    assert tc.harder_reverse_guarantee(tc.ReverseJoinProblem(1, 2, 3, 5, 4))
    sol = tc.reverse_join(tc.ReverseJoinProblem(3, 1, 1, 7, 2))
    assert sol.joinable and sol.smooth
    with pytest.raises(GuaranteeNotApplicableError):
        tc.harder_reverse_guarantee(tc.ReverseJoinProblem(2, 2, 2, 4, 1))
    assert tc.harder_reverse_guarantee(tc.ReverseJoinProblem(0, 2, 2, 4, 1))


@given(st.integers(-40, 40).filter(lambda n: n != 0),
       st.integers(1, 30), st.integers(1, 30))
@settings(max_examples=500)
def test_easy_reverse_identity(n, v1, v2):
    g = math.gcd(v1, v2)
    v1, v2 = v1 // g, v2 // g
    w1, w2, l1, l2 = tc.easy_reverse(n, v1, v2)
    assert l1 == abs(n) and l2 == 1
    assert l1 * (w1 * v2 - w2 * v1) == n
    assert w1 > 0 and w2 > 0 and math.gcd(w1, w2) == 1


def test_easy_reverse_examples():
    assert tc.easy_reverse(3, 2, 3) == (1, 1, 3, 1)
    assert tc.easy_reverse(-2, 1, 3) == (1, 4, 2, 1)
    w1, w2, l1, l2 = tc.easy_reverse(1, 1, 1)
    assert w1 - w2 == 1 and (l1, l2) == (1, 1)
