import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from su3fr.cyclo import (
    ConductorMismatch, CycloNum, field, one, rational, root_of_unity, sqrt2, sqrt3, zero,
)

N = 72
PHI = field(N).phi


def elems(max_coeff=6, dens=(1, 2, 3, 6)):
    return st.builds(
        lambda coeffs, den: CycloNum(N, coeffs, den),
        st.lists(st.integers(-max_coeff, max_coeff), min_size=PHI, max_size=PHI),
        st.sampled_from(dens),
    )


def roots():
    return st.integers(0, N - 1).map(lambda k: root_of_unity(N, k))


# ---- field axioms ----

@settings(max_examples=60, deadline=None)
@given(elems(), elems(), elems())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + zero(N) == a and a * one(N) == a
    assert a - a == zero(N)


@settings(max_examples=40, deadline=None)
@given(elems())
def test_multiplicative_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inv()
    else:
        assert a * a.inv() == one(N)
        assert a / a == 1


@settings(max_examples=60, deadline=None)
@given(elems(max_coeff=3), elems(max_coeff=3))
def test_embedding_is_a_homomorphism(a, b):
    assert abs((a * b).approx() - a.approx() * b.approx()) < 1e-9
    assert abs((a + b).approx() - (a.approx() + b.approx())) < 1e-9
    assert abs(a.conj().approx() - a.approx().conjugate()) < 1e-9


@settings(max_examples=60, deadline=None)
@given(roots(), roots())
def test_roots_of_unity_multiply_by_adding_exponents(x, y):
    assert abs(abs((x * y).approx()) - 1) < 1e-12
    assert (x * y) * (x * y).conj() == 1


@settings(max_examples=40, deadline=None)
@given(elems())
def test_json_round_trip(a):
    assert CycloNum.from_json(a.to_json(), N) == a


# ---- concrete values ----

def test_zeta_has_order_72():
    z = root_of_unity(N, 1)
    assert z ** 72 == 1
    assert all(z ** k != 1 for k in range(1, 72))


@pytest.mark.parametrize("p", [2, 3])
def test_prime_roots_sum_to_zero(p):
    zp = root_of_unity(N, N // p)
    assert sum((zp ** j for j in range(p)), zero(N)) == 0


def test_named_values():
    z = root_of_unity(N, 1)
    assert root_of_unity(N, 36) == -1
    assert z ** 24 + z ** 48 == -1
    z8 = root_of_unity(N, 9)
    assert ((z8 + z8.inv()) / 2) ** 2 == Fraction(1, 2)
    assert (z ** 5).inv() == z ** 67
    assert (z ** 7).conj() == z ** 65
    assert abs((z ** 18).approx() - 1j) < 1e-12
    assert sqrt2(N) ** 2 == 2 and sqrt3(N) ** 2 == 3
    assert abs(sqrt3(N).approx() - math.sqrt(3)) < 1e-12


def test_embedding_matches_exp():
    for k in range(N):
        assert abs(root_of_unity(N, k).approx() - cmath.exp(2j * math.pi * k / N)) < 1e-12


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        zero(N).inv()


def test_rational_helpers():
    q = rational(Fraction(3, 4), N)
    assert q.is_rational() and q.to_fraction() == Fraction(3, 4)
    assert not root_of_unity(N, 1).is_rational()


def test_conductors_do_not_mix():
    with pytest.raises(ConductorMismatch):
        root_of_unity(72, 1) + root_of_unity(36, 1)


@pytest.mark.parametrize("bad", [
    "x",
    [[1, 1]] * (PHI - 1),
    [[1, 0]] + [[0, 1]] * (PHI - 1),
    [[1.5, 1]] + [[0, 1]] * (PHI - 1),
    [[True, 1]] + [[0, 1]] * (PHI - 1),
])
def test_from_json_rejects_malformed(bad):
    with pytest.raises(ValueError):
        CycloNum.from_json(bad, N)
