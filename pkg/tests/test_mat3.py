import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from su3fr import catalog as C
from su3fr.cyclo import rational, root_of_unity
from su3fr.mat3 import (
    Mat3, OrderCapExceeded, conjugate, element_order, is_cross, is_special_unitary, is_unitary, product,
)

N = 72
I = Mat3.identity(N)

CATALOG = [
    C.braid_g1(), C.braid_g2(), C.fum(), C.matrix_A(), C.matrix_B(),
    *(C.h_matrix(i) for i in range(5)), C.c18(), C.c6(), C.F(18, 1, 1), C.E(), C.Btilde(),
    C.sigma_V(), C.conjugator_O(),
]


def test_trace_and_det():
    assert C.matrix_B().trace() == 0
    one = rational(1, N)
    assert Mat3.antidiag(one, one, one).det() == -1
    assert I.det() == 1 and I.trace() == 3


def test_unitarity_predicates():
    for m in (C.braid_g1(), C.fum(), C.sigma_V()):
        assert is_special_unitary(m)
    two = rational(2, N)
    assert not is_unitary(Mat3.diag(two, two, two))


def test_cross_predicate():
    assert is_cross(C.matrix_A())
    assert not is_cross(C.h_matrix(3))


@pytest.mark.parametrize("m, k", [
    (C.fum(), 6),
    (C.matrix_A(), 9),
    (C.fum() ** 3 @ C.h_matrix(1), 4),
    (C.braid_g1(), 18),
    (C.c18(), 18),
    (C.c6(), 6),
])
def test_element_orders(m, k):
    assert element_order(m) == k


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        element_order(C.braid_g1(), cap=5)


def test_cross_products_stay_cross():
    A, B = C.matrix_A(), C.matrix_B()
    prods = [A ** i @ B ** j for i in range(9) for j in range(3)]
    assert len(set(prods)) == 27
    for x in prods:
        for y in prods:
            z = x @ y
            assert is_cross(z) and z in prods


def test_inverse_paths_agree():
    for m in CATALOG:
        assert m.inverse() == m.dagger() == m.adjugate_inverse()
        assert (m @ m ** -1).is_identity()


def test_json_round_trip():
    for m in CATALOG:
        assert Mat3.from_json(m.to_json(), N) == m


def test_approx_matches_exact_product():
    a, b = C.braid_g1(), C.h_matrix(3)
    assert np.allclose((a @ b).approx(), a.approx() @ b.approx(), atol=1e-12)


def test_product_helper():
    ms = [C.matrix_A(), C.matrix_B(), C.h_matrix(1)]
    assert product(ms) == ms[0] @ ms[1] @ ms[2]
    assert product([]) == I


def test_hash_consistency():
    m1 = C.fum() ** 3
    m2 = Mat3.antidiag(rational(-1, N), rational(-1, N), rational(-1, N))
    assert m1 == m2 and hash(m1) == hash(m2)
    assert len({m1, m2}) == 1


pairs = st.tuples(st.sampled_from(CATALOG), st.sampled_from(CATALOG))


@settings(max_examples=80, deadline=None)
@given(pairs)
def test_products_of_catalog_matrices(p):
    x, y = p
    xy = x @ y
    assert is_unitary(xy)
    assert xy.det() == x.det() * y.det()
    assert conjugate(x, y).trace() == y.trace()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CATALOG), st.integers(0, 71))
def test_scaling_by_a_root_keeps_unitarity(m, k):
    z = root_of_unity(N, k)
    assert is_unitary(m.scale(z))
    assert m.scale(z).det() == m.det() * z ** 3
