import math

import pytest

from su3fr import catalog as C
from su3fr import engine as En
from su3fr.cyclo import rational
from su3fr.mat3 import Mat3, element_order, is_special_unitary

N = 72
I = Mat3.identity(N)


def diag(*xs):
    return Mat3.diag(*(rational(x, N) if isinstance(x, int) else x for x in xs))


def test_fum_relations():
    fum, A, B = C.fum(), C.matrix_A(), C.matrix_B()
    m1 = rational(-1, N)
    assert fum ** 3 == Mat3.antidiag(m1, m1, m1)
    assert fum ** -2 == A ** 3
    assert A @ B == B @ A


def test_h_matrices():
    H = [C.h_matrix(i) for i in range(5)]
    assert H[1] @ H[3] @ H[1] == H[4]
    assert element_order(H[0]) == 2 and element_order(H[3]) == 3
    assert len(set(C.h_group())) == 6


def test_diagonal_series_generators():
    E, F = C.E(), C.F(18, 1, 1)
    assert E @ F @ E.inverse() == C.F_prime()
    w = C.e(1, 3, N)
    assert F ** 6 == Mat3.scalar(w)
    assert F ** 9 == C.W(4)
    assert C.F_prime() == (F @ C.F_second()).inverse()
    assert C.F_second() == (F @ C.F_prime()).inverse()
    assert C.E() @ C.Btilde() == C.fum() ** 3


def test_gtilde_forms():
    G201, G200 = C.Gtilde(2, 0, 1), C.Gtilde(2, 0, 0)
    assert C.Gtilde(2, 1, 1) == C.Btilde()
    assert G201 == Mat3.from_entries([[1, 0, 0], [0, 0, -1], [0, 1, 0]], N)
    assert G200 == G201.inverse()
    assert C.Btilde() @ C.W(4) == G201
    assert (G201 @ C.E()) ** 2 == C.W(4)


@pytest.mark.parametrize("d, r, s", [(2, 0, 1), (2, 1, 1), (6, 1, 1), (6, 4, 1), (9, 3, 1), (4, 1, 1)])
def test_gtilde_square(d, r, s):
    # direct expansion: G^2 = diag(e(2r/d), -e(-r/d), -e(-r/d))
    g = C.Gtilde(d, r, s)
    x = C.e(-r, d, N)
    assert g @ g == Mat3.diag(C.e(2 * r, d, N), -x, -x)
    assert is_special_unitary(g)


def test_klein_groups():
    for V in (C.klein_V(), C.klein_VD()):
        G = En.generate(V)
        assert G.order == 4 and set(G.elements) == set(V)


def test_conjugator_is_orthogonal():
    O = C.conjugator_O()
    assert (O @ O.transpose()).is_identity()


def test_cross_subgroup_order():
    assert En.generate([C.matrix_A(), C.matrix_B()]).order == 27


def test_triple_graph():
    nodes = C.triple_graph(18, (1, 1, -2))
    assert len(nodes) == 108
    assert (3, 0, 15) in nodes and (0, 3, 15) in nodes
    for t in ((3, 0, -3), (0, 3, -3)):
        assert element_order(Mat3.diag(*(C.e(k, 18, N) for k in t))) == 6
    mats = C.triple_graph_closure(18, (1, 1, -2))
    G = En.generate([C.F(18, 1, 1), C.F_prime(), C.F_second()])
    assert set(G.elements) == mats


def test_triple_graph_rejects_bad_start():
    with pytest.raises(ValueError):
        C.triple_graph(18, (1, 1, 1))


def test_conductor_must_contain_the_root():
    with pytest.raises(ValueError):
        C.F(18, 1, 1, n=24)


@pytest.mark.parametrize("name, order", [("c9-1-1", 81), ("c9-3-1", 243), ("c2-0-1", 12)])  # c2-0-1: Klein group extended by a 3-cycle, A4)
def test_c_series_orders(name, order):
    assert En.generate(C.get(name).generators).order == order


def test_d18_order(d18):
    assert d18.order == 648


def test_sigma_d_order_by_exponents():
    # diag(e(2/9), e(2/9), e(2/9 + 1/3)); order = smallest k with every k*exponent integral
    exps = [(2, 9), (2, 9), (5, 9)]
    k = math.lcm(*(den // math.gcd(num, den) for num, den in exps))
    assert element_order(C.sigma_D()) == k == 9


def test_sigma_generators_special_unitary():
    for m in C.sigma216x3().generators:
        assert is_special_unitary(m)


def test_registry():
    names = [s.name for s in C.named_sets()]
    assert names == list(C.STANDARD_NAMES)
    assert C.get("d18-1-1-2-1-1").labels == ("E", "F", "G")
    with pytest.raises(KeyError):
        C.get("fr999")
