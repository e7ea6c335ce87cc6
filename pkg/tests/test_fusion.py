import itertools
import math

import numpy as np
import pytest

from su3fr import catalog as C
from su3fr import fusion as Fu
from su3fr.cyclo import rational
from su3fr.mat3 import Mat3

K = 4
LABELS = range(K + 1)


# ---- independent numeric oracles ----

def q(n):
    """Positive quantum integer sin(n pi / 6) / sin(pi / 6) at level 4."""
    return math.sin(n * math.pi / (K + 2)) / math.sin(math.pi / (K + 2))


def qf(n):
    return math.prod(q(j) for j in range(1, n + 1))


def verlinde(a, b, c):
    S = np.array([[math.sqrt(2 / (K + 2)) * math.sin(math.pi * (x + 1) * (y + 1) / (K + 2))
                   for y in LABELS] for x in LABELS])
    return sum(S[a, x] * S[b, x] * S[c, x] / S[0, x] for x in LABELS)


def _delta(t):
    """Triangle coefficient for a triad given in twice-spin units."""
    x, y, z = t
    h = (x + y + z) // 2
    return math.sqrt(qf(h - z) * qf(h - y) * qf(h - x) / qf(h + 1))


def racah(*labels):
    """Quantum Racah-Wigner 6j {a b c; d e f} in spins, fed twice the spins.

    Triads (a b c), (a e f), (d b f), (d e c).  All sums below are integers
    for admissible input, so they are kept as ints.
    """
    a, b, c, d, e, f = labels
    tri = [(a, b, c), (a, e, f), (d, b, f), (d, e, c)]
    alpha = [sum(t) // 2 for t in tri]
    beta = [(a + b + d + e) // 2, (a + c + d + f) // 2, (b + c + e + f) // 2]
    pref = math.prod(_delta(t) for t in tri)
    total = 0.0
    for z in range(max(alpha), min(beta) + 1):
        den = math.prod(qf(z - al) for al in alpha) * math.prod(qf(be - z) for be in beta)
        total += (-1) ** z * qf(z + 1) / den
    return pref * total


def sign_delta(a):
    # loop value with A = zeta_72^21: (-1)^a sin(7 pi (a+1) / 6) / sin(7 pi / 6)
    return (-1) ** a * math.sin(7 * math.pi * (a + 1) / 6) / math.sin(7 * math.pi / 6)


ALL6 = [t for t in itertools.product(LABELS, repeat=6) if Fu.six_j_admissible(*t)]


# ---- admissibility and loop values ----

def test_admissibility_matches_verlinde():
    for a, b, c in itertools.product(LABELS, repeat=3):
        assert Fu.is_admissible(a, b, c) == (round(verlinde(a, b, c)) == 1)
        assert round(verlinde(a, b, c)) in (0, 1)


def test_out_of_range_labels():
    assert not Fu.is_admissible(5, 1, 4)
    with pytest.raises(ValueError):
        Fu.theta(1, 1, 1)
    with pytest.raises(ValueError):
        Fu.qdim(5)


def test_quantum_dimensions():
    for a in LABELS:
        assert abs(Fu.qdim(a).approx() - sign_delta(a)) < 1e-12
        assert abs(Fu.qdim(a).approx() - q(a + 1)) < 1e-12
    assert Fu.qdim(1) == Fu.SurdNum.sqrt(3) and Fu.qdim(2) == 2 and Fu.qdim(4) == 1


def test_theta_unitary_values():
    for a in LABELS:
        assert Fu.theta_u(0, a, a) == Fu.qdim(a)
    assert Fu.theta_u(2, 2, 2).square() == 8


def test_tet_with_a_trivial_edge_is_theta():
    for G, D, E in itertools.product(LABELS, repeat=3):
        if Fu.is_admissible(G, D, E):
            assert Fu.tet(G, G, E, D, D, 0) == Fu.theta(G, D, E)


def _tet_symmetries():
    faces = {frozenset(f) for f in ((0, 4, 2), (1, 3, 2), (0, 1, 5), (3, 4, 5))}
    out = []
    for perm in itertools.permutations(range(6)):
        if {frozenset(perm[i] for i in f) for f in faces} == faces:
            out.append(perm)
    return out


def test_tet_symmetry():
    perms = _tet_symmetries()
    assert len(perms) == 24
    for t in ALL6:
        v = Fu.tet_exact(*t)
        for p in perms:
            moved = [0] * 6
            for i, j in enumerate(p):
                moved[j] = t[i]
            assert Fu.tet_exact(*moved) == v


def test_six_j_matches_racah_oracle():
    for G, B, E, C, D, F in ALL6:
        want = math.sqrt(q(E + 1) * q(F + 1)) * abs(racah(D, G, E, B, C, F))
        assert abs(abs(Fu.six_j_unitary(G, B, E, C, D, F).approx()) - want) < 1e-9


def test_all_twos_tetrahedron_vanishes():
    assert abs(racah(2, 2, 2, 2, 2, 2)) < 1e-12
    assert Fu.tet(2, 2, 2, 2, 2, 2).is_zero()


def test_six_j_with_trivial_label():
    for G, B, F in itertools.product(LABELS, repeat=3):
        if Fu.is_admissible(G, B, F):
            s = Fu.six_j_unitary(G, B, 0, B, G, F)
            assert s.square() == Fu.qdim_exact(F) / (Fu.qdim_exact(G) * Fu.qdim_exact(B))
            assert s.approx().real > 0


def test_square_roots_take_positive_branch():
    for a in LABELS:
        assert Fu.SurdNum.sqrt(Fu.qdim_exact(a)).approx().real > 0
    for a, b, c in itertools.product(LABELS, repeat=3):
        if Fu.is_admissible(a, b, c):
            assert Fu.theta_u(a, b, c).approx().real > 0


def test_surd_arithmetic():
    r3 = Fu.SurdNum.sqrt(3)
    assert r3 * r3 == 3
    assert (r3 + r3) == 2 * r3
    assert r3 / r3 == 1
    assert r3 != -r3
    with pytest.raises(ValueError):
        Fu.SurdNum(1, -2)


# ---- F-moves and the fusion matrix ----

def test_external_configurations_count():
    assert len(Fu.external_configurations()) == 225


def test_all_f_moves_orthogonal():
    bad = [cfg for cfg in Fu.external_configurations() if not Fu.f_matrix_is_orthogonal(*cfg)]
    assert bad == []


def test_fusion_steps():
    for k in (0, 2, 4):
        assert Fu.fusion_coefficient(k) == 1
    steps = Fu.fusion_steps(2)
    assert steps["outer_left"] == -1


def test_derived_matrix():
    one = rational(1, 72)
    M = Fu.derive_fusion_matrix()
    assert M == Mat3.antidiag(one, one, one)
    assert (M @ M).is_identity()


def test_normalization():
    M = Fu.derive_fusion_matrix()
    S = Fu.su3_normalize(M)
    assert S == C.fum() and S.det() == 1
    with pytest.raises(ValueError):
        Fu.su3_normalize(Mat3.identity(72))


def test_level_variable_needs_conductor():
    with pytest.raises(ValueError):
        Fu.kl_variable(36)
