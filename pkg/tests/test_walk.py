import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from qmix.cayley import ConnectionSet, CayleyGraph, hamming_graph, quotient_graph
from qmix.scheme import make_scheme_spec
from qmix.stars import star_adjacency
from qmix.walk import (
    cartesian_product,
    dense_transition,
    is_local_uniform_mixing,
    is_uniform_mixing,
    mullin_entry,
    mullin_entry_exact,
    mullin_flatness,
    scheme_class_verdict,
    scheme_transition_class,
    transition_row,
)
from qmix.walktime import WalkTime
from qmix.zq import Submodule, ZqVector, all_vectors

T9 = WalkTime.rational(1, 9)
PI4 = WalkTime.pi_fraction(1, 4)


def test_row_at_time_zero_is_indicator():
    X = hamming_graph(2, 3)
    row = transition_row(X, WalkTime.rational(0, 1))
    assert row.values[0] == 1 and np.allclose(row.values[1:], 0)


@pytest.mark.parametrize("d", [1, 2])
def test_k3_and_h23_rows_flat(d):
    X = hamming_graph(d, 3)
    row = transition_row(X, T9)
    assert row.exact
    assert np.allclose(np.abs(row.values) ** 2, 1 / X.n)
    for g in range(X.n):
        assert row.cyclo(g).abs2().as_rational() * X.n == 1


def test_dense_examples():
    assert np.allclose(dense_transition(np.zeros((3, 3)), 1.3), np.eye(3))
    U = dense_transition(np.array([[0, 1], [1, 0]]), PI4)
    assert np.allclose(np.abs(U) ** 2, 0.5)
    U = dense_transition(star_adjacency(3), 2 * math.pi / math.sqrt(27))
    assert np.allclose(np.abs(U) ** 2, 0.25)


def test_dense_rejects_bad_input():
    with pytest.raises(ValueError):
        dense_transition(np.array([[0, 1], [0, 0]]), 1.0)
    with pytest.raises(ValueError):
        dense_transition(np.zeros((2, 3)), 1.0)


def test_uniform_mixing_examples():
    v = is_uniform_mixing(hamming_graph(3, 3), T9)
    assert v.flat and v.exact and v.max_deviation == 0.0 and v.method == "character-sum"
    v = is_uniform_mixing(hamming_graph(2, 3), PI4)
    assert not v.flat and v.witness is not None
    assert not is_uniform_mixing(hamming_graph(1, 3), WalkTime.rational(0, 1)).flat


def test_local_mixing_examples():
    for n in (2, 3, 4, 7):
        t = math.atan(math.sqrt(n)) / math.sqrt(n)
        assert is_local_uniform_mixing(star_adjacency(n), t, 0, tol=1e-10).flat
    t = math.atan(2) / 2
    leaf = is_local_uniform_mixing(star_adjacency(4), t, 1)
    assert not leaf.flat
    assert not is_local_uniform_mixing(star_adjacency(3), 0.0, 0).flat


def test_cartesian_examples():
    K2 = np.array([[0, 1], [1, 0]])
    C4 = np.array([[0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 0, 1], [0, 1, 1, 0]])
    assert np.array_equal(cartesian_product(K2, K2), C4)
    claw2 = cartesian_product(star_adjacency(3), star_adjacency(3))
    assert claw2.shape == (16, 16)
    assert is_uniform_mixing(claw2, 2 * math.pi / math.sqrt(27)).flat
    K3 = hamming_graph(1, 3).adjacency()
    assert is_uniform_mixing(cartesian_product(K3, K3), T9).flat


@st.composite
def small_graphs(draw):
    n = draw(st.integers(2, 9))
    bits = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    A = np.zeros((n, n), dtype=int)
    A[np.triu_indices(n, 1)] = bits
    return A + A.T


times = st.floats(-10, 10, allow_nan=False)


@given(small_graphs(), times)
def test_unitarity_and_expm_oracle(A, t):
    U = dense_transition(A, t)
    assert np.allclose(U @ U.conj().T, np.eye(len(A)), atol=1e-9)
    assert np.allclose(U, scipy.linalg.expm(1j * t * A), atol=1e-8)


@given(small_graphs(), times, times)
def test_group_law(A, t1, t2):
    assert np.allclose(dense_transition(A, t1 + t2), dense_transition(A, t1) @ dense_transition(A, t2),
                       atol=1e-8)


@pytest.mark.parametrize("q,d", [(2, 3), (3, 2), (4, 2), (5, 2), (3, 3)])
@pytest.mark.parametrize("t", [T9, PI4, WalkTime.rational(2, 7), WalkTime.real(0.7255)])
def test_character_row_equals_dense_row(q, d, t):
    X = hamming_graph(d, q) if q != 5 else CayleyGraph(ConnectionSet(5, 2, [[1, 0], [4, 0], [1, 1], [4, 4]]))
    row = transition_row(X, t)
    dense = dense_transition(X.adjacency(), t)[0]
    assert np.allclose(row.values, dense, atol=1e-10)


def test_mullin_trivial_module_is_hamming_return_amplitude():
    q, d, t = 3, 4, 0.83
    G = Submodule.zero(q, d)
    expected = (np.exp(-1j * t) / q) ** d * (np.exp(1j * q * t) + q - 1) ** d
    assert np.isclose(mullin_entry(G, ZqVector.zero(q, d), t), expected)


def test_mullin_matches_quotient_row():
    G = Submodule(3, 4, [[1, 1, 1, 1]])
    X = quotient_graph(G)
    row = transition_row(X, T9)
    assert np.isclose(mullin_entry(G, ZqVector.zero(3, 4), T9), row.values[0])
    assert mullin_entry_exact(G, ZqVector.zero(3, 4), T9) == row.cyclo(0)


def test_mullin_row_is_unit_vector():
    G = Submodule(3, 5, [[1, 1, 1, 0, 0], [0, 0, 1, 1, 1]])
    reps = G.transversal()
    total = sum(abs(mullin_entry(G, r, 0.61)) ** 2 for r in reps)
    assert math.isclose(total, 1.0)


@pytest.mark.parametrize("gens,flat", [([[1, 1, 1, 1]], True), ([[1, 1, 1]], False),
                                        ([[1, 1, 1, 0, 0], [0, 0, 1, 1, 1]], True)])
def test_mullin_flatness_against_dense(gens, flat):
    G = Submodule(3, len(gens[0]), gens)
    v = mullin_flatness(G, T9)
    assert v.flat == flat and v.exact and v.method == "closed-form"
    assert is_uniform_mixing(quotient_graph(G).adjacency(), T9).flat == flat


def test_scheme_classes_distance2_h93():
    theta = make_scheme_spec(9, 3, [2]).eigenvalues()
    amps = scheme_transition_class(9, 3, theta, T9)
    assert len(amps) == 10
    assert all(a.abs2().as_rational() * 3 ** 9 == 1 for a in amps.values())
    assert scheme_class_verdict(9, 3, theta, T9).flat


def test_scheme_classes_at_zero():
    theta = make_scheme_spec(4, 3, [1]).eigenvalues()
    amps = scheme_transition_class(4, 3, theta, WalkTime.rational(0, 1))
    assert amps[0].as_rational() == 1
    assert all(amps[w].is_zero() for w in range(1, 5))


def test_scheme_class_matches_character_row():
    spec = make_scheme_spec(4, 3, [1])
    amps = scheme_transition_class(4, 3, spec.eigenvalues(), T9)
    row = transition_row(hamming_graph(4, 3), T9)
    V = all_vectors(3, 4)
    for g in range(len(V)):
        assert row.cyclo(g) == amps[int(np.count_nonzero(V[g]))]


def test_dispatch_scheme_spec():
    v = is_uniform_mixing(make_scheme_spec(9, 3, [5]), T9)
    assert v.flat and v.method == "scheme-class"


def test_cross_check_recorded():
    v = is_uniform_mixing(hamming_graph(3, 2), PI4, cross_check=True)
    assert v.flat and v.cross_check is not None and v.cross_check < 1e-9
