import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from findim.exactla import (
    Subspace,
    coords_in,
    det_int,
    int_rank,
    inverse_ff,
    matmul,
    nullspace,
    rank_ff,
    rref,
    smith_normal_form,
    solve_ff,
)

P = 65521


def _rand(rng, r, c, p=P, density=0.6):
    return rng.integers(0, p, size=(r, c)) * (rng.random((r, c)) < density)


def test_rref_backends_agree(rng):
    for _ in range(20):
        m = _rand(rng, int(rng.integers(1, 30)), int(rng.integers(1, 30)))
        a, pa = rref(m, P, backend="numpy")
        b, pb = rref(m, P, backend="flint")
        assert np.array_equal(a, b) and pa == pb


def test_rref_small_prime_by_hand():
    r, piv = rref([[2, 4], [1, 2]], 5)
    assert r.tolist() == [[1, 2]] and piv == [0]


def test_nullspace_is_kernel(rng):
    for _ in range(20):
        m = _rand(rng, 7, 11)
        k = nullspace(m, P)
        assert k.shape[0] == 11 - rank_ff(m, P)
        assert not matmul(m, k.T, P).any()


def test_solve_and_inverse(rng):
    a = _rand(rng, 6, 6, density=1.0)
    if rank_ff(a, P) == 6:
        inv = inverse_ff(a, P)
        assert np.array_equal(matmul(a, inv, P), np.eye(6, dtype=np.int64))
    x = rng.integers(0, P, size=6)
    sol = solve_ff(a, (a @ x) % P, P)
    assert np.array_equal((a @ sol.particular) % P, (a @ x) % P)
    assert solve_ff(np.zeros((2, 2), dtype=np.int64), np.array([1, 0]), P) is None


def test_matmul_matches_object_arithmetic(rng):
    a = rng.integers(0, P, size=(40, 50))
    b = rng.integers(0, P, size=(50, 30))
    exact = (a.astype(object).dot(b.astype(object))) % P
    assert np.array_equal(matmul(a, b, P), exact.astype(np.int64))


def test_subspace_ops():
    s = Subspace([[1, 0, 0], [0, 1, 0]], 3, 7)
    t = Subspace([[0, 1, 0], [0, 0, 1]], 3, 7)
    assert (s + t).dim == 3
    assert [1, 1, 0] in s and [0, 0, 1] not in s
    assert coords_in(s.basis, np.array([[3, 4, 0]])).tolist() == [[3, 4]]


def _minors_gcd(m, k):
    rows, cols = len(m), len(m[0])
    g = 0
    for r in itertools.combinations(range(rows), k):
        for c in itertools.combinations(range(cols), k):
            g = math.gcd(g, det_int([[m[i][j] for j in c] for i in r]))
    return g


int_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r))
)


@settings(max_examples=1000, deadline=None)
@given(int_matrices)
def test_snf_unimodular_and_determinantal_divisors(m):
    sf = smith_normal_form(m, verify=True)
    u, v = sf.left, sf.right
    assert abs(det_int(u)) == 1 and abs(det_int(v)) == 1
    prod = np.array(u, dtype=object).dot(np.array(m, dtype=object)).dot(np.array(v, dtype=object))
    for i in range(len(m)):
        for j in range(len(m[0])):
            want = sf.factors[i] if i == j and i < len(sf.factors) else 0
            assert prod[i][j] == want
    nz = [d for d in sf.factors if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    # d_1 ... d_k equals the gcd of the k x k minors
    running = 1
    for k, d in enumerate(sf.factors, start=1):
        running *= d
        assert abs(running) == _minors_gcd(m, k)


def test_int_rank_against_float_rank(rng):
    for _ in range(30):
        m = rng.integers(-5, 6, size=(4, 5))
        assert int_rank(m.tolist()) == np.linalg.matrix_rank(m.astype(float))


def test_snf_known_case():
    # diag(2, 6) hidden behind unimodular changes
    sf = smith_normal_form([[2, 4], [6, 6]])
    assert sf.factors == (2, 6)


@pytest.mark.parametrize("n", [0, 1])
def test_det_small(n):
    assert det_int([[1]] if n else [[0]]) == n
