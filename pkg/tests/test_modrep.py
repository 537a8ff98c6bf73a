import numpy as np
import pytest

from findim.exactla import matmul, nullspace, rank_ff
from findim.modrep import (
    ModHom,
    Module,
    check_module,
    decompose,
    direct_sum,
    hom_dim,
    hom_space,
    injective_envelope,
    injective_module,
    is_indecomposable,
    is_isomorphic,
    is_projective,
    module_from_representation,
    projective_cover,
    projective_module,
    quotient,
    regular_module,
    simple_modules,
    submodule,
)
from findim.sampling import random_module


def brute_hom_dim(m, n):
    """Oracle: solve rho_N(g) H = H rho_M(g) for all basis elements with kron."""
    p = m.p
    dm, dn = m.dim, n.dim
    eqs = []
    for i in range(m.algebra.dim):
        a, b = n.action[i], m.action[i]
        eqs.append((np.kron(a, np.eye(dm, dtype=np.int64)) - np.kron(np.eye(dn, dtype=np.int64), b.T)) % p)
    if not eqs or dm * dn == 0:
        return dm * dn
    return nullspace(np.concatenate(eqs), p).shape[0]


@pytest.mark.parametrize("name", ["A2", "LOOP3", "SQUARE", "GLUE2", "TWOSOURCE"])
def test_hom_space_matches_kron_oracle(ws, name):
    a = ws.algebra(name)
    rng = np.random.default_rng(3)
    for _ in range(6):
        m = random_module(a, rng, 5)
        n = random_module(a, rng, 5)
        hs = hom_space(m, n)
        assert hs.shape[0] == brute_hom_dim(m, n)
        for h in hs:
            assert ModHom(m, n, h).is_homomorphism()


def test_hom_dims_a2(ws):
    a = ws.algebra("A2")
    s1, s2 = simple_modules(a)
    p1 = projective_module(a, 0)
    assert hom_dim(p1, s1) == 1 and hom_dim(s1, p1) == 0 and hom_dim(s2, p1) == 1


def test_regular_decomposition(ws):
    dims = lambda name: sorted(s.module.dim for s in decompose(regular_module(ws.algebra(name))).summands)
    assert dims("A2") == [1, 2]
    assert dims("SQUARE") == [1, 2, 2, 4]
    assert dims("LOOP3") == [3]


def test_decomposition_witness(ws, rng):
    a = ws.algebra("SQUARE")
    for _ in range(5):
        m = random_module(a, rng, 6)
        dec = decompose(m, rng)
        w = dec.witness()
        assert rank_ff(w, m.p) == m.dim
        assert ModHom(dec.reassemble(), m, w).is_homomorphism()
        assert all(is_indecomposable(s.module) for s in dec.summands)


def test_iso_certificates(ws):
    a = ws.algebra("LOOP2")
    s = simple_modules(a)[0]
    res = is_isomorphic(regular_module(a), direct_sum(s, s))
    assert res.status == "no" and "dim End" in res.certificate
    p = projective_module(a, 0)
    yes = is_isomorphic(p, regular_module(a))
    assert yes.status == "yes" and bool(yes)


def test_projective_cover_minimal(ws):
    a = ws.algebra("A2")
    s1 = simple_modules(a)[0]
    cov = projective_cover(s1)
    assert cov.module.dim == 2 and cov.kernel_basis.shape[0] == 1


def test_injectives(ws):
    a = ws.algebra("A2")
    i1, i2 = injective_module(a, 0), injective_module(a, 1)
    assert (i1.dim, i2.dim) == (1, 2)
    assert is_isomorphic(i2, projective_module(a, 0)).status == "yes"
    s2 = simple_modules(a)[1]
    env, emb = injective_envelope(s2)
    assert env.dim == 2 and ModHom(s2, env, emb).is_homomorphism()


def test_submodule_and_quotient(ws):
    a = ws.algebra("LOOP3")
    r = regular_module(a)
    rad = r.radical_basis
    sub = submodule(r, rad)
    q, proj = quotient(r, rad)
    assert sub.dim == 2 and q.dim == 1 and not check_module(sub)
    assert ModHom(r, q, proj).is_homomorphism()


def test_representation_checks_relations(ws):
    a = ws.algebra("LOOP2")
    m = module_from_representation(a, {"1": 2}, {"a": [[0, 0], [1, 0]]})
    assert m.dim == 2 and is_projective(m)
    with pytest.raises(Exception):
        module_from_representation(a, {"1": 1}, {"a": [[1]]})


def test_bad_action_rejected(ws):
    a = ws.algebra("A2")
    bad = Module(a, np.ones((3, 1, 1), dtype=np.int64))
    assert check_module(bad)


def test_matmul_module_action(ws):
    a = ws.algebra("SQUARE")
    m = regular_module(a)
    x, y = a.basis_vector(5), a.basis_vector(7)
    assert np.array_equal(matmul(m.act(x), m.act(y), a.p), m.act(a.mul(x, y)))
