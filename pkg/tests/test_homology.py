import numpy as np
import pytest

from findim.homology import (
    Dim,
    ExactSequence,
    NotExactError,
    combine_max,
    global_dim,
    minimal_resolution,
    proj_dim,
    resolution_as_sequence,
    splice_bound,
    syzygy,
)
from findim.modrep import direct_sum, is_isomorphic, projective_module, regular_module, simple_modules, zero_module
from findim.sampling import random_module


def test_gldim_fixtures(ws):
    # hand resolutions: 0 -> P2 -> P1 -> S1 -> 0 over A2; S1 over SQUARE needs 0 -> P4 -> P2+P3 -> P1
    assert str(global_dim(ws.algebra("A2"))) == "finite 1"
    assert str(global_dim(ws.algebra("SQUARE"))) == "finite 2"
    assert str(global_dim(ws.algebra("SEMISIMPLE"))) == "finite 0"
    assert str(global_dim(ws.algebra("TWOSOURCE"))) == "finite 1"
    # Omega(S) = S over k[x]/x^2; over k[x]/x^3 the simple returns after two steps
    assert str(global_dim(ws.algebra("LOOP2"))) == "infinite 0 1"
    assert str(global_dim(ws.algebra("LOOP3"))) == "infinite 0 2"


def test_square_resolution_terms(ws):
    a = ws.algebra("SQUARE")
    res = minimal_resolution(simple_modules(a)[0])
    assert [t.dim_vector for t in res.terms] == [(1, 1, 1, 1), (0, 1, 1, 2), (0, 0, 0, 1)]
    assert not res.verify()


def test_a2_resolution_and_splice(ws):
    s1 = simple_modules(ws.algebra("A2"))[0]
    res = minimal_resolution(s1)
    assert [t.dim_vector for t in res.terms] == [(1, 1), (0, 1)]
    seq = resolution_as_sequence(res)
    assert str(splice_bound(seq, [Dim.finite(0), Dim.finite(0)])) == "finite 1"


def test_splice_rejects_non_exact(ws):
    a = ws.algebra("A2")
    s1 = simple_modules(a)[0]
    p1 = projective_module(a, 0)
    bad = ExactSequence(s1, [p1], [np.zeros((1, 2), dtype=np.int64)])
    with pytest.raises(NotExactError):
        splice_bound(bad, [Dim.finite(0)])


def test_cutoff_reports_unknown(ws):
    s = simple_modules(ws.algebra("LOOP3"))[0]
    assert str(proj_dim(s, cutoff=0)) == "unknown 0"


def test_zero_and_projective(ws):
    a = ws.algebra("SQUARE")
    assert proj_dim(zero_module(a)).zero
    assert str(proj_dim(regular_module(a))) == "finite 0"


def test_syzygy_periodicity_loop3(ws):
    s = simple_modules(ws.algebra("LOOP3"))[0]
    assert syzygy(s).dim == 2
    assert is_isomorphic(syzygy(syzygy(s)), s).status == "yes"


def test_combine_max():
    assert str(combine_max([Dim.finite(1), Dim.finite(3)])) == "finite 3"
    assert combine_max([Dim.finite(1), Dim.unknown(5)]).kind == "unknown"
    assert combine_max([Dim.unknown(5), Dim.infinite(0, 1)]).is_infinite
    assert combine_max([]).zero


def test_pd_of_sum_is_max(ws, rng):
    a = ws.algebra("SQUARE")
    for _ in range(5):
        x, y = random_module(a, rng, 5), random_module(a, rng, 5)
        px, py, ps = proj_dim(x), proj_dim(y), proj_dim(direct_sum(x, y))
        assert ps.value == max(px.value, py.value)


def test_random_resolutions_verify(ws, rng):
    for name in ["A2", "SQUARE", "LOOP3", "GLUE2"]:
        a = ws.algebra(name)
        for _ in range(4):
            res = minimal_resolution(random_module(a, rng, 6), cutoff=6)
            assert not res.verify()
