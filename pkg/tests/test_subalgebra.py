import numpy as np
import pytest

from findim.homology import global_dim
from findim.modrep import regular_module, simple_modules
from findim.sampling import random_module
from findim.subalgebra import (
    EmbeddingError,
    check_radical_conditions,
    glue_idempotents,
    induce_A_structure,
    lemma23_check,
    restrict,
    subalgebra_from_elements,
)


def test_glue2(ws):
    emb = ws.embedding("GLUE2")
    assert emb.sub.labels == ["e1+e2", "a"]
    c = check_radical_conditions(emb)
    assert (c.left_ideal, c.two_sided_ideal, c.equal_radicals) == (True, True, True)
    assert global_dim(emb.sub).is_infinite


def test_restrict_regular(ws):
    emb = ws.embedding("GLUE2")
    dims = sorted(s.dim for s in simple_modules(emb.sub))
    assert dims == [1]
    r = restrict(regular_module(emb.ambient), emb)
    assert r.dim == 3 and r.dim_vector == (3,)


def test_scalars_in_loop2(ws):
    a = ws.algebra("LOOP2")
    emb = subalgebra_from_elements(a, [a.unit])
    c = check_radical_conditions(emb)
    assert (c.left_ideal, c.two_sided_ideal, c.equal_radicals) == (True, True, False)


def test_gsquare(ws):
    emb = ws.embedding("GSQUARE")
    assert emb.sub.dim == 6 and check_radical_conditions(emb).two_sided_ideal


def test_bad_blocks(ws):
    with pytest.raises(EmbeddingError):
        glue_idempotents(ws.algebra("A2"), [[0]])


def test_chain_composition(ws):
    ch = ws.chain("GSQUARECHAIN")
    emb = ch.into_top(0)
    assert emb.inclusion.shape == (9, 6) and not emb.failures()


def test_induced_structure_closed(ws):
    emb = ws.embedding("GLUE2")
    s = simple_modules(emb.sub)[0]
    ind = induce_A_structure(s, emb, 2)
    assert ind.omega_b.dim == 1 and ind.module.dim == 1


@pytest.mark.parametrize("name,i", [("GLUE2", 2), ("GLUE2", 3), ("GSQUARE", 2)])
def test_lemma23_random(ws, name, i):
    emb = ws.embedding(name)
    rng = np.random.default_rng(i)
    for k in range(4):
        rep = lemma23_check(random_module(emb.sub, rng, 4), emb, i, seed=k)
        assert rep.passed, rep.text()


def test_lemma23_needs_left_ideal(ws):
    a = ws.algebra("A2")
    # the span of e1 and 1 is a subalgebra whose radical (zero) is trivially an ideal
    emb = subalgebra_from_elements(a, [a.idempotents[0]])
    rep = lemma23_check(simple_modules(emb.sub)[0], emb, 2)
    assert rep.conditions.left_ideal and rep.passed
