import numpy as np
import pytest

from findim.bounds import (
    ModuleClassSample,
    addv_resolution,
    basic_generator_cogenerator,
    bound_thm25,
    bound_thm31,
    bound_thm33,
    bound_thm35,
    end_algebra,
    explore_class,
    findim_search,
    generator_cogenerator_gaps,
    gldim_end,
    lemma22_check,
)
from findim.exactla import matmul
from findim.modrep import (
    direct_sum,
    indecomposable_projectives,
    injective_cogenerator,
    projective_module,
    regular_module,
    simple_modules,
)
from findim.subalgebra import chain_from_root_embeddings, glue_idempotents, identity_embedding


def test_end_of_simple(ws):
    e = end_algebra(simple_modules(ws.algebra("A2"))[0])
    assert e.algebra.dim == 1


def test_end_loop2_sum(ws):
    a = ws.algebra("LOOP2")
    v = direct_sum(regular_module(a), simple_modules(a)[0])
    e = end_algebra(v)
    # Hom dims 2 + 1 + 1 + 1
    assert e.algebra.dim == 5
    assert np.array_equal(e.element(e.algebra.unit), np.eye(v.dim, dtype=np.int64))
    x, y = e.algebra.basis_vector(1), e.algebra.basis_vector(3)
    assert np.array_equal(e.element(e.algebra.mul(x, y)), matmul(e.element(x), e.element(y), a.p))


def test_gldim_end_fixtures(ws):
    assert str(gldim_end(injective_cogenerator(ws.algebra("SEMISIMPLE")))) == "finite 0"
    l2 = ws.algebra("LOOP2")
    assert str(gldim_end(direct_sum(regular_module(l2), simple_modules(l2)[0]))) == "finite 2"
    l3 = ws.algebra("LOOP3")
    inds = explore_class(l3, "genDA", 30, 0).modules
    assert len(inds) == 3
    assert str(gldim_end(direct_sum(*inds))) == "finite 2"


def test_generator_cogenerator(ws):
    a = ws.algebra("A2")
    assert generator_cogenerator_gaps(basic_generator_cogenerator(a)) == []
    assert generator_cogenerator_gaps(regular_module(a)) == ["I1"]


def test_addv_in_add_v(ws):
    a = ws.algebra("A2")
    v = basic_generator_cogenerator(a)
    res = addv_resolution(projective_module(a, 0), v)
    assert res.terminated and res.length == 0 and all(res.hom_exact)


def test_addv_nontrivial(ws):
    # V = A over A2 is a generator: add-V resolutions are projective resolutions
    a = ws.algebra("A2")
    res = addv_resolution(simple_modules(a)[0], regular_module(a))
    assert res.terminated and res.length == 1 and all(res.hom_exact)


def test_lemma22_a2(ws):
    a = ws.algebra("A2")
    v = basic_generator_cogenerator(a)
    mods = indecomposable_projectives(a) + simple_modules(a)
    chk = lemma22_check(v, mods)
    assert chk.forward and chk.backward and chk.hom_exact and max(chk.lengths) <= 1


def test_thm33_glue2(ws):
    r = bound_thm33(ws.embedding("GLUE2"))
    assert r.bound.value == 3 and r.certified


def test_thm33_fails_without_ideal(ws):
    from findim.subalgebra import subalgebra_from_elements

    a = ws.algebra("LOOP3")
    emb = subalgebra_from_elements(a, [a.unit])
    r = bound_thm33(emb, ModuleClassSample("omega2", [], 0))
    assert not r.certified and any(h.status == "fail" for h in r.hypotheses)


def test_thm35_glue2_chain(ws):
    r = bound_thm35(ws.chain("GLUE2CHAIN"))
    assert r.bound.value == 3 and r.certified


def test_thm25_loop3(ws):
    r = bound_thm25(ws.algebra("LOOP3"))
    assert r.bound.value == 1 and r.certified
    assert any(h.status == "asserted" for h in r.hypotheses)


def test_thm25_semisimple(ws):
    a = ws.algebra("SEMISIMPLE")
    r = bound_thm25(a, ModuleClassSample("genDA", simple_modules(a)), explore_budget=5)
    assert r.bound.value == 1


def test_thm25_incomplete_list_fails(ws):
    a = ws.algebra("LOOP3")
    r = bound_thm25(a, ModuleClassSample("genDA", simple_modules(a)), explore_budget=20)
    assert not r.certified


def test_thm31_glue2(ws):
    r = bound_thm31(ws.chain("GLUE2CHAIN"))
    assert r.certified and r.bound.value == 3


def test_thm31_degenerate_chain(ws):
    a = ws.algebra("A2")
    ch = chain_from_root_embeddings([identity_embedding(a), identity_embedding(a)])
    v = basic_generator_cogenerator(a)
    r = bound_thm31(ch, v)
    # 2 + psi(V) + 1 with psi(V) = pd V = 1
    assert r.bound.value == 4


def test_thm31_length_two(ws):
    emb = ws.embedding("GLUE2")
    ch = chain_from_root_embeddings([emb, emb, identity_embedding(emb.ambient)])
    r = bound_thm31(ch)
    # 4 + max(psi_B(V) + 1, pd_B(B)) = 4 + max(1, 0)
    assert r.certified and r.bound.value == 5


def test_thm31_unknown_pd_is_not_certified(ws):
    a = ws.algebra("SQUARE")
    c = glue_idempotents(a, [[0, 1, 2, 3]])
    b = glue_idempotents(a, [[0, 1], [2], [3]])
    ch = chain_from_root_embeddings([c, b, identity_embedding(a)])
    r = bound_thm31(ch)
    hyp = {h.name: h for h in r.hypotheses}
    assert hyp["pd-A0-of-A1-finite"].status == "fail"
    assert not r.certified


def test_explore_a2_cogen(ws):
    s = explore_class(ws.algebra("A2"), "cogenA", 30, 1)
    assert sorted(m.dim_vector for m in s.modules) == [(0, 1), (1, 1)]


def test_explore_semisimple(ws):
    a = ws.algebra("SEMISIMPLE")
    for recipe in ("genDA", "cogenA"):
        assert len(explore_class(a, recipe, 10, 0).modules) == 2
    assert explore_class(a, "omega2", 10, 0).modules == []


def test_explore_rejects_recipe(ws):
    with pytest.raises(ValueError):
        explore_class(ws.algebra("A2"), "genA", 3)


def test_findim_search(ws):
    assert findim_search(ws.algebra("SEMISIMPLE"), 4, 20, 0).lower_bound == 0
    r = findim_search(ws.algebra("A2"), 4, 40, 0)
    assert r.lower_bound == 1 and r.witness is not None
    assert findim_search(ws.algebra("LOOP2"), 4, 40, 0).lower_bound == 0


def test_report_lines_format(ws):
    r = bound_thm33(ws.embedding("GLUE2"))
    for line in r.lines()[1:]:
        assert line.split()[0] in ("hypothesis", "ingredient", "bound", "note")
    d = r.to_dict()
    assert d["bound"] == 3 and d["certified"]
