"""Finitistic dimension bounds, endomorphism algebras and add-V resolutions.

Every bound is reported as a list of hypothesis entries, ingredient values
and a final number; it counts as certified only when no hypothesis failed
and every ingredient is itself certified.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra
from .exactla import coords_in, matmul, nullspace, rank_ff
from .homology import DEFAULT_CUTOFF, Dim, global_dim, proj_dim, syzygy
from .igusa_todorov import CertifiedValue, psi_of_sum
from .modrep import (
    Module,
    ModuleError,
    decompose,
    direct_sum,
    hom_space,
    indecomposable_projectives,
    injective_module,
    is_isomorphic,
    projective_cover,
    regular_module,
    simple_modules,
    submodule,
    zero_module,
)
from .sampling import random_module, random_quotient_of_injective, random_submodule_of_projective
from .subalgebra import Chain, SubalgebraEmbedding, check_radical_conditions, restrict

RECIPES = ("genDA", "cogenA", "omega2")
THEOREMS = ("2.5", "3.1", "3.3", "3.5")


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


# --- endomorphism algebras -------------------------------------------------------------


@dataclass
class EndAlgebra:
    """End_A(v) with product = composition, on a hom_space basis of v.

    ``summands[i]`` is the indecomposable summand cut out by the i-th
    idempotent; ``inclusions[i]`` embeds it into v.
    """

    algebra: Algebra
    v: Module
    basis: np.ndarray  # (k, d, d)
    summands: list[Module]
    inclusions: list[np.ndarray]

    def element(self, coords) -> np.ndarray:
        return np.tensordot(np.asarray(coords, dtype=np.int64), self.basis, axes=1) % self.v.p

    def coords(self, f) -> np.ndarray:
        flat = self.basis.reshape(self.basis.shape[0], -1)
        return coords_in(flat, np.asarray(f, dtype=np.int64).reshape(1, -1))[0]

    def hom_module(self, x: Module) -> tuple[Module, np.ndarray]:
        """Hom_A(v, x) as a left module over End(v)^op (h acts by f -> f h)."""
        p = self.v.p
        hx = hom_space(self.v, x)
        k, m = self.basis.shape[0], hx.shape[0]
        if m == 0:
            return zero_module(self.algebra.op), hx
        flat = hx.reshape(m, -1)
        action = np.zeros((k, m, m), dtype=np.int64)
        for a in range(k):
            prods = matmul(hx, self.basis[a], p).reshape(m, -1)
            action[a] = coords_in(flat, prods).T
        return Module(self.algebra.op, action, f"Hom(V,{x.name})" if x.name else ""), hx


def end_algebra(v: Module, seed=0) -> EndAlgebra:
    if v.dim == 0:
        raise ModuleError("End of the zero module")
    p = v.p
    basis = hom_space(v, v)
    k = basis.shape[0]
    if p <= k:
        raise ValueError(f"p = {p} must exceed dim End = {k}")
    flat = basis.reshape(k, -1)
    prods = np.einsum("iab,jbc->ijac", basis, basis) % p
    table = coords_in(flat, prods.reshape(k * k, -1)).reshape(k, k, k)
    unit = coords_in(flat, np.eye(v.dim, dtype=np.int64).reshape(1, -1))[0]
    dec = decompose(v, seed)
    idems, summands, incs = [], [], []
    for s in dec.summands:
        for inc, proj in zip(s.inclusions, s.projections):
            idems.append(coords_in(flat, matmul(inc, proj, p).reshape(1, -1))[0])
            summands.append(s.module)
            incs.append(inc)
    name = f"End({v.name})" if v.name else "End"
    alg = Algebra(table, unit, idems, p=p, labels=[f"h{i}" for i in range(k)], name=name)
    return EndAlgebra(alg, v, basis, summands, incs)


def basic_module(v: Module, seed=0) -> Module:
    """One copy of each indecomposable summand."""
    if v.dim == 0:
        return v
    dec = decompose(v, seed)
    return direct_sum(*[s.module for s in dec.summands])


def basic_generator_cogenerator(a: Algebra, seed=0) -> Module:
    """basic(A + DA)."""
    rng = _rng(seed)
    reps: list[Module] = []
    cands = indecomposable_projectives(a) + [injective_module(a, i) for i in range(len(a.idempotents))]
    for m in cands:
        if not any(r.dim == m.dim and is_isomorphic(r, m, rng).status == "yes" for r in reps):
            reps.append(m)
    out = direct_sum(*reps)
    out.name = "basic(A+DA)"
    return out


def generator_cogenerator_gaps(v: Module, seed=0) -> list[str]:
    """Names of indecomposable projectives/injectives missing from add v."""
    a = v.algebra
    rng = _rng(seed)
    have = [s.module for s in decompose(v, rng).summands] if v.dim else []
    missing = []
    cands = [(m.name, m) for m in indecomposable_projectives(a)]
    cands += [(f"I{i + 1}", injective_module(a, i)) for i in range(len(a.idempotents))]
    for name, m in cands:
        if not any(h.dim == m.dim and is_isomorphic(h, m, rng).status == "yes" for h in have):
            missing.append(name)
    return missing


def gldim_end(v: Module, cutoff: int = DEFAULT_CUTOFF, seed=0) -> Dim:
    """gl.dim End_A(v), computed on basic(v) (same global dimension)."""
    return global_dim(end_algebra(basic_module(v, seed), seed).algebra, cutoff, seed)


# --- add-V resolutions -----------------------------------------------------------------


@dataclass
class AddVResolution:
    target: Module
    terms: list[Module] = field(default_factory=list)  # V_0, V_1, ...
    summand_indices: list[list[int]] = field(default_factory=list)
    maps: list[np.ndarray] = field(default_factory=list)  # V_0 -> X, V_n -> V_{n-1}
    terminated: bool = False
    hom_exact: list[bool] = field(default_factory=list)

    @property
    def length(self) -> int:
        return max(len(self.terms) - 1, 0)


def _approximation(end: EndAlgebra, x: Module):
    """Minimal right add-v approximation V_0 -> x, via a projective cover of Hom(v, x)."""
    p = x.p
    hmod, hx = end.hom_module(x)
    if hmod.dim == 0:
        return None
    cover = projective_cover(hmod)
    mods, blocks, idx = [], [], []
    for (i, _), g in zip(cover.summands, cover.generators):
        f = np.tensordot(g, hx, axes=1) % p  # x <- v
        blocks.append(matmul(f, end.inclusions[i], p))
        mods.append(end.summands[i])
        idx.append(i)
    return direct_sum(*mods), np.concatenate(blocks, axis=1), idx


def _hom_surjective(v: Module, src: Module, f: np.ndarray, x: Module) -> bool:
    hs = hom_space(v, src)
    target = hom_space(v, x).shape[0]
    if hs.shape[0] == 0:
        return target == 0
    img = matmul(f, hs, x.p).reshape(hs.shape[0], -1)
    return rank_ff(img, x.p) == target


def addv_resolution(x: Module, v: Module, max_len: int = 10, seed=0, end: EndAlgebra | None = None) -> AddVResolution:
    end = end or end_algebra(basic_module(v, seed), seed)
    res = AddVResolution(target=x)
    if x.dim == 0:
        res.terminated = True
        return res
    cur = x
    prev_kernel = None
    for _ in range(max_len + 1):
        approx = _approximation(end, cur)
        if approx is None:
            break  # no maps from v at all
        vmod, f, idx = approx
        res.terms.append(vmod)
        res.summand_indices.append(idx)
        res.maps.append(f if prev_kernel is None else matmul(prev_kernel.T, f, x.p))
        res.hom_exact.append(_hom_surjective(end.v, vmod, f, cur))
        ker = nullspace(f, x.p)
        if ker.shape[0] == 0:
            res.terminated = True
            return res
        prev_kernel = ker
        cur = submodule(vmod, ker, check=False)
    return res


@dataclass
class Lemma22Check:
    gldim: Dim
    lengths: list[int]
    all_terminated: bool
    hom_exact: bool
    forward: bool  # gl.dim End <= n gives resolutions of length <= n - 2
    backward: bool  # resolutions of length <= L give gl.dim End <= max(L + 2, 2)


def lemma22_check(v: Module, modules, max_len: int = 10, cutoff: int = DEFAULT_CUTOFF, seed=0) -> Lemma22Check:
    """Compare gl.dim End(v) with add-v resolution lengths of the given modules."""
    bv = basic_module(v, seed)
    end = end_algebra(bv, seed)
    g = global_dim(end.algebra, cutoff, seed)
    ress = [addv_resolution(x, bv, max_len, seed, end) for x in modules]
    lengths = [r.length for r in ress]
    done = all(r.terminated for r in ress)
    exact = all(all(r.hom_exact) for r in ress)
    top = max(lengths, default=0)
    forward = (not g.is_finite) or (done and top <= max(g.value, 2) - 2)
    backward = (not done) or (g.is_finite and g.value <= max(top + 2, 2))
    return Lemma22Check(g, lengths, done, exact, forward, backward)


# --- module classes --------------------------------------------------------------------


@dataclass
class ModuleClassSample:
    recipe: str
    modules: list[Module]
    budget: int = 0
    completeness: str = "user-asserted"  # or heuristic-only
    notes: list[str] = field(default_factory=list)


class _Reps:
    def __init__(self, rng):
        self.mods: list[Module] = []
        self.rng = rng
        self.notes: list[str] = []

    def add(self, m: Module) -> bool:
        for r in self.mods:
            if r.dim != m.dim or r.dim_vector != m.dim_vector:
                continue
            res = is_isomorphic(r, m, self.rng)
            if res.status == "yes":
                return False
            if res.status == "inconclusive":
                self.notes.append(f"inconclusive iso test at dim {m.dim}")
        self.mods.append(m)
        return True


def _draw(a: Algebra, recipe: str, rng, dim_budget: int) -> Module:
    if recipe == "genDA":
        return random_quotient_of_injective(a, rng, dim_budget)
    if recipe == "cogenA":
        return random_submodule_of_projective(a, rng, dim_budget)
    return syzygy(syzygy(random_module(a, rng, dim_budget)))


def explore_class(a: Algebra, recipe: str, budget: int = 50, seed=0, dim_budget: int = 6) -> ModuleClassSample:
    """Indecomposables met in ``budget`` random members of gen DA, cogen A or add Omega^2."""
    if recipe not in RECIPES:
        raise ValueError(f"recipe must be one of {', '.join(RECIPES)}")
    rng = _rng(seed)
    reps = _Reps(rng)
    for _ in range(budget):
        m = _draw(a, recipe, rng, dim_budget)
        if m.dim == 0:
            continue
        for s in decompose(m, rng).summands:
            reps.add(s.module)
    mods = sorted(reps.mods, key=lambda m: (m.dim, m.dim_vector))
    for i, m in enumerate(mods):
        m.name = m.name or f"M{i + 1}"
    return ModuleClassSample(recipe, mods, budget, "heuristic-only", reps.notes)


def _new_classes(sample: ModuleClassSample, a: Algebra, budget: int, seed) -> list[Module]:
    """Indecomposables found by a fresh exploration that are missing from the sample."""
    rng = _rng(seed)
    found = explore_class(a, sample.recipe, budget, rng).modules
    out = []
    for m in found:
        if not any(r.dim == m.dim and is_isomorphic(r, m, rng).status == "yes" for r in sample.modules):
            out.append(m)
    return out


# --- reports ---------------------------------------------------------------------------


@dataclass
class Hypothesis:
    name: str
    status: str  # pass | fail | asserted
    detail: str = ""


@dataclass
class Ingredient:
    name: str
    value: str
    certified: bool


@dataclass
class BoundReport:
    theorem: str
    bound: CertifiedValue | None = None
    hypotheses: list[Hypothesis] = field(default_factory=list)
    ingredients: list[Ingredient] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def hyp(self, name: str, status, detail: str = ""):
        if isinstance(status, bool):
            status = "pass" if status else "fail"
        self.hypotheses.append(Hypothesis(name, status, detail))

    def ing(self, name: str, value, certified: bool):
        self.ingredients.append(Ingredient(name, str(value), bool(certified)))

    @property
    def hypotheses_ok(self) -> bool:
        return all(h.status in ("pass", "asserted") for h in self.hypotheses)

    @property
    def certified(self) -> bool:
        return self.bound is not None and self.hypotheses_ok and all(i.certified for i in self.ingredients)

    def finish(self, value: int | None):
        self.bound = None if value is None else CertifiedValue(value, self.hypotheses_ok and all(i.certified for i in self.ingredients))
        return self

    def lines(self) -> list[str]:
        out = [f"theorem {self.theorem}"]
        for h in self.hypotheses:
            out.append(f"hypothesis {h.name} {h.status}" + (f" # {h.detail}" if h.detail else ""))
        for i in self.ingredients:
            out.append(f"ingredient {i.name} {i.value} {'certified' if i.certified else 'uncertified'}")
        out += [f"note {n}" for n in self.notes]
        if self.bound is None:
            out.append("bound none uncertified")
        else:
            out.append(f"bound {self.bound.value} {'certified' if self.certified else 'uncertified'}")
        return out

    def text(self) -> str:
        return "\n".join(self.lines())

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "hypotheses": [{"name": h.name, "status": h.status, "detail": h.detail} for h in self.hypotheses],
            "ingredients": [{"name": i.name, "value": i.value, "certified": i.certified} for i in self.ingredients],
            "notes": list(self.notes),
            "bound": None if self.bound is None else self.bound.value,
            "certified": self.certified,
        }


def _list_hypothesis(rep: BoundReport, name: str, sample: ModuleClassSample, a: Algebra, budget: int, seed):
    if budget > 0:
        extra = _new_classes(sample, a, budget, seed)
        if extra:
            dims = ",".join(str(m.dim) for m in extra)
            rep.hyp(name, "fail", f"exploration found {len(extra)} new indecomposable(s) of dim {dims}")
            return
    how = "user list" if sample.completeness == "user-asserted" else f"heuristic list from {sample.budget} samples"
    rep.hyp(name, "asserted", f"{how}, {len(sample.modules)} classes")


def _psi_ingredient(rep: BoundReport, name: str, mods, cutoff, seed) -> CertifiedValue:
    mods = [m for m in mods if m.dim]
    val = psi_of_sum(mods, cutoff, seed)
    rep.ing(f"{name}-input-dim", sum(m.dim for m in mods), True)
    rep.ing(name, val.value, val.certified)
    rep.notes += val.notes
    return val


def bound_thm25(
    a: Algebra, gens: ModuleClassSample | None = None, cutoff: int = DEFAULT_CUTOFF, seed=0, explore_budget: int = 30
) -> BoundReport:
    """fin.dim A <= psi(Omega M_1 + ... + Omega M_t) + 1 for gen DA = add(M_1 + ... + M_t)."""
    rep = BoundReport("2.5")
    if gens is None:
        gens = explore_class(a, "genDA", max(explore_budget, 1), seed)
        explore_budget = explore_budget // 2
    if gens.recipe != "genDA":
        rep.hyp("recipe-genDA", False, f"got {gens.recipe}")
        return rep.finish(None)
    _list_hypothesis(rep, "genDA-finite-type", gens, a, explore_budget, seed + 1 if isinstance(seed, int) else seed)
    val = _psi_ingredient(rep, "psi", [syzygy(m) for m in gens.modules], cutoff, seed)
    return rep.finish(val.value + 1)


def bound_thm33(
    emb: SubalgebraEmbedding,
    omega2: ModuleClassSample | None = None,
    cutoff: int = DEFAULT_CUTOFF,
    seed=0,
    explore_budget: int = 30,
) -> BoundReport:
    """fin.dim B <= psi_B(Omega_B M_i + Omega_B A + Omega_B(B/rad B)) + 3 when rad B is an ideal of A."""
    rep = BoundReport("3.3")
    a, b = emb.ambient, emb.sub
    cond = check_radical_conditions(emb)
    rep.hyp("radB-ideal-in-A", cond.two_sided_ideal)
    if omega2 is None:
        g = global_dim(a, cutoff, seed)
        rep.ing("gldim-A", g, g.certified)
        if g.is_finite and g.value <= 2:
            omega2 = ModuleClassSample("omega2", indecomposable_projectives(a), 0, "user-asserted")
            rep.hyp("addOmega2-finite-type", "pass", "gl.dim A <= 2, second syzygies are projective")
        else:
            omega2 = explore_class(a, "omega2", max(explore_budget, 1), seed)
            _list_hypothesis(rep, "addOmega2-finite-type", omega2, a, explore_budget // 2, seed)
    else:
        _list_hypothesis(rep, "addOmega2-finite-type", omega2, a, explore_budget, seed)
    if not cond.two_sided_ideal:
        return rep.finish(None)
    parts = [syzygy(restrict(m, emb)) for m in omega2.modules]
    parts.append(syzygy(restrict(regular_module(a), emb)))
    parts += [syzygy(s) for s in simple_modules(b)]
    val = _psi_ingredient(rep, "psi-B", parts, cutoff, seed)
    return rep.finish(val.value + 3)


def _thm35_triple(chain: Chain):
    if chain.length == 1:
        return chain.embedding(0, 0), chain.steps[0]
    if chain.length == 2:
        return chain.steps[0], chain.steps[1]
    raise ValueError("need a chain C <= B <= A of length 1 or 2")


def bound_thm35(
    chain: Chain,
    cogens: ModuleClassSample | None = None,
    cutoff: int = DEFAULT_CUTOFF,
    seed=0,
    explore_budget: int = 30,
) -> BoundReport:
    """fin.dim C <= psi_C(M_1 + ... + M_t + B) + 3 for cogen A = add(M_1 + ... + M_t)."""
    rep = BoundReport("3.5")
    c_in_b, b_in_a = _thm35_triple(chain)
    a = b_in_a.ambient
    rep.hyp("radC-left-ideal-in-B", check_radical_conditions(c_in_b).left_ideal)
    rep.hyp("radB-left-ideal-in-A", check_radical_conditions(b_in_a).left_ideal)
    if cogens is None:
        g = global_dim(a, cutoff, seed)
        rep.ing("gldim-A", g, g.certified)
        if g.is_finite and g.value <= 1:
            cogens = ModuleClassSample("cogenA", indecomposable_projectives(a), 0, "user-asserted")
            rep.hyp("cogenA-finite-type", "pass", "A hereditary, cogen A = add A")
        else:
            cogens = explore_class(a, "cogenA", max(explore_budget, 1), seed)
            _list_hypothesis(rep, "cogenA-finite-type", cogens, a, explore_budget // 2, seed)
    else:
        _list_hypothesis(rep, "cogenA-finite-type", cogens, a, explore_budget, seed)
    if not rep.hypotheses_ok:
        return rep.finish(None)
    c_in_a = c_in_b.then(b_in_a)
    parts = [restrict(m, c_in_a) for m in cogens.modules]
    parts.append(restrict(regular_module(b_in_a.sub), c_in_b))
    val = _psi_ingredient(rep, "psi-C", parts, cutoff, seed)
    return rep.finish(val.value + 3)


def bound_thm31(chain: Chain, v: Module | None = None, cutoff: int = DEFAULT_CUTOFF, seed=0) -> BoundReport:
    """fin.dim B <= 2s + max(psi_B(V) + 1, pd_B A_j) along B = A_0 <= ... <= A_s = A."""
    rep = BoundReport("3.1")
    s = chain.length
    if s < 1:
        rep.hyp("chain-length", False, "need s >= 1")
        return rep.finish(None)
    a = chain.top
    v = v if v is not None else basic_generator_cogenerator(a, seed)
    for i, st in enumerate(chain.steps):
        rep.hyp(f"rad-A{i}-left-ideal-in-A{i + 1}", check_radical_conditions(st).left_ideal)
    for i in range(1, s):
        d = proj_dim(restrict(regular_module(chain.algebras[i]), chain.steps[i - 1]), cutoff, seed)
        rep.hyp(f"pd-A{i - 1}-of-A{i}-finite", "pass" if d.is_finite else "fail", str(d))
    gaps = generator_cogenerator_gaps(v, seed)
    rep.hyp("V-generator-cogenerator", not gaps, ("missing " + " ".join(gaps)) if gaps else "")
    g = gldim_end(v, cutoff, seed)
    rep.ing("gldim-End-V", g, g.certified)
    rep.hyp("gldim-End-V-at-most-3", g.is_finite and g.value <= 3, str(g))
    into = chain.into_top(0)
    val = _psi_ingredient(rep, "psi-B-V", [restrict(v, into)], cutoff, seed)
    best = val.value + 1
    for j in range(1, s):
        d = proj_dim(restrict(regular_module(chain.algebras[j]), chain.embedding(0, j)), cutoff, seed)
        rep.ing(f"pd-B-A{j}", d, d.is_finite)
        if d.is_finite:
            best = max(best, d.value)
    return rep.finish(2 * s + best)


# --- search ----------------------------------------------------------------------------


@dataclass
class FindimSearch:
    lower_bound: int
    witness: Module | None
    samples: int
    finite: int = 0
    infinite: int = 0
    unknown: int = 0
    finite_pds: list[int] = field(default_factory=list)

    def violations(self, bound: int) -> list[int]:
        return [d for d in self.finite_pds if d > bound]


def findim_search(a: Algebra, dim_budget: int = 6, samples: int = 100, seed=0, cutoff: int = DEFAULT_CUTOFF) -> FindimSearch:
    """Largest certified finite pd among seeded random modules: a lower bound for fin.dim."""
    if dim_budget < 1 or samples < 1:
        raise ValueError("budgets must be positive")
    rng = _rng(seed)
    out = FindimSearch(0, None, samples)
    for _ in range(samples):
        m = random_module(a, rng, dim_budget)
        d = proj_dim(m, cutoff, rng)
        if d.is_finite:
            out.finite += 1
            out.finite_pds.append(d.value)
            if out.witness is None or d.value > out.lower_bound:
                out.lower_bound, out.witness = d.value, m
        elif d.is_infinite:
            out.infinite += 1
        else:
            out.unknown += 1
    return out
