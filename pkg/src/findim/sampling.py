"""Seeded random modules: quotients and submodules of projectives, and
quiver representations solved arrow by arrow."""

from __future__ import annotations

import numpy as np

from .algebra import Algebra
from .exactla import solve_ff
from .modrep import (
    Module,
    ModuleError,
    direct_sum,
    indecomposable_projectives,
    injective_module,
    module_from_representation,
    quotient,
    span_closure,
    submodule,
)


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_projective(a: Algebra, rng, max_summands: int = 3) -> Module:
    projs = indecomposable_projectives(a)
    k = int(rng.integers(1, max_summands + 1))
    picks = rng.integers(0, len(projs), size=k)
    return direct_sum(*[projs[i] for i in picks])


def random_submodule(m: Module, rng, gens: int | None = None) -> np.ndarray:
    """RREF basis of the submodule generated by a few random vectors."""
    if m.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    gens = int(rng.integers(1, 3)) if gens is None else gens
    vecs = rng.integers(0, m.p, size=(gens, m.dim))
    # sparsify so that small submodules occur too
    vecs *= rng.random(size=vecs.shape) < 0.5
    return span_closure(m, vecs)


def random_radical_submodule(m: Module, rng, gens: int | None = None) -> np.ndarray:
    """Submodule generated by random elements of rad M (keeps the top intact)."""
    rad = m.radical_basis
    if rad.shape[0] == 0:
        return np.zeros((0, m.dim), dtype=np.int64)
    gens = int(rng.integers(1, 3)) if gens is None else gens
    c = rng.integers(0, m.p, size=(gens, rad.shape[0])) * (rng.random(size=(gens, rad.shape[0])) < 0.6)
    return span_closure(m, (c @ rad) % m.p)


def random_quotient_of_projective(a: Algebra, rng, max_dim: int | None = None) -> Module:
    for _ in range(20):
        p = random_projective(a, rng)
        q, _ = quotient(p, random_radical_submodule(p, rng))
        if max_dim is None or q.dim <= max_dim:
            return q
    return _smallest_simple_quotient(a, rng)


def random_submodule_of_projective(a: Algebra, rng, max_dim: int | None = None) -> Module:
    for _ in range(20):
        p = random_projective(a, rng)
        sub = random_submodule(p, rng)
        if sub.shape[0] and (max_dim is None or sub.shape[0] <= max_dim):
            return submodule(p, sub, check=False)
    return _smallest_simple_quotient(a, rng)


def random_quotient_of_injective(a: Algebra, rng, max_dim: int | None = None) -> Module:
    """Quotients of sums of indecomposable injectives (modules in gen DA)."""
    k = len(a.idempotents)
    for _ in range(20):
        n = int(rng.integers(1, 3))
        inj = direct_sum(*[injective_module(a, int(i)) for i in rng.integers(0, k, size=n)])
        q, _ = quotient(inj, random_submodule(inj, rng) if rng.random() < 0.7 else np.zeros((0, inj.dim), dtype=np.int64))
        if q.dim and (max_dim is None or q.dim <= max_dim):
            return q
    return _smallest_simple_quotient(a, rng)


def _smallest_simple_quotient(a: Algebra, rng) -> Module:
    p = indecomposable_projectives(a)[int(rng.integers(0, len(a.idempotents)))]
    q, _ = quotient(p, p.radical_basis)
    return q


# --- quiver representations ---------------------------------------------------------


def _relations(a: Algebra):
    """User relations plus all paths of the nilpotency length, as term lists."""
    pres = a.quiver.presentation
    rels = [[(t.coeff, t.path) for t in r] for r in pres.relations]
    arrows = {x.label: x for x in pres.arrows}
    m = pres.nilpotency
    # paths of length m; path (x1, ..., xm) means x1 after ... after xm
    frontier = [(x.label,) for x in pres.arrows]
    for _ in range(m - 1):
        frontier = [(x.label,) + path for path in frontier for x in pres.arrows if x.source == arrows[path[0]].target]
    rels += [[(1, path)] for path in frontier]
    return rels


def random_representation(a: Algebra, dims: dict, rng, order=None) -> Module | None:
    """Random arrow matrices satisfying the relations, solved one arrow at a
    time.  Returns None when some relation is not linear in its last arrow or
    the system is inconsistent."""
    pres = a.quiver.presentation
    p = a.p
    arrows = [x for x in pres.arrows]
    if order is None:
        order = list(rng.permutation(len(arrows)))
    arrows = [arrows[int(i)] for i in order]
    rels = _relations(a)
    fixed: dict[str, np.ndarray] = {}

    def chain(path):
        m = fixed[path[0]]
        for lbl in path[1:]:
            m = (m @ fixed[lbl]) % p
        return m

    for arr in arrows:
        rows, cols = dims.get(arr.target, 0), dims.get(arr.source, 0)
        active = []
        for rel in rels:
            labels = {lbl for _, path in rel for lbl in path}
            if arr.label in labels and labels <= set(fixed) | {arr.label}:
                active.append(rel)
        eqs, rhs = [], []
        for rel in active:
            lhs_block = None
            const = None
            for coeff, path in rel:
                n = path.count(arr.label)
                if n > 1:
                    return None
                if n == 0:
                    val = (coeff * chain(path)) % p
                    const = val if const is None else (const + val) % p
                    continue
                k = path.index(arr.label)
                before, after = path[:k], path[k + 1 :]
                left = chain(before) if before else np.eye(rows, dtype=np.int64)
                right = chain(after) if after else np.eye(cols, dtype=np.int64)
                block = (coeff * np.kron(left, right.T)) % p
                lhs_block = block if lhs_block is None else (lhs_block + block) % p
            if lhs_block is None:
                continue
            eqs.append(lhs_block)
            rhs.append((-const).ravel() % p if const is not None else np.zeros(lhs_block.shape[0], dtype=np.int64))
        if rows * cols == 0:
            fixed[arr.label] = np.zeros((rows, cols), dtype=np.int64)
            continue
        if not eqs:
            fixed[arr.label] = rng.integers(0, p, size=(rows, cols)) * (rng.random(size=(rows, cols)) < 0.7)
            continue
        sol = solve_ff(np.concatenate(eqs), np.concatenate(rhs), p)
        if sol is None:
            return None
        x = sol.particular.copy()
        if sol.kernel.shape[0]:
            x = (x + rng.integers(0, p, size=sol.kernel.shape[0]) @ sol.kernel) % p
        fixed[arr.label] = x.reshape(rows, cols)
    try:
        return module_from_representation(a, dims, fixed)
    except ModuleError:
        return None


def random_dims(a: Algebra, rng, budget: int) -> dict:
    verts = a.quiver.presentation.vertices
    total = int(rng.integers(1, budget + 1))
    counts = rng.multinomial(total, [1 / len(verts)] * len(verts))
    return {v: int(c) for v, c in zip(verts, counts)}


def random_module(a: Algebra, seed, dim_budget: int = 6) -> Module:
    """One random nonzero module of dimension at most ``dim_budget`` (best effort)."""
    rng = _rng(seed)
    kind = rng.random()
    if a.quiver is not None and kind < 0.5:
        for _ in range(5):
            m = random_representation(a, random_dims(a, rng, dim_budget), rng)
            if m is not None and m.dim:
                return m
    if kind < 0.75:
        return random_quotient_of_projective(a, rng, dim_budget)
    return random_submodule_of_projective(a, rng, dim_budget)


def random_modules(a: Algebra, count: int, seed, dim_budget: int = 6):
    rng = _rng(seed)
    for _ in range(count):
        yield random_module(a, rng, dim_budget)

