"""Unital subalgebras, gluing of idempotents, restriction, and syzygy transfer.

The transfer machinery realises a high B-syzygy of a B-module inside a
projective A-module and checks that it is an A-submodule there.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra, generated_subalgebra, is_basis_ideal
from .exactla import Subspace, coords_in, nullspace, rank_ff, rref, solve_ff
from .homology import syzygy, syzygy_step
from .modrep import (
    FreeData,
    Module,
    ModHom,
    ModuleError,
    decompose,
    free_data,
    quotient,
    regular_module,
    split_presentation,
    submodule,
    zero_module,
)


class EmbeddingError(ValueError):
    pass


@dataclass
class SubalgebraEmbedding:
    sub: Algebra
    ambient: Algebra
    inclusion: np.ndarray  # dim A x dim B
    notes: list[str] = field(default_factory=list)

    def image(self) -> Subspace:
        return Subspace(self.inclusion.T, self.ambient.dim, self.ambient.p)

    def __call__(self, x) -> np.ndarray:
        return (self.inclusion @ np.asarray(x, dtype=np.int64)) % self.ambient.p

    def failures(self) -> list[str]:
        a, b, iota = self.ambient, self.sub, self.inclusion
        out = []
        if a.p != b.p:
            return ["different fields"]
        if iota.shape != (a.dim, b.dim):
            return [f"inclusion has shape {iota.shape}"]
        if rank_ff(iota, a.p) != b.dim:
            out.append("inclusion is not injective")
        if not np.array_equal(self(b.unit), a.unit):
            out.append("unit not preserved")
        lhs = np.einsum("ai,bj,ijk->abk", iota.T, iota.T, a.table) % a.p
        rhs = np.einsum("abk,ik->abi", b.table, iota) % a.p
        if not np.array_equal(lhs, rhs):
            out.append("inclusion is not multiplicative")
        return out

    def then(self, outer: "SubalgebraEmbedding") -> "SubalgebraEmbedding":
        """Compose B -> A with A -> C."""
        if outer.sub is not self.ambient:
            raise EmbeddingError("embeddings do not compose")
        return SubalgebraEmbedding(self.sub, outer.ambient, (outer.inclusion @ self.inclusion) % self.ambient.p)


def identity_embedding(a: Algebra) -> SubalgebraEmbedding:
    return SubalgebraEmbedding(a, a, np.eye(a.dim, dtype=np.int64))


def _structure_from_basis(a: Algebra, basis: np.ndarray) -> np.ndarray:
    nb = basis.shape[0]
    prods = np.einsum("ai,bj,ijk->abk", basis, basis, a.table).reshape(-1, a.dim) % a.p
    sol = solve_ff(basis.T, prods.T, a.p)
    if sol is None:
        raise EmbeddingError("span is not closed under multiplication")
    return sol.particular.T.reshape(nb, nb, nb)


def _primitive_idempotents(table, unit, p) -> list[np.ndarray]:
    """Complete orthogonal primitive idempotents from the regular module."""
    tmp = Algebra(table, unit, [unit], p=p)
    dec = decompose(regular_module(tmp))
    out = []
    for s in dec.summands:
        for inc, proj in zip(s.inclusions, s.projections):
            # the endomorphism inc.proj of A is right multiplication by its value at 1
            out.append(((inc @ proj) @ unit) % p)
    return out


def _label_of(a: Algebra, row: np.ndarray, fallback: str) -> str:
    nz = np.flatnonzero(row)
    if len(nz) == 1 and row[nz[0]] == 1:
        return a.labels[int(nz[0])]
    return fallback


def subalgebra_from_elements(a: Algebra, elements, name: str = "") -> SubalgebraEmbedding:
    """The unital subalgebra generated by the given elements of A."""
    elements = [np.asarray(e, dtype=np.int64) % a.p for e in elements]
    span = generated_subalgebra(a, elements)
    notes = []
    given = Subspace(np.array([a.unit] + elements), a.dim, a.p)
    if given.dim < span.dim:
        notes.append(f"input spanned {given.dim} dimensions; closed up to the generated subalgebra of dim {span.dim}")
    basis = span.basis
    table = _structure_from_basis(a, basis)
    unit = solve_ff(basis.T, a.unit, a.p).particular
    idems = _primitive_idempotents(table, unit, a.p)
    labels = [_label_of(a, r, f"s{k}") for k, r in enumerate(basis)]
    b = Algebra(table, unit, idems, p=a.p, labels=labels, name=name)
    emb = SubalgebraEmbedding(b, a, basis.T.copy(), notes)
    if emb.failures():
        raise EmbeddingError("; ".join(emb.failures()))
    return emb


def glue_idempotents(a: Algebra, blocks, name: str = "") -> SubalgebraEmbedding:
    """span(rad A and one idempotent per block), the sum of the block's e_i."""
    k = len(a.idempotents)
    flat = [i for blk in blocks for i in blk]
    if sorted(flat) != list(range(k)) or any(len(b) == 0 for b in blocks):
        raise EmbeddingError(f"blocks must partition the {k} idempotents")
    sums = [sum(a.idempotents[i] for i in blk) % a.p for blk in blocks]
    rad = a.radical.basis
    basis = np.concatenate([np.array(sums), rad]) if rad.shape[0] else np.array(sums)
    table = _structure_from_basis(a, basis)
    r = len(blocks)
    unit = np.zeros(basis.shape[0], dtype=np.int64)
    unit[:r] = 1
    idems = [np.eye(basis.shape[0], dtype=np.int64)[i] for i in range(r)]
    labels = ["+".join(_label_of(a, a.idempotents[i], f"f{i}") for i in blk) for blk in blocks]
    labels += [_label_of(a, row, f"r{k}") for k, row in enumerate(rad)]
    b = Algebra(table, unit, idems, p=a.p, labels=labels, name=name)
    emb = SubalgebraEmbedding(b, a, basis.T.copy())
    bad = emb.failures()
    if bad:
        raise EmbeddingError("; ".join(bad))
    return emb


@dataclass(frozen=True)
class RadicalConditions:
    left_ideal: bool
    two_sided_ideal: bool
    equal_radicals: bool


def radical_image(emb: SubalgebraEmbedding) -> Subspace:
    b = emb.sub
    rb = b.radical.basis
    vecs = (emb.inclusion @ rb.T).T % b.p if rb.shape[0] else np.zeros((0, emb.ambient.dim), dtype=np.int64)
    return Subspace(vecs, emb.ambient.dim, b.p)


def check_radical_conditions(emb: SubalgebraEmbedding) -> RadicalConditions:
    a = emb.ambient
    img = radical_image(emb)
    left = is_basis_ideal(a, img, "left")
    right = is_basis_ideal(a, img, "right")
    return RadicalConditions(left, left and right, img == a.radical)


def restrict(m: Module, emb: SubalgebraEmbedding) -> Module:
    if m.algebra is not emb.ambient:
        raise ModuleError("module is not over the ambient algebra")
    act = np.einsum("ik,iab->kab", emb.inclusion, m.action) % m.p
    return Module(emb.sub, act, m.name)


# --- chains ------------------------------------------------------------------------


@dataclass
class Chain:
    """A_0 <= A_1 <= ... <= A_s with consecutive embeddings."""

    algebras: list[Algebra]
    steps: list[SubalgebraEmbedding]  # steps[i]: A_i -> A_{i+1}

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def bottom(self) -> Algebra:
        return self.algebras[0]

    @property
    def top(self) -> Algebra:
        return self.algebras[-1]

    def into_top(self, i: int) -> SubalgebraEmbedding:
        emb = identity_embedding(self.algebras[i])
        for st in self.steps[i:]:
            emb = emb.then(st)
        return emb

    def embedding(self, i: int, j: int) -> SubalgebraEmbedding:
        emb = identity_embedding(self.algebras[i])
        for st in self.steps[i:j]:
            emb = emb.then(st)
        return emb


def chain_from_root_embeddings(embs: list[SubalgebraEmbedding]) -> Chain:
    """Build a chain from embeddings of each member into a common root."""
    root = embs[0].ambient
    steps = []
    for inner, outer in zip(embs, embs[1:]):
        if inner.ambient is not root or outer.ambient is not root:
            raise EmbeddingError("chain members must share the ambient algebra")
        sol = solve_ff(outer.inclusion, inner.inclusion, root.p)
        if sol is None:
            raise EmbeddingError(f"{inner.sub.name or 'member'} is not contained in {outer.sub.name or 'the next member'}")
        st = SubalgebraEmbedding(inner.sub, outer.sub, sol.particular)
        bad = st.failures()
        if bad:
            raise EmbeddingError("; ".join(bad))
        steps.append(st)
    return Chain([e.sub for e in embs], steps)


# --- syzygy transfer --------------------------------------------------------------------


def _free_part(emb: SubalgebraEmbedding, cover) -> tuple[FreeData, np.ndarray]:
    """F = sum of A.iota(f_j) over the cover's summands B f_j, with the
    inclusion J: P -> F (matrix dim F x dim P)."""
    a, p = emb.ambient, emb.ambient.p
    idems = [emb(emb.sub.idempotents[idx]) for idx, _ in cover.summands]
    free = free_data(a, idems)
    blocks = []
    for (_, basis_b), basis_a in zip(cover.summands, free.bases):
        elems = (emb.inclusion @ basis_b.T) % p  # A coordinates of the B-basis of B f_j
        blocks.append(coords_in(basis_a, elems.T).T % p)
    j = np.zeros((free.module.dim, cover.module.dim), dtype=np.int64)
    r = c = 0
    for blk in blocks:
        j[r : r + blk.shape[0], c : c + blk.shape[1]] = blk
        r += blk.shape[0]
        c += blk.shape[1]
    return free, j


@dataclass
class InducedStructure:
    omega_b: Module  # Omega_B^i(X)
    free: Module  # F, a projective A-module
    basis: np.ndarray  # rows of F spanning the image of Omega_B^i(X)
    module: Module  # that image as an A-module
    transfer: np.ndarray  # Omega_B^i(X) -> restricted module, identity in these bases
    steps: list = field(default_factory=list)
    free_embeddings: list = field(default_factory=list)  # (FreeData F_k, J_k) per step


def _resolution_steps(x: Module, n: int):
    steps, cur = [], x
    for _ in range(n):
        if cur.dim == 0:
            break
        st = syzygy_step(cur)
        steps.append(st)
        cur = st.syzygy
    return steps


def induce_A_structure(x: Module, emb: SubalgebraEmbedding, i: int = 2) -> InducedStructure:
    if i < 2:
        raise ValueError("need i >= 2")
    if not check_radical_conditions(emb).left_ideal:
        raise EmbeddingError("rad B is not a left ideal of A")
    a, p = emb.ambient, emb.ambient.p
    steps = _resolution_steps(x, i)
    if len(steps) < i or steps[-1].syzygy.dim == 0:
        z = zero_module(a)
        omega = steps[-1].syzygy if steps else zero_module(emb.sub)
        return InducedStructure(omega, z, np.zeros((0, 0), dtype=np.int64), z, np.zeros((0, 0), dtype=np.int64), steps)
    last = steps[-1]
    free, j = _free_part(emb, last.cover)
    fmod = free.module
    vecs = (j @ last.kernel_basis.T).T % p
    basis, piv = rref(vecs, p)
    if basis.shape[0] != vecs.shape[0]:
        raise ModuleError("syzygy does not embed in the free part")
    try:
        mod = submodule(fmod, basis, check=True)
    except ModuleError as exc:
        raise ModuleError(f"syzygy is not closed under the A-action: {exc}") from None
    # Omega coordinates -> coordinates in the RREF basis
    transfer = coords_in(basis, vecs) % p
    out = InducedStructure(last.syzygy, fmod, basis, mod, transfer.T.copy(), steps)
    out.free_embeddings = [_free_part(emb, st.cover) for st in steps]
    return out


@dataclass
class Lemma23Report:
    passed: bool
    conditions: RadicalConditions
    lines: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    def text(self) -> str:
        return "\n".join(self.lines + [f"failure {f}" for f in self.failures] + [f"lemma23 {'pass' if self.passed else 'fail'}"])


def lemma23_check(x: Module, emb: SubalgebraEmbedding, i: int = 2, seed=0) -> Lemma23Report:
    """Realise Omega_B^i(X) as an A-module and verify the transfer statements."""
    rng = np.random.default_rng(seed)
    cond = check_radical_conditions(emb)
    rep = Lemma23Report(False, cond)
    rep.lines.append(f"conditions left={cond.left_ideal} two_sided={cond.two_sided_ideal} equal={cond.equal_radicals}")
    if not cond.left_ideal:
        rep.failures.append("rad B is not a left ideal in A")
        return rep
    try:
        ind = induce_A_structure(x, emb, i)
    except ModuleError as exc:
        rep.failures.append(str(exc))
        return rep
    n_mod = ind.module
    rep.lines.append(f"omega_B dim {ind.omega_b.dim}")
    if n_mod.dim == 0:
        rep.lines.append("syzygy vanishes")
        rep.passed = True
        return rep
    # round trip: restriction along emb is Omega_B^i(X) via the transfer matrix
    back = restrict(n_mod, emb)
    if not ModHom(ind.omega_b, back, ind.transfer).is_homomorphism():
        rep.failures.append("restriction does not recover the B-syzygy")
    # N' in F, Z = F/N', compare with Omega_A(Z)
    z, q = quotient(ind.free, ind.basis)
    split = split_presentation(ind.free_embeddings[-1][0], q, z, ind.basis)
    rep.lines.append(f"Z dim {z.dim}; Omega_A(Z) dim {split.omega_basis.shape[0]}; Q dim {split.q_module.dim}")
    rep.failures += [f"N' = Omega_A(Z) + Q: {f}" for f in split.failures]
    if cond.two_sided_ideal:
        _two_sided_part(ind, emb, cond, rep, rng)
    rep.passed = not rep.failures
    return rep


def _two_sided_part(ind: InducedStructure, emb, cond, rep, rng):
    p = emb.ambient.p
    steps = ind.steps
    fdata, _ = ind.free_embeddings[-1]
    fmod = fdata.module
    cover = steps[-1].cover
    # the previous syzygy X' sits in G through the step before
    gdata, jg = ind.free_embeddings[-2]
    gmod = gdata.module
    to_g = (jg @ steps[-2].kernel_basis.T) % p  # X' coords -> G
    # f': F -> G, a.iota(f_j) |-> a.y_j
    fprime = fdata.hom_to(gmod, [(to_g @ gen) % p for gen in cover.generators])
    if not ModHom(fmod, gmod, fprime).is_homomorphism():
        rep.failures.append("f' is not A-linear")
        return
    kprime_basis = nullspace(fprime, p)
    if not Subspace(kprime_basis, fmod.dim, p).contains_all(ind.basis):
        rep.failures.append("N' is not inside ker f'")
        return
    kprime = submodule(fmod, kprime_basis, check=False)
    n_in_k = rref(coords_in(kprime_basis, ind.basis), p)[0]
    s_mod, _ = quotient(kprime, n_in_k)
    s_b = restrict(s_mod, emb)
    semisimple_b = all(not s_b.act(r).any() for r in emb.sub.radical.basis)
    rep.lines.append(f"S dim {s_mod.dim}; semisimple over B {semisimple_b}")
    if not semisimple_b:
        rep.failures.append("S is not semisimple over B")
    if cond.equal_radicals:
        semisimple_a = all(not s_mod.act(r).any() for r in emb.ambient.radical.basis)
        rep.lines.append(f"S semisimple over A {semisimple_a}")
        if not semisimple_a:
            rep.failures.append("S is not semisimple over A")
    # W = im f' = sigma_1(Omega Y) + Q_1 and K' = sigma_2(Omega W) + Q_2
    w_basis = rref(fprime.T, p)[0]
    y_mod, y_proj = quotient(gmod, w_basis)
    split1 = split_presentation(gdata, y_proj, y_mod, w_basis)
    rep.failures += [f"W = Omega_A(Y) + Q: {f}" for f in split1.failures]
    w_mod = submodule(gmod, w_basis, check=False)
    onto_w = coords_in(w_basis, fprime.T).T % p
    split2 = split_presentation(fdata, onto_w, w_mod, kprime_basis)
    rep.failures += [f"K' = Omega_A(W) + Q: {f}" for f in split2.failures]
    omega2 = syzygy(syzygy(y_mod))
    omega_w = split2.omega_basis.shape[0]
    rep.lines.append(f"Y dim {y_mod.dim}; Omega_A^2(Y) dim {omega2.dim}; P dim {split2.q_module.dim}")
    if omega_w != omega2.dim:
        rep.failures.append(f"Omega_A(W) has dim {omega_w}, Omega_A^2(Y) has dim {omega2.dim}")
