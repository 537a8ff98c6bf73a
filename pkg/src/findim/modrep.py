"""Left modules over an :class:`~findim.algebra.Algebra`.

A module of dimension d is a stack of action matrices ``action[i]`` (d x d),
one per algebra basis element.  Homomorphisms are d_target x d_source
matrices.  All randomness is drawn from an explicit seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import flint
import numpy as np

from .algebra import Algebra
from .exactla import Subspace, contains, coords_in, inverse_ff, matmul, nullspace, pivots_of, rank_ff, rref, solve_ff

ISO_TRIALS = 20


class ModuleError(ValueError):
    pass


class DecompositionError(ArithmeticError):
    pass


class Module:
    def __init__(self, algebra: Algebra, action, name: str = ""):
        self.algebra = algebra
        n = algebra.dim
        act = np.asarray(action, dtype=np.int64)
        if act.size == 0:
            d = act.shape[-1] if act.ndim == 3 else 0
            act = np.zeros((n, d, d), dtype=np.int64)
        self.action = act % algebra.p
        if self.action.ndim != 3 or self.action.shape[0] != n or self.action.shape[1] != self.action.shape[2]:
            raise ModuleError(f"action must have shape ({n}, d, d), got {self.action.shape}")
        self.name = name

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def p(self) -> int:
        return self.algebra.p

    def __repr__(self):
        label = f"{self.name}, " if self.name else ""
        return f"Module({label}dim={self.dim}, dimvec={self.dim_vector})"

    def act(self, x) -> np.ndarray:
        """Matrix by which the algebra element x acts."""
        return np.tensordot(np.asarray(x, dtype=np.int64), self.action, axes=1) % self.p

    @cached_property
    def generator_action(self) -> list[np.ndarray]:
        return [self.act(g) for g in self.algebra.generators]

    @cached_property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(rank_ff(self.act(e), self.p) for e in self.algebra.idempotents)

    @cached_property
    def end_basis(self) -> np.ndarray:
        return hom_space(self, self)

    @cached_property
    def radical_basis(self) -> np.ndarray:
        """RREF rows spanning rad(A) * M."""
        rad = self.algebra.radical
        if rad.dim == 0 or self.dim == 0:
            return np.zeros((0, self.dim), dtype=np.int64)
        mats = np.tensordot(rad.basis, self.action, axes=1) % self.p  # (r, d, d)
        cols = np.transpose(mats, (0, 2, 1)).reshape(-1, self.dim)
        return Subspace(cols, self.dim, self.p).basis

    @cached_property
    def socle_basis(self) -> np.ndarray:
        """RREF rows spanning {v : rad(A) v = 0}."""
        rad = self.algebra.radical
        if rad.dim == 0:
            return np.eye(self.dim, dtype=np.int64)
        mats = np.tensordot(rad.basis, self.action, axes=1) % self.p
        return nullspace(mats.reshape(-1, self.dim), self.p)

    def is_zero(self) -> bool:
        return self.dim == 0


def check_module(m: Module) -> list[str]:
    """Failures of the unit and structure-constant compatibility axioms."""
    a, p = m.algebra, m.p
    out = []
    if not np.array_equal(m.act(a.unit), np.eye(m.dim, dtype=np.int64)):
        out.append("unit does not act as the identity")
    lhs = np.einsum("iab,jbc->ijac", m.action, m.action) % p
    rhs = np.tensordot(a.table, m.action, axes=([2], [0])) % p
    bad = np.argwhere((lhs != rhs).any(axis=(2, 3)))
    if bad.size:
        i, j = (int(x) for x in bad[0])
        out.append(f"rho({a.labels[i]}) rho({a.labels[j]}) != rho({a.labels[i]}*{a.labels[j]})")
    return out


@dataclass(frozen=True)
class ModHom:
    source: Module
    target: Module
    matrix: np.ndarray

    def is_homomorphism(self) -> bool:
        h, p = self.matrix, self.source.p
        lhs = np.einsum("ab,ibc->iac", h, self.source.action) % p
        rhs = np.einsum("iab,bc->iac", self.target.action, h) % p
        return np.array_equal(lhs, rhs)


# --- constructions ------------------------------------------------------------


def zero_module(a: Algebra) -> Module:
    return Module(a, np.zeros((a.dim, 0, 0), dtype=np.int64), "0")


def regular_module(a: Algebra) -> Module:
    return Module(a, a.left_mult.copy(), "A")


def direct_sum(*mods: Module) -> Module:
    if not mods:
        raise ModuleError("direct_sum needs at least one module")
    a = mods[0].algebra
    d = sum(m.dim for m in mods)
    act = np.zeros((a.dim, d, d), dtype=np.int64)
    o = 0
    for m in mods:
        if m.algebra is not a:
            raise ModuleError("direct summands over different algebras")
        act[:, o : o + m.dim, o : o + m.dim] = m.action
        o += m.dim
    return Module(a, act, " + ".join(m.name or "?" for m in mods))


def power(m: Module, k: int) -> Module:
    return direct_sum(*([m] * k)) if k else zero_module(m.algebra)


def sum_inclusions(mods) -> list[np.ndarray]:
    d = sum(m.dim for m in mods)
    out, o = [], 0
    for m in mods:
        inc = np.zeros((d, m.dim), dtype=np.int64)
        inc[o : o + m.dim, :] = np.eye(m.dim, dtype=np.int64)
        out.append(inc)
        o += m.dim
    return out


def span_closure(m: Module, vectors) -> np.ndarray:
    """RREF rows of the submodule generated by the given vectors."""
    v = np.asarray(vectors, dtype=np.int64).reshape(-1, m.dim) % m.p
    span = Subspace(v, m.dim, m.p)
    gens = m.generator_action
    while True:
        if span.dim == 0:
            return span.basis
        imgs = np.concatenate([matmul(span.basis, g.T, m.p) for g in gens])
        grown = Subspace(np.concatenate([span.basis, imgs]), m.dim, m.p)
        if grown.dim == span.dim:
            return span.basis
        span = grown


def submodule(m: Module, basis, check: bool = True) -> Module:
    """The submodule with the given RREF basis rows (must be invariant)."""
    basis = np.asarray(basis, dtype=np.int64).reshape(-1, m.dim)
    if basis.shape[0] == 0:
        return zero_module(m.algebra)
    piv = pivots_of(basis)
    imgs = np.einsum("iab,kb->ika", m.action, basis) % m.p  # image of each basis row
    act = np.transpose(imgs[:, :, piv], (0, 2, 1))
    sub = Module(m.algebra, act)
    if check:
        recon = np.einsum("ijk,kb->ijb", np.transpose(act, (0, 2, 1)), basis) % m.p
        if not np.array_equal(recon, imgs):
            raise ModuleError("subspace is not invariant under the algebra action")
    return sub


def quotient(m: Module, basis) -> tuple[Module, np.ndarray]:
    """M / U for an invariant RREF basis U; returns the module and projection."""
    basis = np.asarray(basis, dtype=np.int64).reshape(-1, m.dim)
    d = m.dim
    piv = pivots_of(basis)
    keep = [i for i in range(d) if i not in set(piv)]
    proj = np.eye(d, dtype=np.int64)
    if basis.shape[0]:
        proj = (proj - matmul(basis.T, proj[piv, :], m.p)) % m.p
    proj = proj[keep, :]
    # action on the complement basis vectors e_keep
    act = np.einsum("ab,ibc->iac", proj, m.action[:, :, keep]) % m.p
    return Module(m.algebra, act), proj


def restrict_action(m: Module, basis) -> Module:
    return submodule(m, basis, check=False)


# --- projectives, duals ------------------------------------------------------------


def _cache(a: Algebra, key: str) -> dict:
    c = a.__dict__.setdefault("_modrep_cache", {})
    return c.setdefault(key, {})


def projective_basis(a: Algebra, e) -> np.ndarray:
    """RREF rows (algebra coordinates) spanning A e."""
    return Subspace(a.rmat(e).T, a.dim, a.p).basis


def projective_module(a: Algebra, i: int) -> Module:
    """A e_i for the i-th idempotent."""
    cache = _cache(a, "proj")
    if i not in cache:
        basis = projective_basis(a, a.idempotents[i])
        mod = submodule(regular_module(a), basis, check=False)
        mod.name = f"P{i + 1}"
        cache[i] = (mod, basis)
    return cache[i][0]


def projective_module_basis(a: Algebra, i: int) -> np.ndarray:
    projective_module(a, i)
    return _cache(a, "proj")[i][1]


def indecomposable_projectives(a: Algebra) -> list[Module]:
    return [projective_module(a, i) for i in range(len(a.idempotents))]


def dual_module(m: Module) -> Module:
    """Hom_F(M, F) as a module over the opposite algebra."""
    dm = Module(m.algebra.op, np.transpose(m.action, (0, 2, 1)).copy(), f"D({m.name})" if m.name else "")
    return dm


def injective_module(a: Algebra, i: int) -> Module:
    """D(e_i A): the injective envelope of the i-th simple."""
    m = dual_module(projective_module(a.op, i))
    m.name = f"I{i + 1}"
    return m


def injective_cogenerator(a: Algebra) -> Module:
    m = dual_module(regular_module(a.op))
    m.name = "DA"
    return m


@dataclass
class ProjectiveCover:
    module: Module  # P = sum of A e_i
    map: np.ndarray  # d_M x d_P
    summands: list[tuple[int, np.ndarray]]  # (idempotent index, basis rows of A e_i)
    generators: list[np.ndarray]  # images in M of the generators e_i of each summand

    @property
    def kernel_basis(self) -> np.ndarray:
        return nullspace(self.map, self.module.p) if self.module.dim else np.zeros((0, 0), dtype=np.int64)


def projective_cover(m: Module) -> ProjectiveCover:
    """Minimal projective cover built greedily from top generators."""
    a, p = m.algebra, m.p
    if m.dim == 0:
        return ProjectiveCover(zero_module(a), np.zeros((0, 0), dtype=np.int64), [], [])
    current = Subspace(m.radical_basis, m.dim, p)
    gens: list[tuple[int, np.ndarray]] = []
    for i, e in enumerate(a.idempotents):
        ei = m.act(e)
        for col in ei.T:
            if current.dim == m.dim:
                break
            if col.any() and col not in current:
                gens.append((i, col.copy()))
                current = current + Subspace(span_closure(m, col), m.dim, p)
    if current.dim != m.dim:
        raise ModuleError("idempotents do not generate the module top (idempotents incomplete?)")
    mods, summands, blocks = [], [], []
    for i, x in gens:
        basis = projective_module_basis(a, i)
        mods.append(projective_module(a, i))
        summands.append((i, basis))
        # a e_i  |->  a . x  for each basis element a of A e_i
        blocks.append(np.einsum("kb,kij,j->ib", basis.T, m.action, x) % p)
    cover_mod = direct_sum(*mods)
    cmap = np.concatenate(blocks, axis=1)
    cover = ProjectiveCover(cover_mod, cmap, summands, [x for _, x in gens])
    if rank_ff(cmap, p) != m.dim:
        raise ModuleError("projective cover map is not surjective")
    ker = cover.kernel_basis
    if ker.shape[0] and not Subspace(cover_mod.radical_basis, cover_mod.dim, p).contains_all(ker):
        raise ModuleError("projective cover is not minimal: kernel not inside rad P")
    return cover


def is_projective(m: Module) -> bool:
    return m.dim == 0 or projective_cover(m).module.dim == m.dim


def injective_envelope(m: Module) -> tuple[Module, np.ndarray]:
    """Injective envelope E with an embedding M -> E (d_E x d_M)."""
    if m.dim == 0:
        return zero_module(m.algebra), np.zeros((0, 0), dtype=np.int64)
    cov = projective_cover(dual_module(m))
    env = dual_module(cov.module)
    emb = cov.map.T.copy()
    if env.algebra is not m.algebra:
        raise ModuleError("opposite algebra cache broken")
    image = Subspace(emb.T, env.dim, m.p)
    if not image.contains_all(env.socle_basis):
        raise ModuleError("injective envelope: socle not contained in the image")
    return env, emb


# --- hom spaces ---------------------------------------------------------------------


def _idempotent_frame(m: Module):
    """Change of basis adapted to M = sum e_i M: (T, blocks) with T invertible."""
    cols, blocks, o = [], [], 0
    for e in m.algebra.idempotents:
        img = Subspace(m.act(e).T, m.dim, m.p).basis
        cols.append(img)
        blocks.append((o, o + img.shape[0]))
        o += img.shape[0]
    t = np.concatenate(cols).T if cols and o else np.zeros((m.dim, 0), dtype=np.int64)
    return t, blocks


def hom_space(m: Module, n: Module) -> np.ndarray:
    """Canonical basis of Hom_A(M, N), shape (k, d_N, d_M).

    In bases adapted to the idempotents a homomorphism is block diagonal,
    H = diag(H_v) with H_v: e_v M -> e_v N.  Each non-idempotent generator
    g contributes the block equations g_N[t,s] H_s = H_t g_M[t,s].
    """
    if m.algebra is not n.algebra:
        raise ModuleError("hom_space: modules over different algebras")
    p = m.p
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return np.zeros((0, dn, dm), dtype=np.int64)
    tm, bm = _idempotent_frame(m)
    tn, bn = _idempotent_frame(n)
    if tm.shape[1] != dm or tn.shape[1] != dn:
        raise ModuleError("idempotents do not decompose the module")
    tm_inv = inverse_ff(tm, p)
    tn_inv = inverse_ff(tn, p)
    # unknown offsets per idempotent block (row-major H_v)
    offs, total = [], 0
    for (a0, a1), (b0, b1) in zip(bn, bm):
        offs.append(total)
        total += (a1 - a0) * (b1 - b0)
    if total == 0:
        return np.zeros((0, dn, dm), dtype=np.int64)
    basis = np.eye(total, dtype=np.int64)
    first = True  # basis is still the identity
    idem_set = {tuple(e) for e in m.algebra.idempotents}
    nb = len(bm)
    for g in m.algebra.generators:
        if tuple(g) in idem_set:
            continue
        gm = matmul(matmul(tm_inv, m.act(g), p), tm, p)
        gn = matmul(matmul(tn_inv, n.act(g), p), tn, p)
        blocks = []
        for t in range(nb):
            (nt0, nt1), (mt0, mt1) = bn[t], bm[t]
            for s in range(nb):
                (ns0, ns1), (ms0, ms1) = bn[s], bm[s]
                gn_ts = gn[nt0:nt1, ns0:ns1]
                gm_ts = gm[mt0:mt1, ms0:ms1]
                rows = (nt1 - nt0) * (ms1 - ms0)
                if rows == 0 or not (gn_ts.any() or gm_ts.any()):
                    continue
                eq = np.zeros((rows, total), dtype=np.int64)
                if (ns1 - ns0) * (ms1 - ms0):
                    eq[:, offs[s] : offs[s] + (ns1 - ns0) * (ms1 - ms0)] += np.kron(gn_ts, np.eye(ms1 - ms0, dtype=np.int64))
                if (nt1 - nt0) * (mt1 - mt0):
                    eq[:, offs[t] : offs[t] + (nt1 - nt0) * (mt1 - mt0)] -= np.kron(np.eye(nt1 - nt0, dtype=np.int64), gm_ts.T)
                blocks.append(eq % p)
        if not blocks:
            continue
        eqs = np.concatenate(blocks)
        reduced = eqs if first else matmul(eqs, basis.T, p)
        reduced = reduced[reduced.any(axis=1)]
        if reduced.shape[0] == 0:
            continue
        ker = nullspace(reduced, p)
        basis = ker if first else matmul(ker, basis, p)
        first = False
        if basis.shape[0] == 0:
            return np.zeros((0, dn, dm), dtype=np.int64)
    hs = np.zeros((basis.shape[0], dn, dm), dtype=np.int64)
    for v, ((a0, a1), (b0, b1)) in enumerate(zip(bn, bm)):
        size = (a1 - a0) * (b1 - b0)
        if size:
            hs[:, a0:a1, b0:b1] = basis[:, offs[v] : offs[v] + size].reshape(-1, a1 - a0, b1 - b0)
    hs = matmul(matmul(tn, hs, p), tm_inv, p)
    flat = rref(hs.reshape(hs.shape[0], -1), p)[0]
    return flat.reshape(-1, dn, dm)


def hom_dim(m: Module, n: Module) -> int:
    return hom_space(m, n).shape[0]


# --- isomorphism ---------------------------------------------------------------------


@dataclass
class IsoResult:
    status: str  # "yes" | "no" | "inconclusive"
    witness: np.ndarray | None = None  # M -> N isomorphism when yes
    certificate: str = ""

    def __bool__(self):
        return self.status == "yes"


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def end_radical_basis(m: Module) -> np.ndarray:
    """rad End(M) as RREF rows of flattened matrices (trace criterion, p > dim M)."""
    e = m.end_basis
    k = e.shape[0]
    if k == 0:
        return np.zeros((0, m.dim * m.dim), dtype=np.int64)
    if m.p <= m.dim:
        raise DecompositionError(f"trace criterion needs p > dim M (p={m.p}, dim={m.dim})")
    flat = e.reshape(k, -1)
    flat_t = np.transpose(e, (0, 2, 1)).reshape(k, -1)
    t = matmul(flat, flat_t.T, m.p)  # tr(E_i E_j)
    coeffs = nullspace(t.T, m.p)
    if coeffs.shape[0] == 0:
        return np.zeros((0, m.dim * m.dim), dtype=np.int64)
    return rref(matmul(coeffs, flat, m.p), m.p)[0]


def is_isomorphic(m: Module, n: Module, seed=0, trials: int = ISO_TRIALS) -> IsoResult:
    """Randomized isomorphism test with cheap invariant certificates for ``no``."""
    if m.algebra is not n.algebra:
        return IsoResult("no", certificate="different algebras")
    if m.dim != n.dim:
        return IsoResult("no", certificate=f"dim {m.dim} != {n.dim}")
    if m.dim == 0:
        return IsoResult("yes", np.zeros((0, 0), dtype=np.int64), "both zero")
    if m.dim_vector != n.dim_vector:
        return IsoResult("no", certificate=f"dimension vector {m.dim_vector} != {n.dim_vector}")
    em, en = m.end_basis.shape[0], n.end_basis.shape[0]
    if em != en:
        return IsoResult("no", certificate=f"dim End differs ({em} vs {en})")
    hmn = hom_space(m, n)
    hnm = hom_space(n, m)
    if hmn.shape[0] != em or hnm.shape[0] != em:
        return IsoResult("no", certificate=f"dim Hom(M,N)={hmn.shape[0]}, dim Hom(N,M)={hnm.shape[0]}, dim End={em}")
    rng = _rng(seed)
    p = m.p
    for _ in range(trials):
        c = rng.integers(0, p, size=hmn.shape[0])
        h = np.tensordot(c, hmn, axes=1) % p
        if rank_ff(h, p) == m.dim:
            return IsoResult("yes", h, "random invertible homomorphism")
    # deterministic fallback: g o f invertible forces f to be an isomorphism;
    # all g o f inside rad End(M) rules isomorphism out
    rad = end_radical_basis(m)
    all_radical = True
    for f in hmn:
        for g in hnm:
            gf = matmul(g, f, p)
            if rank_ff(gf, p) == m.dim:
                return IsoResult("yes", f.copy(), "composite g.f invertible")
            if all_radical and not _in_rowspace(rad, gf.ravel(), p):
                all_radical = False
    if all_radical:
        return IsoResult("no", certificate="Hom(N,M) o Hom(M,N) lies in rad End(M)")
    return IsoResult("inconclusive", certificate=f"no invertible homomorphism in {trials} trials")


def _in_rowspace(basis, v, p) -> bool:
    return contains(basis, v, p)


# --- polynomials over F_p ---------------------------------------------------------


def minimal_polynomial(x: np.ndarray, p: int) -> flint.nmod_poly:
    """Monic minimal polynomial of a square matrix over F_p."""
    d = x.shape[0]
    return flint.nmod_mat(d, d, (x % p).ravel().tolist(), p).minpoly()


def poly_eval_matrix(f: flint.nmod_poly, x: np.ndarray, p: int) -> np.ndarray:
    d = x.shape[0]
    out = np.zeros((d, d), dtype=np.int64)
    eye = np.eye(d, dtype=np.int64)
    for c in reversed([int(c) for c in f.coeffs()]):
        out = (matmul(out, x, p) + c * eye) % p
    return out


def primary_idempotents(x: np.ndarray, p: int) -> list[np.ndarray]:
    """Idempotents of F_p[x] for the primary factors of the minimal polynomial
    (one per distinct irreducible factor; a single identity when x is primary)."""
    f = minimal_polynomial(x, p)
    _, facs = f.factor()
    if len(facs) < 2:
        return [np.eye(x.shape[0], dtype=np.int64)]
    out = []
    for g, k in facs:
        q = g**k
        rest = f // q
        d, s, _ = rest.xgcd(q)  # s * rest + t * q = d = 1
        if d.degree() != 0:
            raise ArithmeticError("primary factors not coprime")
        s = s * int(pow(int(d.coeffs()[0]), -1, p))
        out.append(poly_eval_matrix((s * rest) % f, x, p))
    return out


def lift_idempotent(e: np.ndarray, p: int) -> np.ndarray:
    """Iterate e <- 3e^2 - 2e^3 until e is idempotent."""
    d = e.shape[0]
    for _ in range(2 * d + 2):
        e2 = matmul(e, e, p)
        if np.array_equal(e2, e):
            return e
        e = (3 * e2 - 2 * matmul(e2, e, p)) % p
    raise DecompositionError("idempotent lifting did not converge")


# --- decomposition -----------------------------------------------------------


@dataclass
class Summand:
    module: Module
    multiplicity: int
    inclusions: list[np.ndarray]  # d_orig x d_summand, one per copy
    projections: list[np.ndarray]  # d_summand x d_orig


@dataclass
class Decomposition:
    original: Module
    summands: list[Summand]
    certified: bool = True
    notes: list[str] = field(default_factory=list)

    def witness(self) -> np.ndarray:
        """Invertible matrix identifying the reassembled sum with the original."""
        cols = [inc for s in self.summands for inc in s.inclusions]
        if not cols:
            return np.zeros((self.original.dim, 0), dtype=np.int64)
        return np.concatenate(cols, axis=1)

    def reassemble(self) -> Module:
        mods = [s.module for s in self.summands for _ in range(s.multiplicity)]
        return direct_sum(*mods) if mods else zero_module(self.original.algebra)

    @property
    def indecomposables(self) -> list[Module]:
        return [s.module for s in self.summands]

    def multiset(self) -> list[tuple[Module, int]]:
        return [(s.module, s.multiplicity) for s in self.summands]


def _split_image(m: Module, e: np.ndarray):
    """Submodule e(M) with its inclusion and projection."""
    basis = Subspace(e.T, m.dim, m.p).basis
    sub = submodule(m, basis, check=False)
    inc = basis.T.copy()
    proj = e[pivots_of(basis), :] % m.p
    return sub, inc, proj


def _field_certificate(x: np.ndarray, q: int, p: int) -> bool:
    _, facs = minimal_polynomial(x, p).factor()
    return len(facs) == 1 and facs[0][0].degree() == q


def _commutative_mod_radical(m: Module, rad: np.ndarray) -> bool:
    e, p = m.end_basis, m.p
    for i in range(len(e)):
        for j in range(i + 1, len(e)):
            c = (matmul(e[i], e[j], p) - matmul(e[j], e[i], p)) % p
            if c.any() and not contains(rad, c.ravel(), p):
                return False
    return True


def _find_split(m: Module, rng: np.random.Generator) -> list[np.ndarray] | None:
    """Orthogonal idempotent endomorphisms summing to 1 (at least two), or
    None when End(M) is local."""
    e, p = m.end_basis, m.p
    k = e.shape[0]
    if k <= 1:
        return None
    rad = end_radical_basis(m)
    q = k - rad.shape[0]
    if q == 1:
        return None
    comm = None
    candidates = [np.tensordot(rng.integers(0, p, size=k), e, axes=1) % p for _ in range(ISO_TRIALS)]
    candidates += list(e)
    for x in candidates:
        idems = primary_idempotents(x, p)
        if len(idems) > 1:
            return [lift_idempotent(i, p) for i in idems]
        if comm is None:
            comm = _commutative_mod_radical(m, rad)
        if comm and _field_certificate(x, q, p):
            return None
    raise DecompositionError("could neither split the module nor certify End/rad End a field")


def _basic_split(a: Algebra) -> bool:
    """A / rad A is a product of copies of F_p indexed by the idempotents."""
    cache = _cache(a, "basic")
    if "v" not in cache:
        cache["v"] = a.dim - a.radical.dim == len(a.idempotents)
    return cache["v"]


def _peel_simple_summands(m: Module):
    """Split M = W + M' with W semisimple and M' free of simple summands.

    A simple submodule meeting rad M trivially is a direct summand, so W is a
    complement of soc M intersect rad M inside soc M.  Needs 1-dimensional
    simples (checked by the caller).
    """
    p, d = m.p, m.dim
    soc = Subspace(m.socle_basis, d, p)
    rad = Subspace(m.radical_basis, d, p)
    vecs = []
    span = Subspace(_intersect(soc.basis, rad.basis, d, p), d, p)
    for e in m.algebra.idempotents:
        ei = m.act(e)
        for v in matmul(soc.basis, ei.T, p) if soc.dim else []:
            if v.any() and v not in span:
                vecs.append(v)
                span = span + Subspace(v[None], d, p)
    if not vecs:
        return None
    w = np.array(vecs).T  # d x k
    top_mod, top_proj = quotient(m, rad.basis)
    wt = matmul(top_proj, w, p)  # images in the top
    # homogeneous complement of the image inside the top
    tspan = Subspace(wt.T, top_mod.dim, p)
    comp = []
    for e in m.algebra.idempotents:
        for v in top_mod.act(e).T:
            if v.any() and v not in tspan:
                comp.append(v)
                tspan = tspan + Subspace(v[None], top_mod.dim, p)
    frame = np.concatenate([wt] + ([np.array(comp).T] if comp else []), axis=1)
    r = matmul(inverse_ff(frame, p)[: w.shape[1]], top_proj, p)  # M -> W coordinates
    rest = nullspace(r, p)
    pieces = []
    for k in range(w.shape[1]):
        sub = submodule(m, Subspace(w[:, k][None], d, p).basis, check=False)
        # rescale so the inclusion is the vector itself
        pieces.append((Module(m.algebra, sub.action), w[:, k : k + 1].copy(), r[k : k + 1].copy()))
    if rest.shape[0]:
        back = (np.eye(d, dtype=np.int64) - matmul(w, r, p)) % p
        pieces.append((submodule(m, rest, check=False), rest.T.copy(), coords_in(rest, back.T).T % p))
    return pieces


def _intersect(a: np.ndarray, b: np.ndarray, d: int, p: int) -> np.ndarray:
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((0, d), dtype=np.int64)
    ker = nullspace(np.concatenate([a, -b % p]).T % p, p)
    return Subspace(matmul(ker[:, : a.shape[0]], a, p), d, p).basis


def _split_all(m: Module, rng, peel: bool = True) -> list[tuple[Module, np.ndarray, np.ndarray]]:
    if m.dim == 0:
        return []
    eye = np.eye(m.dim, dtype=np.int64)
    if m.dim == 1:
        return [(m, eye, eye)]
    if peel and _basic_split(m.algebra):
        pieces = _peel_simple_summands(m)
        if pieces is not None:
            out = []
            for sub, inc, proj in pieces:
                parts = [(sub, np.eye(sub.dim, dtype=np.int64), np.eye(sub.dim, dtype=np.int64))] if sub.dim == 1 else _split_all(sub, rng, peel=False)
                out += [(mod, matmul(inc, i2, m.p), matmul(p2, proj, m.p)) for mod, i2, p2 in parts]
            return out
    idems = _find_split(m, rng)
    if idems is None:
        return [(m, eye, eye)]
    out = []
    for part in idems:
        sub, inc, proj = _split_image(m, part)
        for mod, inc2, proj2 in _split_all(sub, rng, peel=False):
            out.append((mod, matmul(inc, inc2, m.p), matmul(proj2, proj, m.p)))
    return out


def _sort_key(mod: Module):
    return (mod.dim, mod.dim_vector, mod.end_basis.shape[0], mod.action.tobytes())


def decompose(m: Module, seed=0) -> Decomposition:
    """Krull-Schmidt decomposition with multiplicities and iso witnesses."""
    rng = _rng(seed)
    pieces = _split_all(m, rng)
    pieces.sort(key=lambda t: _sort_key(t[0]))
    classes: list[Summand] = []
    certified, notes = True, []
    for mod, inc, proj in pieces:
        placed = False
        for cls in classes:
            if cls.module.dim != mod.dim:
                continue
            res = is_isomorphic(cls.module, mod, rng)
            if res.status == "yes":
                # transport the piece onto the representative: inc' = inc . w
                w = res.witness  # rep -> piece
                cls.inclusions.append(matmul(inc, w, m.p))
                cls.projections.append(matmul(inverse_ff(w, m.p), proj, m.p))
                cls.multiplicity += 1
                placed = True
                break
            if res.status == "inconclusive":
                certified = False
                notes.append(f"inconclusive iso test between summands of dim {mod.dim}")
        if not placed:
            classes.append(Summand(mod, 1, [inc], [proj]))
    classes.sort(key=lambda s: _sort_key(s.module))
    return Decomposition(m, classes, certified, notes)


def is_indecomposable(m: Module, seed=0) -> bool:
    return m.dim > 0 and _find_split(m, _rng(seed)) is None


# --- simples ---------------------------------------------------------------------


def simple_modules(a: Algebra, seed=0) -> list[Module]:
    """Simple modules from the decomposition of A / rad A, one per iso class,
    ordered by the first idempotent that acts nonzero."""
    cache = _cache(a, "simples")
    if "list" in cache:
        return cache["list"]
    reg = regular_module(a)
    top, _ = quotient(reg, a.radical.basis)
    dec = decompose(top, seed)
    simples = [s.module for s in dec.summands]

    def first_idem(s):
        for i, e in enumerate(a.idempotents):
            if s.act(e).any():
                return i
        return len(a.idempotents)

    simples.sort(key=first_idem)
    for s in simples:
        s.name = f"S{first_idem(s) + 1}"
    cache["list"] = simples
    return simples


def simple_at(a: Algebra, i: int) -> Module:
    for s in simple_modules(a):
        if s.act(a.idempotents[i]).any():
            return s
    raise ModuleError(f"no simple module supported at idempotent {i}")


# --- quiver representations ------------------------------------------------------


def module_from_representation(a: Algebra, dims: dict, mats: dict, name: str = "") -> Module:
    """Module of a representation: vertex dimensions and one matrix per arrow
    (target dim x source dim).  Raises if the relations are violated."""
    q = a.quiver
    if q is None:
        raise ModuleError("representation data needs an algebra built from a quiver")
    pres = q.presentation
    offs, o = {}, 0
    for v in pres.vertices:
        offs[v] = o
        o += int(dims.get(v, 0))
    d = o
    full = {}
    for arr in pres.arrows:
        m = np.zeros((d, d), dtype=np.int64)
        blk = np.asarray(mats.get(arr.label, np.zeros((dims.get(arr.target, 0), dims.get(arr.source, 0)))), dtype=np.int64)
        if blk.shape != (dims.get(arr.target, 0), dims.get(arr.source, 0)):
            raise ModuleError(f"matrix for arrow {arr.label} has shape {blk.shape}")
        s, t = offs[arr.source], offs[arr.target]
        m[t : t + blk.shape[0], s : s + blk.shape[1]] = blk
        full[arr.label] = m % a.p
    act = np.zeros((a.dim, d, d), dtype=np.int64)
    for k, path in enumerate(q.paths):
        if path[0].startswith("@"):
            v = path[0][1:]
            i0 = offs[v]
            act[k, i0 : i0 + dims.get(v, 0), i0 : i0 + dims.get(v, 0)] = np.eye(dims.get(v, 0), dtype=np.int64)
        else:
            m = np.eye(d, dtype=np.int64)
            for lbl in path:
                m = (m @ full[lbl]) % a.p
            act[k] = m
    mod = Module(a, act, name)
    bad = check_module(mod)
    if bad:
        raise ModuleError("representation violates the relations: " + "; ".join(bad))
    return mod


# --- explicit projective presentations ----------------------------------------------


@dataclass
class FreeData:
    """A projective module given as a direct sum of A e_j, e_j idempotents of A."""

    module: Module
    idempotents: list[np.ndarray]
    bases: list[np.ndarray]  # RREF rows (algebra coordinates) of each A e_j

    @property
    def offsets(self) -> list[int]:
        out, o = [], 0
        for b in self.bases:
            out.append(o)
            o += b.shape[0]
        return out

    def generator(self, j: int) -> np.ndarray:
        v = np.zeros(self.module.dim, dtype=np.int64)
        o = self.offsets[j]
        v[o : o + self.bases[j].shape[0]] = coords_in(self.bases[j], self.idempotents[j][None])[0]
        return v

    def hom_to(self, target: Module, images) -> np.ndarray:
        """The homomorphism sending the j-th generator to images[j]."""
        cols = []
        for basis, y in zip(self.bases, images):
            for w in basis:
                cols.append(matmul(target.act(w), y, target.p))
        if not cols:
            return np.zeros((target.dim, 0), dtype=np.int64)
        return np.array(cols).T

    def lift(self, target: Module, surj: np.ndarray, goal: np.ndarray) -> np.ndarray | None:
        """A homomorphism h to ``target`` with surj . h = goal, if one exists."""
        p = target.p
        images = []
        for j, e in enumerate(self.idempotents):
            ea = target.act(e)
            sol = solve_ff(matmul(surj, ea, p), matmul(goal, self.generator(j), p), p)
            if sol is None:
                return None
            images.append(matmul(ea, sol.particular, p))
        return self.hom_to(target, images)


def free_data(a: Algebra, idempotents) -> FreeData:
    reg = regular_module(a)
    bases = [projective_basis(a, e) for e in idempotents]
    mods = [submodule(reg, b, check=False) for b in bases]
    mod = direct_sum(*mods) if mods else zero_module(a)
    return FreeData(mod, [np.asarray(e, dtype=np.int64) % a.p for e in idempotents], bases)


def cover_free_data(cover: ProjectiveCover) -> FreeData:
    a = cover.module.algebra
    return FreeData(cover.module, [a.idempotents[i] for i, _ in cover.summands], [b for _, b in cover.summands])


@dataclass
class PresentationSplit:
    """ker(F -> Z) = sigma(Omega Z) + Q for a projective F mapping onto Z.

    ``lift``: F -> P(Z) over the minimal cover, ``section``: P(Z) -> F with
    lift . section = 1, and Q = ker(lift).
    """

    cover: ProjectiveCover
    lift: np.ndarray
    section: np.ndarray
    omega_basis: np.ndarray  # rows of F
    q_basis: np.ndarray  # rows of F
    q_module: Module
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def split_presentation(free: FreeData, surj: np.ndarray, z: Module, kernel_basis: np.ndarray | None = None) -> PresentationSplit:
    p = z.p
    f = free.module
    cover = projective_cover(z)
    fails = []
    phi = free.lift(cover.module, cover.map, surj)
    pdata = cover_free_data(cover)
    sigma = pdata.lift(f, phi, np.eye(cover.module.dim, dtype=np.int64)) if phi is not None else None
    if phi is None or sigma is None:
        fails.append("could not lift through the minimal cover")
        empty = np.zeros((0, f.dim), dtype=np.int64)
        return PresentationSplit(cover, phi, sigma, empty, empty, zero_module(z.algebra), fails)
    if not ModHom(f, cover.module, phi).is_homomorphism() or not ModHom(cover.module, f, sigma).is_homomorphism():
        fails.append("lift or section is not a homomorphism")
    if not np.array_equal(matmul(cover.map, phi, p), surj % p):
        fails.append("lift does not factor the surjection")
    if not np.array_equal(matmul(phi, sigma, p), np.eye(cover.module.dim, dtype=np.int64)):
        fails.append("section is not a right inverse")
    omega = cover.kernel_basis
    omega_img = Subspace(matmul(omega, sigma.T, p), f.dim, p) if omega.shape[0] else Subspace(np.zeros((0, f.dim)), f.dim, p)
    q_basis = nullspace(phi, p)
    q_mod = submodule(f, q_basis, check=False) if q_basis.shape[0] else zero_module(f.algebra)
    if q_mod.dim and not is_projective(q_mod):
        fails.append("complement Q is not projective")
    ker = Subspace(kernel_basis if kernel_basis is not None else nullspace(surj, p), f.dim, p)
    both = omega_img + Subspace(q_basis, f.dim, p)
    if both != ker or omega_img.dim + q_basis.shape[0] != ker.dim:
        fails.append("kernel is not sigma(Omega Z) + Q")
    return PresentationSplit(cover, phi, sigma, omega_img.basis, q_basis, q_mod, fails)


def projective_summand_labels(m: Module) -> list[int]:
    """Idempotent indices of the indecomposable projectives in a projective module."""
    if m.dim == 0:
        return []
    return sorted(i for i, _ in projective_cover(m).summands)
