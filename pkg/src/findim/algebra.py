"""Finite-dimensional algebras over F_p given by structure constants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .exactla import DEFAULT_PRIME, Subspace, contains, is_prime, left_nullspace, rref
from .presentation import QuiverPresentation


class AlgebraError(ValueError):
    pass


class Algebra:
    """An associative unital algebra with basis b_0..b_{n-1}.

    ``table[i, j]`` is the coordinate vector of ``b_i * b_j``.  ``idempotents``
    is a complete list of orthogonal idempotents summing to the unit; for
    algebras built from quivers they are the vertex residues.
    """

    def __init__(
        self,
        table,
        unit,
        idempotents,
        p: int = DEFAULT_PRIME,
        labels=None,
        name: str = "",
        quiver: "QuiverData | None" = None,
    ):
        self.table = np.asarray(table, dtype=np.int64) % p
        n = self.table.shape[0]
        if self.table.shape != (n, n, n):
            raise AlgebraError(f"structure constants must have shape (n, n, n), got {self.table.shape}")
        self.dim = n
        self.p = p
        self.unit = np.asarray(unit, dtype=np.int64) % p
        self.idempotents = [np.asarray(e, dtype=np.int64) % p for e in idempotents]
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(n)]
        self.name = name
        self.quiver = quiver
        self._op: Algebra | None = None

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, p={self.p})"

    # arithmetic

    def mul(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return np.einsum("i,j,ijk->k", x, y, self.table) % self.p

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    @cached_property
    def left_mult(self) -> np.ndarray:
        """``left_mult[i]`` is the matrix of y -> b_i y (columns indexed by y)."""
        return np.ascontiguousarray(np.transpose(self.table, (0, 2, 1)))

    @cached_property
    def right_mult(self) -> np.ndarray:
        """``right_mult[j]`` is the matrix of y -> y b_j."""
        return np.ascontiguousarray(np.transpose(self.table, (1, 2, 0)))

    def lmat(self, x) -> np.ndarray:
        return np.tensordot(np.asarray(x, dtype=np.int64), self.left_mult, axes=1) % self.p

    def rmat(self, x) -> np.ndarray:
        return np.tensordot(np.asarray(x, dtype=np.int64), self.right_mult, axes=1) % self.p

    # derived structure

    @cached_property
    def radical(self) -> Subspace:
        return radical(self)

    @cached_property
    def generators(self) -> list[np.ndarray]:
        """Elements generating the algebra together with the unit."""
        if self.quiver is not None:
            idx = list(self.quiver.vertex_index.values()) + list(self.quiver.arrow_index.values())
            return [self.basis_vector(i) for i in idx]
        return _greedy_generators(self)

    @property
    def op(self) -> "Algebra":
        return opposite(self)

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_op"] = None
        return state


@dataclass(frozen=True)
class QuiverData:
    """Bookkeeping tying an algebra built from a quiver back to its paths."""

    presentation: QuiverPresentation
    paths: tuple[tuple[str, ...], ...]  # basis residues, written composition-order
    vertex_index: dict  # vertex label -> basis index of e_v
    arrow_index: dict  # arrow label -> basis index
    truncation_active: bool
    top_paths_in_ideal: bool


@dataclass(frozen=True)
class TruncationReport:
    """How the constructed kQ/(I + R^m) relates to kQ/I.

    ``truncation_active`` is True when some path of length m is not in the
    ideal generated by the relations (so R^m did real work and the result may
    differ from kQ/I).  ``top_paths_in_ideal`` records whether a path of
    length m - 1 already fell into the relation span.
    """

    dim: int
    truncation_active: bool
    top_paths_in_ideal: bool


# --- construction from quivers ---------------------------------------------------


def _enumerate_paths(q: QuiverPresentation, max_len: int) -> list[tuple[str, ...]]:
    """Paths of length < max_len as tuples in composition order (last arrow first)."""
    src = {a.label: a.source for a in q.arrows}
    tgt = {a.label: a.target for a in q.arrows}
    paths: list[tuple[str, ...]] = [("@" + v,) for v in q.vertices]
    layer = [(a.label,) for a in q.arrows]
    length = 1
    while layer and length < max_len:
        paths.extend(layer)
        nxt = []
        for path in layer:
            # prepend arrows leaving the end of the path
            end = tgt[path[0]]
            for a in q.arrows:
                if src[a.label] == end:
                    nxt.append((a.label,) + path)
        layer = nxt
        length += 1
    return paths


def _path_len(path) -> int:
    return 0 if path[0].startswith("@") else len(path)


def _path_ends(q: QuiverPresentation, path) -> tuple[str, str]:
    if path[0].startswith("@"):
        v = path[0][1:]
        return v, v
    return q.arrow(path[-1]).source, q.arrow(path[0]).target


def _compose(q, x, y, index):
    """Residue index of the path x*y (y first), or None if zero / too long."""
    xs, xt = _path_ends(q, x)
    ys, yt = _path_ends(q, y)
    if yt != xs:
        return None
    if x[0].startswith("@"):
        return index.get(y)
    if y[0].startswith("@"):
        return index.get(x)
    return index.get(x + y)


def _ideal_span(q: QuiverPresentation, paths, index, p) -> np.ndarray:
    """RREF basis of the two-sided ideal generated by the relations, inside
    the span of the given paths (paths not listed count as zero)."""
    n = len(paths)
    rows = []
    for rel in q.relations:
        v = np.zeros(n, dtype=np.int64)
        for t in rel:
            k = index.get(tuple(t.path))
            if k is not None:
                v[k] = (v[k] + t.coeff) % p
        if v.any():
            rows.append(v)
    if not rows:
        return np.zeros((0, n), dtype=np.int64)
    arrows = [(a.label,) for a in q.arrows]
    # multiplication by an arrow on either side, as permutation-like matrices
    mults = []
    for a in arrows:
        left = np.zeros((n, n), dtype=np.int64)
        right = np.zeros((n, n), dtype=np.int64)
        for j, path in enumerate(paths):
            k = _compose(q, a, path, index)
            if k is not None:
                left[k, j] = 1
            k = _compose(q, path, a, index)
            if k is not None:
                right[k, j] = 1
        mults += [left, right]
    basis = rref(np.array(rows), p)[0]
    while True:
        grown = np.concatenate([basis] + [(basis @ m.T) % p for m in mults])
        new = rref(grown, p)[0]
        if new.shape[0] == basis.shape[0]:
            return basis
        basis = new


def build_bound_quiver_algebra(q: QuiverPresentation, p: int | None = None) -> tuple[Algebra, TruncationReport]:
    """kQ/(I + R^m) for the presentation's relations I and nilpotency bound m.

    The basis consists of residues of paths of length < m that are not pivot
    columns of the ideal span; longer paths are ordered first so pivots land
    on them and the surviving basis prefers short paths.
    """
    p = q.p if p is None else p
    if not is_prime(p):
        raise AlgebraError(f"{p} is not prime")
    m = q.nilpotency
    paths = _enumerate_paths(q, m)
    # order columns: longest paths first, then lexicographic for determinism
    order = sorted(range(len(paths)), key=lambda i: (-_path_len(paths[i]), paths[i]))
    paths = [paths[i] for i in order]
    index = {path: i for i, path in enumerate(paths)}
    ideal = _ideal_span(q, paths, index, p)
    piv = set(int(np.flatnonzero(r)[0]) for r in ideal)
    vert_cols = [index[("@" + v,)] for v in q.vertices]
    if any(c in piv for c in vert_cols):
        raise AlgebraError("inconsistent relations: a vertex idempotent lies in the ideal")
    keep = [i for i in range(len(paths)) if i not in piv]
    # basis order: vertices, arrows, then longer paths
    keep.sort(key=lambda i: (_path_len(paths[i]), _vertex_order(q, paths[i]), paths[i]))
    n = len(keep)
    if p <= n:
        raise AlgebraError(f"algebra dimension {n} is not below the field characteristic {p}")
    pos = {col: k for k, col in enumerate(keep)}
    piv_rows = {int(np.flatnonzero(r)[0]): r for r in ideal}

    def residue(col: int) -> np.ndarray:
        out = np.zeros(n, dtype=np.int64)
        if col in pos:
            out[pos[col]] = 1
            return out
        row = piv_rows[col]
        for c in np.flatnonzero(row):
            c = int(c)
            if c != col:
                out[pos[c]] = (out[pos[c]] - row[c]) % p
        return out

    table = np.zeros((n, n, n), dtype=np.int64)
    for i, ci in enumerate(keep):
        for j, cj in enumerate(keep):
            k = _compose(q, paths[ci], paths[cj], index)
            if k is not None:
                table[i, j] = residue(k)
    vertex_index = {v: pos[index[("@" + v,)]] for v in q.vertices}
    arrow_index = {}
    for a in q.arrows:
        col = index.get((a.label,))
        if col is not None and col in pos:
            arrow_index[a.label] = pos[col]
    idems = [np.eye(n, dtype=np.int64)[vertex_index[v]] for v in q.vertices]
    unit = sum(idems) % p if idems else np.zeros(n, dtype=np.int64)

    # truncation diagnostics
    top_in_ideal = any(_path_len(paths[c]) == m - 1 for c in piv)
    longer = _enumerate_paths(q, m + 1)
    longer.sort(key=lambda t: (-_path_len(t), t))
    lindex = {path: i for i, path in enumerate(longer)}
    lideal = _ideal_span(q, longer, lindex, p)
    len_m = [lindex[t] for t in longer if _path_len(t) == m]
    active = False
    for c in len_m:
        e = np.zeros(len(longer), dtype=np.int64)
        e[c] = 1
        if not contains(lideal, e, p):
            active = True
            break

    labels = [_path_label(paths[c]) for c in keep]
    data = QuiverData(
        presentation=q,
        paths=tuple(paths[c] for c in keep),
        vertex_index=vertex_index,
        arrow_index=arrow_index,
        truncation_active=active,
        top_paths_in_ideal=top_in_ideal,
    )
    alg = Algebra(table, unit, idems, p=p, labels=labels, name=q.name, quiver=data)
    return alg, TruncationReport(n, active, top_in_ideal)


def _vertex_order(q, path) -> int:
    if path[0].startswith("@"):
        return q.vertices.index(path[0][1:])
    return 0


def _path_label(path) -> str:
    if path[0].startswith("@"):
        return "e" + path[0][1:]
    return "*".join(path)


# --- radical and friends --------------------------------------------------------


def trace_form(a: Algebra) -> np.ndarray:
    """``T[i, j] = trace(L_{b_i b_j})``."""
    tr = np.trace(a.left_mult, axis1=1, axis2=2) % a.p
    return np.tensordot(a.table, tr, axes=([2], [0])) % a.p


def radical(a: Algebra) -> Subspace:
    """Jacobson radical via the trace form; requires p > dim.

    The result is re-checked for nilpotency before being returned.
    """
    if a.p <= a.dim:
        raise AlgebraError(f"trace-form radical needs p > dim (p={a.p}, dim={a.dim})")
    t = trace_form(a)
    rad = Subspace(left_nullspace(t, a.p), a.dim, a.p)
    if loewy_length(a, rad) is None:
        raise AlgebraError("trace-form radical is not nilpotent; p too small or corrupt structure constants")
    return rad


def product_space(a: Algebra, x: Subspace, y: Subspace) -> Subspace:
    """span{ u * v : u in x, v in y }."""
    if x.dim == 0 or y.dim == 0:
        return Subspace(np.zeros((0, a.dim)), a.dim, a.p)
    prods = np.einsum("ai,bj,ijk->abk", x.basis, y.basis, a.table).reshape(-1, a.dim) % a.p
    return Subspace(prods, a.dim, a.p)


def loewy_length(a: Algebra, rad: Subspace) -> int | None:
    """Least k with rad^k = 0, or None if rad is not nilpotent within dim steps."""
    power = rad
    k = 1
    while power.dim:
        if k > a.dim:
            return None
        power = product_space(a, power, rad)
        k += 1
    return k


def _greedy_generators(a: Algebra) -> list[np.ndarray]:
    """A small generating set: idempotents, then lifts of rad/rad^2, then
    whatever basis vectors are still missing from the generated subalgebra."""
    gens = [e for e in a.idempotents]
    rad = a.radical
    rad2 = product_space(a, rad, rad)
    cur = rad2
    for r in rad.basis:
        if r not in cur:
            gens.append(r)
            cur = Subspace(np.concatenate([cur.basis, r[None]]), a.dim, a.p)
    while True:
        span = generated_subalgebra(a, gens)
        if span.dim == a.dim:
            return gens
        for i in range(a.dim):
            v = a.basis_vector(i)
            if v not in span:
                gens.append(v)
                break


def generated_subalgebra(a: Algebra, elements) -> Subspace:
    """Smallest subspace containing 1 and the elements, closed under products."""
    vecs = [a.unit] + [np.asarray(e, dtype=np.int64) for e in elements]
    span = Subspace(np.array(vecs), a.dim, a.p)
    while True:
        grown = product_space(a, span, span)
        new = span + grown
        if new.dim == span.dim:
            return span
        span = new


def opposite(a: Algebra) -> Algebra:
    """The opposite algebra; ``opposite(opposite(a)) is a``."""
    if a._op is None:
        op = Algebra(
            np.transpose(a.table, (1, 0, 2)),
            a.unit,
            a.idempotents,
            p=a.p,
            labels=a.labels,
            name=(a.name + "^op") if a.name else "",
        )
        op._op = a
        a._op = op
    return a._op


def quotient_by_radical_dim(a: Algebra) -> int:
    return a.dim - a.radical.dim


def is_basis_ideal(a: Algebra, sub: Subspace, side: str = "two") -> bool:
    """Whether a subspace is a left, right or two-sided ideal (by rank tests)."""
    if sub.dim == 0:
        return True
    if side in ("left", "two"):
        imgs = np.einsum("iab,kb->ika", a.left_mult, sub.basis).reshape(-1, a.dim) % a.p
        if not sub.contains_all(imgs):
            return False
    if side in ("right", "two"):
        imgs = np.einsum("iab,kb->ika", a.right_mult, sub.basis).reshape(-1, a.dim) % a.p
        if not sub.contains_all(imgs):
            return False
    return True


@dataclass
class AlgebraCheck:
    associative: bool = True
    unit: bool = True
    idempotents: bool = True
    prime_exceeds_dim: bool = True
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.associative and self.unit and self.idempotents and self.prime_exceeds_dim


def check_algebra(a: Algebra) -> AlgebraCheck:
    """Validate associativity, unit, the idempotent system and p > dim."""
    rep = AlgebraCheck()
    p, n = a.p, a.dim
    # (b_i b_j) b_k vs b_i (b_j b_k)
    lhs = np.einsum("ijm,mkl->ijkl", a.table, a.table) % p
    rhs = np.einsum("jkm,iml->ijkl", a.table, a.table) % p
    bad = np.argwhere((lhs != rhs).any(axis=3))
    if bad.size:
        i, j, k = (int(x) for x in bad[0])
        rep.associative = False
        rep.failures.append(f"associativity fails at ({a.labels[i]}, {a.labels[j]}, {a.labels[k]})")
    eye = np.eye(n, dtype=np.int64)
    left = np.einsum("i,ijk->jk", a.unit, a.table) % p
    right = np.einsum("j,ijk->ik", a.unit, a.table) % p
    if not (np.array_equal(left, eye) and np.array_equal(right, eye)):
        rep.unit = False
        rep.failures.append("unit does not act as identity")
    es = a.idempotents
    if es:
        total = sum(es) % p
        if not np.array_equal(total, a.unit):
            rep.idempotents = False
            rep.failures.append("idempotents do not sum to the unit")
        for (i, x), (j, y) in itertools.product(enumerate(es), repeat=2):
            want = x if i == j else np.zeros(n, dtype=np.int64)
            if not np.array_equal(a.mul(x, y), want):
                rep.idempotents = False
                rep.failures.append(f"idempotents {i}, {j} are not orthogonal idempotents")
                break
    if a.p <= n:
        rep.prime_exceeds_dim = False
        rep.failures.append(f"p = {a.p} does not exceed dim = {n}")
    return rep


def semisimple_algebra(k: int, p: int = DEFAULT_PRIME) -> Algebra:
    """F_p x ... x F_p with k factors."""
    table = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        table[i, i, i] = 1
    idems = [np.eye(k, dtype=np.int64)[i] for i in range(k)]
    return Algebra(table, np.ones(k, dtype=np.int64), idems, p=p, labels=[f"e{i+1}" for i in range(k)], name=f"F_p^{k}")
