"""Exact linear algebra over F_p and over the integers.

Matrices over F_p are plain ``numpy.int64`` arrays whose entries are kept in
``[0, p)``.  Products of two residues stay below 2**32 for p < 2**16, so a
matmul followed by ``% p`` is exact for any realistic inner dimension.

Large eliminations go through FLINT's ``nmod_mat`` when python-flint is
importable; the numpy elimination is kept as the reference path.

Integer matrices (Smith normal form) are lists of lists of Python ints so
entries never overflow.

Subspaces are always carried as a canonical reduced row-echelon basis, so two
subspaces are equal iff their basis arrays are equal entry-wise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

try:
    import flint
except ImportError:  # pragma: no cover
    flint = None

DEFAULT_PRIME = 65521
MAX_PRIME = 2**16  # keeps p^2 * dim well inside int64
FLINT_MIN_ENTRIES = 20_000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def asmat(a, p: int) -> np.ndarray:
    """Coerce integer data (any size) to a 2-D int64 array reduced mod p."""
    m = np.array(a, dtype=object)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    out = np.zeros(m.shape, dtype=np.int64)
    for idx, x in np.ndenumerate(m):
        out[idx] = int(x) % p
    return out


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p for reduced operands.

    Uses float64 BLAS when every partial sum stays below 2**53 (exact),
    integer matmul otherwise.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    inner = a.shape[-1] if a.ndim else 1
    if inner * (p - 1) ** 2 < 2**53 and a.size and b.size:
        return np.rint(np.matmul(a.astype(np.float64), b.astype(np.float64))).astype(np.int64) % p
    return np.matmul(a, b) % p


def inv_mod(x: int, p: int) -> int:
    return pow(int(x) % p, -1, p)


def rref(a, p: int = DEFAULT_PRIME, backend: str | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form over F_p.

    Returns the nonzero rows of the echelon form and the pivot columns.
    ``backend`` is "numpy", "flint", or None to pick by size.
    """
    m = np.array(a, dtype=np.int64, copy=True) % p
    if m.ndim != 2:
        raise ValueError("rref expects a 2-D array")
    if backend is None:
        backend = "flint" if flint is not None and m.size >= FLINT_MIN_ENTRIES else "numpy"
    if backend == "flint" and m.size:
        return _rref_flint(m, p)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        piv = int(m[r, c])
        if piv != 1:
            m[r] = (m[r] * inv_mod(piv, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _rref_flint(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    rows, cols = m.shape
    r, rank = flint.nmod_mat(rows, cols, m.ravel().tolist(), p).rref()
    out = np.fromiter((int(x) for x in r.entries()), dtype=np.int64, count=rows * cols).reshape(rows, cols)[:rank]
    return out, pivots_of(out)


def rank_ff(m, p: int = DEFAULT_PRIME) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def nullspace(a, p: int = DEFAULT_PRIME) -> np.ndarray:
    """Right kernel {x : a x = 0} as canonical RREF rows."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    if not free:
        return np.zeros((0, cols), dtype=np.int64)
    k = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        k[i, f] = 1
        if piv:
            k[i, piv] = (-r[:, f]) % p
    return rref(k, p)[0]


def left_nullspace(a, p: int = DEFAULT_PRIME) -> np.ndarray:
    """{y : y a = 0} as canonical RREF rows."""
    return nullspace(np.asarray(a).T, p)


@dataclass(frozen=True)
class AffineSolution:
    """Solution set ``particular + span(kernel)`` of a linear system."""

    particular: np.ndarray
    kernel: np.ndarray


def solve_ff(a, b, p: int = DEFAULT_PRIME) -> AffineSolution | None:
    """Solve ``a @ x = b`` over F_p; b may be a vector or a matrix.

    Returns None when the system is inconsistent.
    """
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    vec = b.ndim == 1
    if vec:
        b = b.reshape(-1, 1)
    rows, cols = a.shape
    if b.shape[0] != rows:
        raise ValueError(f"shape mismatch: a is {a.shape}, b has {b.shape[0]} rows")
    aug = np.concatenate([a, b], axis=1) if rows else np.zeros((0, cols + b.shape[1]), dtype=np.int64)
    r, piv = rref(aug, p)
    if any(c >= cols for c in piv):
        return None
    x = np.zeros((cols, b.shape[1]), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = r[i, cols:]
    ker = nullspace(a, p) if rows else np.eye(cols, dtype=np.int64)
    return AffineSolution(x.ravel() if vec else x, ker)


def inverse_ff(a, p: int = DEFAULT_PRIME) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of non-square matrix")
    r, piv = rref(np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1), p)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular mod p")
    return r[:, n:]


def row_space(vectors, p: int = DEFAULT_PRIME, ambient: int | None = None) -> np.ndarray:
    """Canonical basis (RREF rows) of the span of the given row vectors."""
    v = np.asarray(vectors, dtype=np.int64)
    if v.size == 0:
        width = ambient if ambient is not None else (v.shape[1] if v.ndim == 2 else 0)
        return np.zeros((0, width), dtype=np.int64)
    return rref(v, p)[0]


def pivots_of(basis: np.ndarray) -> list[int]:
    """Pivot columns of a matrix already in RREF."""
    out = []
    for row in basis:
        nz = np.flatnonzero(row)
        out.append(int(nz[0]))
    return out


def coords_in(basis: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Coordinates of vectors (rows) in an RREF basis; assumes membership."""
    if basis.shape[0] == 0:
        return np.zeros((np.asarray(vectors).shape[0], 0), dtype=np.int64)
    return np.asarray(vectors, dtype=np.int64)[:, pivots_of(basis)]


def contains(basis: np.ndarray, vectors, p: int = DEFAULT_PRIME) -> bool:
    """Whether every row of ``vectors`` lies in the span of an RREF basis."""
    v = np.asarray(vectors, dtype=np.int64) % p
    if v.ndim == 1:
        v = v.reshape(1, -1)
    if v.shape[0] == 0:
        return True
    if basis.shape[0] == 0:
        return not v.any()
    resid = (v - coords_in(basis, v) @ basis) % p
    return not resid.any()


class Subspace:
    """A subspace of F_p^n held by its canonical RREF basis."""

    __slots__ = ("basis", "ambient", "p", "_pivots")

    def __init__(self, vectors, ambient: int, p: int = DEFAULT_PRIME):
        v = np.asarray(vectors, dtype=np.int64).reshape(-1, ambient) if np.size(vectors) else np.zeros((0, ambient), dtype=np.int64)
        self.basis = row_space(v, p, ambient) if v.shape[0] else v
        self.ambient = ambient
        self.p = p
        self._pivots = pivots_of(self.basis)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def pivots(self) -> list[int]:
        return self._pivots

    def __contains__(self, v) -> bool:
        return contains(self.basis, v, self.p)

    def contains_all(self, vectors) -> bool:
        return contains(self.basis, vectors, self.p)

    def coords(self, vectors) -> np.ndarray:
        return coords_in(self.basis, np.asarray(vectors).reshape(-1, self.ambient))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.p == other.p
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.ambient, self.p, self.basis.tobytes()))

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(np.concatenate([self.basis, other.basis]), self.ambient, self.p)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


# --- integers -----------------------------------------------------------


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def det_int(m: list[list[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    """``left @ m @ right == diag(factors, padded)`` with unimodular transforms."""

    factors: tuple[int, ...]
    rank: int
    left: list[list[int]]
    right: list[list[int]]


def smith_normal_form(m, verify: bool | None = None) -> SmithForm:
    """Smith normal form of an integer matrix.

    ``factors`` lists the diagonal entries d_1 | d_2 | ... (including trailing
    zeros up to min(rows, cols)); ``rank`` counts the nonzero ones.
    """
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        if k:
            a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        if k:
            for row in a:
                row[dst] += k * row[src]
            for row in v:
                row[dst] += k * row[src]

    t = 0
    while t < min(rows, cols):
        # smallest nonzero entry in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            piv = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // piv))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // piv))
                    if a[t][j]:
                        done = False
            if done:
                # enforce divisibility of the rest of the block
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % piv),
                    None,
                )
                if bad is None:
                    break
                add_row(t, bad[0], 1)
                continue
            # move the smallest nonzero of row/col t onto the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
            _, i, j = min(cand)
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    factors = tuple(a[i][i] for i in range(min(rows, cols)))
    rank = sum(1 for f in factors if f)
    if verify if verify is not None else __debug__:
        _verify_smith(m, factors, u, v)
    return SmithForm(factors, rank, u, v)


def _verify_smith(m, factors, u, v) -> None:
    rows = len(u)
    cols = len(v)
    mm = [list(map(int, r)) for r in m]
    um = [[sum(u[i][k] * mm[k][j] for k in range(rows)) for j in range(cols)] for i in range(rows)]
    d = [[sum(um[i][k] * v[k][j] for k in range(cols)) for j in range(cols)] for i in range(rows)]
    for i in range(rows):
        for j in range(cols):
            want = factors[i] if i == j else 0
            if d[i][j] != want:
                raise ArithmeticError("Smith form check failed: U m V != D")
    for i in range(len(factors) - 1):
        if factors[i + 1] and factors[i] and factors[i + 1] % factors[i]:
            raise ArithmeticError("Smith form check failed: divisibility chain broken")
        if factors[i] == 0 and factors[i + 1] != 0:
            raise ArithmeticError("Smith form check failed: zero before nonzero factor")
    if abs(det_int(u)) != 1 or abs(det_int(v)) != 1:
        raise ArithmeticError("Smith form check failed: transform not unimodular")


def int_rank(m) -> int:
    """Rank over Q of an integer matrix, via Smith normal form."""
    if not m or not len(m[0]):
        return 0
    return smith_normal_form(m).rank
