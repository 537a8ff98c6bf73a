"""Igusa-Todorov functions phi and psi.

The syzygy operator induces an endomorphism L of the free abelian group on
iso-classes of non-projective indecomposables.  Starting from the summands of
M we close the generator set under syzygies (breadth first, to a depth
budget).  With a closed window, rank(L^n U) is eventually constant from the
Fitting index of L on, and phi is the first n where that final rank is hit.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .exactla import int_rank
from .homology import DEFAULT_CUTOFF, MAX_SYZYGY_DIM, Dim, combine_max, proj_dim, syzygy
from .modrep import Module, decompose, direct_sum, is_isomorphic, projective_cover


@dataclass
class CertifiedValue:
    value: int
    certified: bool = True
    notes: list[str] = field(default_factory=list)

    def __str__(self):
        return f"{self.value} {'certified' if self.certified else 'uncertified'}"


@dataclass
class KGroupWindow:
    generators: list[Module]
    depth: list[int]  # syzygy level at which each generator first appeared
    omega: np.ndarray  # omega[i, j] = multiplicity of generator i in Omega(generator j)
    expanded: list[bool]
    start: np.ndarray  # generator-coordinate indicator of the summands of M
    notes: list[str] = field(default_factory=list)
    rank_history: list[int] = field(default_factory=list)

    @property
    def closed(self) -> bool:
        return all(self.expanded)

    @property
    def size(self) -> int:
        return len(self.generators)

    def power_images(self, n: int) -> np.ndarray:
        """Columns spanning L^n U."""
        u = self.start
        for _ in range(n):
            u = self.omega @ u
        return u

    def level_support(self, n: int) -> list[int]:
        """Generators that occur as summands of Omega^n M."""
        v = self.power_images(n).sum(axis=1) if self.start.size else np.zeros(0)
        return [i for i in range(self.size) if v[i] > 0]


def _is_projective_indecomposable(x: Module) -> bool:
    return projective_cover(x).module.dim == x.dim


class _Registry:
    def __init__(self, rng):
        self.mods: list[Module] = []
        self.rng = rng
        self.notes: list[str] = []

    def find_or_add(self, x: Module) -> tuple[int, bool]:
        for i, y in enumerate(self.mods):
            if y.dim != x.dim or y.dim_vector != x.dim_vector:
                continue
            res = is_isomorphic(y, x, self.rng)
            if res.status == "yes":
                return i, False
            if res.status == "inconclusive":
                self.notes.append(f"inconclusive iso test, generators kept distinct (dim {x.dim})")
        self.mods.append(x)
        return len(self.mods) - 1, True


def _nonprojective_summands(m: Module, rng) -> tuple[list[tuple[Module, int]], list[str]]:
    if m.dim == 0:
        return [], []
    dec = decompose(m, rng)
    out = [(s.module, s.multiplicity) for s in dec.summands if not _is_projective_indecomposable(s.module)]
    return out, list(dec.notes)


def kgroup_window(m: Module, depth: int = DEFAULT_CUTOFF, seed=0) -> KGroupWindow:
    """Generators reachable from the summands of m by at most ``depth`` syzygies."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    rng = np.random.default_rng(seed)
    reg = _Registry(rng)
    levels: list[int] = []
    start_idx = []
    summands, notes = _nonprojective_summands(m, rng)
    for x, _ in summands:
        i, new = reg.find_or_add(x)
        if new:
            levels.append(0)
        start_idx.append(i)
    columns: dict[int, dict[int, int]] = {}
    queue = deque(range(len(reg.mods)))
    while queue:
        j = queue.popleft()
        if levels[j] >= depth:
            continue
        if reg.mods[j].dim > MAX_SYZYGY_DIM:
            notes.append(f"generator of dim {reg.mods[j].dim} left unexpanded")
            continue
        col: dict[int, int] = {}
        parts, more = _nonprojective_summands(syzygy(reg.mods[j]), rng)
        notes += more
        for x, mult in parts:
            i, new = reg.find_or_add(x)
            if new:
                levels.append(levels[j] + 1)
                queue.append(i)
            col[i] = col.get(i, 0) + mult
        columns[j] = col
    g = len(reg.mods)
    omega = np.zeros((g, g), dtype=np.int64)
    for j, col in columns.items():
        for i, k in col.items():
            omega[i, j] = k
    start = np.zeros((g, len(set(start_idx))), dtype=np.int64)
    for c, i in enumerate(sorted(set(start_idx))):
        start[i, c] = 1
    return KGroupWindow(
        generators=reg.mods,
        depth=levels,
        omega=omega,
        expanded=[j in columns for j in range(g)],
        start=start,
        notes=notes + reg.notes,
    )


def _ranks(win: KGroupWindow, upto: int) -> list[int]:
    out, u = [], win.start
    for _ in range(upto + 1):
        out.append(int_rank(u.tolist()) if u.size else 0)
        u = win.omega @ u
    return out


def fitting_index(mat: np.ndarray) -> int:
    """Least k with rank L^k = rank L^{k+1}."""
    n = mat.shape[0]
    if n == 0:
        return 0
    power = np.eye(n, dtype=object)
    m = mat.astype(object)
    prev = n
    for k in range(n + 1):
        nxt = int_rank((power.dot(m)).tolist())
        if nxt == prev:
            return k
        prev = nxt
        power = power.dot(m)
    return n


def phi(m: Module, cutoff: int = DEFAULT_CUTOFF, seed=0, window: KGroupWindow | None = None) -> CertifiedValue:
    win = window or kgroup_window(m, cutoff, seed)
    notes = list(win.notes)
    if win.size == 0:
        win.rank_history = [0]
        return CertifiedValue(0, not notes, notes)
    if win.closed:
        k0 = fitting_index(win.omega)
        ranks = _ranks(win, k0)
        win.rank_history = ranks
        final = ranks[-1]
        value = next(n for n, r in enumerate(ranks) if r == final)
        return CertifiedValue(value, not notes, notes)
    # window truncated: only levels below the cutoff are trustworthy
    ranks = _ranks(win, cutoff)
    win.rank_history = ranks
    notes.append(f"syzygy window not closed within depth {cutoff}")
    for n in range(cutoff):
        if ranks[n + 1] == ranks[n]:
            return CertifiedValue(n, False, notes)
    return CertifiedValue(cutoff, False, notes)


def _generator_pd(win: KGroupWindow, i: int, cutoff: int, seed) -> Dim:
    """pd of a generator: the first k with L^k e_i = 0 when the window is closed."""
    if win.closed:
        v = np.zeros(win.size, dtype=np.int64)
        v[i] = 1
        for k in range(win.size + 1):
            if not v.any():
                return Dim.finite(k)
            v = win.omega @ v
        return Dim.infinite()
    return proj_dim(win.generators[i], cutoff, seed)


def psi(m: Module, cutoff: int = DEFAULT_CUTOFF, seed=0) -> CertifiedValue:
    """phi(M) plus the largest finite pd among summands of Omega^phi M."""
    win = kgroup_window(m, cutoff, seed)
    f = phi(m, cutoff, seed, window=win)
    notes = list(f.notes)
    certified = f.certified
    best = 0
    if f.value <= cutoff:
        support = win.level_support(f.value)
    else:
        support = []
    for i in support:
        d = _generator_pd(win, i, cutoff, seed)
        if d.is_finite:
            best = max(best, d.value)
        elif not d.certified:
            certified = False
            notes.append(f"pd of a summand unknown past cutoff {cutoff}")
    return CertifiedValue(f.value + best, certified, notes)


def psi_of_sum(mods, cutoff: int = DEFAULT_CUTOFF, seed=0) -> CertifiedValue:
    mods = [x for x in mods if x.dim]
    if not mods:
        return CertifiedValue(0)
    return psi(direct_sum(*mods), cutoff, seed)


def pd_from_window(win: KGroupWindow, cutoff: int = DEFAULT_CUTOFF, seed=0) -> Dim:
    return combine_max(_generator_pd(win, i, cutoff, seed) for i in range(win.size))
