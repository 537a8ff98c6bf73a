"""Syzygies, minimal projective resolutions and tri-state dimensions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra
from .exactla import rank_ff
from .modrep import (
    Module,
    ModHom,
    ProjectiveCover,
    is_isomorphic,
    projective_cover,
    simple_modules,
    submodule,
    zero_module,
)

DEFAULT_CUTOFF = 20
MAX_SYZYGY_DIM = 300  # larger syzygies end the resolution as unknown


@dataclass(frozen=True)
class Dim:
    """A dimension that is finite, provably infinite, or unknown past a cutoff.

    ``witness`` holds (i, j) with Omega^i = Omega^j != 0 for infinite values.
    ``zero`` flags the zero module, reported as finite 0.
    """

    kind: str
    value: int | None = None
    witness: tuple[int, int] | None = None
    cutoff: int | None = None
    zero: bool = False

    @classmethod
    def finite(cls, d: int, zero: bool = False) -> "Dim":
        return cls("finite", d, zero=zero)

    @classmethod
    def infinite(cls, i: int = -1, j: int = -1) -> "Dim":
        return cls("infinite", witness=(i, j))

    @classmethod
    def unknown(cls, cutoff: int) -> "Dim":
        return cls("unknown", cutoff=cutoff)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def is_infinite(self) -> bool:
        return self.kind == "infinite"

    @property
    def certified(self) -> bool:
        return self.kind != "unknown"

    def __str__(self) -> str:
        if self.kind == "finite":
            return f"finite {self.value}"
        if self.kind == "infinite":
            return "infinite" if self.witness == (-1, -1) else f"infinite {self.witness[0]} {self.witness[1]}"
        return f"unknown {self.cutoff}"


def combine_max(dims) -> Dim:
    """Supremum of several dimensions (e.g. over direct summands)."""
    dims = list(dims)
    for d in dims:
        if d.is_infinite:
            return d
    unknown = [d for d in dims if d.kind == "unknown"]
    if unknown:
        return unknown[0]
    if not dims:
        return Dim.finite(0, zero=True)
    return Dim.finite(max(d.value for d in dims), zero=all(d.zero for d in dims))


# --- syzygies ---------------------------------------------------------------


@dataclass
class SyzygyStep:
    cover: ProjectiveCover
    kernel_basis: np.ndarray  # rows in P coordinates
    syzygy: Module


def syzygy_step(m: Module) -> SyzygyStep:
    cover = projective_cover(m)
    ker = cover.kernel_basis
    return SyzygyStep(cover, ker, submodule(cover.module, ker, check=False))


def syzygy(m: Module) -> Module:
    if m.dim == 0:
        return zero_module(m.algebra)
    return syzygy_step(m).syzygy


def syzygy_power(m: Module, n: int) -> Module:
    for _ in range(n):
        if m.dim == 0:
            break
        m = syzygy(m)
    return m


@dataclass
class Resolution:
    target: Module
    terms: list[Module] = field(default_factory=list)  # P_0, P_1, ...
    differentials: list[np.ndarray] = field(default_factory=list)  # d_0: P_0 -> M, d_n: P_n -> P_{n-1}
    syzygies: list[Module] = field(default_factory=list)  # Omega^0 = M, Omega^1, ...
    minimal: list[bool] = field(default_factory=list)
    status: str = "cutoff"  # terminated | periodic | cutoff
    witness: tuple[int, int] | None = None
    cutoff: int = DEFAULT_CUTOFF
    notes: list[str] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.terms) - 1 if self.terms else 0

    def dim(self) -> Dim:
        if self.status == "terminated":
            if self.target.dim == 0:
                return Dim.finite(0, zero=True)
            return Dim.finite(self.length)
        if self.status == "periodic":
            return Dim.infinite(*self.witness)
        return Dim.unknown(self.cutoff)

    def verify(self) -> list[str]:
        """Exactness, homomorphism and minimality checks; returns failures."""
        out = []
        p = self.target.p
        for n, d in enumerate(self.differentials):
            src = self.terms[n]
            tgt = self.target if n == 0 else self.terms[n - 1]
            if not ModHom(src, tgt, d).is_homomorphism():
                out.append(f"d_{n} is not a homomorphism")
        if self.differentials and rank_ff(self.differentials[0], p) != self.target.dim:
            out.append("d_0 is not surjective")
        for n in range(1, len(self.differentials)):
            d_prev, d = self.differentials[n - 1], self.differentials[n]
            if ((d_prev @ d) % p).any():
                out.append(f"d_{n - 1} d_{n} != 0")
            ker = self.terms[n - 1].dim - rank_ff(d_prev, p)
            if rank_ff(d, p) != ker:
                out.append(f"not exact at P_{n - 1}")
        if self.status == "terminated" and self.differentials:
            last = self.differentials[-1]
            if rank_ff(last, p) != last.shape[1]:
                out.append("last differential is not injective")
        if not all(self.minimal):
            out.append("non-minimal step")
        return out


def minimal_resolution(m: Module, cutoff: int = DEFAULT_CUTOFF, seed=0, max_dim: int = MAX_SYZYGY_DIM) -> Resolution:
    """Iterated projective covers until zero, a repeated syzygy, or the cutoff.

    Every nonzero syzygy is compared against all earlier ones, Omega^0 = M
    included.  Inconclusive isomorphism tests count as different.  A syzygy
    above ``max_dim`` stops the computation early with an unknown result.
    """
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    rng = np.random.default_rng(seed)
    res = Resolution(target=m, cutoff=cutoff, syzygies=[m])
    if m.dim == 0:
        res.status = "terminated"
        return res
    cur = m
    prev_kernel = None
    for n in range(cutoff + 2):
        for i, old in enumerate(res.syzygies[:-1]):
            if old.dim != cur.dim or old.dim_vector != cur.dim_vector:
                continue
            iso = is_isomorphic(old, cur, rng)
            if iso.status == "yes":
                res.status, res.witness = "periodic", (i, n)
                return res
            if iso.status == "inconclusive":
                res.notes.append(f"inconclusive comparison of syzygies {i} and {n}")
        if n > cutoff:
            break
        if cur.dim > max_dim:
            res.notes.append(f"syzygy {n} has dim {cur.dim} > {max_dim}, stopped")
            res.cutoff = n
            break
        step = syzygy_step(cur)
        res.terms.append(step.cover.module)
        d = step.cover.map if prev_kernel is None else (prev_kernel.T @ step.cover.map) % m.p
        res.differentials.append(d)
        res.minimal.append(True)  # projective_cover raises otherwise
        prev_kernel = step.kernel_basis
        cur = step.syzygy
        if cur.dim == 0:
            res.status = "terminated"
            return res
        res.syzygies.append(cur)
    res.status = "cutoff"
    return res


def proj_dim(m: Module, cutoff: int = DEFAULT_CUTOFF, seed=0, max_dim: int = MAX_SYZYGY_DIM) -> Dim:
    return minimal_resolution(m, cutoff, seed, max_dim).dim()


def global_dim(a: Algebra, cutoff: int = DEFAULT_CUTOFF, seed=0) -> Dim:
    return combine_max(proj_dim(s, cutoff, seed) for s in simple_modules(a))


# --- splicing ---------------------------------------------------------------


class NotExactError(ValueError):
    pass


@dataclass
class ExactSequence:
    """0 -> X_s -> ... -> X_0 -> M -> 0 with maps[0]: X_0 -> M, maps[i]: X_i -> X_{i-1}."""

    target: Module
    terms: list[Module]
    maps: list[np.ndarray]

    def failures(self) -> list[str]:
        out = []
        p = self.target.p
        if len(self.maps) != len(self.terms):
            return ["need one map per term"]
        chain = [self.target] + list(self.terms)
        for i, f in enumerate(self.maps):
            if f.shape != (chain[i].dim, chain[i + 1].dim):
                out.append(f"map {i} has shape {f.shape}")
                return out
            if not ModHom(chain[i + 1], chain[i], f).is_homomorphism():
                out.append(f"map {i} is not a homomorphism")
        if self.maps and rank_ff(self.maps[0], p) != self.target.dim:
            out.append("not surjective onto M")
        for i in range(1, len(self.maps)):
            f, g = self.maps[i - 1], self.maps[i]
            if ((f @ g) % p).any() or rank_ff(g, p) != self.terms[i - 1].dim - rank_ff(f, p):
                out.append(f"not exact at X_{i - 1}")
        if self.maps and rank_ff(self.maps[-1], p) != self.terms[-1].dim:
            out.append("leftmost map not injective")
        return out


def splice_bound(seq: ExactSequence, dims: list[Dim]) -> Dim:
    """pd M <= s + max pd X_i, for 0 -> X_s -> ... -> X_0 -> M -> 0."""
    bad = seq.failures()
    if bad:
        raise NotExactError("; ".join(bad))
    if len(dims) != len(seq.terms):
        raise ValueError("one Dim per term required")
    s = len(seq.terms) - 1
    if not all(d.is_finite for d in dims):
        return Dim.unknown(next(d.cutoff for d in dims if not d.is_finite) or 0)
    return Dim.finite(s + max(d.value for d in dims))


def resolution_as_sequence(res: Resolution) -> ExactSequence:
    """A terminated resolution as an exact sequence of projectives."""
    if res.status != "terminated":
        raise ValueError("resolution did not terminate")
    return ExactSequence(res.target, list(res.terms), list(res.differentials))
