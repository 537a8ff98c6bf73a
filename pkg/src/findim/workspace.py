"""Turn parsed documents into algebras, embeddings, chains and modules."""

from __future__ import annotations

from .algebra import Algebra, build_bound_quiver_algebra
from .modrep import (
    Module,
    injective_cogenerator,
    injective_module,
    module_from_representation,
    projective_module,
    regular_module,
    simple_at,
)
from .presentation import (
    ChainPresentation,
    Document,
    GluePresentation,
    ModuleList,
    ModulePresentation,
    QuiverPresentation,
    builtin_module_kind,
    fixture_document,
    parse,
)
from .subalgebra import Chain, SubalgebraEmbedding, chain_from_root_embeddings, glue_idempotents, identity_embedding, restrict


class WorkspaceError(LookupError):
    pass


class Workspace:
    """Named objects of a document, with the built-in fixtures as fallback."""

    def __init__(self, doc: Document | None = None, prime: int | None = None):
        fx = fixture_document()
        own = doc.items if doc is not None else ()
        names = {it.name for it in own}
        self.doc = Document(tuple(own) + tuple(it for it in fx.items if it.name not in names))
        self.prime = prime
        self._algebras: dict[str, Algebra] = {}
        self._embeddings: dict[str, SubalgebraEmbedding] = {}

    @classmethod
    def from_text(cls, text: str, prime: int | None = None) -> "Workspace":
        return cls(parse(text, fixture_document()), prime)

    def item(self, name: str):
        name = name.removeprefix("fixture:")
        it = self.doc.get(name)
        if it is None:
            raise WorkspaceError(f"unknown name {name!r}")
        return it

    def root_quiver(self, name: str) -> QuiverPresentation:
        it = self.item(name)
        seen = set()
        while isinstance(it, GluePresentation):
            if it.name in seen:
                raise WorkspaceError(f"cyclic glue {name!r}")
            seen.add(it.name)
            it = self.item(it.source)
        if not isinstance(it, QuiverPresentation):
            raise WorkspaceError(f"{name!r} is not an algebra")
        return it

    def _quiver_algebra(self, q: QuiverPresentation) -> Algebra:
        if q.name not in self._algebras:
            a, _ = build_bound_quiver_algebra(q, self.prime)
            a.name = q.name
            self._algebras[q.name] = a
        return self._algebras[q.name]

    def embedding(self, name: str) -> SubalgebraEmbedding:
        """The member as a subalgebra of its root quiver algebra."""
        name = name.removeprefix("fixture:")
        if name in self._embeddings:
            return self._embeddings[name]
        it = self.item(name)
        q = self.root_quiver(name)
        root = self._quiver_algebra(q)
        if isinstance(it, QuiverPresentation):
            emb = identity_embedding(root)
        elif isinstance(it, GluePresentation):
            blocks = [[q.vertices.index(v) for v in blk] for blk in it.blocks]
            emb = glue_idempotents(root, blocks, name=it.name)
        else:
            raise WorkspaceError(f"{name!r} is not an algebra")
        self._embeddings[name] = emb
        return emb

    def algebra(self, name: str) -> Algebra:
        return self.embedding(name).sub

    def chain(self, name: str) -> Chain:
        it = self.item(name)
        if not isinstance(it, ChainPresentation):
            raise WorkspaceError(f"{name!r} is not a chain")
        return chain_from_root_embeddings([self.embedding(m) for m in it.members])

    def _block_of(self, alg_name: str, vertex: str) -> int:
        it = self.item(alg_name)
        if isinstance(it, QuiverPresentation):
            return it.vertices.index(vertex)
        for k, blk in enumerate(it.blocks):
            if vertex in blk:
                return k
        raise WorkspaceError(f"vertex {vertex!r} not in {alg_name!r}")

    def module(self, name: str, over: str | None = None) -> Module:
        """A named or built-in (S<v>, P<v>, I<v>, A, DA) module.

        Modules given over the root quiver algebra are restricted when
        ``over`` names a glued subalgebra.
        """
        it = self.doc.get(name)
        if isinstance(it, ModulePresentation):
            q = self.root_quiver(it.algebra)
            a = self._quiver_algebra(q)
            mats = {lbl: mat for lbl, mat in it.maps}
            m = module_from_representation(a, dict(it.dims), mats, name=name)
            if over is None or over.removeprefix("fixture:") == q.name:
                return m
            emb = self.embedding(over)
            if emb.ambient is not a:
                raise WorkspaceError(f"{name!r} is not over {over!r}")
            out = restrict(m, emb)
            out.name = name
            return out
        if over is None:
            raise WorkspaceError(f"unknown module {name!r} (built-in names need an algebra)")
        q = self.root_quiver(over)
        kind = builtin_module_kind(name, q)
        if kind is None:
            raise WorkspaceError(f"unknown module {name!r}")
        b = self.algebra(over)
        what, v = kind
        if what == "A":
            m = regular_module(b)
        elif what == "DA":
            m = injective_cogenerator(b)
        else:
            k = self._block_of(over.removeprefix("fixture:"), v)
            m = {"S": simple_at, "P": projective_module, "I": injective_module}[what](b, k)
        return Module(b, m.action, name)

    def module_list(self, name: str) -> list[Module]:
        it = self.item(name)
        if not isinstance(it, ModuleList):
            raise WorkspaceError(f"{name!r} is not a module list")
        return [self.module(m, it.algebra) for m in it.modules]


def load(path: str | None, prime: int | None = None) -> Workspace:
    if path is None:
        return Workspace(prime=prime)
    with open(path, encoding="utf-8") as fh:
        return Workspace.from_text(fh.read(), prime)
