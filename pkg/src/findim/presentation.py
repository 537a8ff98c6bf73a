"""Text format for quivers with relations, modules, gluings, lists and chains.

Grammar (whitespace and ``# comments`` are ignored)::

    document := item*
    item     := algebra | module | glue | list | chain
    algebra  := "algebra" NAME "{" section* "}"
    section  := "field" INT ";"
              | "vertices" VERTEX* ";"
              | "arrows" [arrow ("," arrow)*] ";"
              | "relations" [rel ("," rel)*] ";"
              | "nilpotency" INT ";"
    arrow    := NAME ":" VERTEX "->" VERTEX
    rel      := sum ["=" sum]
    sum      := ["+"|"-"] term (("+"|"-") term)*
    term     := [INT ["*"]] path
    path     := factor ("*" factor)*          # c*d means d first, then c
    factor   := NAME ["^" INT]
    module   := "module" NAME "over" NAME "{" ("dims" (VERTEX "=" INT)* ";"
                                              | "arrow" NAME "=" matrix ";")* "}"
    matrix   := "[" [row ("," row)*] "]" ;  row := "[" [INT ("," INT)*] "]"
    glue     := "glue" NAME "from" NAME "{" "blocks" ("{" VERTEX+ "}")+ ";" "}"
    list     := "list" NAME "over" NAME "{" NAME* "}"
    chain    := "chain" NAME "{" NAME ("in" NAME)* "}"

NAME starts with a letter or underscore; VERTEX may also be a bare integer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .exactla import DEFAULT_PRIME, is_prime

Path = tuple[str, ...]


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


@dataclass(frozen=True)
class Term:
    coeff: int
    path: Path  # as written: ("c", "d") is c*d, d applied first


@dataclass(frozen=True)
class QuiverPresentation:
    name: str
    p: int
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[tuple[Term, ...], ...]
    nilpotency: int

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)


@dataclass(frozen=True)
class ModulePresentation:
    name: str
    algebra: str
    dims: tuple[tuple[str, int], ...]
    maps: tuple[tuple[str, tuple[tuple[int, ...], ...]], ...]

    def dim_at(self, vertex: str) -> int:
        return dict(self.dims).get(vertex, 0)


@dataclass(frozen=True)
class GluePresentation:
    name: str
    source: str
    blocks: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class ModuleList:
    name: str
    algebra: str
    modules: tuple[str, ...]


@dataclass(frozen=True)
class ChainPresentation:
    name: str
    members: tuple[str, ...]  # innermost first


Item = QuiverPresentation | ModulePresentation | GluePresentation | ModuleList | ChainPresentation


@dataclass(frozen=True)
class Document:
    items: tuple[Item, ...] = ()

    def get(self, name: str) -> Item | None:
        for it in self.items:
            if it.name == name:
                return it
        return None

    def of_type(self, cls) -> list:
        return [it for it in self.items if isinstance(it, cls)]


class ParseError(Exception):
    """Syntax or semantic error with a 1-based source position."""

    def __init__(self, message: str, line: int, col: int, kind: str = "syntax", expected: tuple[str, ...] = ()):
        self.message = message
        self.line = line
        self.col = col
        self.kind = kind
        self.expected = expected
        exp = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{line}:{col}: {kind} error: {message}{exp}")


# --- lexer ------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<arrow>->)
  | (?P<int>[0-9]+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[{}\[\];:,=*^+\-])
    """,
    re.VERBOSE,
)

KEYWORDS = {"algebra", "module", "glue", "list", "chain", "over", "from", "in"}


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "name" | "punct" | "eof"
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tokens.append(Token("punct" if kind == "arrow" else kind, chunk, line, pos - line_start + 1))
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# --- parser -----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, msg: str, *expected: str, tok: Token | None = None):
        t = tok or self.tok
        raise ParseError(msg, t.line, t.col, "syntax", tuple(expected))

    def semantic(self, msg: str, tok: Token):
        raise ParseError(msg, tok.line, tok.col, "semantic")

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind in ("punct", "name")

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"found {self.tok.text or 'end of input'!r}", repr(text))
        t = self.tok
        self.i += 1
        return t

    def name(self, what: str = "name") -> Token:
        t = self.tok
        if t.kind != "name" or t.text in KEYWORDS:
            self.fail(f"found {t.text or 'end of input'!r}", what)
        self.i += 1
        return t

    def vertex(self) -> Token:
        t = self.tok
        if t.kind == "int" or (t.kind == "name" and t.text not in KEYWORDS):
            self.i += 1
            return t
        self.fail(f"found {t.text or 'end of input'!r}", "vertex")

    def integer(self) -> tuple[int, Token]:
        t = self.tok
        if t.kind != "int":
            self.fail(f"found {t.text or 'end of input'!r}", "integer")
        self.i += 1
        return int(t.text), t

    # document

    def document(self, env: Document | None = None) -> Document:
        items: list[Item] = []
        names: dict[str, Item] = {it.name: it for it in env.items} if env else {}
        own: set[str] = set()
        while self.tok.kind != "eof":
            t = self.tok
            if t.text == "algebra":
                it = self.algebra()
            elif t.text == "module":
                it = self.module(names)
            elif t.text == "glue":
                it = self.glue(names)
            elif t.text == "list":
                it = self.mlist(names)
            elif t.text == "chain":
                it = self.chain(names)
            else:
                self.fail(f"found {t.text!r}", "algebra", "module", "glue", "list", "chain")
            if it.name in own:
                self.semantic(f"duplicate name {it.name!r}", t)
            own.add(it.name)
            names[it.name] = it
            items.append(it)
        return Document(tuple(items))

    def algebra(self) -> QuiverPresentation:
        self.expect("algebra")
        name = self.name("algebra name").text
        self.expect("{")
        p, p_tok = DEFAULT_PRIME, None
        vertices: list[str] = []
        arrows: list[Arrow] = []
        raw_rels: list[tuple[list[tuple[int, list[tuple[str, Token]]]], Token]] = []
        nil, nil_tok = None, None
        seen = set()
        while not self.at("}"):
            key = self.tok
            if key.text in seen:
                self.semantic(f"section {key.text!r} given twice", key)
            seen.add(key.text)
            if key.text == "field":
                self.i += 1
                p, p_tok = self.integer()
            elif key.text == "vertices":
                self.i += 1
                while not self.at(";"):
                    v = self.vertex()
                    if v.text in vertices:
                        self.semantic(f"duplicate vertex {v.text!r}", v)
                    vertices.append(v.text)
            elif key.text == "arrows":
                self.i += 1
                if not self.at(";"):
                    arrows.append(self.arrow_decl(vertices, arrows))
                    while self.at(","):
                        self.i += 1
                        arrows.append(self.arrow_decl(vertices, arrows))
            elif key.text == "relations":
                self.i += 1
                if not self.at(";"):
                    raw_rels.append(self.relation())
                    while self.at(","):
                        self.i += 1
                        raw_rels.append(self.relation())
            elif key.text == "nilpotency":
                self.i += 1
                nil, nil_tok = self.integer()
            else:
                self.fail(f"found {key.text or 'end of input'!r}", "field", "vertices", "arrows", "relations", "nilpotency", "'}'")
            self.expect(";")
        close = self.expect("}")
        if p_tok is not None and not is_prime(p):
            self.semantic(f"field characteristic {p} is not prime", p_tok)
        if nil is None:
            self.semantic(f"algebra {name!r} lacks the mandatory nilpotency bound", close)
        if nil < 2:
            self.semantic("nilpotency bound must be at least 2", nil_tok)
        by_label = {a.label: a for a in arrows}
        relations = []
        for terms, rtok in raw_rels:
            rel = []
            ends = None
            for coeff, factors in terms:
                path = []
                for lab, ftok in factors:
                    if lab not in by_label:
                        self.semantic(f"unknown arrow {lab!r}", ftok)
                    path.append(lab)
                for left, right in zip(path, path[1:]):
                    if by_label[right].target != by_label[left].source:
                        self.semantic(f"path {'*'.join(path)} is not composable at {left}*{right}", factors[0][1])
                if len(path) < 2:
                    self.semantic(f"relation path {'*'.join(path)} has length < 2", factors[0][1])
                e = (by_label[path[-1]].source, by_label[path[0]].target)
                if ends is not None and e != ends:
                    self.semantic("relation mixes paths with different endpoints", factors[0][1])
                ends = e
                rel.append(Term(coeff % p, tuple(path)))
            relations.append(tuple(rel))
        return QuiverPresentation(name, p, tuple(vertices), tuple(arrows), tuple(relations), nil)

    def arrow_decl(self, vertices, arrows) -> Arrow:
        lab = self.name("arrow name")
        if any(a.label == lab.text for a in arrows):
            self.semantic(f"duplicate arrow {lab.text!r}", lab)
        self.expect(":")
        s = self.vertex()
        self.expect("->")
        t = self.vertex()
        for v in (s, t):
            if v.text not in vertices:
                self.semantic(f"arrow {lab.text!r} uses undeclared vertex {v.text!r}", v)
        return Arrow(lab.text, s.text, t.text)

    def relation(self):
        start = self.tok
        lhs = self.lin_sum()
        if self.at("="):
            self.i += 1
            rhs = self.lin_sum()
            lhs = lhs + [(-c, f) for c, f in rhs]
        return lhs, start

    def lin_sum(self):
        terms = []
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.tok.text == "-" else 1
            self.i += 1
        terms.append(self.term(sign))
        while self.at("+") or self.at("-"):
            sign = -1 if self.tok.text == "-" else 1
            self.i += 1
            terms.append(self.term(sign))
        return terms

    def term(self, sign: int):
        coeff = 1
        if self.tok.kind == "int":
            coeff, _ = self.integer()
            if self.at("*"):
                self.i += 1
        factors = self.factor()
        while self.at("*"):
            self.i += 1
            factors += self.factor()
        return sign * coeff, factors

    def factor(self):
        t = self.name("arrow name")
        n = 1
        if self.at("^"):
            self.i += 1
            n, ntok = self.integer()
            if n < 1 or n > 64:
                self.semantic("arrow power must be between 1 and 64", ntok)
        return [(t.text, t)] * n

    def module(self, names) -> ModulePresentation:
        self.expect("module")
        name = self.name("module name").text
        self.expect("over")
        alg_tok = self.name("algebra name")
        alg = _lookup_quiver(names, alg_tok.text)
        if alg is None:
            self.semantic(f"unknown algebra {alg_tok.text!r}", alg_tok)
        self.expect("{")
        dims: list[tuple[str, int]] = []
        maps: list[tuple[str, tuple]] = []
        while not self.at("}"):
            key = self.tok
            if key.text == "dims":
                self.i += 1
                while not self.at(";"):
                    v = self.vertex()
                    if v.text not in alg.vertices:
                        self.semantic(f"unknown vertex {v.text!r}", v)
                    if any(d[0] == v.text for d in dims):
                        self.semantic(f"dimension of vertex {v.text!r} given twice", v)
                    self.expect("=")
                    d, _ = self.integer()
                    dims.append((v.text, d))
            elif key.text == "arrow":
                self.i += 1
                lab = self.name("arrow name")
                if lab.text not in {a.label for a in alg.arrows}:
                    self.semantic(f"unknown arrow {lab.text!r}", lab)
                if any(m[0] == lab.text for m in maps):
                    self.semantic(f"matrix for arrow {lab.text!r} given twice", lab)
                self.expect("=")
                mtok = self.tok
                mat = self.matrix(alg.p)
                maps.append((lab.text, mat, mtok))
            else:
                self.fail(f"found {key.text or 'end of input'!r}", "dims", "arrow", "'}'")
            self.expect(";")
        self.expect("}")
        dd = dict(dims)
        for lab, mat, mtok in maps:
            a = alg.arrow(lab)
            rows, cols = dd.get(a.target, 0), dd.get(a.source, 0)
            shape_ok = len(mat) == rows and all(len(r) == cols for r in mat)
            if rows == 0 and len(mat) == 0:
                shape_ok = True
            if not shape_ok:
                got_cols = len(mat[0]) if mat else 0
                self.semantic(
                    f"matrix for arrow {lab!r} is {len(mat)}x{got_cols}, expected {rows}x{cols}", mtok
                )
        return ModulePresentation(name, alg.name, tuple(dims), tuple((m[0], m[1]) for m in maps))

    def matrix(self, p: int):
        self.expect("[")
        rows = []
        if not self.at("]"):
            rows.append(self.row(p))
            while self.at(","):
                self.i += 1
                rows.append(self.row(p))
        self.expect("]")
        width = {len(r) for r in rows}
        if len(width) > 1:
            self.fail("ragged matrix rows")
        return tuple(rows)

    def row(self, p: int):
        self.expect("[")
        out = []
        if not self.at("]"):
            out.append(self.signed_int() % p)
            while self.at(","):
                self.i += 1
                out.append(self.signed_int() % p)
        self.expect("]")
        return tuple(out)

    def signed_int(self) -> int:
        sign = 1
        if self.at("-"):
            sign = -1
            self.i += 1
        v, _ = self.integer()
        return sign * v

    def glue(self, names) -> GluePresentation:
        self.expect("glue")
        name = self.name("glue name").text
        self.expect("from")
        src_tok = self.name("algebra name")
        src = names.get(src_tok.text)
        if not isinstance(src, (QuiverPresentation, GluePresentation)):
            self.semantic(f"unknown algebra {src_tok.text!r}", src_tok)
        self.expect("{")
        self.expect("blocks")
        blocks = []
        btoks = []
        while self.at("{"):
            btoks.append(self.tok)
            self.i += 1
            blk = [self.vertex()]
            while not self.at("}"):
                blk.append(self.vertex())
            self.expect("}")
            blocks.append(blk)
        if not blocks:
            self.fail(f"found {self.tok.text!r}", "'{'")
        self.expect(";")
        self.expect("}")
        root = _lookup_quiver(names, src_tok.text)
        seen: set[str] = set()
        for blk in blocks:
            for v in blk:
                if v.text not in root.vertices:
                    self.semantic(f"unknown vertex {v.text!r}", v)
                if v.text in seen:
                    self.semantic(f"vertex {v.text!r} appears in two blocks", v)
                seen.add(v.text)
        if seen != set(root.vertices):
            missing = [v for v in root.vertices if v not in seen]
            self.semantic(f"blocks do not cover vertices {' '.join(missing)}", btoks[0])
        if isinstance(src, GluePresentation):
            outer = [set(b) for b in src.blocks]
            for blk, bt in zip(blocks, btoks):
                s = {v.text for v in blk}
                if any(o & s and not o <= s for o in outer):
                    self.semantic("each block must be a union of the source's blocks", bt)
        return GluePresentation(name, src_tok.text, tuple(tuple(v.text for v in b) for b in blocks))

    def mlist(self, names) -> ModuleList:
        self.expect("list")
        name = self.name("list name").text
        self.expect("over")
        alg_tok = self.name("algebra name")
        alg = _lookup_quiver(names, alg_tok.text)
        if alg is None or not isinstance(names.get(alg_tok.text), QuiverPresentation):
            self.semantic(f"unknown algebra {alg_tok.text!r}", alg_tok)
        self.expect("{")
        mods = []
        while not self.at("}"):
            t = self.name("module name")
            it = names.get(t.text)
            if isinstance(it, ModulePresentation):
                if it.algebra != alg.name:
                    self.semantic(f"module {t.text!r} is not over {alg.name!r}", t)
            elif it is not None or not _is_builtin_module(t.text, alg):
                self.semantic(f"unknown module {t.text!r}", t)
            mods.append(t.text)
        self.expect("}")
        return ModuleList(name, alg.name, tuple(mods))

    def chain(self, names) -> ChainPresentation:
        self.expect("chain")
        name = self.name("chain name").text
        self.expect("{")
        members = [self.name("algebra name")]
        while self.at("in"):
            self.i += 1
            members.append(self.name("algebra name"))
        self.expect("}")
        for t in members:
            if not isinstance(names.get(t.text), (QuiverPresentation, GluePresentation)):
                self.semantic(f"unknown algebra {t.text!r}", t)
        roots = {_lookup_quiver(names, t.text).name for t in members}
        if len(roots) > 1:
            self.semantic("chain members live in different ambient algebras", members[0])
        return ChainPresentation(name, tuple(t.text for t in members))


def _lookup_quiver(names, name: str) -> QuiverPresentation | None:
    it = names.get(name)
    seen = set()
    while isinstance(it, GluePresentation) and it.name not in seen:
        seen.add(it.name)
        it = names.get(it.source)
    return it if isinstance(it, QuiverPresentation) else None


_BUILTIN_RE = re.compile(r"^(S|P|I)_?([A-Za-z0-9_]+)$")


def _is_builtin_module(name: str, alg: QuiverPresentation) -> bool:
    if name in ("A", "DA"):
        return True
    m = _BUILTIN_RE.match(name)
    return bool(m) and m.group(2) in alg.vertices


def builtin_module_kind(name: str, alg: QuiverPresentation) -> tuple[str, str | None] | None:
    """Decode the reserved names S<v>, P<v>, I<v>, A, DA."""
    if name in ("A", "DA"):
        return name, None
    m = _BUILTIN_RE.match(name)
    if m and m.group(2) in alg.vertices:
        return m.group(1), m.group(2)
    return None


def parse(text: str, env: Document | None = None) -> Document:
    """Parse a document; names may also refer to items of ``env`` (e.g. fixtures).

    Only the items defined in ``text`` are returned.  Every failure surfaces
    as ParseError; nothing else escapes.
    """
    parser = None
    try:
        parser = _Parser(text)
        return parser.document(env)
    except ParseError:
        raise
    except RecursionError:
        raise ParseError("input nests too deeply", 1, 1) from None
    except (ValueError, OverflowError, KeyError, IndexError, TypeError) as exc:
        t = parser.tok if parser is not None else Token("eof", "", 1, 1)
        raise ParseError(f"malformed input: {exc}", t.line, t.col) from None


# --- printer ----------------------------------------------------------------


def _fmt_coeff(c: int, p: int) -> tuple[str, int]:
    c %= p
    return ("-", p - c) if c > p // 2 else ("+", c)


def format_relation(rel: tuple[Term, ...], p: int) -> str:
    out = []
    for k, t in enumerate(rel):
        sign, mag = _fmt_coeff(t.coeff, p)
        body = f"{mag}*{'*'.join(t.path)}"
        if k == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


def _fmt_matrix(mat) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in mat) + "]"


def format_item(it: Item) -> str:
    if isinstance(it, QuiverPresentation):
        lines = [f"algebra {it.name} {{", f"  field {it.p};", f"  vertices {' '.join(it.vertices)};"]
        if it.arrows:
            lines.append("  arrows " + ", ".join(f"{a.label}: {a.source} -> {a.target}" for a in it.arrows) + ";")
        if it.relations:
            lines.append("  relations " + ", ".join(format_relation(r, it.p) for r in it.relations) + ";")
        lines.append(f"  nilpotency {it.nilpotency};")
        lines.append("}")
        return "\n".join(lines)
    if isinstance(it, ModulePresentation):
        lines = [f"module {it.name} over {it.algebra} {{"]
        if it.dims:
            lines.append("  dims " + " ".join(f"{v}={d}" for v, d in it.dims) + ";")
        for lab, mat in it.maps:
            lines.append(f"  arrow {lab} = {_fmt_matrix(mat)};")
        lines.append("}")
        return "\n".join(lines)
    if isinstance(it, GluePresentation):
        blocks = " ".join("{" + " ".join(b) + "}" for b in it.blocks)
        return f"glue {it.name} from {it.source} {{\n  blocks {blocks};\n}}"
    if isinstance(it, ModuleList):
        body = " ".join(it.modules)
        return f"list {it.name} over {it.algebra} {{ {body} }}" if body else f"list {it.name} over {it.algebra} {{ }}"
    if isinstance(it, ChainPresentation):
        return f"chain {it.name} {{ {' in '.join(it.members)} }}"
    raise TypeError(f"not a document item: {it!r}")


def format_document(doc: Document) -> str:
    return "\n\n".join(format_item(it) for it in doc.items) + ("\n" if doc.items else "")


# --- fixtures ---------------------------------------------------------------

FIXTURE_TEXT = {
    "A2": "algebra A2 { field 65521; vertices 1 2; arrows a: 1 -> 2; nilpotency 2; }",
    "LOOP2": "algebra LOOP2 { field 65521; vertices 1; arrows a: 1 -> 1; relations a*a; nilpotency 2; }",
    "LOOP3": "algebra LOOP3 { field 65521; vertices 1; arrows a: 1 -> 1; relations a*a*a; nilpotency 3; }",
    "SQUARE": (
        "algebra SQUARE { field 65521; vertices 1 2 3 4;"
        " arrows d: 1 -> 2, c: 2 -> 4, f: 1 -> 3, e: 3 -> 4;"
        " relations c*d = e*f; nilpotency 3; }"
    ),
    "SEMISIMPLE": "algebra SEMISIMPLE { field 65521; vertices 1 2; nilpotency 2; }",
    "TWOSOURCE": "algebra TWOSOURCE { field 65521; vertices 1 2 3; arrows a: 1 -> 3, b: 2 -> 3; nilpotency 2; }",
    "GLUE2": "glue GLUE2 from A2 { blocks {1 2}; }",
    "GSQUARE": "glue GSQUARE from SQUARE { blocks {1 2 3 4}; }",
    "GLUE2CHAIN": "chain GLUE2CHAIN { GLUE2 in A2 }",
    "GSQUARECHAIN": "chain GSQUARECHAIN { GSQUARE in SQUARE }",
}

_FIXTURE_ORDER = ["A2", "LOOP2", "LOOP3", "SQUARE", "SEMISIMPLE", "TWOSOURCE", "GLUE2", "GSQUARE", "GLUE2CHAIN", "GSQUARECHAIN"]


def fixture_document() -> Document:
    """All built-in fixtures as one document."""
    return parse("\n".join(FIXTURE_TEXT[k] for k in _FIXTURE_ORDER))


def fixture(name: str) -> Item:
    it = fixture_document().get(name)
    if it is None:
        raise KeyError(f"no fixture named {name!r}; known: {', '.join(_FIXTURE_ORDER)}")
    return it
