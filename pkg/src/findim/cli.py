"""Command-line entry point: ``findim <command> [options]``.

Reports are plain ``key value`` lines under a header that echoes the tool
version, prime, seed and cutoff.  Exit status: 0 success, 1 a hypothesis or
check failed, 2 the input could not be parsed or names something unknown.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import __version__
from .algebra import AlgebraError, check_algebra
from .bounds import (
    RECIPES,
    THEOREMS,
    ModuleClassSample,
    basic_generator_cogenerator,
    bound_thm25,
    bound_thm31,
    bound_thm33,
    bound_thm35,
    end_algebra,
    explore_class,
    findim_search,
    generator_cogenerator_gaps,
    gldim_end,
)
from .homology import DEFAULT_CUTOFF, global_dim, minimal_resolution
from .igusa_todorov import phi, psi
from .modrep import ModuleError, check_module, direct_sum
from .presentation import ParseError
from .subalgebra import EmbeddingError, check_radical_conditions, lemma23_check
from .workspace import Workspace, WorkspaceError, load


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    seed: int = 0
    cutoff: int = DEFAULT_CUTOFF
    prime: int | None = None
    dim_budget: int = 6
    samples: int = 100
    json: bool = False
    out: str | None = None
    options: dict = field(default_factory=dict)


class Report:
    def __init__(self):
        self.pairs: list[tuple[str, object]] = []
        self.failed = False
        self.p: int | None = None

    def add(self, key: str, *values):
        self.pairs.append((key, " ".join(str(v) for v in values)))

    def extend(self, lines):
        for line in lines:
            key, _, rest = line.partition(" ")
            self.pairs.append((key, rest))


def _dimvec(m) -> str:
    return ",".join(str(d) for d in m.dim_vector)


def _module_arg(ws: Workspace, cfg: RunConfig, over: str):
    names = cfg.options.get("module") or []
    if cfg.options.get("list"):
        mods = ws.module_list(cfg.options["list"])
        if not mods:
            raise WorkspaceError(f"list {cfg.options['list']!r} is empty")
        return direct_sum(*mods)
    if not names:
        raise WorkspaceError("--module is required")
    mods = [ws.module(n, over) for n in names]
    return mods[0] if len(mods) == 1 else direct_sum(*mods)


def _need(cfg: RunConfig, key: str) -> str:
    val = cfg.options.get(key)
    if not val:
        raise WorkspaceError(f"--{key.replace('_', '-')} is required")
    return val


# --- commands ---------------------------------------------------------------------------


def cmd_check(ws, cfg, rep):
    name = _need(cfg, "algebra")
    emb = ws.embedding(name)
    a = emb.sub
    rep.p = a.p
    chk = check_algebra(a)
    rep.add("algebra", name, "dim", a.dim)
    for key in ("associative", "unit", "idempotents", "prime_exceeds_dim"):
        val = getattr(chk, key)
        rep.add(f"check-{key.replace('_', '-')}", "pass" if val else "fail")
        rep.failed |= not val
    if emb.sub is not emb.ambient:
        bad = emb.failures()
        rep.add("check-embedding", "pass" if not bad else "fail")
        rep.failed |= bool(bad)
    for mname in cfg.options.get("module") or []:
        bad = check_module(ws.module(mname, name))
        rep.add(f"module {mname}", "pass" if not bad else "fail " + "; ".join(bad))
        rep.failed |= bool(bad)


def cmd_resolve(ws, cfg, rep):
    name = _need(cfg, "algebra")
    m = _module_arg(ws, cfg, name)
    rep.p = m.p
    res = minimal_resolution(m, cfg.cutoff, cfg.seed)
    rep.add("module", m.name or "M", "dim", m.dim, "dimvec", _dimvec(m))
    for k, t in enumerate(res.terms):
        rep.add(f"P{k}", "dim", t.dim, "dimvec", _dimvec(t))
    rep.add("status", res.status)
    bad = res.verify()
    rep.add("verified", "true" if not bad else "false " + "; ".join(bad))
    rep.failed |= bool(bad)
    rep.add("pd", res.dim())


def cmd_pd(ws, cfg, rep):
    m = _module_arg(ws, cfg, _need(cfg, "algebra"))
    rep.p = m.p
    rep.add("pd", minimal_resolution(m, cfg.cutoff, cfg.seed).dim())


def cmd_gldim(ws, cfg, rep):
    a = ws.algebra(_need(cfg, "algebra"))
    rep.p = a.p
    rep.add("gldim", global_dim(a, cfg.cutoff, cfg.seed))


def cmd_psi(ws, cfg, rep):
    m = _module_arg(ws, cfg, _need(cfg, "algebra"))
    rep.p = m.p
    val = psi(m, cfg.cutoff, cfg.seed)
    rep.add("psi", val)
    for n in val.notes:
        rep.add("note", n)


def cmd_phi(ws, cfg, rep):
    m = _module_arg(ws, cfg, _need(cfg, "algebra"))
    rep.p = m.p
    val = phi(m, cfg.cutoff, cfg.seed)
    rep.add("phi", val)
    for n in val.notes:
        rep.add("note", n)


def cmd_glue(ws, cfg, rep):
    name = _need(cfg, "glue")
    emb = ws.embedding(name)
    b = emb.sub
    rep.p = b.p
    rep.add("glue", name, "in", emb.ambient.name)
    rep.add("dim", b.dim)
    rep.add("basis", " ".join(b.labels))
    c = check_radical_conditions(emb)
    rep.add("left-ideal", str(c.left_ideal).lower())
    rep.add("two-sided-ideal", str(c.two_sided_ideal).lower())
    rep.add("equal-radicals", str(c.equal_radicals).lower())


def cmd_radical_conditions(ws, cfg, rep):
    emb = ws.embedding(_need(cfg, "glue"))
    rep.p = emb.sub.p
    c = check_radical_conditions(emb)
    rep.add("left-ideal", str(c.left_ideal).lower())
    rep.add("two-sided-ideal", str(c.two_sided_ideal).lower())
    rep.add("equal-radicals", str(c.equal_radicals).lower())
    rep.failed |= not c.left_ideal


def cmd_lemma23(ws, cfg, rep):
    gname = _need(cfg, "glue")
    emb = ws.embedding(gname)
    x = _module_arg(ws, cfg, gname)
    rep.p = x.p
    r = lemma23_check(x, emb, cfg.options.get("i") or 2, cfg.seed)
    rep.extend(r.text().splitlines())
    rep.failed |= not r.passed


def _sample(ws, cfg, recipe):
    if cfg.options.get("list"):
        return ModuleClassSample(recipe, ws.module_list(cfg.options["list"]), 0, "user-asserted")
    return None


def cmd_bound(ws, cfg, rep):
    thm = _need(cfg, "theorem")
    budget = cfg.samples
    if thm == "2.5":
        a = ws.algebra(_need(cfg, "algebra"))
        rep.p = a.p
        br = bound_thm25(a, _sample(ws, cfg, "genDA"), cfg.cutoff, cfg.seed, budget)
    elif thm == "3.3":
        emb = ws.embedding(_need(cfg, "glue"))
        rep.p = emb.sub.p
        br = bound_thm33(emb, _sample(ws, cfg, "omega2"), cfg.cutoff, cfg.seed, budget)
    elif thm == "3.5":
        ch = ws.chain(_need(cfg, "chain"))
        rep.p = ch.top.p
        br = bound_thm35(ch, _sample(ws, cfg, "cogenA"), cfg.cutoff, cfg.seed, budget)
    else:
        ch = ws.chain(_need(cfg, "chain"))
        rep.p = ch.top.p
        top = ch.top
        v = None
        if cfg.options.get("module"):
            v = direct_sum(*[ws.module(n, ws.item(_need(cfg, "chain")).members[-1]) for n in cfg.options["module"]])
        v = v if v is not None else basic_generator_cogenerator(top, cfg.seed)
        br = bound_thm31(ch, v, cfg.cutoff, cfg.seed)
    rep.extend(br.lines())
    rep.failed |= any(h.status == "fail" for h in br.hypotheses)


def cmd_findim_search(ws, cfg, rep):
    a = ws.algebra(_need(cfg, "algebra"))
    rep.p = a.p
    r = findim_search(a, cfg.dim_budget, cfg.samples, cfg.seed, cfg.cutoff)
    rep.add("samples", r.samples)
    rep.add("finite", r.finite)
    rep.add("infinite", r.infinite)
    rep.add("unknown", r.unknown)
    rep.add("lower-bound", r.lower_bound)
    if r.witness is not None:
        rep.add("witness", "dim", r.witness.dim, "dimvec", _dimvec(r.witness))


def cmd_explore(ws, cfg, rep):
    a = ws.algebra(_need(cfg, "algebra"))
    rep.p = a.p
    recipe = _need(cfg, "klass")
    s = explore_class(a, recipe, cfg.samples, cfg.seed, cfg.dim_budget)
    rep.add("class", recipe)
    rep.add("budget", s.budget)
    rep.add("completeness", s.completeness)
    rep.add("found", len(s.modules))
    for m in s.modules:
        rep.add("indecomposable", m.name, "dim", m.dim, "dimvec", _dimvec(m))
    for n in s.notes:
        rep.add("note", n)


def cmd_end_gldim(ws, cfg, rep):
    name = _need(cfg, "algebra")
    a = ws.algebra(name)
    rep.p = a.p
    if cfg.options.get("module") or cfg.options.get("list"):
        v = _module_arg(ws, cfg, name)
    else:
        v = basic_generator_cogenerator(a, cfg.seed)
    gaps = generator_cogenerator_gaps(v, cfg.seed)
    rep.add("V", "dim", v.dim, "dimvec", _dimvec(v))
    rep.add("dim-End", end_algebra(v, cfg.seed).algebra.dim)
    rep.add("generator-cogenerator", "true" if not gaps else "false missing " + " ".join(gaps))
    rep.add("gldim-End", gldim_end(v, cfg.cutoff, cfg.seed))


COMMANDS = {
    "check": (cmd_check, "validate an algebra or embedding"),
    "resolve": (cmd_resolve, "minimal projective resolution"),
    "pd": (cmd_pd, "projective dimension"),
    "gldim": (cmd_gldim, "global dimension"),
    "psi": (cmd_psi, "Igusa-Todorov psi"),
    "phi": (cmd_phi, "Igusa-Todorov phi"),
    "glue": (cmd_glue, "describe a glued subalgebra"),
    "radical-conditions": (cmd_radical_conditions, "how rad B sits in A"),
    "lemma23-check": (cmd_lemma23, "realise a B-syzygy over A and verify the transfer"),
    "bound": (cmd_bound, "finitistic dimension bound"),
    "findim-search": (cmd_findim_search, "random lower bound for fin.dim"),
    "explore": (cmd_explore, "sample a module class"),
    "end-gldim": (cmd_end_gldim, "global dimension of End(V)"),
}


# --- plumbing ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-f", help="document file (fixtures are always available)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    common.add_argument("--prime", type=int, default=None, help="override the field of every algebra")
    common.add_argument("--dim-budget", type=int, default=6)
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--json", action="store_true")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--algebra")
    common.add_argument("--module", action="append", help="module name; repeat for a direct sum")
    common.add_argument("--list", help="named module list")
    common.add_argument("--glue")
    common.add_argument("--chain")

    ap = argparse.ArgumentParser(prog="findim", description="Exact homological computations over F_p.")
    ap.add_argument("--version", action="version", version=f"findim {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, (_, helptext) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=helptext)
        if name == "bound":
            sp.add_argument("--theorem", choices=THEOREMS, required=True)
        if name == "explore":
            sp.add_argument("--class", dest="klass", choices=RECIPES, required=True)
        if name == "lemma23-check":
            sp.add_argument("--i", type=int, default=2)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    keys = ("algebra", "module", "list", "glue", "chain", "theorem", "klass", "i")
    opts = {k: getattr(ns, k, None) for k in keys}
    return RunConfig(ns.command, ns.input, ns.seed, ns.cutoff, ns.prime, ns.dim_budget, ns.samples, ns.json, ns.out, opts)


def header(cfg: RunConfig, p) -> dict:
    return {"tool": "findim", "version": __version__, "command": cfg.command, "p": p, "seed": cfg.seed, "cutoff": cfg.cutoff}


def render(cfg: RunConfig, rep: Report) -> str:
    h = header(cfg, rep.p)
    if cfg.json:
        result: dict = {}
        for k, v in rep.pairs:
            if k in result:
                if not isinstance(result[k], list):
                    result[k] = [result[k]]
                result[k].append(v)
            else:
                result[k] = v
        return json.dumps({**h, "status": "fail" if rep.failed else "ok", "result": result}, indent=2) + "\n"
    head = f"# findim {__version__} command={cfg.command} p={rep.p} seed={cfg.seed} cutoff={cfg.cutoff}"
    body = [f"{k} {v}".rstrip() for k, v in rep.pairs]
    return "\n".join([head] + body) + "\n"


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit status, report text)."""
    if cfg.cutoff < 0 or cfg.samples < 1 or cfg.dim_budget < 1:
        raise WorkspaceError("cutoff must be >= 0 and budgets positive")
    ws = load(cfg.input, cfg.prime)
    rep = Report()
    COMMANDS[cfg.command][0](ws, cfg, rep)
    return (1 if rep.failed else 0), render(cfg, rep)


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    try:
        status, text = run(cfg)
    except ParseError as exc:
        print(f"{cfg.input or '<input>'}:{exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"findim: {exc}", file=sys.stderr)
        return 2
    except (WorkspaceError, AlgebraError, EmbeddingError, ModuleError, ValueError) as exc:
        print(f"findim: {exc}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
