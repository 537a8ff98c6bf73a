"""Print every bound report on the built-in fixtures next to a random fin.dim search.

    python scripts/run_bounds.py [--seed 0] [--samples 300] [--json]
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from findim.bounds import bound_thm25, bound_thm31, bound_thm33, bound_thm35, findim_search
from findim.workspace import Workspace


@dataclass
class Config:
    seed: int = 0
    samples: int = 300
    dim_budget: int = 6
    cutoff: int = 12
    json: bool = False


def reports(ws: Workspace, cfg: Config):
    yield "2.5 A2", bound_thm25(ws.algebra("A2"), cutoff=cfg.cutoff, seed=cfg.seed), "A2"
    yield "2.5 LOOP2", bound_thm25(ws.algebra("LOOP2"), cutoff=cfg.cutoff, seed=cfg.seed), "LOOP2"
    yield "3.3 GLUE2", bound_thm33(ws.embedding("GLUE2"), cutoff=cfg.cutoff, seed=cfg.seed), "GLUE2"
    yield "3.5 GLUE2CHAIN", bound_thm35(ws.chain("GLUE2CHAIN"), cutoff=cfg.cutoff, seed=cfg.seed), "GLUE2"
    yield "3.1 GLUE2CHAIN", bound_thm31(ws.chain("GLUE2CHAIN"), cutoff=cfg.cutoff, seed=cfg.seed), "GLUE2"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for k, v in asdict(Config()).items():
        if isinstance(v, bool):
            ap.add_argument(f"--{k.replace('_', '-')}", action="store_true")
        else:
            ap.add_argument(f"--{k.replace('_', '-')}", type=type(v), default=v)
    cfg = Config(**vars(ap.parse_args(argv)))
    ws = Workspace()
    rows = []
    for label, rep, alg in reports(ws, cfg):
        t0 = time.time()
        s = findim_search(ws.algebra(alg), cfg.dim_budget, cfg.samples, cfg.seed, cfg.cutoff)
        bound = None if rep.bound is None else rep.bound.value
        rows.append({
            "case": label,
            "bound": bound,
            "certified": rep.certified,
            "search_lower": s.lower_bound,
            "violations": len(s.violations(bound)) if bound is not None else None,
            "search_seconds": round(time.time() - t0, 2),
        })
        if not cfg.json:
            print(f"== {label}")
            print(rep.text())
            print(f"search lower {s.lower_bound} (finite {s.finite}, infinite {s.infinite}, unknown {s.unknown})")
    if cfg.json:
        print(json.dumps({"config": asdict(cfg), "rows": rows}, indent=2))


if __name__ == "__main__":
    main()
