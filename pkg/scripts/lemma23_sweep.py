"""Run the syzygy-transfer check over random B-modules and tally failures.

    python scripts/lemma23_sweep.py --glue GSQUARE --samples 20
"""

from __future__ import annotations

import argparse
import time
from collections import Counter
from dataclasses import asdict, dataclass

import numpy as np

from findim.sampling import random_module
from findim.subalgebra import lemma23_check
from findim.workspace import Workspace


@dataclass
class Config:
    glue: str = "GLUE2"
    samples: int = 50
    dim_budget: int = 4
    level: int = 2
    seed: int = 0


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for k, v in asdict(Config()).items():
        ap.add_argument(f"--{k.replace('_', '-')}", type=type(v), default=v)
    cfg = Config(**vars(ap.parse_args(argv)))
    emb = Workspace().embedding(cfg.glue)
    rng = np.random.default_rng(cfg.seed)
    tally = Counter()
    t0 = time.time()
    for k in range(cfg.samples):
        x = random_module(emb.sub, rng, cfg.dim_budget)
        rep = lemma23_check(x, emb, cfg.level, seed=k)
        tally["pass" if rep.passed else "fail"] += 1
        for f in rep.failures:
            tally[f.split(":")[0]] += 1
            print(f"sample {k} dim {x.dim}: {f}")
    print(f"{cfg.glue} level {cfg.level}: {dict(tally)} in {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
