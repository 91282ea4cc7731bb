#!/usr/bin/env python3
"""Star gadget sweep: exhaustive answer next to the falsifier's, per number of leaves.

For each k the exhaustive search either returns the first popular partition
or proves there is none.  The falsifier is then run from the grand coalition
and from the exhaustive answer (if any) to see how quickly it finds a
challenger.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass

from popular_partitions import Partition, falsify_popularity, find_popular, star_game


@dataclass(frozen=True)
class SweepConfig:
    k_max: int = 7
    budget: int = 10_000
    seed: int = 0
    workers: int = 1


def sweep(cfg: SweepConfig):
    for k in range(1, cfg.k_max + 1):
        game = star_game(k)
        t0 = time.perf_counter()
        found = find_popular(game, workers=cfg.workers)
        exhaustive_s = time.perf_counter() - t0
        grand = falsify_popularity(game, Partition.grand(k + 1), cfg.budget, cfg.seed)
        row = {
            "k": k,
            "popular": str(found[0]) if found else "none",
            "exhaustive_s": f"{exhaustive_s:.3f}",
            "falsify_grand": grand.verdict.value,
            "falsify_grand_evals": grand.challengers_examined,
        }
        if found:
            r = falsify_popularity(game, found[0], cfg.budget, cfg.seed)
            row["falsify_popular"] = r.verdict.value
        else:
            row["falsify_popular"] = ""
        yield row


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-max", type=int, default=SweepConfig.k_max)
    ap.add_argument("--budget", type=int, default=SweepConfig.budget)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    ap.add_argument("--workers", type=int, default=SweepConfig.workers)
    args = ap.parse_args()
    cfg = SweepConfig(args.k_max, args.budget, args.seed, args.workers)
    writer = None
    for row in sweep(cfg):
        if writer is None:
            writer = csv.DictWriter(sys.stdout, fieldnames=list(row))
            writer.writeheader()
        writer.writerow(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
