#!/usr/bin/env python3
"""Replay the gadget claims and the reduction checks, printing one line per claim.

    python3 scripts/replay_claims.py --samples 200 --json out.json
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from popular_partitions import QDnfInstance, find_popular, five_agent_noinstance, popularity_margin, star_game
from popular_partitions.experiments import lemma_suite
from popular_partitions.gadgets import fig1_partitions

YES = [[1, 3, 4], [1, -3, 4], [1, 3, -4], [1, -3, -4]]
NO = [[1, 2, 3], [1, 2, 4]]


@dataclass(frozen=True)
class Config:
    seed: int = 0
    samples: int = 200
    workers: int = 1


@dataclass
class Claim:
    name: str
    holds: bool
    detail: str
    seconds: float


def _timed(name, fn) -> Claim:
    t0 = time.perf_counter()
    holds, detail = fn()
    return Claim(name, holds, detail, round(time.perf_counter() - t0, 3))


def fig1_claims(cfg: Config) -> list[Claim]:
    game = five_agent_noinstance()
    p1, p2 = fig1_partitions()
    return [
        _timed("fig1: no popular partition",
               lambda: (find_popular(game, workers=cfg.workers) is None, "52 partitions")),
        _timed("fig1: challenger margin is -1",
               lambda: ((m := popularity_margin(game, p1, p2).margin) == -1, f"margin={m}")),
    ]


def star_claims(cfg: Config) -> list[Claim]:
    out = []
    for k in range(1, 8):
        want = k <= 5

        def run(k=k, want=want):
            found = find_popular(star_game(k), workers=cfg.workers)
            return (found is not None) == want, "popular: " + (str(found[0]) if found else "none")
        out.append(_timed(f"star k={k}: popular partition {'exists' if want else 'absent'}", run))
    return out


def reduction_claims(cfg: Config) -> list[Claim]:
    out = []
    for label, clauses in (("yes", YES), ("no", NO)):
        inst = QDnfInstance.from_ints(2, clauses)
        for model in ("ashg", "fhg"):
            def run(model=model, inst=inst):
                r = lemma_suite(model, inst, cfg.seed, cfg.samples, cfg.workers)
                failing = [c.name for c in r.checks if not c.passed]
                return r.passed, f"{len(r.checks)} checks" + (f", failing {failing}" if failing else "")
            out.append(_timed(f"{model} lemma suite on {label}-instance", run))
    return out


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--workers", type=int, default=Config.workers)
    ap.add_argument("--json", help="also write the claims as JSON here")
    args = ap.parse_args()
    cfg = Config(args.seed, args.samples, args.workers)

    claims = fig1_claims(cfg) + star_claims(cfg) + reduction_claims(cfg)
    for c in claims:
        print(f"{'PASS' if c.holds else 'FAIL'}  {c.name}  ({c.detail}; {c.seconds}s)")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"config": asdict(cfg), "claims": [asdict(c) for c in claims]}, fh, indent=2)
    return 0 if all(c.holds for c in claims) else 1


if __name__ == "__main__":
    raise SystemExit(main())
