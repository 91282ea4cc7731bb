"""Local search for a challenger that beats a given partition.

The search is one-sided: finding a witness proves the partition is not
popular, failing to find one proves nothing.  Each restart kicks the
starting partition with a few random moves and then hill-climbs with
best-improvement on the challenger's margin over the candidate.
"""

from __future__ import annotations

import random
from itertools import combinations

from .model import HedonicGame, Partition
from .popularity import (
    MarginBreakdown,
    PopularityReport,
    Verdict,
    _BlockUtilities,
    popularity_margin,
)

MAX_KICK = 3
# blocks up to this size have all bipartitions in the neighbourhood
EXACT_SPLIT_SIZE = 6
SPLIT_SAMPLES = 8


def _members(mask: int) -> list[int]:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class _Scorer:
    """Score of a challenger = agents preferring it minus agents preferring the base."""

    def __init__(self, game: HedonicGame, base: Partition):
        self.blocks = _BlockUtilities(game)
        self.base = [0] * game.n_agents
        for block in base:
            mask = sum(1 << a for a in block)
            for a, u in self.blocks.of(mask).items():
                self.base[a] = u
        self._contrib: dict[int, int] = {}

    def contrib(self, mask: int) -> int:
        hit = self._contrib.get(mask)
        if hit is None:
            hit = 0
            for a, u in self.blocks.of(mask).items():
                b = self.base[a]
                hit += (u > b) - (u < b)
            self._contrib[mask] = hit
        return hit


def _neighbours(state: tuple[int, ...], rng: random.Random):
    """Yield (removed masks, added masks) for every move from ``state``."""
    blocks = list(state)
    for ai, a in enumerate(blocks):
        members = _members(a)
        for agent in members:
            bit = 1 << agent
            rest = a & ~bit
            for bi, b in enumerate(blocks):
                if bi != ai:
                    yield (a, b), ((rest, b | bit) if rest else (b | bit,))
            if rest:
                yield (a,), (rest, bit)
    for a, b in combinations(blocks, 2):
        yield (a, b), (a | b,)
    for a in blocks:
        members = _members(a)
        k = len(members)
        if k < 2:
            continue
        if k <= EXACT_SPLIT_SIZE:
            # bipartitions keeping the lowest member on the left side
            for sub in range(1, 1 << (k - 1)):
                right = sum(1 << members[i + 1] for i in range(k - 1) if sub >> i & 1)
                yield (a,), (a & ~right, right)
        else:
            for _ in range(SPLIT_SAMPLES):
                right = sum(1 << m for m in members[1:] if rng.random() < 0.5)
                if right:
                    yield (a,), (a & ~right, right)
        if k > 2:
            yield (a,), tuple(1 << m for m in members)


def _apply(state: tuple[int, ...], removed, added) -> tuple[int, ...]:
    out = list(state)
    for r in removed:
        out.remove(r)
    out.extend(added)
    return tuple(sorted(out, key=lambda m: (m & -m)))


def _canonical_key(state: tuple[int, ...]):
    return tuple(sorted(tuple(_members(m)) for m in state))


def _to_partition(state: tuple[int, ...]) -> Partition:
    return Partition(_members(m) for m in state)


def falsify_popularity(
    game: HedonicGame, pi: Partition, budget: int = 10_000, seed: int = 0
) -> PopularityReport:
    """Search for a partition more popular than ``pi`` within ``budget`` move evaluations."""
    pi.check_game(game)
    rng = random.Random(seed)
    scorer = _Scorer(game, pi)
    start = tuple(sorted((sum(1 << a for a in b) for b in pi), key=lambda m: m & -m))
    evaluated = 0

    def found(state) -> PopularityReport:
        witness = _to_partition(state)
        margin = popularity_margin(game, pi, witness)
        # re-verified independently of the incremental scorer
        if margin.margin >= 0:
            raise RuntimeError(f"unsound witness {witness}: margin {margin.margin}")
        return PopularityReport(Verdict.NOT_POPULAR, witness, evaluated, 0, margin)

    while evaluated < budget:
        progress = evaluated
        state, score = start, 0
        for _ in range(rng.randint(0, MAX_KICK) if evaluated else 0):
            moves = list(_neighbours(state, rng))
            if not moves or evaluated >= budget:
                break
            removed, added = rng.choice(moves)
            score += sum(map(scorer.contrib, added)) - sum(map(scorer.contrib, removed))
            state = _apply(state, removed, added)
            evaluated += 1
            if score > 0:
                return found(state)
        while evaluated < budget:
            best = None
            for removed, added in _neighbours(state, rng):
                if evaluated >= budget:
                    break
                evaluated += 1
                s = score + sum(map(scorer.contrib, added)) - sum(map(scorer.contrib, removed))
                if s > 0:
                    return found(_apply(state, removed, added))
                if s > score:
                    nxt = _apply(state, removed, added)
                    if best is None or s > best[0] or (
                        s == best[0] and _canonical_key(nxt) < _canonical_key(best[1])
                    ):
                        best = (s, nxt)
            if best is None:
                break
            score, state = best
        if evaluated == progress:
            break
    return PopularityReport(Verdict.UNKNOWN_WITHIN_BUDGET, None, evaluated, 0)
