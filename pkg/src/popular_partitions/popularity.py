"""Popularity margins, Pareto optimality and exhaustive popularity decisions.

Exhaustive routines enumerate every partition of the agent set.  Utilities
are computed exactly, then each agent's distinct utility values are replaced
by their rank; comparing ranks is equivalent to comparing the rationals, so
the vectorised comparisons below stay exact.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .enumeration import restricted_growth_strings
from .errors import BudgetExceeded, InvalidArgument
from .model import HedonicGame, Kind, Partition, partition_utility

DEFAULT_ENUMERATION_LIMIT = 13


class Verdict(enum.Enum):
    POPULAR = "popular"
    NOT_POPULAR = "not_popular"
    UNKNOWN_WITHIN_BUDGET = "unknown_within_budget"


class Mode(enum.Enum):
    FULL = "full"
    PARETO_RESTRICTED = "pareto"


@dataclass(frozen=True)
class MarginBreakdown:
    prefers_first: int
    prefers_second: int
    indifferent: int
    restricted_to: frozenset[int] | None = None

    @property
    def margin(self) -> int:
        return self.prefers_first - self.prefers_second


@dataclass(frozen=True)
class PopularityReport:
    verdict: Verdict
    witness: Partition | None
    challengers_examined: int
    pruned: int = 0
    # margin of (candidate, witness); negative whenever a witness is present
    margin: MarginBreakdown | None = None


def popularity_margin(
    game: HedonicGame,
    pi: Partition,
    pi_prime: Partition,
    subset: Iterable[int] | None = None,
) -> MarginBreakdown:
    pi.check_game(game)
    pi_prime.check_game(game)
    if subset is None:
        agents: Sequence[int] = range(game.n_agents)
        restricted = None
    else:
        restricted = frozenset(subset)
        for a in restricted:
            if not isinstance(a, int) or not 0 <= a < game.n_agents:
                raise InvalidArgument(f"subset member {a!r} is not an agent")
        agents = sorted(restricted)
    first = second = same = 0
    for a in agents:
        ua = partition_utility(game, pi, a)
        ub = partition_utility(game, pi_prime, a)
        if ua > ub:
            first += 1
        elif ub > ua:
            second += 1
        else:
            same += 1
    return MarginBreakdown(first, second, same, restricted)


def mutual_negative_pairs(game: HedonicGame, threshold) -> set[tuple[int, int]]:
    """Pairs (i, j), i < j, whose values in both directions are <= threshold."""
    t = Fraction(threshold)
    n = game.n_agents
    return {
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if game.value(i, j) <= t and game.value(j, i) <= t
    }


class _BlockUtilities:
    """Exact member utilities per coalition, cached by bitmask."""

    def __init__(self, game: HedonicGame):
        self.game = game
        self.cache: dict[int, dict[int, Fraction]] = {}

    def of(self, mask: int) -> dict[int, Fraction]:
        hit = self.cache.get(mask)
        if hit is not None:
            return hit
        members = [i for i in range(self.game.n_agents) if mask >> i & 1]
        rows = self.game.valuations
        out = {}
        for i in members:
            s = sum((rows[i][j] for j in members if j != i), Fraction(0))
            if self.game.kind is Kind.FRACTIONAL:
                s /= len(members)
            out[i] = s
        self.cache[mask] = out
        return out


def _label_masks(labels: Sequence[int]) -> list[int]:
    masks: dict[int, int] = {}
    for agent, lab in enumerate(labels):
        masks[lab] = masks.get(lab, 0) | (1 << agent)
    return list(masks.values())


class PartitionSpace:
    """All partitions of a game's agents with a rank-encoded utility matrix.

    ``ranks[p, i]`` orders agent i's utility in partition p exactly: a larger
    rank means a strictly larger utility, equal ranks mean equal utilities.
    """

    def __init__(self, game: HedonicGame, limit: int = DEFAULT_ENUMERATION_LIMIT):
        n = game.n_agents
        if n > limit:
            raise BudgetExceeded(
                f"{n} agents exceeds the enumeration limit {limit}; use the falsifier"
            )
        self.game = game
        self.labels = np.array(list(restricted_growth_strings(n)), dtype=np.int16)
        self.blocks = _BlockUtilities(game)
        exact = [[None] * n for _ in range(len(self.labels))]
        for p, row in enumerate(self.labels):
            for mask in _label_masks(row):
                for agent, u in self.blocks.of(mask).items():
                    exact[p][agent] = u
        self._order = []
        ranks = np.empty((len(self.labels), n), dtype=np.int32)
        for i in range(n):
            values = sorted({exact[p][i] for p in range(len(exact))})
            index = {v: r for r, v in enumerate(values)}
            self._order.append(index)
            ranks[:, i] = [index[exact[p][i]] for p in range(len(exact))]
        self.ranks = ranks
        self._pareto: np.ndarray | None = None

    def __len__(self):
        return len(self.labels)

    def partition(self, p: int) -> Partition:
        return Partition.from_labels(self.labels[p].tolist())

    def index_of(self, pi: Partition) -> int:
        target = np.array(pi.labels(), dtype=np.int16)
        hits = np.flatnonzero((self.labels == target).all(axis=1))
        return int(hits[0])

    def rank_row(self, pi: Partition) -> np.ndarray:
        return self.ranks[self.index_of(pi)]

    def margins_against(self, row: np.ndarray, idx: np.ndarray | None = None) -> np.ndarray:
        """margin(candidate, q) for every challenger q (or those in idx)."""
        other = self.ranks if idx is None else self.ranks[idx]
        return np.sign(row[None, :] - other).sum(axis=1)

    def pareto_mask(self, workers: int = 1, chunk: int = 512) -> np.ndarray:
        """Boolean mask of Pareto-optimal partitions (computed once, then cached)."""
        if self._pareto is None:
            self._pareto = self._compute_pareto(workers, chunk)
        return self._pareto

    def _compute_pareto(self, workers: int, chunk: int) -> np.ndarray:
        R = self.ranks
        starts = list(range(0, len(R), chunk))

        def work(s: int) -> np.ndarray:
            block = R[s : s + chunk]
            weak = (R[None, :, :] >= block[:, None, :]).all(axis=2)
            strict = (R[None, :, :] > block[:, None, :]).any(axis=2)
            return ~(weak & strict).any(axis=1)

        parts = _map(work, starts, workers)
        return np.concatenate(parts) if parts else np.zeros(0, dtype=bool)


def _map(fn, items, workers: int):
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _chunks(n: int, workers: int, minimum: int = 64) -> list[range]:
    size = max(minimum, -(-n // max(1, workers * 4)))
    return [range(s, min(n, s + size)) for s in range(0, n, size)]


def find_pareto_improvement(
    game: HedonicGame, pi: Partition, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> Partition | None:
    """First partition in enumeration order that Pareto-improves on pi."""
    pi.check_game(game)
    space = PartitionSpace(game, limit)
    row = space.rank_row(pi)
    better = (space.ranks >= row).all(axis=1) & (space.ranks > row).any(axis=1)
    hits = np.flatnonzero(better)
    return space.partition(int(hits[0])) if len(hits) else None


def is_pareto_optimal(
    game: HedonicGame, pi: Partition, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> bool:
    return find_pareto_improvement(game, pi, limit) is None


def _verify_in_space(
    space: PartitionSpace, pi: Partition, mode: Mode, workers: int = 1
) -> PopularityReport:
    row = space.rank_row(pi)
    margins = space.margins_against(row)
    if mode is Mode.FULL:
        eligible = np.ones(len(space), dtype=bool)
    else:
        eligible = space.pareto_mask(workers)
    losing = np.flatnonzero(eligible & (margins < 0))
    if len(losing) == 0:
        examined = int(eligible.sum())
        return PopularityReport(Verdict.POPULAR, None, examined, len(space) - examined)
    w = int(losing[0])
    examined = int(eligible[: w + 1].sum())
    witness = space.partition(w)
    return PopularityReport(
        Verdict.NOT_POPULAR,
        witness,
        examined,
        (w + 1) - examined,
        popularity_margin(space.game, pi, witness),
    )


def verify_popular(
    game: HedonicGame,
    pi: Partition,
    mode: Mode | str = Mode.FULL,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
    workers: int = 1,
    space: PartitionSpace | None = None,
) -> PopularityReport:
    """Decide popularity of pi by comparing it with every (Pareto-optimal) partition.

    Counts in the report are taken up to and including the first witness, so
    they do not depend on ``workers``.  A prebuilt ``space`` for the same game
    may be passed to amortise enumeration over many calls.
    """
    pi.check_game(game)
    if space is None:
        space = PartitionSpace(game, limit)
    elif space.game is not game and space.game != game:
        raise InvalidArgument("space was built for a different game")
    return _verify_in_space(space, pi, Mode(mode), workers)


def find_popular(
    game: HedonicGame,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
    forbidden_pairs: Iterable[tuple[int, int]] = (),
    workers: int = 1,
) -> tuple[Partition, PopularityReport] | None:
    """Return the first popular partition in enumeration order, or None.

    ``forbidden_pairs`` prunes *candidates* only; every candidate is still
    checked against all partitions.  Pruning is only sound when no popular
    partition groups a forbidden pair.
    """
    space = PartitionSpace(game, limit)
    forbidden = [(min(a, b), max(a, b)) for a, b in forbidden_pairs if a != b]
    candidates = np.ones(len(space), dtype=bool)
    for a, b in forbidden:
        candidates &= space.labels[:, a] != space.labels[:, b]
    cand_idx = np.flatnonzero(candidates)
    R = space.ranks

    def first_popular(r: range) -> int | None:
        for k in r:
            p = int(cand_idx[k])
            if np.sign(R[p][None, :] - R).sum(axis=1).min() >= 0:
                return p
        return None

    found = [h for h in _map(first_popular, _chunks(len(cand_idx), workers), workers) if h is not None]
    if not found:
        return None
    p = min(found)
    report = PopularityReport(Verdict.POPULAR, None, len(space), len(space) - len(cand_idx))
    return space.partition(p), report
