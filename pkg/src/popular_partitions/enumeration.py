"""Set-partition enumeration by restricted growth strings."""

from __future__ import annotations

from typing import Iterable, Iterator

from .model import Partition


def _normalize_pairs(n: int, pairs: Iterable[tuple[int, int]]) -> list[set[int]]:
    # conflicts[i] holds the forbidden partners of i with smaller index
    conflicts: list[set[int]] = [set() for _ in range(n)]
    for a, b in pairs:
        if a == b or not (0 <= a < n and 0 <= b < n):
            continue
        lo, hi = min(a, b), max(a, b)
        conflicts[hi].add(lo)
    return conflicts


def restricted_growth_strings(
    n_agents: int, forbidden_pairs: Iterable[tuple[int, int]] = ()
) -> Iterator[tuple[int, ...]]:
    """Yield RGS label tuples in lexicographic order.

    A string ``a`` has ``a[0] = 0`` and ``a[i] <= 1 + max(a[:i])``.  Prefixes
    that put a forbidden pair into one block are cut immediately.
    """
    if n_agents < 1:
        raise ValueError("n_agents must be >= 1")
    conflicts = _normalize_pairs(n_agents, forbidden_pairs)
    labels = [0] * n_agents
    # members[b] = agents currently labelled b, kept for conflict lookups
    members: list[list[int]] = [[0]]

    def fits(i: int, b: int) -> bool:
        if not conflicts[i] or b >= len(members):
            return True
        return not any(a in conflicts[i] for a in members[b])

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == n_agents:
            yield tuple(labels)
            return
        top = len(members)
        for b in range(top + 1):
            if not fits(i, b):
                continue
            labels[i] = b
            if b == top:
                members.append([i])
            else:
                members[b].append(i)
            yield from rec(i + 1)
            if b == top:
                members.pop()
            else:
                members[b].pop()

    yield from rec(1)


def enumerate_partitions(
    n_agents: int, forbidden_pairs: Iterable[tuple[int, int]] = ()
) -> Iterator[Partition]:
    for labels in restricted_growth_strings(n_agents, forbidden_pairs):
        yield Partition.from_labels(labels)


def bell_number(n: int) -> int:
    """Bell numbers via the Bell triangle."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]
