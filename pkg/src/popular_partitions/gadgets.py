"""Small fixed games without popular partitions."""

from __future__ import annotations

from .errors import InvalidArgument
from .model import HedonicGame, Kind, Partition

FIG1_NAMES = ("t1", "t2", "t3", "b1", "b2")
T1, T2, T3, B1, B2 = range(5)
FIG1_NEGATIVE = -7
# pairs valued at the large negative constant in both directions
FIG1_FORBIDDEN_PAIRS = ((T1, T2), (T1, T3), (T2, T3), (B1, B2))


def five_agent_noinstance(negative: int = FIG1_NEGATIVE) -> HedonicGame:
    """Three top agents valuing b1 at 1 and b2 at 2 (and vice versa); all else negative."""
    m = [[negative] * 5 for _ in range(5)]
    for i in range(5):
        m[i][i] = 0
    for t in (T1, T2, T3):
        m[t][B1] = m[B1][t] = 1
        m[t][B2] = m[B2][t] = 2
    return HedonicGame.from_matrix(Kind.ADDITIVELY_SEPARABLE, m)


def fig1_partitions() -> tuple[Partition, Partition]:
    """The pair {{t1,b1},{t2,b2},{t3}} and the challenger {{t1,b2},{t3,b1},{t2}}."""
    return (Partition([[T1, B1], [T2, B2], [T3]]),
            Partition([[T1, B2], [T3, B1], [T2]]))


def star_names(k: int) -> tuple[str, ...]:
    return ("r",) + tuple(f"l{i}" for i in range(1, k + 1))


def star_game(k: int) -> HedonicGame:
    """Fractional game on a star: centre 0 and leaves 1..k, unit values along edges."""
    if k < 1:
        raise InvalidArgument(f"a star needs at least one leaf, got k={k}")
    n = k + 1
    m = [[0] * n for _ in range(n)]
    for leaf in range(1, n):
        m[0][leaf] = m[leaf][0] = 1
    return HedonicGame.from_matrix(Kind.FRACTIONAL, m)
