"""Cardinal hedonic games with exact rational valuations.

Two utility models are supported.  In an additively separable game an
agent's utility for a coalition is the sum of her values for the other
members; in a fractional game that sum is divided by the coalition size.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidArgument


class Kind(enum.Enum):
    ADDITIVELY_SEPARABLE = "ashg"
    FRACTIONAL = "fhg"


class Preference(enum.Enum):
    PREFERS_A = "prefers_a"
    PREFERS_B = "prefers_b"
    INDIFFERENT = "indifferent"


def as_rational(value) -> Fraction:
    """Convert ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(value, bool):
        raise InvalidArgument("booleans are not valuations")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidArgument(f"not a rational token: {value!r}") from exc
    raise InvalidArgument(f"unsupported valuation type {type(value).__name__}")


@dataclass(frozen=True)
class HedonicGame:
    kind: Kind
    valuations: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(as_rational(v) for v in row) for row in self.valuations)
        n = len(rows)
        if n < 1:
            raise InvalidArgument("a game needs at least one agent")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise InvalidArgument(f"row {i} has {len(row)} entries, expected {n}")
            if row[i] != 0:
                raise InvalidArgument(f"diagonal entry ({i},{i}) must be 0")
        object.__setattr__(self, "valuations", rows)

    @classmethod
    def from_matrix(cls, kind: Kind | str, matrix: Sequence[Sequence]) -> HedonicGame:
        return cls(Kind(kind), tuple(tuple(row) for row in matrix))

    @property
    def n_agents(self) -> int:
        return len(self.valuations)

    def value(self, i: int, j: int) -> Fraction:
        return self.valuations[i][j]

    def check_agent(self, agent: int) -> None:
        if not isinstance(agent, int) or not 0 <= agent < self.n_agents:
            raise InvalidArgument(f"agent {agent!r} not in [0, {self.n_agents})")


@dataclass(frozen=True)
class Partition:
    """A set partition of ``range(n)`` held in canonical form.

    Blocks are sorted tuples, ordered by their smallest member, so two
    partitions compare equal exactly when they group agents identically.
    """

    blocks: tuple[tuple[int, ...], ...]
    agent_to_block: dict[int, int] = field(compare=False, hash=False, repr=False)

    def __init__(self, blocks: Iterable[Iterable[int]]):
        canon = tuple(sorted(tuple(sorted(set(b))) for b in blocks))
        seen: dict[int, int] = {}
        for k, block in enumerate(canon):
            if not block:
                raise InvalidArgument("coalitions must be nonempty")
            for a in block:
                if not isinstance(a, int) or a < 0:
                    raise InvalidArgument(f"bad agent index {a!r}")
                if a in seen:
                    raise InvalidArgument(f"agent {a} appears in two blocks")
                seen[a] = k
        if sorted(seen) != list(range(len(seen))):
            raise InvalidArgument("blocks must cover 0..n-1 without gaps")
        object.__setattr__(self, "blocks", canon)
        object.__setattr__(self, "agent_to_block", seen)

    @classmethod
    def singletons(cls, n: int) -> Partition:
        return cls([i] for i in range(n))

    @classmethod
    def grand(cls, n: int) -> Partition:
        return cls([range(n)])

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> Partition:
        """Build from a block label per agent (e.g. a restricted growth string)."""
        groups: dict[int, list[int]] = {}
        for agent, lab in enumerate(labels):
            groups.setdefault(int(lab), []).append(agent)
        return cls(groups.values())

    @property
    def n_agents(self) -> int:
        return len(self.agent_to_block)

    def block_of(self, agent: int) -> tuple[int, ...]:
        try:
            return self.blocks[self.agent_to_block[agent]]
        except KeyError:
            raise InvalidArgument(f"agent {agent!r} not in partition") from None

    def labels(self) -> tuple[int, ...]:
        """Restricted growth string: block index of each agent in canonical order."""
        return tuple(self.agent_to_block[a] for a in range(self.n_agents))

    def check_game(self, game: HedonicGame) -> None:
        if self.n_agents != game.n_agents:
            raise InvalidArgument(
                f"partition covers {self.n_agents} agents, game has {game.n_agents}"
            )

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __str__(self):
        return "{" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


def utility(game: HedonicGame, coalition: Iterable[int], agent: int) -> Fraction:
    members = set(coalition)
    if agent not in members:
        raise InvalidArgument(f"agent {agent} is not a member of the coalition")
    for a in members:
        game.check_agent(a)
    row = game.valuations[agent]
    total = sum((row[j] for j in members if j != agent), Fraction(0))
    if game.kind is Kind.FRACTIONAL:
        return total / len(members)
    return total


def partition_utility(game: HedonicGame, partition: Partition, agent: int) -> Fraction:
    partition.check_game(game)
    return utility(game, partition.block_of(agent), agent)


def compare(game: HedonicGame, a: Partition, b: Partition, agent: int) -> Preference:
    ua = partition_utility(game, a, agent)
    ub = partition_utility(game, b, agent)
    if ua > ub:
        return Preference.PREFERS_A
    if ub > ua:
        return Preference.PREFERS_B
    return Preference.INDIFFERENT
