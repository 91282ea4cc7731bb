"""2-quantified 3-DNF formulas: does some X assignment satisfy psi for every Y assignment?"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .errors import BudgetExceeded, InvalidArgument

DEFAULT_QSAT_LIMIT = 16


class Side(enum.Enum):
    X = "x"
    Y = "y"


@dataclass(frozen=True)
class Literal:
    side: Side
    variable: int  # 0-based
    negated: bool = False

    def __neg__(self) -> Literal:
        return Literal(self.side, self.variable, not self.negated)

    def value(self, tau_x: Sequence[bool], tau_y: Sequence[bool]) -> bool:
        bits = tau_x if self.side is Side.X else tau_y
        return bits[self.variable] != self.negated

    def __str__(self):
        return ("~" if self.negated else "") + f"{self.side.value}{self.variable + 1}"


@dataclass(frozen=True)
class Clause:
    literals: tuple[Literal, Literal, Literal]

    def __post_init__(self):
        lits = tuple(self.literals)
        if len(lits) != 3:
            raise InvalidArgument(f"a clause has exactly 3 literals, got {len(lits)}")
        if len(set(lits)) != 3:
            raise InvalidArgument(f"clause literals must be distinct: {lits}")
        object.__setattr__(self, "literals", lits)

    def holds(self, tau_x: Sequence[bool], tau_y: Sequence[bool]) -> bool:
        return all(lit.value(tau_x, tau_y) for lit in self.literals)

    def __contains__(self, lit: Literal) -> bool:
        return lit in self.literals

    def __str__(self):
        return "(" + " & ".join(map(str, self.literals)) + ")"


@dataclass(frozen=True)
class QDnfInstance:
    n: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        clauses = tuple(self.clauses)
        if self.n < 1:
            raise InvalidArgument("need at least one variable per side")
        if len(clauses) < 1:
            raise InvalidArgument("need at least one clause")
        for c in clauses:
            for lit in c.literals:
                if not 0 <= lit.variable < self.n:
                    raise InvalidArgument(f"literal {lit} out of range for n={self.n}")
        object.__setattr__(self, "clauses", clauses)

    @property
    def m(self) -> int:
        return len(self.clauses)

    @classmethod
    def from_ints(cls, n: int, clauses: Sequence[Sequence[int]]) -> QDnfInstance:
        """Build from signed DIMACS-style ints: 1..n are X, n+1..2n are Y."""
        return cls(n, tuple(Clause(tuple(literal_from_int(v, n) for v in c)) for c in clauses))

    def __str__(self):
        return " | ".join(map(str, self.clauses))


def literal_from_int(v: int, n: int) -> Literal:
    k = abs(v)
    if v == 0 or k > 2 * n:
        raise InvalidArgument(f"literal {v} out of range for n={n}")
    if k <= n:
        return Literal(Side.X, k - 1, v < 0)
    return Literal(Side.Y, k - n - 1, v < 0)


def literal_to_int(lit: Literal, n: int) -> int:
    k = lit.variable + 1 + (n if lit.side is Side.Y else 0)
    return -k if lit.negated else k


def _check(instance: QDnfInstance, tau, name: str) -> None:
    if len(tau) != instance.n:
        raise InvalidArgument(f"{name} has length {len(tau)}, expected {instance.n}")


def eval_dnf(instance: QDnfInstance, tau_x: Sequence[bool], tau_y: Sequence[bool]) -> bool:
    _check(instance, tau_x, "tau_x")
    _check(instance, tau_y, "tau_y")
    return any(c.holds(tau_x, tau_y) for c in instance.clauses)


def assignments(n: int):
    """All boolean n-tuples in lexicographic order with False < True."""
    return product((False, True), repeat=n)


def qsat_solve(instance: QDnfInstance, limit: int = DEFAULT_QSAT_LIMIT) -> tuple[bool, ...] | None:
    """Lexicographically least tau_x with psi true under every tau_y, or None."""
    if instance.n > limit:
        raise BudgetExceeded(f"n={instance.n} exceeds brute-force limit {limit}")
    for tau_x in assignments(instance.n):
        if all(eval_dnf(instance, tau_x, tau_y) for tau_y in assignments(instance.n)):
            return tau_x
    return None


def certified_assignments(instance: QDnfInstance, limit: int = DEFAULT_QSAT_LIMIT) -> list[tuple[bool, ...]]:
    """Every tau_x that satisfies psi for all tau_y, in lexicographic order."""
    if instance.n > limit:
        raise BudgetExceeded(f"n={instance.n} exceeds brute-force limit {limit}")
    return [
        tau_x
        for tau_x in assignments(instance.n)
        if all(eval_dnf(instance, tau_x, tau_y) for tau_y in assignments(instance.n))
    ]
