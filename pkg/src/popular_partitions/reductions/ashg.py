"""Reduction from 2-quantified 3-DNF-SAT to additively separable hedonic games.

Agents are laid out as: X literal agents (a_x1, a_~x1, a_x2, ...), X_t, X_f,
Y literal agents, Y' agents, clause agents, C' agents, T1, T2, b1, b2.
Unspecified values are the large negative constant ``-infinity``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import InvalidArgument, PreconditionError
from ..model import HedonicGame, Kind, Partition
from ..qsat import QDnfInstance
from .roles import ReductionArtifact, ReductionParams, Role, RoleKind as K

HALF = Fraction(1, 2)
REAL = (K.X_LIT, K.Y_LIT, K.CLAUSE)


def ashg_roles(n: int, m: int) -> list[Role]:
    roles = [Role(K.X_LIT, x, neg) for x in range(n) for neg in (False, True)]
    roles += [Role(K.X_T, x) for x in range(n)]
    roles += [Role(K.X_F, x) for x in range(n)]
    roles += [Role(K.Y_LIT, y, neg) for y in range(n) for neg in (False, True)]
    roles += [Role(K.Y_PRIME, y, neg) for y in range(n) for neg in (False, True)]
    roles += [Role(K.CLAUSE, c) for c in range(m)]
    roles += [Role(K.C_PRIME, c) for c in range(m - 1)]
    roles += [Role(K.T1, t) for t in range(2 * n + m)]
    roles += [Role(K.T2, t) for t in range(2 * n + m)]
    roles += [Role(K.B1), Role(K.B2)]
    return roles


def _value(a: Role, b: Role, instance: QDnfInstance, neg_inf: int) -> Fraction | int:
    """Value agent ``a`` assigns to agent ``b`` (a != b)."""
    ka, kb = a.kind, b.kind
    if ka is K.X_LIT:
        if kb in (K.X_T, K.X_F) and b.index == a.index:
            return HALF if kb is K.X_T else 4
        if kb is K.X_LIT and b.index == a.index:
            return neg_inf
        if kb in REAL:
            return 0
        return {K.B1: 1, K.B2: 2}.get(kb, neg_inf)
    if ka is K.Y_LIT:
        if kb is K.Y_PRIME and (b.index, b.negated) == (a.index, a.negated):
            return HALF
        if kb is K.Y_LIT and b.index == a.index:
            return neg_inf
        if kb in REAL:
            return 0
        return {K.B1: 1, K.B2: 2}.get(kb, neg_inf)
    if ka is K.CLAUSE:
        if kb in (K.X_LIT, K.Y_LIT) and b.literal in instance.clauses[a.index]:
            return -2
        if kb in REAL or kb is K.C_PRIME:
            return 0
        return {K.B1: 5, K.B2: 6}.get(kb, neg_inf)
    if ka in (K.X_T, K.X_F):
        return 1 if kb is K.X_LIT and b.index == a.index else neg_inf
    if ka is K.Y_PRIME:
        return 1 if kb is K.Y_LIT and (b.index, b.negated) == (a.index, a.negated) else neg_inf
    if ka is K.C_PRIME:
        return {K.C_PRIME: 0, K.CLAUSE: 1}.get(kb, neg_inf)
    if ka in (K.T1, K.T2):
        if kb is ka:
            return 0
        return {K.B1: 1, K.B2: 2}.get(kb, neg_inf)
    if ka in (K.B1, K.B2):
        if kb in REAL or kb in (K.T1, K.T2):
            return 1 if ka is K.B1 else 2
        return neg_inf
    raise InvalidArgument(f"role {a} does not occur in the ASHG reduction")


def reduce_ashg(instance: QDnfInstance) -> ReductionArtifact:
    n, m = instance.n, instance.m
    if m < 2:
        raise PreconditionError(f"the ASHG reduction needs m >= 2 clauses, got {m}")
    if n < 1:
        raise PreconditionError("the ASHG reduction needs n >= 1")
    roles = ashg_roles(n, m)
    # the suggested constant; it dominates every agent's total positive value
    infinity = 6 * (12 * n + 4 * m - 1)
    matrix = [
        [0 if i == j else _value(a, b, instance, -infinity) for j, b in enumerate(roles)]
        for i, a in enumerate(roles)
    ]
    params = ReductionParams(Kind.ADDITIVELY_SEPARABLE, n, m, infinity=infinity)
    return ReductionArtifact(HedonicGame.from_matrix(Kind.ADDITIVELY_SEPARABLE, matrix),
                             tuple(roles), params, instance)


def _require(artifact: ReductionArtifact, tau, name: str) -> None:
    if artifact.params.kind is not Kind.ADDITIVELY_SEPARABLE:
        raise InvalidArgument("expected an ASHG reduction artifact")
    if len(tau) != artifact.params.n:
        raise InvalidArgument(f"{name} has length {len(tau)}, expected {artifact.params.n}")


def build_pistar_ashg(artifact: ReductionArtifact, tau_x: Sequence[bool]) -> Partition:
    _require(artifact, tau_x, "tau_x")
    n = artifact.params.n
    at = artifact.__getitem__
    blocks = []
    for x in range(n):
        true_lit = not tau_x[x]  # negated flag of the literal made true
        blocks.append([at(Role(K.X_LIT, x, true_lit)), at(Role(K.X_T, x))])
        blocks.append([at(Role(K.X_LIT, x, not true_lit)), at(Role(K.X_F, x))])
    for y in range(n):
        for neg in (False, True):
            blocks.append([at(Role(K.Y_LIT, y, neg)), at(Role(K.Y_PRIME, y, neg))])
    blocks.append(artifact.agents_of(K.CLAUSE) + artifact.agents_of(K.C_PRIME))
    blocks.append([at(Role(K.B1))] + artifact.agents_of(K.T1))
    blocks.append([at(Role(K.B2))] + artifact.agents_of(K.T2))
    return Partition(blocks)


def _true_literal_agents(artifact: ReductionArtifact, pistar: Partition, tau_y) -> list[int]:
    """X agents paired with their x_t in pistar, plus Y agents made true by tau_y."""
    chosen = []
    for x in range(artifact.params.n):
        block = pistar.block_of(artifact[Role(K.X_T, x)])
        partners = [a for a in block if artifact.roles[a].kind is not K.X_T]
        if len(block) != 2 or artifact.roles[partners[0]] not in (
            Role(K.X_LIT, x, False), Role(K.X_LIT, x, True)
        ):
            raise InvalidArgument(f"x{x + 1}_t is not paired with one of its literal agents")
        chosen.append(partners[0])
    for y in range(artifact.params.n):
        chosen.append(artifact[Role(K.Y_LIT, y, not tau_y[y])])
    return chosen


def build_challenger_ashg(
    artifact: ReductionArtifact, pistar: Partition, tau_y: Sequence[bool]
) -> Partition:
    """Partition that beats pistar by one vote whenever psi(tau_x, tau_y) is false.

    b1 leaves her T-block for the new coalition S and b2 takes over that
    T-block, whichever of T1/T2 it is.
    """
    _require(artifact, tau_y, "tau_y")
    pistar.check_game(artifact.game)
    b1, b2 = artifact[Role(K.B1)], artifact[Role(K.B2)]
    t1, t2 = set(artifact.agents_of(K.T1)), set(artifact.agents_of(K.T2))
    home1 = set(pistar.block_of(b1)) - {b1}
    home2 = set(pistar.block_of(b2)) - {b2}
    if {frozenset(home1), frozenset(home2)} != {frozenset(t1), frozenset(t2)}:
        raise InvalidArgument("b1 and b2 must each sit with exactly one of T1, T2")
    clauses = artifact.agents_of(K.CLAUSE)
    if set(pistar.block_of(clauses[0])) != set(clauses) | set(artifact.agents_of(K.C_PRIME)):
        raise InvalidArgument("pistar must contain the coalition C u C'")
    s = {b1, *clauses, *_true_literal_agents(artifact, pistar, tau_y)}
    blocks = []
    for block in pistar:
        rest = [a for a in block if a not in s and a != b2]
        if rest:
            blocks.append(rest + ([b2] if set(rest) == home1 else []))
    blocks.append(sorted(s))
    return Partition(blocks)


def extract_assignment(artifact: ReductionArtifact, partition: Partition) -> tuple[bool, ...] | None:
    """x is true iff {a_x, x_t} is a block; None if x_t sits with neither literal agent."""
    partition.check_game(artifact.game)
    tau = []
    for x in range(artifact.params.n):
        xt = artifact[Role(K.X_T, x)]
        block = set(partition.block_of(xt))
        if block == {xt, artifact[Role(K.X_LIT, x, False)]}:
            tau.append(True)
        elif block == {xt, artifact[Role(K.X_LIT, x, True)]}:
            tau.append(False)
        else:
            return None
    return tuple(tau)
