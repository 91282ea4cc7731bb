"""Reduction from 2-quantified 3-DNF-SAT to nonnegative fractional hedonic games.

Agent layout: X literal agents, X_t, X_f, X_f', Y literal agents, Y', Y'',
clause agents, R agents, leaves (clause-major, l^1..l^6), j, j', j''.
Unspecified values are 0.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import InvalidArgument, PreconditionError
from ..model import HedonicGame, Kind, Partition
from ..qsat import QDnfInstance
from .roles import ReductionArtifact, ReductionParams, Role, RoleKind as K

REAL = (K.X_LIT, K.Y_LIT, K.CLAUSE)


def fhg_parameters(n: int, m: int) -> tuple[Fraction, Fraction, Fraction]:
    """(v_X, v_C, v_J); v_C = (2n+1)/(2n-2.5) kept over integers."""
    v_x = Fraction(2 * (4 * n + m + 1), 4 * n + m + 2)
    v_c = Fraction(4 * n + 2, 4 * n - 5)
    v_j = Fraction(3 * (2 * n + m - 1), 2 * (2 * n + m))
    return v_x, v_c, v_j


def fhg_roles(n: int, m: int) -> list[Role]:
    roles = [Role(K.X_LIT, x, neg) for x in range(n) for neg in (False, True)]
    for kind in (K.X_T, K.X_F, K.X_F_PRIME):
        roles += [Role(kind, x) for x in range(n)]
    for kind in (K.Y_LIT, K.Y_PRIME, K.Y_DOUBLE_PRIME):
        roles += [Role(kind, y, neg) for y in range(n) for neg in (False, True)]
    roles += [Role(K.CLAUSE, c) for c in range(m)]
    roles += [Role(K.R, c) for c in range(m)]
    roles += [Role(K.LEAF, c, leaf=i) for c in range(m) for i in range(1, 7)]
    roles += [Role(K.J), Role(K.J_PRIME), Role(K.J_DOUBLE_PRIME)]
    return roles


def _same_literal(a: Role, b: Role) -> bool:
    return (a.index, a.negated) == (b.index, b.negated)


def _value(a: Role, b: Role, instance: QDnfInstance, v_x, v_c, v_j) -> Fraction | int:
    ka, kb = a.kind, b.kind
    if ka is K.X_LIT:
        if b.index == a.index and kb in (K.X_T, K.X_F, K.X_F_PRIME):
            return v_x if kb is K.X_T else Fraction(9, 10) * v_x
        if kb is K.X_LIT and b.index == a.index:
            return 0
        if kb in REAL:
            return 1
        return 2 if kb is K.J else 0
    if ka in (K.X_T, K.X_F, K.X_F_PRIME):
        if kb is K.X_LIT and b.index == a.index:
            return 1
        if {ka, kb} == {K.X_F, K.X_F_PRIME} and b.index == a.index:
            return 1
        return 0
    if ka is K.Y_LIT:
        if kb in (K.Y_PRIME, K.Y_DOUBLE_PRIME) and _same_literal(a, b):
            return Fraction(3, 2)
        if kb is K.Y_LIT and b.index == a.index:
            return 0
        if kb in REAL:
            return 1
        return 2 if kb is K.J else 0
    if ka in (K.Y_PRIME, K.Y_DOUBLE_PRIME):
        if not _same_literal(a, b):
            return 0
        if {ka, kb} == {K.Y_PRIME, K.Y_DOUBLE_PRIME}:
            return 2
        return 1 if kb is K.Y_LIT else 0
    if ka is K.CLAUSE:
        if kb in (K.X_LIT, K.Y_LIT):
            return 0 if b.literal in instance.clauses[a.index] else v_c
        if kb in (K.CLAUSE, K.J):
            return 1
        if kb is K.LEAF and b.leaf == 6 and b.index == a.index:
            return 2
        return 0
    if ka is K.LEAF:
        if b.index != a.index:
            return 0
        if kb is K.R:
            return 1
        return Fraction(3, 4) if a.leaf == 6 and kb is K.CLAUSE else 0
    if ka is K.R:
        return 1 if kb is K.LEAF and b.index == a.index else 0
    if ka is K.J:
        if kb in REAL:
            return 1
        return v_j if kb in (K.J_PRIME, K.J_DOUBLE_PRIME) else 0
    if ka in (K.J_PRIME, K.J_DOUBLE_PRIME):
        if kb is K.J:
            return 1
        return 2 if kb in (K.J_PRIME, K.J_DOUBLE_PRIME) else 0
    raise InvalidArgument(f"role {a} does not occur in the FHG reduction")


def reduce_fhg(instance: QDnfInstance) -> ReductionArtifact:
    n, m = instance.n, instance.m
    if n < 2:
        raise PreconditionError(f"the FHG reduction needs n >= 2 variables per side, got {n}")
    if m < 2:
        raise PreconditionError(f"the FHG reduction needs m >= 2 clauses, got {m}")
    v_x, v_c, v_j = fhg_parameters(n, m)
    roles = fhg_roles(n, m)
    matrix = [
        [0 if i == j else _value(a, b, instance, v_x, v_c, v_j) for j, b in enumerate(roles)]
        for i, a in enumerate(roles)
    ]
    params = ReductionParams(Kind.FRACTIONAL, n, m, v_x=v_x, v_c=v_c, v_j=v_j)
    return ReductionArtifact(HedonicGame.from_matrix(Kind.FRACTIONAL, matrix),
                             tuple(roles), params, instance)


def _require(artifact: ReductionArtifact, tau, name: str) -> None:
    if artifact.params.kind is not Kind.FRACTIONAL:
        raise InvalidArgument("expected an FHG reduction artifact")
    if len(tau) != artifact.params.n:
        raise InvalidArgument(f"{name} has length {len(tau)}, expected {artifact.params.n}")


def build_pistar_fhg(artifact: ReductionArtifact, tau_x: Sequence[bool]) -> Partition:
    _require(artifact, tau_x, "tau_x")
    n, m = artifact.params.n, artifact.params.m
    at = artifact.__getitem__
    blocks = []
    for c in range(m):
        leaf = [at(Role(K.LEAF, c, leaf=i)) for i in range(1, 7)]
        blocks.append([at(Role(K.CLAUSE, c)), leaf[5]])
        blocks.append([at(Role(K.R, c))] + leaf[:3])
        blocks += [[leaf[3]], [leaf[4]]]
    blocks.append([at(Role(K.J)), at(Role(K.J_PRIME)), at(Role(K.J_DOUBLE_PRIME))])
    for y in range(n):
        for neg in (False, True):
            blocks.append([at(Role(k, y, neg)) for k in (K.Y_LIT, K.Y_PRIME, K.Y_DOUBLE_PRIME)])
    for x in range(n):
        true_neg = not tau_x[x]
        blocks.append([at(Role(K.X_LIT, x, true_neg)), at(Role(K.X_T, x))])
        blocks.append([at(Role(K.X_LIT, x, not true_neg)), at(Role(K.X_F, x)), at(Role(K.X_F_PRIME, x))])
    return Partition(blocks)


def build_challenger_fhg(
    artifact: ReductionArtifact, pistar: Partition, tau_y: Sequence[bool]
) -> Partition:
    """j, the X agents holding an x_t, the tau_y-true Y agents and all clause agents form S."""
    _require(artifact, tau_y, "tau_y")
    pistar.check_game(artifact.game)
    j = artifact[Role(K.J)]
    if set(pistar.block_of(j)) != {j, artifact[Role(K.J_PRIME)], artifact[Role(K.J_DOUBLE_PRIME)]}:
        raise InvalidArgument("pistar must contain the coalition {j, j', j''}")
    s = {j, *artifact.agents_of(K.CLAUSE)}
    for x in range(artifact.params.n):
        block = pistar.block_of(artifact[Role(K.X_T, x)])
        lits = [a for a in block if artifact.roles[a].kind is K.X_LIT and artifact.roles[a].index == x]
        if len(block) != 2 or len(lits) != 1:
            raise InvalidArgument(f"x{x + 1}_t is not paired with one of its literal agents")
        s.add(lits[0])
    for y in range(artifact.params.n):
        s.add(artifact[Role(K.Y_LIT, y, not tau_y[y])])
    blocks = [rest for block in pistar if (rest := [a for a in block if a not in s])]
    blocks.append(sorted(s))
    return Partition(blocks)
