"""Valuation summary tables, transcribed class-by-class, for auditing a built game.

Each cell is either a single value or a pair ``(corresponding, other)``.
The builders in ``ashg``/``fhg`` are written agent-by-agent instead, so a
scan against these tables cross-checks two independent encodings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..model import Kind
from .roles import ReductionArtifact, Role, RoleKind as K

INF = "inf"  # placeholder for the large negative constant

# ---- additively separable --------------------------------------------------
ASHG_COLUMNS = ["a_x", "a_b", "a_c", "T1", "T2", "b1", "b2", "x_t", "x_f", "a_b'", "c'"]
_h = Fraction(1, 2)
ASHG_TABLE = {
    "a_x":  [(INF, 0), 0, 0, INF, INF, 1, 2, (_h, INF), (4, INF), INF, INF],
    "a_b":  [0, (INF, 0), 0, INF, INF, 1, 2, INF, INF, (_h, INF), INF],
    "a_c":  [(-2, 0), (-2, 0), 0, INF, INF, 5, 6, INF, INF, INF, 0],
    "T1":   [INF, INF, INF, 0, INF, 1, 2, INF, INF, INF, INF],
    "T2":   [INF, INF, INF, INF, 0, 1, 2, INF, INF, INF, INF],
    "b1":   [1, 1, 1, 1, 1, 0, INF, INF, INF, INF, INF],
    "b2":   [2, 2, 2, 2, 2, INF, 0, INF, INF, INF, INF],
    "x_t":  [(1, INF), INF, INF, INF, INF, INF, INF, INF, INF, INF, INF],
    "x_f":  [(1, INF), INF, INF, INF, INF, INF, INF, INF, INF, INF, INF],
    "a_b'": [INF, (1, INF), INF, INF, INF, INF, INF, INF, INF, INF, INF],
    "c'":   [INF, INF, 1, INF, INF, INF, INF, INF, INF, INF, 0],
}

_ASHG_CLASS = {
    K.X_LIT: "a_x", K.Y_LIT: "a_b", K.CLAUSE: "a_c", K.T1: "T1", K.T2: "T2",
    K.B1: "b1", K.B2: "b2", K.X_T: "x_t", K.X_F: "x_f", K.Y_PRIME: "a_b'", K.C_PRIME: "c'",
}

# ---- fractional ------------------------------------------------------------
FHG_COLUMNS = ["a_a", "a_b", "a_c", "j", "j'", "j''", "x_t", "x_f", "x_f'",
               "a_b'", "a_b''", "l1-5", "l6", "r_c"]
VX, VX9, VC, VJ = "v_X", "9/10 v_X", "v_C", "v_J"
_3h, _3q = Fraction(3, 2), Fraction(3, 4)
FHG_TABLE = {
    "a_a":   [(0, 1), 1, 1, 2, 0, 0, (VX, 0), (VX9, 0), (VX9, 0), 0, 0, 0, 0, 0],
    "a_b":   [1, (0, 1), 1, 2, 0, 0, 0, 0, 0, (_3h, 0), (_3h, 0), 0, 0, 0],
    "a_c":   [(0, VC), (0, VC), 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, (2, 0), 0],
    "j":     [1, 1, 1, 0, VJ, VJ, 0, 0, 0, 0, 0, 0, 0, 0],
    "j'":    [0, 0, 0, 1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0],
    "j''":   [0, 0, 0, 1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    "x_t":   [(1, 0), 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    "x_f":   [(1, 0), 0, 0, 0, 0, 0, 0, 0, (1, 0), 0, 0, 0, 0, 0],
    "x_f'":  [(1, 0), 0, 0, 0, 0, 0, 0, (1, 0), 0, 0, 0, 0, 0, 0],
    "a_b'":  [0, (1, 0), 0, 0, 0, 0, 0, 0, 0, 0, (2, 0), 0, 0, 0],
    "a_b''": [0, (1, 0), 0, 0, 0, 0, 0, 0, 0, (2, 0), 0, 0, 0, 0],
    "l1-5":  [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, (1, 0)],
    "l6":    [0, 0, (_3q, 0), 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, (1, 0)],
    "r_c":   [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, (1, 0), (1, 0), 0],
}

_FHG_CLASS = {
    K.X_LIT: "a_a", K.Y_LIT: "a_b", K.CLAUSE: "a_c", K.J: "j", K.J_PRIME: "j'",
    K.J_DOUBLE_PRIME: "j''", K.X_T: "x_t", K.X_F: "x_f", K.X_F_PRIME: "x_f'",
    K.Y_PRIME: "a_b'", K.Y_DOUBLE_PRIME: "a_b''", K.R: "r_c",
}


def role_class(role: Role, kind: Kind) -> str:
    if kind is Kind.ADDITIVELY_SEPARABLE:
        return _ASHG_CLASS[role.kind]
    if role.kind is K.LEAF:
        return "l6" if role.leaf == 6 else "l1-5"
    return _FHG_CLASS[role.kind]


def corresponds(row: Role, col: Role, artifact: ReductionArtifact) -> bool:
    """Whether a table's "corresponding" entry applies to this ordered pair."""
    a, b = row.kind, col.kind
    literal_kinds = (K.X_LIT, K.Y_LIT)
    if a is K.CLAUSE and b in literal_kinds:
        return col.literal in artifact.instance.clauses[row.index]
    if a in literal_kinds and b is a:
        return row.index == col.index  # complementary agents
    if K.CLAUSE in (a, b) or K.R in (a, b) or K.LEAF in (a, b):
        return row.index == col.index
    y_side = (K.Y_LIT, K.Y_PRIME, K.Y_DOUBLE_PRIME)
    if a in y_side and b in y_side:
        return (row.index, row.negated) == (col.index, col.negated)
    return row.index == col.index


def _resolve(token, artifact: ReductionArtifact) -> Fraction:
    p = artifact.params
    if token == INF:
        return Fraction(-p.infinity)
    named = {VX: p.v_x, VX9: p.v_x * Fraction(9, 10) if p.v_x is not None else None,
             VC: p.v_c, VJ: p.v_j}
    if isinstance(token, str):
        return named[token]
    return Fraction(token)


@dataclass(frozen=True)
class CellMismatch:
    row: int
    col: int
    row_role: str
    col_role: str
    expected: Fraction
    actual: Fraction

    def __str__(self):
        return (f"cell ({self.row},{self.col}) {self.row_role}->{self.col_role}: "
                f"expected {self.expected}, found {self.actual}")


def expected_value(artifact: ReductionArtifact, i: int, j: int) -> Fraction:
    kind = artifact.params.kind
    table, columns = (
        (ASHG_TABLE, ASHG_COLUMNS) if kind is Kind.ADDITIVELY_SEPARABLE else (FHG_TABLE, FHG_COLUMNS)
    )
    ri, rj = artifact.roles[i], artifact.roles[j]
    cell = table[role_class(ri, kind)][columns.index(role_class(rj, kind))]
    if isinstance(cell, tuple):
        cell = cell[0] if corresponds(ri, rj, artifact) else cell[1]
    return _resolve(cell, artifact)


def conformance_mismatches(artifact: ReductionArtifact) -> list[CellMismatch]:
    """Every off-diagonal cell whose value differs from the summary table."""
    out = []
    g = artifact.game
    for i in range(g.n_agents):
        for j in range(g.n_agents):
            if i == j:
                continue
            want = expected_value(artifact, i, j)
            have = g.value(i, j)
            if want != have:
                out.append(CellMismatch(i, j, artifact.roles[i].label,
                                        artifact.roles[j].label, want, have))
    return out
