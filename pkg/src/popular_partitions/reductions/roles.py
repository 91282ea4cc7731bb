"""Agent roles in the reduced games and the artifact that carries them."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import InvalidArgument
from ..model import HedonicGame, Kind
from ..qsat import Literal, QDnfInstance, Side


class RoleKind(enum.Enum):
    X_LIT = "X"
    X_T = "Xt"
    X_F = "Xf"
    X_F_PRIME = "Xf'"
    Y_LIT = "Y"
    Y_PRIME = "Y'"
    Y_DOUBLE_PRIME = "Y''"
    CLAUSE = "C"
    C_PRIME = "C'"
    T1 = "T1"
    T2 = "T2"
    B1 = "b1"
    B2 = "b2"
    R = "R"
    LEAF = "L"
    J = "j"
    J_PRIME = "j'"
    J_DOUBLE_PRIME = "j''"


@dataclass(frozen=True)
class Role:
    """``index`` is the 0-based variable, clause or structure index; ``leaf`` is 1..6."""

    kind: RoleKind
    index: int = 0
    negated: bool = False
    leaf: int = 0

    @property
    def literal(self) -> Literal | None:
        if self.kind in (RoleKind.X_LIT,):
            return Literal(Side.X, self.index, self.negated)
        if self.kind in (RoleKind.Y_LIT, RoleKind.Y_PRIME, RoleKind.Y_DOUBLE_PRIME):
            return Literal(Side.Y, self.index, self.negated)
        return None

    @property
    def label(self) -> str:
        k, i = self.kind, self.index + 1
        neg = "~" if self.negated else ""
        return {
            RoleKind.X_LIT: f"a_{neg}x{i}",
            RoleKind.X_T: f"x{i}_t",
            RoleKind.X_F: f"x{i}_f",
            RoleKind.X_F_PRIME: f"x{i}_f'",
            RoleKind.Y_LIT: f"a_{neg}y{i}",
            RoleKind.Y_PRIME: f"a'_{neg}y{i}",
            RoleKind.Y_DOUBLE_PRIME: f"a''_{neg}y{i}",
            RoleKind.CLAUSE: f"a_c{i}",
            RoleKind.C_PRIME: f"c'{i}",
            RoleKind.T1: f"t1_{i}",
            RoleKind.T2: f"t2_{i}",
            RoleKind.B1: "b1",
            RoleKind.B2: "b2",
            RoleKind.R: f"r_c{i}",
            RoleKind.LEAF: f"l_c{i}^{self.leaf}",
            RoleKind.J: "j",
            RoleKind.J_PRIME: "j'",
            RoleKind.J_DOUBLE_PRIME: "j''",
        }[k]

    def __str__(self):
        return self.label


_LABEL_PATTERNS = [
    (re.compile(r"a_(~?)x(\d+)$"), RoleKind.X_LIT),
    (re.compile(r"x(\d+)_t$"), RoleKind.X_T),
    (re.compile(r"x(\d+)_f'$"), RoleKind.X_F_PRIME),
    (re.compile(r"x(\d+)_f$"), RoleKind.X_F),
    (re.compile(r"a_(~?)y(\d+)$"), RoleKind.Y_LIT),
    (re.compile(r"a''_(~?)y(\d+)$"), RoleKind.Y_DOUBLE_PRIME),
    (re.compile(r"a'_(~?)y(\d+)$"), RoleKind.Y_PRIME),
    (re.compile(r"a_c(\d+)$"), RoleKind.CLAUSE),
    (re.compile(r"c'(\d+)$"), RoleKind.C_PRIME),
    (re.compile(r"t1_(\d+)$"), RoleKind.T1),
    (re.compile(r"t2_(\d+)$"), RoleKind.T2),
    (re.compile(r"r_c(\d+)$"), RoleKind.R),
    (re.compile(r"l_c(\d+)\^([1-6])$"), RoleKind.LEAF),
]
_FIXED = {r.label: r for r in (Role(k) for k in (
    RoleKind.B1, RoleKind.B2, RoleKind.J, RoleKind.J_PRIME, RoleKind.J_DOUBLE_PRIME))}


def parse_role(label: str) -> Role:
    if label in _FIXED:
        return _FIXED[label]
    for pattern, kind in _LABEL_PATTERNS:
        m = pattern.match(label)
        if not m:
            continue
        g = m.groups()
        if kind is RoleKind.LEAF:
            return Role(kind, int(g[0]) - 1, leaf=int(g[1]))
        if len(g) == 2:
            return Role(kind, int(g[1]) - 1, negated=g[0] == "~")
        return Role(kind, int(g[0]) - 1)
    raise InvalidArgument(f"unknown role label {label!r}")


@dataclass(frozen=True)
class ReductionParams:
    kind: Kind
    n: int
    m: int
    infinity: int | None = None
    v_x: Fraction | None = None
    v_c: Fraction | None = None
    v_j: Fraction | None = None

    def as_dict(self) -> dict:
        out = {"model": self.kind.value, "n": self.n, "m": self.m}
        if self.kind is Kind.ADDITIVELY_SEPARABLE:
            out["infinity"] = self.infinity
        else:
            out.update(v_X=str(self.v_x), v_C=str(self.v_c), v_J=str(self.v_j))
        return out


@dataclass(frozen=True)
class ReductionArtifact:
    game: HedonicGame
    roles: tuple[Role, ...]
    params: ReductionParams
    instance: QDnfInstance
    index: dict[Role, int] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        index = {r: i for i, r in enumerate(self.roles)}
        if len(index) != len(self.roles) or len(self.roles) != self.game.n_agents:
            raise InvalidArgument("role map must be a bijection onto the agents")
        object.__setattr__(self, "index", index)

    def __getitem__(self, role: Role) -> int:
        return self.index[role]

    def agents_of(self, kind: RoleKind) -> list[int]:
        return [i for i, r in enumerate(self.roles) if r.kind is kind]

    def with_game(self, game: HedonicGame) -> ReductionArtifact:
        """Same bookkeeping around a different matrix (used for fault injection)."""
        return ReductionArtifact(game, self.roles, self.params, self.instance)
