"""Text formats for games, partitions, formulas and reduction role maps.

Game files are JSON with keys ``kind``, ``agents``, optional ``names`` and a
row-major ``values`` matrix of integers or ``"p/q"`` strings.  The writer
puts each matrix row on its own line so golden files diff cleanly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from .errors import InvalidArgument, ParseError, SchemaError
from .model import HedonicGame, Kind, Partition
from .qsat import Clause, QDnfInstance, literal_from_int, literal_to_int
from .reductions.roles import ReductionArtifact, ReductionParams, parse_role


def rational_token(v: Fraction):
    return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def format_rational(v: Fraction) -> str:
    return str(rational_token(Fraction(v)))


def _parse_token(tok, row: int, col: int) -> Fraction:
    if isinstance(tok, bool) or not isinstance(tok, (int, str)):
        raise SchemaError(f"values[{row}][{col}]: expected integer or 'p/q' string, got {tok!r}")
    try:
        return Fraction(tok.strip()) if isinstance(tok, str) else Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"values[{row}][{col}]: bad rational token {tok!r}") from None


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def parse_game_document(text: str) -> tuple[HedonicGame, list[str] | None]:
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise SchemaError("game document must be a JSON object")
    missing = {"kind", "agents", "values"} - doc.keys()
    if missing:
        raise SchemaError(f"missing fields: {', '.join(sorted(missing))}")
    if doc["kind"] not in ("ashg", "fhg"):
        raise SchemaError(f"kind must be 'ashg' or 'fhg', got {doc['kind']!r}")
    n = doc["agents"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SchemaError("agents must be a positive integer")
    values = doc["values"]
    if not isinstance(values, list) or len(values) != n:
        got = len(values) if isinstance(values, list) else type(values).__name__
        raise SchemaError(f"values must have {n} rows, got {got}")
    rows = []
    for i, row in enumerate(values):
        if not isinstance(row, list) or len(row) != n:
            raise SchemaError(f"values row {i} must have {n} entries")
        rows.append([_parse_token(t, i, j) for j, t in enumerate(row)])
        if rows[-1][i] != 0:
            raise SchemaError(f"diagonal entry values[{i}][{i}] must be 0")
    names = doc.get("names")
    if names is not None and (
        not isinstance(names, list) or len(names) != n or not all(isinstance(s, str) for s in names)
    ):
        raise SchemaError(f"names must be a list of {n} strings")
    return HedonicGame.from_matrix(Kind(doc["kind"]), rows), names


def parse_game(text: str) -> HedonicGame:
    return parse_game_document(text)[0]


def serialize_game(game: HedonicGame, names: Sequence[str] | None = None) -> str:
    if names is not None and len(names) != game.n_agents:
        raise InvalidArgument("names must match the number of agents")
    lines = ["{", f'  "kind": {json.dumps(game.kind.value)},', f'  "agents": {game.n_agents},']
    if names is not None:
        lines.append(f'  "names": {json.dumps(list(names))},')
    lines.append('  "values": [')
    rows = [json.dumps([rational_token(v) for v in row]) for row in game.valuations]
    lines.append(",\n".join("    " + r for r in rows))
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


def parse_partition(text: str, n_agents: int | None = None) -> Partition:
    """One block per line, agent indices separated by whitespace; '#' starts a comment."""
    blocks = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        block = []
        for tok in body.split():
            try:
                block.append(int(tok))
            except ValueError:
                raise ParseError(f"bad agent index {tok!r}", lineno, line.index(tok) + 1) from None
        blocks.append(block)
    try:
        partition = Partition(blocks)
    except InvalidArgument as exc:
        raise SchemaError(str(exc)) from None
    if n_agents is not None and partition.n_agents != n_agents:
        raise SchemaError(f"partition covers {partition.n_agents} agents, game has {n_agents}")
    return partition


def serialize_partition(partition: Partition) -> str:
    return "".join(" ".join(map(str, b)) + "\n" for b in partition)


def parse_qdnf(text: str) -> QDnfInstance:
    header = None
    clauses: list[list[int]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = line.split()
        if not toks or toks[0] == "c":
            continue
        if toks[0] == "p":
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if len(toks) != 4 or toks[1] != "qdnf":
                raise ParseError("header must read 'p qdnf <n> <m>'", lineno)
            try:
                header = (int(toks[2]), int(toks[3]))
            except ValueError:
                raise ParseError("n and m must be integers", lineno, line.index(toks[2]) + 1) from None
            continue
        if header is None:
            raise ParseError("clause before 'p qdnf' header", lineno)
        lits = []
        for tok in toks:
            try:
                lits.append(int(tok))
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno, line.index(tok) + 1) from None
        if len(lits) == 4 and lits[-1] == 0:
            lits.pop()
        if len(lits) != 3:
            raise SchemaError(f"line {lineno}: a clause has exactly three literals")
        if len(set(lits)) != 3:
            raise SchemaError(f"line {lineno}: clause literals must be distinct")
        clauses.append(lits)
    if header is None:
        raise ParseError("missing 'p qdnf <n> <m>' header", 1)
    n, m = header
    if n < 1 or m < 1:
        raise SchemaError("n and m must be positive")
    if len(clauses) != m:
        raise SchemaError(f"header declares {m} clauses, found {len(clauses)}")
    try:
        return QDnfInstance.from_ints(n, clauses)
    except InvalidArgument as exc:
        raise SchemaError(str(exc)) from None


def serialize_qdnf(instance: QDnfInstance) -> str:
    lines = [f"p qdnf {instance.n} {instance.m}"]
    lines += [" ".join(str(literal_to_int(l, instance.n)) for l in c.literals) for c in instance.clauses]
    return "\n".join(lines) + "\n"


def serialize_roles(artifact: ReductionArtifact) -> str:
    doc = {
        "params": artifact.params.as_dict(),
        "clauses": [[literal_to_int(l, artifact.params.n) for l in c.literals]
                    for c in artifact.instance.clauses],
        "roles": [r.label for r in artifact.roles],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_artifact(game_text: str, roles_text: str) -> ReductionArtifact:
    game = parse_game(game_text)
    doc = _load_json(roles_text)
    try:
        p = doc["params"]
        kind = Kind(p["model"])
        n, m = p["n"], p["m"]
        instance = QDnfInstance(n, tuple(Clause(tuple(literal_from_int(v, n) for v in c))
                                         for c in doc["clauses"]))
        roles = tuple(parse_role(s) for s in doc["roles"])
        if kind is Kind.ADDITIVELY_SEPARABLE:
            params = ReductionParams(kind, n, m, infinity=int(p["infinity"]))
        else:
            params = ReductionParams(kind, n, m, v_x=Fraction(p["v_X"]),
                                     v_c=Fraction(p["v_C"]), v_j=Fraction(p["v_J"]))
        return ReductionArtifact(game, roles, params, instance)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad roles document: {exc}") from None
