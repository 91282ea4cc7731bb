from fractions import Fraction

import pytest
from hypothesis import given

from popular_partitions import ParseError, Partition, QDnfInstance, SchemaError
from popular_partitions.gadgets import FIG1_NAMES
from popular_partitions.io import (
    parse_artifact, parse_game, parse_game_document, parse_partition, parse_qdnf,
    serialize_game, serialize_partition, serialize_qdnf, serialize_roles,
)
from popular_partitions.qsat import Clause, Literal, Side
from popular_partitions.reductions import reduce

from conftest import YES_4CLAUSE, games, partitions


@given(games())
def test_game_round_trip(game):
    assert parse_game(serialize_game(game)) == game


def test_names_round_trip(fig1):
    game, names = parse_game_document(serialize_game(fig1, FIG1_NAMES))
    assert game == fig1 and names == list(FIG1_NAMES)


def test_rational_string_token():
    g = parse_game('{"kind": "fhg", "agents": 2, "values": [[0, "10/3"], [1, 0]]}')
    assert g.value(0, 1) == Fraction(10, 3)
    assert '"10/3"' in serialize_game(g)


def test_one_row_per_line(fig1):
    text = serialize_game(fig1)
    assert sum(1 for line in text.splitlines() if line.strip().startswith("[")) == 5


@pytest.mark.parametrize("doc", [
    '{"kind": "ashg", "agents": 2, "values": [[0, 1]]}',
    '{"kind": "ashg", "agents": 2, "values": [[1, 1], [1, 0]]}',
    '{"kind": "ashg", "agents": 2, "values": [[0, 1.5], [1, 0]]}',
    '{"kind": "ashg", "agents": 2, "values": [[0, "a/b"], [1, 0]]}',
    '{"kind": "xhg", "agents": 1, "values": [[0]]}',
    '{"kind": "ashg", "values": [[0]]}',
    '{"kind": "ashg", "agents": 1, "names": ["a", "b"], "values": [[0]]}',
    '[1, 2]',
])
def test_schema_errors(doc):
    with pytest.raises(SchemaError):
        parse_game(doc)


def test_parse_error_has_position():
    with pytest.raises(ParseError) as err:
        parse_game('{"kind": "ashg",\n  "agents": }')
    assert err.value.line == 2
    assert "line 2" in str(err.value)


@given(partitions(7))
def test_partition_round_trip(p):
    assert parse_partition(serialize_partition(p)) == p


def test_partition_comments_and_errors():
    assert parse_partition("# header\n0 2\n1  # tail\n") == Partition([[0, 2], [1]])
    with pytest.raises(SchemaError):
        parse_partition("0 1\n1 2\n")
    with pytest.raises(SchemaError):
        parse_partition("1 1 2\n")
    with pytest.raises(SchemaError):
        parse_partition("0 1\n", n_agents=3)
    with pytest.raises(ParseError):
        parse_partition("0 x\n")


def test_qdnf_encoding():
    inst = parse_qdnf("p qdnf 2 1\n1 3 -4\n")
    lits = (Literal(Side.X, 0, False), Literal(Side.Y, 0, False), Literal(Side.Y, 1, True))
    assert inst == QDnfInstance(2, (Clause(lits),))
    assert str(inst) == "(x1 & y1 & ~y2)"


def test_qdnf_round_trip(yes_instance):
    assert parse_qdnf(serialize_qdnf(yes_instance)) == yes_instance


def test_qdnf_comments_and_terminators():
    assert parse_qdnf("c hi\np qdnf 2 1\n1 3 -4 0\n") == parse_qdnf("p qdnf 2 1\n1 3 -4\n")


@pytest.mark.parametrize("text,err", [
    ("1 2 3\n", ParseError),
    ("p qdnf 2\n", ParseError),
    ("p qdnf 2 1\n1 1 3\n", SchemaError),
    ("p qdnf 2 1\n1 3\n", SchemaError),
    ("p qdnf 2 2\n1 3 4\n", SchemaError),
    ("p qdnf 2 1\n1 3 9\n", SchemaError),
    ("p qdnf 2 1\n1 z 3\n", ParseError),
])
def test_qdnf_errors(text, err):
    with pytest.raises(err):
        parse_qdnf(text)


@pytest.mark.parametrize("model", ["ashg", "fhg"])
def test_artifact_round_trip(yes_instance, model):
    art = reduce(yes_instance, model)
    names = [r.label for r in art.roles]
    back = parse_artifact(serialize_game(art.game, names), serialize_roles(art))
    assert back.game == art.game and back.roles == art.roles
    assert back.params == art.params and back.instance == art.instance
