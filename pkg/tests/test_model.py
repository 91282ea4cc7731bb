import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from popular_partitions import (
    HedonicGame, InvalidArgument, Kind, Partition, Preference, compare, partition_utility, utility,
)
from popular_partitions.gadgets import B1, B2, T1, T2, T3, star_game

from conftest import games, random_game
from oracles import pair_sum_utility


def test_fig1_pair_utility(fig1):
    assert utility(fig1, {T1, B1}, T1) == 1


def test_singleton_utility_is_zero(fig1):
    for i in range(5):
        assert utility(fig1, {i}, i) == 0


def test_star_center_utility():
    assert utility(star_game(6), range(7), 0) == Fraction(6, 7)


def test_utility_requires_membership(fig1):
    with pytest.raises(InvalidArgument):
        utility(fig1, {T1, B1}, T2)


def test_partition_utility_examples(fig1, fig1_pair):
    p1, _ = fig1_pair
    assert partition_utility(fig1, p1, T3) == 0
    assert partition_utility(fig1, p1, B2) == 2
    for i in range(5):
        assert partition_utility(fig1, Partition.singletons(5), i) == 0


def test_compare_examples(fig1, fig1_pair):
    p1, p2 = fig1_pair
    assert compare(fig1, p1, p2, T1) is Preference.PREFERS_B
    assert compare(fig1, p1, p2, B1) is Preference.INDIFFERENT
    assert compare(fig1, p1, p1, T2) is Preference.INDIFFERENT


def test_game_validation():
    with pytest.raises(InvalidArgument):
        HedonicGame.from_matrix("ashg", [[1]])
    with pytest.raises(InvalidArgument):
        HedonicGame.from_matrix("ashg", [[0, 1], [1]])
    with pytest.raises(InvalidArgument):
        HedonicGame.from_matrix("ashg", [])
    with pytest.raises(InvalidArgument):
        HedonicGame.from_matrix("ashg", [[0, 0.5], [0, 0]])


def test_rational_tokens_are_exact():
    g = HedonicGame.from_matrix("fhg", [[0, "10/3"], ["-1/2", 0]])
    assert g.value(0, 1) == Fraction(10, 3)
    assert utility(g, {0, 1}, 0) == Fraction(5, 3)


@pytest.mark.parametrize("blocks", [[[0, 1], [1, 2]], [[0], [2]], [[0, 1], []]])
def test_partition_validation(blocks):
    with pytest.raises(InvalidArgument):
        Partition(blocks)


@given(st.integers(1, 8), st.randoms(use_true_random=False))
def test_canonical_form_is_order_insensitive(n, rnd):
    labels = [rnd.randrange(n) for _ in range(n)]
    p = Partition.from_labels(labels)
    shuffled = [list(b) for b in p.blocks]
    rnd.shuffle(shuffled)
    for b in shuffled:
        rnd.shuffle(b)
    q = Partition(shuffled)
    assert q == p and q.blocks == p.blocks
    assert Partition(q.blocks) == q
    assert all(list(b) == sorted(b) for b in q.blocks)
    assert [b[0] for b in q.blocks] == sorted(b[0] for b in q.blocks)
    assert Partition.from_labels(q.labels()) == q


@given(games(), st.data())
def test_utility_matches_pairwise_sum(game, data):
    n = game.n_agents
    coalition = data.draw(st.sets(st.integers(0, n - 1), min_size=1))
    agent = data.draw(st.sampled_from(sorted(coalition)))
    expected = pair_sum_utility(game.valuations, game.kind.value, coalition, agent)
    assert utility(game, coalition, agent) == expected


def fhg_preference_exceptions(trials: int, seed: int) -> int:
    """Counts violations of: u(C + j) >= u(C)  iff  v(j) >= u(C), in random FHGs."""
    rng = random.Random(seed)
    bad = 0
    for _ in range(trials):
        n = rng.randint(2, 8)
        game = random_game(rng, n, "fhg", nonnegative=rng.random() < 0.5)
        size = rng.randint(1, n - 1)
        members = rng.sample(range(n), size)
        outsider = rng.choice([a for a in range(n) if a not in members])
        i = rng.choice(members)
        base = utility(game, members, i)
        grown = utility(game, members + [outsider], i)
        if (grown >= base) != (game.value(i, outsider) >= base):
            bad += 1
    return bad


def test_fhg_adding_agent_rule():
    assert fhg_preference_exceptions(10_000, seed=11) == 0
