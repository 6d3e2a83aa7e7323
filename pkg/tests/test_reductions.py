from __future__ import annotations

import random
from fractions import Fraction

import pytest

import genutil
from pathgames import oracle
from pathgames.errors import CIWViolated, ConditionViolated, NonPositiveCycle
from pathgames.model import (
    Situation,
    is_positive,
    sp_game,
    terminal_game,
)
from pathgames.play import sp_cost, terminal_cost, trace
from pathgames.reductions import (
    contract_small_game,
    gallai_transform,
    lift_situation,
    terminal_to_sp,
    une_preprocess,
)


def test_gallai_positive_input_unchanged(g6s):
    result = gallai_transform(g6s)
    assert result.game.edge_cost == g6s.edge_cost
    assert all(v == 0 for row in result.potential.values for v in row)


def test_gallai_two_cycle_by_hand():
    game = sp_game([1, 1, None], {(0, 1): (3,), (1, 0): (-1,), (1, 2): (1,)}, 1)
    result = gallai_transform(game)
    new = result.game
    assert new.cost(0, 1, 1) == Fraction(3, 2)
    assert new.cost(1, 0, 1) == Fraction(1, 2)
    # cycle sum is invariant under any potential
    assert new.cost(0, 1, 1) + new.cost(1, 0, 1) == 2
    assert all(c > 0 for cs in new.edge_cost.values() for c in cs)


def test_gallai_rejects_fig1(fig1_pm):
    with pytest.raises(NonPositiveCycle) as exc:
        gallai_transform(fig1_pm)
    assert exc.value.player == 1
    assert tuple(exc.value.cycle) == (0, 1)


def test_gallai_path_costs_shift_by_constant():
    rng = random.Random(21)
    games = 0
    for _ in range(30):
        game = genutil.random_positive_cycle_sp(rng, max_v=7)
        if not is_positive(game).cycle_positive:
            continue
        if is_positive(game).edge_positive:
            continue
        games += 1
        result = gallai_transform(game)
        new = result.game
        g = game.graph
        assert all(c > 0 for cs in new.edge_cost.values() for c in cs)
        for w in g.terminals:
            for v0 in g.nonterminals:
                paths = genutil.all_simple_paths(g.n_vertices, g.edge_set, v0, w)
                for player in g.players:
                    shifts = set()
                    for path in paths:
                        old = sum(
                            game.cost(a, b, player) for a, b in zip(path, path[1:])
                        )
                        fresh = sum(
                            new.cost(a, b, player) for a, b in zip(path, path[1:])
                        )
                        shifts.add(fresh - old)
                    assert len(shifts) <= 1
                    if shifts:
                        expected = result.potential.of(player, v0) - result.potential.of(player, w)
                        assert shifts == {expected}
    assert games >= 5


def test_terminal_to_sp_g3s(g3s):
    red = terminal_to_sp(g3s)
    game = red.game
    assert red.scale == 1
    assert red.big_m == 4
    n_edges = len(g3s.graph.edge_set)
    assert n_edges == 9
    for u, v in game.graph.sorted_edges():
        if game.graph.is_terminal(v):
            for p in game.graph.players:
                assert game.cost(u, v, p) == red.big_m + g3s.cost_at(v, p)
        else:
            assert game.edge_cost[(u, v)] == (Fraction(1, 18),) * 3
    assert is_positive(game).edge_positive


def test_terminal_to_sp_g2_violates_ciw(g2):
    with pytest.raises(CIWViolated) as exc:
        terminal_to_sp(g2)
    assert (1, 3) in exc.value.pairs  # player 1 prefers cycling to terminal a2
    assert (1, None) in exc.value.pairs  # player 1 has a nonzero cycling cost


def test_terminal_to_sp_single_move():
    g = terminal_game([1, None], [(0, 1)], {1: (-1,)}, n_players=1)
    red = terminal_to_sp(g)
    assert red.big_m == 2
    assert red.game.cost(0, 1, 1) == red.big_m - 1 > 0


def test_terminal_to_sp_fractional_costs_scale():
    g = terminal_game(
        [1, None, None],
        [(0, 1), (0, 2)],
        {1: (Fraction(-1, 3),), 2: (Fraction(-5, 2),)},
        n_players=1,
    )
    red = terminal_to_sp(g)
    assert red.scale == 6
    assert red.big_m == 16  # max scaled magnitude 15, plus one
    assert red.game.cost(0, 1, 1) == 16 - 2
    assert red.game.cost(0, 2, 1) == 16 - 15


def test_sandwich_inequality_random():
    rng = random.Random(31)
    checked = 0
    for _ in range(25):
        game = genutil.random_ciw_terminal(rng, max_v=6)
        if oracle.situation_count(game) > 400:
            continue
        red = terminal_to_sp(game)
        g = game.graph
        for situation in oracle.enumerate_situations(game):
            for start in g.nonterminals:
                play = trace(g, situation, start)
                if not play.is_terminal:
                    continue
                checked += 1
                for p in g.players:
                    scaled = red.scale * game.cost_at(play.terminal, p)
                    sp = sp_cost(red.game, play, p)
                    assert sp.is_finite
                    lo = red.big_m + scaled
                    assert lo <= sp.value < lo + Fraction(1, 2)
    assert checked > 200


def test_image_terminal_ne_is_source_ne():
    rng = random.Random(33)
    checked = 0
    for _ in range(15):
        game = genutil.random_ciw_terminal(rng, max_v=6)
        if oracle.situation_count(game) > 300:
            continue
        red = terminal_to_sp(game)
        for start in game.graph.nonterminals:
            for situation in oracle.find_all_ne(red.game, start=start):
                if not trace(game.graph, situation, start).is_terminal:
                    continue
                checked += 1
                assert oracle.verify_ne_terminal(game, situation, start=start).ok
    assert checked > 20


def test_contract_alternating_is_isomorphic(g6):
    small, cmap = contract_small_game(g6)
    assert small.graph.n_vertices == g6.graph.n_vertices
    assert sorted(small.graph.edge_set) == sorted(g6.graph.edge_set)
    assert all(len(m) == 1 for m in cmap.members)
    assert not any(u == v for u, v in small.graph.edge_set)


def test_contract_two_linked_same_player_vertices():
    g = terminal_game(
        [1, 1, None],
        [(0, 1), (1, 0), (0, 2)],
        {2: (-1,)},
        n_players=1,
    )
    small, cmap = contract_small_game(g)
    assert small.graph.n_vertices == 2
    merged_id = cmap.component[0]
    assert cmap.component[1] == merged_id
    assert (merged_id, merged_id) in small.graph.edge_set
    # lifting the loop choice realizes the internal 2-cycle
    loop = Situation.of(small.graph, {merged_id: merged_id})
    lifted = lift_situation(loop, cmap)
    assert lifted[0] == 1 and lifted[1] == 0


def test_contract_g3s_identity(g3s):
    small, cmap = contract_small_game(g3s)
    assert small.graph.n_vertices == g3s.graph.n_vertices
    assert sorted(small.graph.edge_set) == sorted(g3s.graph.edge_set)


def test_contract_singleton_self_loop_kept():
    g = terminal_game(
        [1, 2, None],
        [(0, 0), (0, 1), (1, 0), (1, 2)],
        {2: (-1, -1)},
        n_players=2,
    )
    small, _ = contract_small_game(g)
    assert (0, 0) in small.graph.edge_set


def test_lift_identity_contraction(g6):
    small, cmap = contract_small_game(g6)
    for situation in oracle.enumerate_situations(small, cap=100):
        lifted = lift_situation(situation, cmap)
        relabeled = {cmap.component[v]: cmap.component[t] for v, t in lifted.items()}
        assert relabeled == dict(situation.items())


def test_lift_preserves_costs_everywhere():
    rng = random.Random(41)
    checked = 0
    for _ in range(25):
        game = genutil.random_symmetric_terminal(rng, max_v=7)
        small, cmap = contract_small_game(game)
        if oracle.situation_count(small) > 400:
            continue
        for situation in oracle.enumerate_situations(small):
            lifted = lift_situation(situation, cmap)
            for v in game.graph.nonterminals:
                cid = cmap.component[v]
                for p in game.graph.players:
                    a = terminal_cost(game, trace(game.graph, lifted, v), p)
                    b = terminal_cost(small, trace(small.graph, situation, cid), p)
                    assert a == b
                    checked += 1
    assert checked > 500


def test_lift_contracted_ne_verifies():
    rng = random.Random(43)
    checked = 0
    for _ in range(20):
        game = genutil.random_symmetric_terminal(rng, max_v=6)
        small, cmap = contract_small_game(game)
        if oracle.situation_count(small) > 200:
            continue
        for start in small.graph.nonterminals:
            orig_start = cmap.members[start][0]
            for ne in oracle.find_all_ne(small, start=start)[:3]:
                lifted = lift_situation(ne, cmap)
                assert oracle.verify_ne_terminal(game, lifted, start=orig_start).ok
                checked += 1
    assert checked > 20


def test_une_preprocess_alternating_unchanged(g6):
    # not symmetric, so preprocessing must refuse
    with pytest.raises(ConditionViolated):
        une_preprocess(g6)


def test_une_preprocess_chain(chain):
    prep = une_preprocess(chain)
    assert prep.dropped_edges == ()
    assert prep.unreachable == frozenset()
    assert prep.game.graph.n_vertices == chain.graph.n_vertices


def test_une_preprocess_drops_worse_terminal_moves():
    g = terminal_game(
        [1, 2, None, None],
        [(0, 1), (1, 0), (0, 2), (0, 3), (1, 3)],
        {2: (-1, -1), 3: (-3, -3)},
        n_players=2,
    )
    prep = une_preprocess(g)
    pg = prep.game.graph
    # vertex 0 keeps only the move to the -3 terminal
    assert (0, 2) not in pg.edge_set
    assert (0, 3) in pg.edge_set
    assert (0, 2) in prep.dropped_edges


def test_une_preprocess_terminal_tie_keeps_lowest_id():
    g = terminal_game(
        [1, 2, None, None],
        [(0, 1), (1, 0), (0, 2), (0, 3), (1, 2)],
        {2: (-2, -1), 3: (-2, -1)},
        n_players=2,
    )
    prep = une_preprocess(g)
    assert (0, 2) in prep.game.graph.edge_set
    assert (0, 3) not in prep.game.graph.edge_set


def test_une_preprocess_marks_terminal_free_region():
    g = terminal_game(
        [1, 2, 1, None],
        [(0, 1), (1, 0), (2, 3)],
        {3: (-1, -1)},
        n_players=2,
    )
    prep = une_preprocess(g)
    assert prep.unreachable == frozenset({prep.contraction.component[0],
                                          prep.contraction.component[1]})
