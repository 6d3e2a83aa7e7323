from __future__ import annotations

import random
from fractions import Fraction

import pytest

import genutil
from pathgames import oracle
from pathgames.errors import ConditionViolated
from pathgames.model import Situation, terminal_game
from pathgames.play import terminal_cost, trace
from pathgames.reductions import une_preprocess
from pathgames.une import (
    initial_basic_situation,
    solve_theorem3,
    uniform_best_improvement,
    uniform_best_response,
)


def brute_force_values(game, situation, player):
    """Per-vertex optimum by enumerating all of the player's strategies."""
    g = game.graph
    best = {v: None for v in range(g.n_vertices)}
    for strategy in genutil.enumerate_player_strategies(g, player):
        candidate = situation.replace(strategy)
        for v in range(g.n_vertices):
            c = terminal_cost(game, trace(g, candidate, v), player)
            if best[v] is None or c < best[v]:
                best[v] = c
    return best


def test_response_routes_to_the_only_terminal(chain):
    sigma = Situation.of(chain.graph, {0: 1, 1: 0})
    strategy, values = uniform_best_response(chain, sigma, 2)
    assert strategy == {1: 2}
    assert values[0] == values[1] == Fraction(-1)


def test_response_prefers_terminal_under_ciw():
    game = terminal_game(
        [1, 2, None],
        [(0, 1), (1, 0), (0, 2), (1, 2)],
        {2: (-1, -1)},
        n_players=2,
        initial=0,
    )
    sigma = Situation.of(game.graph, {0: 1, 1: 0})
    strategy, values = uniform_best_response(game, sigma, 1)
    assert strategy[0] == 2
    assert values[0] == Fraction(-1)


def test_response_cycles_when_cycling_is_better():
    game = terminal_game(
        [1, 2, None],
        [(0, 1), (1, 0), (0, 2), (1, 2)],
        {2: (5, -1)},
        n_players=2,
        initial=0,
    )
    sigma = Situation.of(game.graph, {0: 2, 1: 0})
    strategy, values = uniform_best_response(game, sigma, 1)
    assert strategy[0] == 1  # cycle 0 <-> 1 is worth 0, terminal costs 5
    assert values[0] == 0


def test_response_matches_enumeration_on_random_games():
    rng = random.Random(81)
    for _ in range(30):
        game = genutil.random_symmetric_terminal(rng, max_v=8, ciw=True)
        prep = une_preprocess(game)
        work = prep.game
        sigma = initial_basic_situation(work, prep.unreachable)
        for player in (1, 2):
            _, values = uniform_best_response(work, sigma, player)
            brute = brute_force_values(work, sigma, player)
            for v in range(work.graph.n_vertices):
                assert values[v] == brute[v]


def test_improvement_none_when_already_best(chain):
    sigma = Situation.of(chain.graph, {0: 1, 1: 2})
    assert uniform_best_improvement(chain, sigma, 1) is None
    assert uniform_best_improvement(chain, sigma, 2) is None


def test_improvement_switches_exactly_improving_vertices():
    game = terminal_game(
        [1, 2, None, None],
        [(0, 1), (1, 0), (0, 2), (1, 3)],
        {2: (-1, -2), 3: (-3, -1)},
        n_players=2,
        initial=0,
    )
    sigma = Situation.of(game.graph, {0: 2, 1: 3})
    improved = uniform_best_improvement(game, sigma, 1)
    assert improved is not None
    assert improved[0] == 1  # routes through the opponent to the -3 terminal
    assert improved[1] == sigma[1]


def test_improvement_definitional_clauses_random():
    rng = random.Random(83)
    improved_count = 0
    for k in range(30):
        if k % 2:
            game = genutil.random_symmetric_terminal(rng, max_v=7, ciw=True)
        else:
            game = genutil.random_ring_ciw_terminal(rng, max_v=9)
        prep = une_preprocess(game)
        work = prep.game
        g = work.graph
        sigma = initial_basic_situation(work, prep.unreachable)
        for player in (1, 2):
            result = uniform_best_improvement(work, sigma, player)
            brute = brute_force_values(work, sigma, player)
            if result is None:
                for v in range(g.n_vertices):
                    assert terminal_cost(work, trace(g, sigma, v), player) == brute[v]
                continue
            improved_count += 1
            for v in range(g.n_vertices):
                got = terminal_cost(work, trace(g, result, v), player)
                assert got == brute[v]  # (a) uniform best response
            for v in g.nonterminals:
                if g.owner[v] == player and result[v] != sigma[v]:
                    before = terminal_cost(work, trace(g, sigma, v), player)
                    assert got_value(work, result, v, player) < before  # (b)
    assert improved_count >= 5


def got_value(game, situation, v, player):
    return terminal_cost(game, trace(game.graph, situation, v), player)


def test_initial_basic_star():
    game = terminal_game(
        [1, 2, None],
        [(0, 1), (1, 0), (0, 2), (1, 2)],
        {2: (-1, -1)},
        n_players=2,
    )
    sigma = initial_basic_situation(game)
    assert sigma[0] == 2 and sigma[1] == 2


def test_initial_basic_ring_with_exits(g6):
    sigma = initial_basic_situation(g6)
    for v in range(6):
        assert g6.graph.is_terminal(sigma[v])


def test_initial_basic_chain(chain):
    sigma = initial_basic_situation(chain)
    assert sigma[1] == 2 and sigma[0] == 1


def test_initial_basic_plays_finite_random():
    rng = random.Random(85)
    for _ in range(25):
        game = genutil.random_symmetric_terminal(rng, max_v=9, ciw=True)
        prep = une_preprocess(game)
        sigma = initial_basic_situation(prep.game, prep.unreachable)
        g = prep.game.graph
        for v in g.nonterminals:
            if v in prep.unreachable:
                continue
            assert trace(g, sigma, v).is_terminal


def test_solve_chain(chain):
    result = solve_theorem3(chain)
    assert result.situation[0] == 1 and result.situation[1] == 2
    assert result.rounds == 0
    assert oracle.verify_une(chain, result.situation).ok


def test_solve_condition_checks(g6, g2, g3s):
    with pytest.raises(ConditionViolated) as exc:
        solve_theorem3(g6)
    assert exc.value.condition == "SYM"
    with pytest.raises(ConditionViolated) as exc:
        solve_theorem3(g2)
    assert exc.value.condition == "CIW"
    with pytest.raises(ConditionViolated) as exc:
        solve_theorem3(g3s)
    assert exc.value.condition == "TWO"


def test_solve_random_produces_verified_une():
    rng = random.Random(87)
    nontrivial = 0
    for k in range(30):
        if k % 2:
            game = genutil.random_symmetric_terminal(rng, max_v=8, ciw=True)
        else:
            game = genutil.random_ring_ciw_terminal(rng, max_v=10)
        result = solve_theorem3(game)
        assert oracle.verify_une(game, result.situation).ok
        wg = result.prep.game.graph
        assert result.rounds <= wg.n_vertices * len(wg.terminals)
        # potential strictly decreases from the second improvement on
        for k in range(2, len(result.nu_trajectory)):
            assert result.nu_trajectory[k] < result.nu_trajectory[k - 1]
        if result.rounds >= 2:
            nontrivial += 1
    assert nontrivial >= 3


def test_best_response_neighbor_inequality():
    # after a best response by one player, that player likes their own side
    # of every edge at least as much as the opponent's side
    rng = random.Random(89)
    for _ in range(20):
        game = genutil.random_symmetric_terminal(rng, max_v=8, ciw=True)
        prep = une_preprocess(game)
        work = prep.game
        g = work.graph
        sigma = initial_basic_situation(work, prep.unreachable)
        for player in (1, 2):
            strategy, _ = uniform_best_response(work, sigma, player)
            combined = sigma.replace(strategy)
            for u, v in g.edge_set:
                if g.is_terminal(v) or u == v:
                    continue
                if g.owner[v] == player and g.owner[u] != player:
                    lv = terminal_cost(work, trace(g, combined, v), player)
                    lu = terminal_cost(work, trace(g, combined, u), player)
                    assert lv <= lu


def test_solve_with_unreachable_region():
    game = terminal_game(
        [1, 2, 1, 2, None],
        [(0, 1), (1, 0), (2, 3), (3, 2), (2, 4)],
        {4: (-1, -1)},
        n_players=2,
        initial=0,
    )
    result = solve_theorem3(game)
    assert oracle.verify_une(game, result.situation).ok
    # the isolated 2-cycle keeps its frozen lowest-id moves
    assert result.situation[0] == 1 and result.situation[1] == 0
