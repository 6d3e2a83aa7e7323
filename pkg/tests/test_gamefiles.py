from __future__ import annotations

from fractions import Fraction

import pytest

from pathgames import fixtures
from pathgames.errors import GameFormatError
from pathgames.gamefiles import (
    dump_game,
    format_rational,
    game_from_dict,
    game_to_dict,
    parse_rational,
    to_dot,
)
from pathgames.model import SPGame, Situation, TerminalGame


@pytest.mark.parametrize("value,expected", [
    (3, Fraction(3)),
    ("-3", Fraction(-3)),
    ("1/100", Fraction(1, 100)),
    ("0.01", Fraction(1, 100)),
    ("-5/2", Fraction(-5, 2)),
])
def test_parse_rational(value, expected):
    assert parse_rational(value) == expected


@pytest.mark.parametrize("value", [0.01, True, "x", "1/0", None])
def test_parse_rational_rejects(value):
    with pytest.raises(GameFormatError):
        parse_rational(value)


def test_format_rational_roundtrip():
    for q in (Fraction(3), Fraction(-7, 3), Fraction(1, 100), Fraction(0)):
        assert parse_rational(format_rational(q)) == q


@pytest.mark.parametrize("name", sorted(fixtures.BUNDLED))
def test_bundled_fixture_roundtrip(name):
    game = fixtures.BUNDLED[name]()
    data = game_to_dict(game)
    back = game_from_dict(data)
    assert type(back) is type(game)
    assert back.graph == game.graph
    if isinstance(game, SPGame):
        assert back.edge_cost == game.edge_cost
    else:
        assert back.terminal_cost == game.terminal_cost
        assert back.infinite_cost == game.infinite_cost
    # a second round trip is byte-identical
    assert dump_game(back) == dump_game(game)


def test_terminal_game_default_infinite_costs():
    data = {
        "players": 2,
        "vertices": [
            {"id": 0, "name": "v", "owner": 1},
            {"id": 1, "name": "t", "owner": "T"},
        ],
        "edges": [{"from": 0, "to": 1}],
        "terminal_costs": {"1": ["-1", "-2"]},
    }
    game = game_from_dict(data)
    assert isinstance(game, TerminalGame)
    assert game.infinite_cost == (Fraction(0), Fraction(0))


@pytest.mark.parametrize("mutate,msg", [
    (lambda d: d.pop("players"), "missing"),
    (lambda d: d["vertices"].append({"id": 5, "owner": 1}), "dense"),
    (lambda d: d["vertices"][0].update(owner=9), "owner"),
    (lambda d: d["edges"][0].update({"to": 77}), "unknown vertex"),
    (lambda d: d["edges"][0].update(costs=["1"]), "costs"),
])
def test_format_errors(mutate, msg):
    game = fixtures.fig1_pm()
    data = game_to_dict(game)
    mutate(data)
    with pytest.raises(GameFormatError, match=msg):
        game_from_dict(data)


def test_dot_export_marks_situation():
    game = fixtures.chain()
    situation = Situation.of(game.graph, {0: 1, 1: 2})
    text = to_dot(game, situation)
    assert text.count("penwidth") == 2
    assert "digraph" in text
    assert to_dot(game, situation) == text  # deterministic


def test_dot_export_sp_edge_labels(g6s):
    text = to_dot(g6s)
    assert 'label="1/100, 1/100"' in text
