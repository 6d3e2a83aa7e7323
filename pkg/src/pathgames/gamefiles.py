"""Loading, saving and exporting games.

The JSON interchange format carries vertices with owners (player number or
"T"), edges with per-player cost vectors for shortest path games, or bare
edges plus terminal/infinite cost tables for terminal games. Rationals are
written as canonical "p" / "p/q" strings and may be read back from integer
literals, fraction strings or decimal strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import GameFormatError
from .model import Game, GameGraph, SPGame, Situation, TerminalGame


def parse_rational(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise GameFormatError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise GameFormatError(f"not a rational: {value!r}") from exc
    if isinstance(value, float):
        raise GameFormatError(
            f"float {value!r} is not exact; write it as a string like \"1/100\""
        )
    raise GameFormatError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _parse_owner(raw: Any, n_players: int) -> int | None:
    if raw == "T":
        return None
    if isinstance(raw, int) and not isinstance(raw, bool) and 1 <= raw <= n_players:
        return raw
    raise GameFormatError(f"owner must be 1..{n_players} or \"T\", got {raw!r}")


def game_from_dict(data: dict) -> Game:
    try:
        n_players = data["players"]
        raw_vertices = data["vertices"]
        raw_edges = data["edges"]
    except (KeyError, TypeError) as exc:
        raise GameFormatError(f"missing required field: {exc}") from exc
    if not isinstance(n_players, int) or n_players < 1:
        raise GameFormatError(f"players must be a positive integer, got {n_players!r}")

    by_id = {}
    for entry in raw_vertices:
        vid = entry.get("id")
        if not isinstance(vid, int) or vid in by_id:
            raise GameFormatError(f"bad or duplicate vertex id: {vid!r}")
        by_id[vid] = entry
    if sorted(by_id) != list(range(len(by_id))):
        raise GameFormatError("vertex ids must be dense 0..|V|-1")
    owner = []
    names = []
    for vid in range(len(by_id)):
        entry = by_id[vid]
        owner.append(_parse_owner(entry.get("owner"), n_players))
        names.append(str(entry.get("name", vid)))

    initial = data.get("initial")
    if initial is not None and (not isinstance(initial, int) or initial not in by_id):
        raise GameFormatError(f"initial must be a vertex id, got {initial!r}")

    is_terminal_game = "terminal_costs" in data
    edges = []
    edge_cost = {}
    for entry in raw_edges:
        try:
            u, v = entry["from"], entry["to"]
        except (KeyError, TypeError) as exc:
            raise GameFormatError(f"edge missing endpoint: {entry!r}") from exc
        if u not in by_id or v not in by_id:
            raise GameFormatError(f"edge ({u}, {v}) references unknown vertex")
        edges.append((u, v))
        if not is_terminal_game:
            costs = entry.get("costs")
            if not isinstance(costs, list) or len(costs) != n_players:
                raise GameFormatError(f"edge ({u}, {v}) needs {n_players} costs")
            edge_cost[(u, v)] = tuple(parse_rational(c) for c in costs)

    graph = GameGraph(
        owner=tuple(owner),
        edges=tuple(edges),
        n_players=n_players,
        initial=initial,
        names=tuple(names),
    )
    if not is_terminal_game:
        return SPGame(graph, edge_cost)

    terminal_cost = {}
    for key, costs in data["terminal_costs"].items():
        try:
            w = int(key)
        except ValueError as exc:
            raise GameFormatError(f"terminal_costs key {key!r} is not a vertex id") from exc
        if not isinstance(costs, list) or len(costs) != n_players:
            raise GameFormatError(f"terminal {w} needs {n_players} costs")
        terminal_cost[w] = tuple(parse_rational(c) for c in costs)
    infinite = tuple(
        parse_rational(c) for c in data.get("infinite_costs", [0] * n_players)
    )
    if len(infinite) != n_players:
        raise GameFormatError("infinite_costs has wrong arity")
    return TerminalGame(graph, terminal_cost, infinite)


def game_to_dict(game: Game) -> dict:
    g = game.graph
    data: dict[str, Any] = {
        "players": g.n_players,
        "vertices": [
            {
                "id": v,
                "name": g.names[v],
                "owner": g.owner[v] if g.owner[v] is not None else "T",
            }
            for v in range(g.n_vertices)
        ],
    }
    if isinstance(game, SPGame):
        data["edges"] = [
            {
                "from": u,
                "to": v,
                "costs": [format_rational(c) for c in game.edge_cost[(u, v)]],
            }
            for u, v in g.sorted_edges()
        ]
    else:
        data["edges"] = [{"from": u, "to": v} for u, v in g.sorted_edges()]
        data["terminal_costs"] = {
            str(w): [format_rational(c) for c in game.terminal_cost[w]]
            for w in g.terminals
        }
        data["infinite_costs"] = [format_rational(c) for c in game.infinite_cost]
    if g.initial is not None:
        data["initial"] = g.initial
    return data


def load_game(path: str) -> Game:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise GameFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise GameFormatError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise GameFormatError(f"{path}: top level must be an object")
    return game_from_dict(data)


def dump_game(game: Game) -> str:
    return json.dumps(game_to_dict(game), indent=2) + "\n"


def save_game(game: Game, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_game(game))


_PLAYER_COLORS = ["lightblue", "lightcoral", "orange", "palegreen", "plum", "khaki"]


def to_dot(game: Game, situation: Situation | None = None) -> str:
    """Graphviz rendering: owners as node colors, situation moves in bold."""
    g = game.graph
    lines = ["digraph game {", "  rankdir=LR;"]
    for v in range(g.n_vertices):
        if g.is_terminal(v):
            shape, color = "box", "lightgray"
        else:
            shape = "circle"
            color = _PLAYER_COLORS[(g.owner[v] - 1) % len(_PLAYER_COLORS)]
        marker = ", peripheries=2" if v == g.initial else ""
        lines.append(
            f'  v{v} [label="{g.names[v]}", shape={shape}, style=filled, '
            f"fillcolor={color}{marker}];"
        )
    chosen = set(situation.items()) if situation is not None else set()
    for u, v in g.sorted_edges():
        attrs = []
        if isinstance(game, SPGame):
            label = ", ".join(format_rational(c) for c in game.edge_cost[(u, v)])
            attrs.append(f'label="{label}"')
        if (u, v) in chosen:
            attrs.append("penwidth=2.5")
            attrs.append("style=bold")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  v{u} -> v{v}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"
