"""Brute-force ground truth: enumeration, normal forms, NE/UNE search.

Everything here is deliberately simple and exhaustive. The enumeration cap
(default 10**6, overridable via the PATHGAMES_ENUM_CAP environment variable
or per call) keeps accidental blow-ups from hanging a session; exceeding it
raises TooLarge rather than sampling.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from math import prod
from typing import Iterator, Mapping

from . import graphalg
from .errors import PathgamesError, TooLarge
from .model import (
    ExtCost,
    Game,
    GameGraph,
    PLUS_INF,
    SPGame,
    Situation,
    TerminalGame,
    is_positive,
)
from .play import sp_cost, terminal_cost, trace

DEFAULT_CAP = 10**6
CAP_ENV_VAR = "PATHGAMES_ENUM_CAP"


def resolve_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get(CAP_ENV_VAR)
    return int(env) if env else DEFAULT_CAP


def _graph_of(game_or_graph) -> GameGraph:
    return game_or_graph if isinstance(game_or_graph, GameGraph) else game_or_graph.graph


def situation_count(game_or_graph) -> int:
    g = _graph_of(game_or_graph)
    return prod(len(g.out[v]) for v in g.nonterminals)


def enumerate_situations(game_or_graph, cap: int | None = None) -> Iterator[Situation]:
    """All situations in lexicographic order by vertex id, then target id."""
    g = _graph_of(game_or_graph)
    count = situation_count(g)
    limit = resolve_cap(cap)
    if count > limit:
        raise TooLarge(count, limit)
    verts = g.nonterminals
    for combo in itertools.product(*(g.out[v] for v in verts)):
        moves: list[int | None] = [None] * g.n_vertices
        for v, t in zip(verts, combo):
            moves[v] = t
        yield Situation(tuple(moves))


def player_strategies(
    graph: GameGraph, player: int, cap: int | None = None
) -> list[dict[int, int]]:
    """All strategies of one player, lexicographic, as vertex -> target maps."""
    verts = [v for v in graph.nonterminals if graph.owner[v] == player]
    count = prod(len(graph.out[v]) for v in verts)
    limit = resolve_cap(cap)
    if count > limit:
        raise TooLarge(count, limit)
    return [
        dict(zip(verts, combo))
        for combo in itertools.product(*(graph.out[v] for v in verts))
    ]


def effective_cost(game: Game, play, player: int):
    """Dispatch to the applicable cost semantics.

    Shortest path games yield ExtCost, terminal games plain Fraction; both
    support the exact comparisons the equilibrium checks need.
    """
    if isinstance(game, SPGame):
        return sp_cost(game, play, player)
    return terminal_cost(game, play, player)


def cost_vector(game: Game, situation: Situation, start: int):
    play = trace(game.graph, situation, start)
    return tuple(effective_cost(game, play, p) for p in game.graph.players)


def _require_start(game: Game, start: int | None) -> int:
    if start is None:
        start = game.graph.initial
    if start is None:
        raise PathgamesError("no start vertex given and game has no initial vertex")
    if game.graph.is_terminal(start):
        raise PathgamesError(f"start vertex {start} is a terminal")
    return start


@dataclass(frozen=True)
class NormalForm:
    """Exhaustive strategic form of a game from a fixed start vertex.

    ``axes[i]`` lists player i+1's strategies as sorted (vertex, target)
    tuples; ``cells`` maps a strategy index per player to the per-player cost
    vector; ``ne`` holds the indices that are unilaterally minimal for every
    player at once.
    """

    start: int
    axes: tuple[tuple[tuple[tuple[int, int], ...], ...], ...]
    cells: Mapping[tuple[int, ...], tuple]
    ne: frozenset[tuple[int, ...]]

    def cost(self, index: tuple[int, ...]) -> tuple:
        return self.cells[index]

    def situation_at(self, index: tuple[int, ...], graph: GameGraph) -> Situation:
        choice: dict[int, int] = {}
        for strategies, k in zip(self.axes, index):
            choice.update(dict(strategies[k]))
        return Situation.of(graph, choice)

    def strategy_label(self, player: int, k: int, graph: GameGraph) -> str:
        pairs = self.axes[player - 1][k]
        if not pairs:
            return "(none)"
        return ",".join(f"{graph.name(v)}->{graph.name(t)}" for v, t in pairs)

    def to_csv(self, graph: GameGraph) -> str:
        n = len(self.axes)
        header = (
            [f"strategy_p{i}" for i in range(1, n + 1)]
            + [f"cost_p{i}" for i in range(1, n + 1)]
            + ["ne"]
        )
        lines = [",".join(header)]
        for index in sorted(self.cells):
            labels = [
                '"%s"' % self.strategy_label(p, index[p - 1], graph)
                for p in range(1, n + 1)
            ]
            costs = [str(c) for c in self.cells[index]]
            lines.append(",".join(labels + costs + ["1" if index in self.ne else "0"]))
        return "\n".join(lines) + "\n"

    def to_text(self, graph: GameGraph) -> str:
        """Two-person grid with unilateral minima starred, NE cells boxed."""
        if len(self.axes) != 2:
            raise PathgamesError("text grid is only defined for 2-person games")
        n1 = len(self.axes[0])
        n2 = len(self.axes[1])
        col_min = [
            min(self.cells[(i, j)][1] for j in range(n2)) for i in range(n1)
        ]
        row_min = [
            min(self.cells[(i, j)][0] for i in range(n1)) for j in range(n2)
        ]
        def cell_text(i: int, j: int) -> str:
            c1, c2 = self.cells[(i, j)]
            s1 = f"{c1}" + ("*" if c1 == row_min[j] else "")
            s2 = f"{c2}" + ("*" if c2 == col_min[i] else "")
            body = f"{s1} / {s2}"
            return f"[{body}]" if (i, j) in self.ne else body
        col_labels = [self.strategy_label(1, i, graph) for i in range(n1)]
        row_labels = [self.strategy_label(2, j, graph) for j in range(n2)]
        table = [[""] + col_labels]
        for j in range(n2):
            table.append([row_labels[j]] + [cell_text(i, j) for i in range(n1)])
        widths = [max(len(row[k]) for row in table) for k in range(n1 + 1)]
        lines = [
            "  ".join(row[k].ljust(widths[k]) for k in range(n1 + 1)).rstrip()
            for row in table
        ]
        return "\n".join(lines) + "\n"


def normal_form(game: Game, start: int | None = None, cap: int | None = None) -> NormalForm:
    g = game.graph
    start = _require_start(game, start)
    count = situation_count(g)
    limit = resolve_cap(cap)
    if count > limit:
        raise TooLarge(count, limit)
    axes = []
    for p in g.players:
        strategies = player_strategies(g, p, cap=limit)
        axes.append(tuple(tuple(sorted(s.items())) for s in strategies))
    cells: dict[tuple[int, ...], tuple] = {}
    for index in itertools.product(*(range(len(a)) for a in axes)):
        choice: dict[int, int] = {}
        for strategies, k in zip(axes, index):
            choice.update(dict(strategies[k]))
        situation = Situation.of(g, choice)
        cells[index] = cost_vector(game, situation, start)
    ne = _ne_indices(axes, cells)
    return NormalForm(start=start, axes=tuple(axes), cells=cells, ne=ne)


def _ne_indices(axes, cells) -> frozenset[tuple[int, ...]]:
    n = len(axes)
    best: list[dict[tuple, object]] = [dict() for _ in range(n)]
    for index, costs in cells.items():
        for i in range(n):
            rest = index[:i] + index[i + 1:]
            cur = best[i].get(rest)
            if cur is None or costs[i] < cur:
                best[i][rest] = costs[i]
    out = set()
    for index, costs in cells.items():
        if all(costs[i] == best[i][index[:i] + index[i + 1:]] for i in range(n)):
            out.add(index)
    return frozenset(out)


def find_all_ne(game: Game, start: int | None = None, cap: int | None = None) -> list[Situation]:
    """Every Nash equilibrium from the given start, by full enumeration."""
    nf = normal_form(game, start, cap)
    found = [nf.situation_at(index, game.graph) for index in nf.ne]
    return sorted(found, key=lambda s: s.moves)


def find_all_une(game: Game, cap: int | None = None) -> list[Situation]:
    """Situations that are Nash equilibria from every non-terminal start."""
    g = game.graph
    surviving: set[tuple[int, ...]] | None = None
    axes = None
    for start in g.nonterminals:
        nf = normal_form(game, start, cap)
        axes = nf.axes
        if surviving is None:
            surviving = set(nf.ne)
        else:
            surviving &= nf.ne
        if not surviving:
            return []
    assert surviving is not None and axes is not None
    dummy = NormalForm(start=g.nonterminals[0], axes=axes, cells={}, ne=frozenset())
    found = [dummy.situation_at(index, g) for index in surviving]
    return sorted(found, key=lambda s: s.moves)


@dataclass(frozen=True)
class VerifyReport:
    """Result of an equilibrium check, with a concrete witness on failure."""

    ok: bool
    player: int | None = None
    start: int | None = None
    deviation: Situation | None = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _one_player_edges(graph: GameGraph, situation: Situation, player: int):
    edges = []
    for v in graph.nonterminals:
        if graph.owner[v] == player:
            edges.extend((v, u) for u in graph.out[v])
        else:
            edges.append((v, situation[v]))
    return edges


def verify_ne_sp(
    game: SPGame,
    situation: Situation,
    start: int | None = None,
    cap: int | None = None,
) -> VerifyReport:
    """NE check for shortest path games.

    For positive games each player's best deviation is a one-player shortest
    path question, so no enumeration is needed. Otherwise falls back to
    exhaustive per-player strategy enumeration.
    """
    start = _require_start(game, start)
    g = game.graph
    if is_positive(game).edge_positive:
        play = trace(g, situation, start)
        for player in g.players:
            cur = sp_cost(game, play, player)
            edges = _one_player_edges(g, situation, player)
            dist = graphalg.lex_dist_to(
                g.n_vertices, edges, lambda u, v, p=player: game.cost(u, v, p), g.terminals
            )
            reach = dist[start]
            better = (
                reach is not None
                and (cur == PLUS_INF or ExtCost.finite(reach[0]) < cur)
            )
            if better:
                adj = graphalg.out_adjacency(g.n_vertices, edges)
                path = graphalg.canonical_path(
                    start, adj, lambda u, v, p=player: game.cost(u, v, p), dist
                )
                override = {
                    u: w
                    for u, w in zip(path, path[1:])
                    if g.owner[u] == player
                }
                return VerifyReport(
                    False, player, start, situation.replace(override),
                    note=f"player {player} can reach a terminal at cost {reach[0]}",
                )
        return VerifyReport(True, start=start)
    return _verify_ne_exhaustive(game, situation, start, cap)


def verify_ne_terminal(
    game: TerminalGame,
    situation: Situation,
    start: int | None = None,
    cap: int | None = None,
) -> VerifyReport:
    start = _require_start(game, start)
    return _verify_ne_exhaustive(game, situation, start, cap)


def _verify_ne_exhaustive(game: Game, situation: Situation, start: int, cap) -> VerifyReport:
    g = game.graph
    base = trace(g, situation, start)
    for player in g.players:
        cur = effective_cost(game, base, player)
        for strategy in player_strategies(g, player, cap):
            deviated = situation.replace(strategy)
            alt = effective_cost(game, trace(g, deviated, start), player)
            if alt < cur:
                return VerifyReport(
                    False, player, start, deviated,
                    note=f"player {player} improves {cur} -> {alt}",
                )
    return VerifyReport(True, start=start)


def verify_une(game: Game, situation: Situation, cap: int | None = None) -> VerifyReport:
    """UNE check: exhaustive per-player deviations from every start."""
    g = game.graph
    for player in g.players:
        strategies = player_strategies(g, player, cap)
        for start in g.nonterminals:
            cur = effective_cost(game, trace(g, situation, start), player)
            for strategy in strategies:
                deviated = situation.replace(strategy)
                alt = effective_cost(game, trace(g, deviated, start), player)
                if alt < cur:
                    return VerifyReport(
                        False, player, start, deviated,
                        note=f"player {player} improves {cur} -> {alt} from {g.name(start)}",
                    )
    return VerifyReport(True)
