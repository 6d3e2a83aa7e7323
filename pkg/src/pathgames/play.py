"""Tracing plays and evaluating effective costs under both game semantics."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ZeroSumMixedCycle
from .model import (
    MINUS_INF,
    PLUS_INF,
    ExtCost,
    GameGraph,
    SPGame,
    Situation,
    TerminalGame,
)


@dataclass(frozen=True)
class Play:
    """The unique walk induced by a situation from a start vertex.

    Exactly one of ``terminal`` and ``cycle`` is set. For terminal plays,
    ``prefix`` lists the vertices strictly before the terminal. For infinite
    plays, ``prefix`` ends at the vertex where the repeated cycle is entered
    and ``cycle`` lists that cycle starting from the entry vertex.
    """

    prefix: tuple[int, ...]
    terminal: int | None = None
    cycle: tuple[int, ...] | None = None

    @property
    def is_terminal(self) -> bool:
        return self.terminal is not None

    def path_edges(self) -> list[tuple[int, int]]:
        """Edges walked before the outcome, including the move into a terminal."""
        verts = list(self.prefix)
        if self.terminal is not None:
            verts.append(self.terminal)
        return list(zip(verts, verts[1:]))

    def cycle_edges(self) -> list[tuple[int, int]]:
        assert self.cycle is not None
        closed = list(self.cycle) + [self.cycle[0]]
        return list(zip(closed, closed[1:]))


def trace(graph: GameGraph, situation: Situation, start: int) -> Play:
    """Follow the situation from start until a terminal or a repeated vertex."""
    if graph.is_terminal(start):
        return Play(prefix=(), terminal=start)
    walk = [start]
    seen = {start: 0}
    v = start
    while True:
        v = situation[v]
        assert v is not None, f"situation has no move at vertex {walk[-1]}"
        if graph.is_terminal(v):
            return Play(prefix=tuple(walk), terminal=v)
        if v in seen:
            k = seen[v]
            return Play(prefix=tuple(walk[: k + 1]), cycle=tuple(walk[k:]))
        seen[v] = len(walk)
        walk.append(v)


def sp_cost(game: SPGame, play: Play, player: int) -> ExtCost:
    """Total cost of a play for one player under shortest-path semantics.

    Terminal plays sum the move costs. Cycle plays take the sign of the cycle
    sum; a zero-sum cycle is only meaningful when every one of its edges
    costs zero, in which case the finite approach cost is returned.
    """
    if play.is_terminal:
        total = sum(
            (game.cost(u, v, player) for u, v in play.path_edges()), Fraction(0)
        )
        return ExtCost.finite(total)
    cyc = [game.cost(u, v, player) for u, v in play.cycle_edges()]
    s = sum(cyc, Fraction(0))
    if s > 0:
        return PLUS_INF
    if s < 0:
        return MINUS_INF
    if any(c != 0 for c in cyc):
        raise ZeroSumMixedCycle(player, play.cycle)
    approach = sum(
        (game.cost(u, v, player) for u, v in zip(play.prefix, play.prefix[1:])),
        Fraction(0),
    )
    return ExtCost.finite(approach)


def terminal_cost(game: TerminalGame, play: Play, player: int) -> Fraction:
    """Effective cost of a play under terminal-game semantics."""
    if play.is_terminal:
        return game.cost_at(play.terminal, player)
    return game.cycle_cost(player)
