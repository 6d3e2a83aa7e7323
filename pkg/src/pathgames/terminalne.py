"""NE construction for edge-symmetric n-person terminal games.

The game is first contracted so that every move joins vertices of different
players (loops stand for internal cycling). On the contracted game a NE is
built by a three-case analysis around the start vertex: lock an infinite
2-cycle, route to a neighbor's preferred terminal with protective moves, or
strip the start's own terminal moves and recurse. The result is lifted back
and checked against the exhaustive deviation oracle.
"""

from __future__ import annotations

from . import graphalg, oracle
from .errors import NotSymmetric, TooLarge, VerificationFailed
from .model import (
    GameGraph,
    Situation,
    TerminalGame,
    is_edge_symmetric,
    lowest_id_situation,
)
from .play import terminal_cost, trace
from .reductions import contract_small_game, lift_situation
from .une import response_tables


# Enumeration budget of the solver's own post-construction check; beyond it
# the exact value-table route takes over.
_VERIFY_CAP = 20000


def _best_terminal(game: TerminalGame, v: int) -> int | None:
    """Most preferred terminal move of v's controller, lowest id on ties."""
    g = game.graph
    moves = [w for w in g.out[v] if g.is_terminal(w)]
    if not moves:
        return None
    return min(moves, key=lambda w: (game.cost_at(w, g.owner[v]), w))


def _drop_edges(game: TerminalGame, drop: set[tuple[int, int]]) -> TerminalGame:
    g = game.graph
    graph = GameGraph(
        owner=g.owner,
        edges=tuple(e for e in g.sorted_edges() if e not in drop),
        n_players=g.n_players,
        initial=g.initial,
        names=g.names,
    )
    return TerminalGame(graph, game.terminal_cost, game.infinite_cost)


def _base_choice(g: GameGraph) -> dict[int, int]:
    return {v: g.out[v][0] for v in g.nonterminals}


def _solve_contracted(game: TerminalGame, v0: int) -> Situation:
    g = game.graph
    if v0 not in graphalg.reachable_to(g.n_vertices, g.edge_set, g.terminals):
        return lowest_id_situation(g)

    own_terminals = [w for w in g.out[v0] if g.is_terminal(w)]
    if own_terminals:
        # Case 3: argue about the game without v0's terminal moves.
        t0 = _best_terminal(game, v0)
        if all(g.is_terminal(w) for w in g.out[v0]):
            choice = _base_choice(g)
            choice[v0] = t0
            return Situation.of(g, choice)
        sub = _drop_edges(game, {(v0, w) for w in own_terminals})
        inner = _solve_contracted(sub, v0)
        me = g.owner[v0]
        inner_value = terminal_cost(sub, trace(sub.graph, inner, v0), me)
        if inner_value <= game.cost_at(t0, me):
            return Situation.of(g, dict(inner.items()))
        return Situation.of(g, {**dict(inner.items()), v0: t0})

    neighbors = [v for v in g.out[v0]]  # all non-terminal here
    dead_ends = [v for v in neighbors if _best_terminal(game, v) is None]
    choice = _base_choice(g)
    if dead_ends:
        # Case 1: lock the infinite 2-cycle v0 <-> v1; nobody on it can
        # reach a terminal, so nobody involved can do better.
        v1 = min(dead_ends)
        for x in neighbors:
            if x != v0:
                choice[x] = v0
        for y in g.out[v1]:
            if y not in (v0, v1) and y not in neighbors and not g.is_terminal(y):
                choice[y] = v1
        choice[v0] = v1
        return Situation.of(g, choice)

    # Case 2: every neighbor has a terminal move; aim for the one whose
    # preferred terminal suits v0's controller best.
    me = g.owner[v0]
    v1 = min(neighbors, key=lambda v: (game.cost_at(_best_terminal(game, v), me), v))
    t1 = _best_terminal(game, v1)
    holder = g.owner[v1]
    if game.cost_at(t1, holder) < game.cycle_cost(holder):
        # Subcase 2.1: the play v0 -> v1 -> t1; v1's other exits are walled
        # off back to v1 and v0's alternatives route to their own terminals.
        for x in g.out[v1]:
            if not g.is_terminal(x) and x not in (v0, v1):
                choice[x] = v1
        v1_neighbors = set(g.out[v1])
        for v in neighbors:
            if v != v1 and v not in v1_neighbors:
                choice[v] = _best_terminal(game, v)
        choice[v1] = t1
        choice[v0] = v1
        return Situation.of(g, choice)

    # Subcase 2.2: v1's controller weakly prefers cycling, so lock the
    # 2-cycle v0 <-> v1.
    for x in neighbors:
        if x != v0:
            choice[x] = v0
    for y in g.out[v1]:
        if not g.is_terminal(y) and y not in (v0, v1) and y not in neighbors:
            choice[y] = v1
    choice[v0] = v1
    return Situation.of(g, choice)


def _value_table_ne_check(game: TerminalGame, situation: Situation, start: int) -> None:
    """Exact NE check via per-player one-player optima, no enumeration."""
    g = game.graph
    for player in g.players:
        current = terminal_cost(game, trace(g, situation, start), player)
        best = response_tables(game, situation, player).value[start]
        if best < current:
            raise VerificationFailed(
                f"player {player} could achieve {best} instead of {current}"
            )


def solve_theorem2(game: TerminalGame, start: int | None = None) -> Situation:
    """Construct a NE of an edge-symmetric terminal game from a start vertex.

    Raises NotSymmetric when the precondition fails and VerificationFailed
    if the constructed situation does not survive the deviation check, which
    would signal a bug here rather than a property of the input. The check
    enumerates deviating strategies when that fits under the enumeration cap
    and otherwise falls back to exact one-player value tables.
    """
    g = game.graph
    if start is None:
        start = g.initial
    if start is None or g.is_terminal(start):
        raise ValueError("a non-terminal start vertex is required")
    if not is_edge_symmetric(g):
        raise NotSymmetric("the graph is not edge-symmetric")
    small, cmap = contract_small_game(game)
    inner = _solve_contracted(small, cmap.component[start])
    situation = lift_situation(inner, cmap)
    try:
        check = oracle.verify_ne_terminal(game, situation, start, cap=_VERIFY_CAP)
    except TooLarge:
        _value_table_ne_check(game, situation, start)
        return situation
    if not check.ok:
        raise VerificationFailed(
            f"constructed situation admits a deviation: {check.note}"
        )
    return situation

