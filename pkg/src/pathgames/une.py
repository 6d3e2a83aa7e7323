"""Uniform NE for 2-person edge-symmetric infinite-averse terminal games.

The solver preprocesses the game (contraction, one terminal move per vertex,
marking of terminal-free regions), builds a starting situation in which
every play is finite and every terminal-adjacent vertex takes its terminal
move, then lets the players alternate uniform best improvements. A sum of
per-vertex values acts as the termination potential: it ranges over finitely
many integers once costs are normalized and strictly decreases from the
second improvement on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from . import graphalg
from .errors import (
    ConditionViolated,
    PotentialNotDecreased,
    VerificationFailed,
)
from .model import GameGraph, Situation, TerminalGame, is_edge_symmetric
from .play import terminal_cost, trace
from .reductions import UnePrep, une_preprocess


@dataclass(frozen=True)
class ResponseTables:
    """Optimal one-player values plus routing layers for one player.

    ``value[v]`` is the best effective cost player i can guarantee from v
    against the fixed opponent moves (the infinite-play cost stands for
    cycling). ``layer[v]`` is v's hop distance to the terminals of its value
    class along optimal routes, or None when v's optimum is to cycle.
    """

    player: int
    value: tuple[Fraction, ...]
    layer: tuple[int | None, ...]


def _one_player_out(g: GameGraph, situation: Situation, player: int) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(g.n_vertices)]
    for v in g.nonterminals:
        if g.owner[v] == player:
            adj[v] = list(g.out[v])
        else:
            adj[v] = [situation[v]]
    return adj


def response_tables(game: TerminalGame, situation: Situation, player: int) -> ResponseTables:
    """Per-vertex optima for one player against the other's fixed moves."""
    g = game.graph
    n = g.n_vertices
    adj = _one_player_out(g, situation, player)
    edges = [(v, w) for v in range(n) for w in adj[v]]

    comps = graphalg.strongly_connected_components(n, adj)
    cyclic = set()
    for comp in comps:
        if len(comp) >= 2 or any(w == comp[0] for w in adj[comp[0]]):
            cyclic.update(comp)
    can_cycle = graphalg.reachable_to(n, edges, cyclic) if cyclic else set()

    # Reachable-terminal optima, best class first; the breadth-first layers
    # of each class double as the routing structure for that class.
    best_terminal: list[Fraction | None] = [None] * n
    layer: list[int | None] = [None] * n
    radj = graphalg.in_adjacency(n, edges)
    classes = sorted({game.cost_at(w, player) for w in g.terminals})
    for c in classes:
        frontier = [w for w in g.terminals if game.cost_at(w, player) == c]
        for w in frontier:
            best_terminal[w] = c
            layer[w] = 0
        depth = 0
        while frontier:
            depth += 1
            nxt = []
            for v in frontier:
                for u in radj[v]:
                    if best_terminal[u] is None and not g.is_terminal(u):
                        best_terminal[u] = c
                        layer[u] = depth
                        nxt.append(u)
            frontier = sorted(nxt)

    cycle_value = game.cycle_cost(player)
    value: list[Fraction] = [Fraction(0)] * n
    for v in range(n):
        options = []
        if best_terminal[v] is not None:
            options.append(best_terminal[v])
        if v in can_cycle:
            options.append(cycle_value)
        assert options, f"vertex {v} has neither a terminal route nor a cycle"
        value[v] = min(options)
        if value[v] != best_terminal[v]:
            layer[v] = None  # optimal play is to cycle, not to take this route
    return ResponseTables(player, tuple(value), tuple(layer))


def _assemble_strategy(
    game: TerminalGame,
    situation: Situation,
    tables: ResponseTables,
    keep_at: frozenset[int] = frozenset(),
) -> dict[int, int]:
    """One strategy attaining the table optimum at every vertex at once.

    Vertices listed in ``keep_at`` keep their incumbent move untouched; the
    caller guarantees their current play already attains the optimum. At the
    rest, a move one layer closer to the target class is chosen, preferring
    the incumbent when it qualifies, then the lowest id; vertices whose
    optimum is to cycle pick any same-value successor the same way.
    """
    g = game.graph
    value, layer = tables.value, tables.layer
    strategy: dict[int, int] = {}
    for v in g.nonterminals:
        if g.owner[v] != tables.player:
            continue
        if v in keep_at:
            strategy[v] = situation[v]
            continue
        c = value[v]
        if layer[v] is not None:
            good = [
                w for w in g.out[v]
                if value[w] == c and layer[w] == layer[v] - 1
            ]
        else:
            good = [w for w in g.out[v] if not g.is_terminal(w) and value[w] == c]
        assert good, f"no optimal move at vertex {v}"
        incumbent = situation[v]
        strategy[v] = incumbent if incumbent in good else good[0]
    return strategy


def uniform_best_response(
    game: TerminalGame, situation: Situation, player: int
) -> tuple[dict[int, int], tuple[Fraction, ...]]:
    """A strategy minimizing the player's cost from every vertex at once.

    Only the opponent part of ``situation`` is read. The returned strategy is
    re-verified vertex by vertex by tracing; a mismatch raises
    VerificationFailed and would mean a bug in the construction.
    """
    tables = response_tables(game, situation, player)
    strategy = _assemble_strategy(game, situation, tables)
    combined = situation.replace(strategy)
    _verify_values(game, combined, tables)
    return strategy, tables.value


def _verify_values(game: TerminalGame, situation: Situation, tables: ResponseTables) -> None:
    g = game.graph
    for v in range(g.n_vertices):
        got = terminal_cost(game, trace(g, situation, v), tables.player)
        if got != tables.value[v]:
            raise VerificationFailed(
                f"player {tables.player} value at vertex {v}: "
                f"built strategy yields {got}, optimum is {tables.value[v]}"
            )


def uniform_best_improvement(
    game: TerminalGame, situation: Situation, player: int
) -> Situation | None:
    """The player's uniform best response that changes only improving moves.

    Returns None when the player's current strategy is already a uniform
    best response. Otherwise the returned situation attains the optimal
    value at every vertex while keeping the player's move wherever the value
    does not strictly improve; both clauses are re-checked by tracing.
    """
    g = game.graph
    tables = response_tables(game, situation, player)
    current = tuple(
        terminal_cost(game, trace(g, situation, v), player)
        for v in range(g.n_vertices)
    )
    if all(current[v] == tables.value[v] for v in range(g.n_vertices)):
        return None
    keep = frozenset(
        v for v in g.nonterminals
        if g.owner[v] == player and current[v] == tables.value[v]
    )
    strategy = _assemble_strategy(game, situation, tables, keep_at=keep)
    improved = situation.replace(strategy)
    _verify_values(game, improved, tables)
    for v in g.nonterminals:
        if g.owner[v] == player and improved[v] != situation[v]:
            if not tables.value[v] < current[v]:
                raise VerificationFailed(
                    f"move changed at vertex {v} without strict improvement"
                )
    return improved


def initial_basic_situation(
    game: TerminalGame, unreachable: frozenset[int] = frozenset()
) -> Situation:
    """Starting situation with finite plays everywhere that can have them.

    Terminal-adjacent vertices take their controller-best terminal move;
    everyone else is colored breadth-first toward that set, pointing at the
    lowest-id already-colored neighbor. Vertices that cannot reach a
    terminal take their lowest-id move and stay out of the dynamics.
    """
    g = game.graph
    choice: dict[int, int] = {}
    colored = set(g.terminals)
    for v in g.nonterminals:
        if v in unreachable:
            choice[v] = g.out[v][0]
            continue
        moves = [w for w in g.out[v] if g.is_terminal(w)]
        if moves:
            choice[v] = min(moves, key=lambda w: (game.cost_at(w, g.owner[v]), w))
            colored.add(v)
    pending = [v for v in g.nonterminals if v not in choice]
    while pending:
        frontier = [
            (v, [w for w in g.out[v] if w in colored])
            for v in sorted(pending)
        ]
        frontier = [(v, ws) for v, ws in frontier if ws]
        assert frontier, "uncolored vertex cannot reach the colored region"
        for v, ws in frontier:
            choice[v] = ws[0]
        for v, _ in frontier:
            colored.add(v)
        pending = [v for v in pending if v not in choice]
    return Situation.of(g, choice)


def _normalize_costs(game: TerminalGame) -> TerminalGame:
    """Rescale each player's terminal costs to integers in [-|V_T|, -1].

    Only the per-player preference order matters to equilibria and to the
    improvement dynamics, and ranks give the potential its integer range.
    """
    g = game.graph
    new_costs: dict[int, list[Fraction]] = {w: [] for w in g.terminals}
    for p in g.players:
        distinct = sorted({game.cost_at(w, p) for w in g.terminals})
        rank = {c: Fraction(k - len(distinct)) for k, c in enumerate(distinct)}
        for w in g.terminals:
            new_costs[w].append(rank[game.cost_at(w, p)])
    return TerminalGame(
        g, {w: tuple(cs) for w, cs in new_costs.items()}, game.infinite_cost
    )


def _nu(game: TerminalGame, situation: Situation) -> Fraction:
    g = game.graph
    return sum(
        (
            terminal_cost(game, trace(g, situation, v), g.owner[v])
            for v in g.nonterminals
        ),
        Fraction(0),
    )


@dataclass(frozen=True)
class UneSolve:
    """Outcome of the uniform-equilibrium computation.

    ``situation`` lives on the original game. The trajectory and steps are
    recorded on the preprocessed rank-normalized game the dynamics ran on:
    ``nu_trajectory[0]`` is the starting potential and each following entry
    is the potential after one applied improvement by ``steps[k]``.
    """

    situation: Situation
    prep: UnePrep
    rounds: int
    nu_trajectory: tuple[Fraction, ...]
    steps: tuple[tuple[int, tuple[int, ...]], ...]


def solve_theorem3(game: TerminalGame) -> UneSolve:
    """Compute a uniform NE of a 2-person symmetric infinite-averse game.

    Checks the TWO, SYM and CIW conditions, then alternates uniform best
    improvements starting from player 1 until neither player has one. The
    potential must strictly decrease from the second improvement on and the
    number of improvements can never exceed |V| * |V_T| of the preprocessed
    game; violations raise PotentialNotDecreased. The lifted result is
    re-verified against per-player value tables on the original game.
    """
    g = game.graph
    if g.n_players != 2:
        raise ConditionViolated("TWO", f"{g.n_players} players")
    if not is_edge_symmetric(g):
        raise ConditionViolated("SYM")
    for p in g.players:
        if game.cycle_cost(p) != 0:
            raise ConditionViolated("CIW", f"player {p} infinite-play cost is nonzero")
        for w in g.terminals:
            if game.cost_at(w, p) >= 0:
                raise ConditionViolated(
                    "CIW", f"terminal {w} is not better than cycling for player {p}"
                )

    prep = une_preprocess(game)
    work = _normalize_costs(prep.game)
    sigma = initial_basic_situation(work, prep.unreachable)
    trajectory = [_nu(work, sigma)]
    steps: list[tuple[int, tuple[int, ...]]] = []
    wg = work.graph
    bound = wg.n_vertices * len(wg.terminals)

    player = 1
    idle = 0
    while idle < 2:
        improved = uniform_best_improvement(work, sigma, player)
        if improved is None:
            idle += 1
            player = 3 - player
            continue
        idle = 0
        nu = _nu(work, improved)
        if len(steps) >= 1:
            if not nu < trajectory[-1]:
                raise PotentialNotDecreased(
                    f"potential went {trajectory[-1]} -> {nu} on improvement {len(steps) + 1}"
                )
            for v in wg.nonterminals:
                before = terminal_cost(work, trace(wg, sigma, v), wg.owner[v])
                after = terminal_cost(work, trace(wg, improved, v), wg.owner[v])
                if after > before:
                    raise PotentialNotDecreased(
                        f"value at vertex {v} degraded {before} -> {after} "
                        f"on improvement {len(steps) + 1}"
                    )
        for v in wg.nonterminals:
            if v not in prep.unreachable and not trace(wg, improved, v).is_terminal:
                raise VerificationFailed(
                    f"improvement made the play from vertex {v} infinite"
                )
        changed = tuple(
            v for v in wg.nonterminals if improved[v] != sigma[v]
        )
        steps.append((player, changed))
        trajectory.append(nu)
        sigma = improved
        if len(steps) > bound:
            raise PotentialNotDecreased(
                f"more than |V|*|V_T| = {bound} improvements"
            )
        player = 3 - player

    lifted = prep.lift(sigma)
    for p in game.graph.players:
        tables = response_tables(game, lifted, p)
        for v in range(game.graph.n_vertices):
            got = terminal_cost(game, trace(game.graph, lifted, v), p)
            if got != tables.value[v]:
                raise VerificationFailed(
                    f"lifted situation is not a uniform best response for "
                    f"player {p} at vertex {v}: {got} vs {tables.value[v]}"
                )
    return UneSolve(
        situation=lifted,
        prep=prep,
        rounds=len(steps),
        nu_trajectory=tuple(trajectory),
        steps=tuple(steps),
    )
