"""Core game data model: graphs, costs, situations, and structural checks.

Vertices are dense integers 0..|V|-1. Players are numbered 1..n; a vertex
owner of ``None`` marks a terminal. All cost values are exact
``fractions.Fraction`` numbers so comparisons and ties are deterministic.
Every type here is immutable value data and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from . import graphalg
from .errors import PathgamesError

TERMINAL = None


@dataclass(frozen=True, order=True)
class ExtCost:
    """A rational cost extended by -infinity and +infinity.

    Ordering is total: MINUS_INF < any finite value < PLUS_INF, with finite
    values ordered as rationals. The (rank, value) field order makes the
    generated dataclass comparison do exactly that.
    """

    rank: int
    value: Fraction = Fraction(0)

    @staticmethod
    def finite(value) -> "ExtCost":
        return ExtCost(0, Fraction(value))

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    def __str__(self) -> str:
        if self.rank < 0:
            return "-inf"
        if self.rank > 0:
            return "+inf"
        return str(self.value)

    def __repr__(self) -> str:
        return f"ExtCost({self})"


MINUS_INF = ExtCost(-1)
PLUS_INF = ExtCost(1)


@dataclass(frozen=True)
class GameGraph:
    """Directed game board: ownership partition plus moves.

    ``owner[v]`` is the controlling player (1..n_players) or None for a
    terminal. ``edges`` keeps the raw edge tuple as constructed; validation
    reports duplicates rather than silently dropping them.
    """

    owner: tuple[int | None, ...]
    edges: tuple[tuple[int, int], ...]
    n_players: int
    initial: int | None = None
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", tuple(str(v) for v in range(len(self.owner))))
        n = len(self.owner)
        if len(self.names) != n:
            raise PathgamesError("names table length mismatch")
        for p in self.owner:
            if p is not None and not (1 <= p <= self.n_players):
                raise PathgamesError(f"owner {p} outside 1..{self.n_players}")
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise PathgamesError(f"edge ({u}, {v}) outside vertex range")
        if self.initial is not None and not (0 <= self.initial < n):
            raise PathgamesError(f"initial vertex {self.initial} out of range")

    @property
    def n_vertices(self) -> int:
        return len(self.owner)

    @property
    def players(self) -> range:
        return range(1, self.n_players + 1)

    def is_terminal(self, v: int) -> bool:
        return self.owner[v] is None

    @cached_property
    def terminals(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n_vertices) if self.owner[v] is None)

    @cached_property
    def nonterminals(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n_vertices) if self.owner[v] is not None)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    @cached_property
    def out(self) -> tuple[tuple[int, ...], ...]:
        adj = graphalg.out_adjacency(self.n_vertices, self.edge_set)
        return tuple(tuple(row) for row in adj)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edge_set)

    def name(self, v: int) -> str:
        return self.names[v]


@dataclass(frozen=True)
class SPGame:
    """Shortest path game: per-player cost on every move."""

    graph: GameGraph
    edge_cost: Mapping[tuple[int, int], tuple[Fraction, ...]]

    def cost(self, u: int, v: int, player: int) -> Fraction:
        return self.edge_cost[(u, v)][player - 1]


@dataclass(frozen=True)
class TerminalGame:
    """Terminal game: only the reached terminal (or cycling forever) pays.

    ``infinite_cost`` is the per-player cost of any infinite play; it
    defaults to zero for everyone.
    """

    graph: GameGraph
    terminal_cost: Mapping[int, tuple[Fraction, ...]]
    infinite_cost: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if not self.infinite_cost:
            object.__setattr__(
                self, "infinite_cost", (Fraction(0),) * self.graph.n_players
            )

    def cost_at(self, terminal: int, player: int) -> Fraction:
        return self.terminal_cost[terminal][player - 1]

    def cycle_cost(self, player: int) -> Fraction:
        return self.infinite_cost[player - 1]


Game = SPGame | TerminalGame


@dataclass(frozen=True)
class Situation:
    """One chosen out-edge per non-terminal vertex (a strategy profile)."""

    moves: tuple[int | None, ...]

    @staticmethod
    def of(graph: GameGraph, choice: Mapping[int, int]) -> "Situation":
        moves: list[int | None] = [None] * graph.n_vertices
        for v in graph.nonterminals:
            if v not in choice:
                raise PathgamesError(f"no move chosen at vertex {v}")
            target = choice[v]
            if (v, target) not in graph.edge_set:
                raise PathgamesError(f"chosen move ({v}, {target}) is not an edge")
            moves[v] = target
        return Situation(tuple(moves))

    def __getitem__(self, v: int) -> int | None:
        return self.moves[v]

    def items(self) -> Iterator[tuple[int, int]]:
        for v, t in enumerate(self.moves):
            if t is not None:
                yield v, t

    def replace(self, changes: Mapping[int, int]) -> "Situation":
        moves = list(self.moves)
        for v, t in changes.items():
            moves[v] = t
        return Situation(tuple(moves))

    def describe(self, graph: GameGraph) -> str:
        return " ".join(
            f"{graph.name(v)}->{graph.name(t)}" for v, t in self.items()
        )


def lowest_id_situation(graph: GameGraph) -> Situation:
    """Every non-terminal vertex takes its lowest-id out-neighbor."""
    return Situation.of(graph, {v: graph.out[v][0] for v in graph.nonterminals if graph.out[v]})


def validate(game: Game) -> list[str]:
    """Check all structural invariants; returns human-readable violations.

    An empty list means the game is well formed. Violations are data, not
    exceptions: each entry names the offending vertex or edge and the rule.
    """
    g = game.graph
    violations = []
    seen_edges = set()
    for u, v in g.edges:
        if (u, v) in seen_edges:
            violations.append(f"parallel edge ({u}, {v}) listed more than once")
        seen_edges.add((u, v))
        if g.is_terminal(u):
            violations.append(f"terminal vertex {u} ({g.name(u)}) has outgoing edge ({u}, {v})")
        if u == v and isinstance(game, SPGame):
            violations.append(f"self-loop ({u}, {u}) is not allowed in a shortest path game")
    for v in g.nonterminals:
        if not g.out[v]:
            violations.append(f"non-terminal vertex {v} ({g.name(v)}) has no outgoing edge")
    if g.initial is not None and g.is_terminal(g.initial):
        violations.append(f"initial vertex {g.initial} is a terminal")
    if isinstance(game, SPGame):
        for u, v in sorted(seen_edges):
            costs = game.edge_cost.get((u, v))
            if costs is None:
                violations.append(f"edge ({u}, {v}) has no cost vector")
            elif len(costs) != g.n_players:
                violations.append(f"edge ({u}, {v}) cost vector has wrong arity")
    else:
        for w in g.terminals:
            costs = game.terminal_cost.get(w)
            if costs is None:
                violations.append(f"terminal {w} ({g.name(w)}) has no cost vector")
            elif len(costs) != g.n_players:
                violations.append(f"terminal {w} cost vector has wrong arity")
        if len(game.infinite_cost) != g.n_players:
            violations.append("infinite-play cost vector has wrong arity")
    return violations


def is_edge_symmetric(g: GameGraph) -> bool:
    """True iff every move has its reverse, except moves entering terminals."""
    for u, v in g.edge_set:
        if not g.is_terminal(v) and (v, u) not in g.edge_set:
            return False
    return True


@dataclass(frozen=True)
class PositivityReport:
    """Outcome of the positivity check on a shortest path game.

    ``edge_positive`` is the defining condition (every cost > 0);
    ``cycle_positive`` is the weaker cycle-sum condition. On a cycle failure,
    one witness cycle and the affected player are reported.
    """

    edge_positive: bool
    cycle_positive: bool
    witness_player: int | None = None
    witness_cycle: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.edge_positive


def is_positive(game: SPGame) -> PositivityReport:
    g = game.graph
    edges = g.sorted_edges()
    edge_positive = all(
        c > 0 for e in edges for c in game.edge_cost[e]
    )
    for player in g.players:
        mean, cycle = graphalg.min_cycle_mean(
            g.n_vertices, edges, lambda u, v, p=player: game.cost(u, v, p)
        )
        if mean is not None and mean <= 0:
            return PositivityReport(edge_positive, False, player, tuple(cycle))
    return PositivityReport(edge_positive, True)


@dataclass(frozen=True)
class TerminalMerge:
    """Vertex and edge bookkeeping for merging all terminals into one.

    ``chosen_terminal`` maps each new-game source vertex that kept a
    re-targeted terminal edge back to the original terminal it points at, so
    situations of the merged game lift to the original game.
    """

    old_to_new: tuple[int, ...]
    new_to_old: tuple[int | None, ...]
    merged_terminal: int
    chosen_terminal: Mapping[int, int]

    def lift(self, situation: Situation) -> Situation:
        choice = {}
        for v_new, t_new in situation.items():
            v_old = self.new_to_old[v_new]
            if t_new == self.merged_terminal:
                choice[v_old] = self.chosen_terminal[v_new]
            else:
                choice[v_old] = self.new_to_old[t_new]
        return choice_to_situation_by_moves(choice, len(self.old_to_new))


def choice_to_situation_by_moves(choice: Mapping[int, int], n: int) -> Situation:
    moves: list[int | None] = [None] * n
    for v, t in choice.items():
        moves[v] = t
    return Situation(tuple(moves))


def merge_terminals(game: SPGame) -> tuple[SPGame, TerminalMerge]:
    """Collapse all terminals into a single one, keeping one edge per source.

    When a vertex had moves to several terminals, the edge kept is the one
    cheapest for the vertex's controller; equal-cost ties keep the lowest
    terminal id. The returned map lifts merged situations back.
    """
    g = game.graph
    if not g.terminals:
        raise PathgamesError("game has no terminal vertices")
    nonterm = list(g.nonterminals)
    old_to_new = [0] * g.n_vertices
    for i, v in enumerate(nonterm):
        old_to_new[v] = i
    vt = len(nonterm)
    for w in g.terminals:
        old_to_new[w] = vt
    new_to_old: list[int | None] = list(nonterm) + [None]

    new_edges: list[tuple[int, int]] = []
    new_cost: dict[tuple[int, int], tuple[Fraction, ...]] = {}
    chosen: dict[int, int] = {}
    for u in nonterm:
        u_new = old_to_new[u]
        controller = g.owner[u]
        best_terminal = None
        for v in g.out[u]:
            if g.is_terminal(v):
                key = (game.cost(u, v, controller), v)
                if best_terminal is None or key < best_terminal:
                    best_terminal = key
            else:
                e = (u_new, old_to_new[v])
                new_edges.append(e)
                new_cost[e] = game.edge_cost[(u, v)]
        if best_terminal is not None:
            w = best_terminal[1]
            chosen[u_new] = w
            new_edges.append((u_new, vt))
            new_cost[(u_new, vt)] = game.edge_cost[(u, w)]

    owner = tuple(g.owner[v] for v in nonterm) + (TERMINAL,)
    names = tuple(g.names[v] for v in nonterm) + ("T",)
    initial = old_to_new[g.initial] if g.initial is not None else None
    merged_graph = GameGraph(
        owner=owner,
        edges=tuple(sorted(new_edges)),
        n_players=g.n_players,
        initial=initial,
        names=names,
    )
    merged = SPGame(merged_graph, new_cost)
    merge_map = TerminalMerge(
        old_to_new=tuple(old_to_new),
        new_to_old=tuple(new_to_old),
        merged_terminal=vt,
        chosen_terminal=chosen,
    )
    return merged, merge_map


def sp_game(
    owner: Iterable[int | None],
    edges: Mapping[tuple[int, int], Iterable],
    n_players: int,
    initial: int | None = None,
    names: Iterable[str] = (),
) -> SPGame:
    """Convenience constructor taking an edge -> cost-vector mapping."""
    cost = {
        e: tuple(Fraction(c) for c in cs) for e, cs in edges.items()
    }
    graph = GameGraph(
        owner=tuple(owner),
        edges=tuple(sorted(cost)),
        n_players=n_players,
        initial=initial,
        names=tuple(names),
    )
    return SPGame(graph, cost)


def terminal_game(
    owner: Iterable[int | None],
    edges: Iterable[tuple[int, int]],
    terminal_cost: Mapping[int, Iterable],
    n_players: int,
    infinite_cost: Iterable = (),
    initial: int | None = None,
    names: Iterable[str] = (),
) -> TerminalGame:
    graph = GameGraph(
        owner=tuple(owner),
        edges=tuple(sorted(set(edges))),
        n_players=n_players,
        initial=initial,
        names=tuple(names),
    )
    costs = {w: tuple(Fraction(c) for c in cs) for w, cs in terminal_cost.items()}
    inf = tuple(Fraction(c) for c in infinite_cost)
    return TerminalGame(graph, costs, inf)
