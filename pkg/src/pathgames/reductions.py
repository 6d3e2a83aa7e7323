"""Equivalence-preserving game transformations.

Contains the potential transform that makes positive-cycle games edge
positive, the embedding of infinite-averse terminal games into positive
shortest path games, the contraction of same-player strongly connected
components with its situation lifting, and the preprocessing used by the
uniform-equilibrium solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import graphalg
from .errors import CIWViolated, ConditionViolated, NonPositiveCycle
from .model import (
    GameGraph,
    SPGame,
    Situation,
    TERMINAL,
    TerminalGame,
    is_edge_symmetric,
)


@dataclass(frozen=True)
class Potential:
    """Per-player vertex potentials of a cost reweighting."""

    values: tuple[tuple[Fraction, ...], ...]

    def of(self, player: int, v: int) -> Fraction:
        return self.values[player - 1][v]


@dataclass(frozen=True)
class GallaiResult:
    game: SPGame
    potential: Potential


def gallai_transform(game: SPGame) -> GallaiResult:
    """Reweight costs so every edge is strictly positive for every player.

    Requires every directed cycle to have a positive cost sum for every
    player. For each player the new cost is l(u,v) + pi(u) - pi(v) where pi
    solves the difference constraints l(u,v) + pi(u) - pi(v) >= eps via
    shortest-path potentials, with eps set to half the minimum cycle mean.
    Any fixed pair of endpoints keeps all its path costs shifted by the same
    constant, so equilibria are unaffected.

    Already-positive games are returned unchanged with a zero potential.
    """
    g = game.graph
    n = g.n_vertices
    edges = g.sorted_edges()
    zero_row = (Fraction(0),) * n
    if all(c > 0 for e in edges for c in game.edge_cost[e]):
        return GallaiResult(game, Potential((zero_row,) * g.n_players))

    rows = []
    new_cost: dict[tuple[int, int], list[Fraction]] = {e: [] for e in edges}
    for player in g.players:
        weight = lambda u, v, p=player: game.cost(u, v, p)
        mean, cycle = graphalg.min_cycle_mean(n, edges, weight)
        if mean is not None and mean <= 0:
            raise NonPositiveCycle(player, tuple(cycle))
        # Acyclic graphs put no constraint on eps; any positive value works.
        eps = mean / 2 if mean is not None else Fraction(1)
        shifted = lambda u, v, p=player, e=eps: game.cost(u, v, p) - e
        pi = graphalg.bellman_ford_potentials(n, edges, shifted)
        rows.append(tuple(pi))
        for u, v in edges:
            c = game.cost(u, v, player) + pi[u] - pi[v]
            assert c >= eps, "potential failed to make the edge positive"
            new_cost[(u, v)].append(c)
    transformed = SPGame(g, {e: tuple(cs) for e, cs in new_cost.items()})
    return GallaiResult(transformed, Potential(tuple(rows)))


@dataclass(frozen=True)
class SpReduction:
    """A terminal game recast as a positive shortest path game.

    ``scale`` is the integer the terminal costs were multiplied by to make
    them negative integers; ``big_m`` exceeds every scaled magnitude. Any
    terminal NE of ``game`` is a NE of the source terminal game.
    """

    game: SPGame
    scale: int
    big_m: int


def terminal_to_sp(game: TerminalGame) -> SpReduction:
    """Embed an infinite-averse terminal game into a positive SP game.

    Every move not entering a terminal costs 1/(2|E|) for everyone; a move
    into terminal w costs M + L(w) after scaling terminal costs to negative
    integers. Requires zero infinite-play costs and all terminal costs
    negative, and raises CIWViolated otherwise.
    """
    g = game.graph
    bad: list[tuple[int, int | None]] = []
    for player in g.players:
        if game.cycle_cost(player) != 0:
            bad.append((player, None))
        for w in g.terminals:
            if game.cost_at(w, player) >= game.cycle_cost(player):
                bad.append((player, w))
    if bad:
        raise CIWViolated(bad)

    values = [game.cost_at(w, p) for w in g.terminals for p in g.players]
    scale = math.lcm(*(v.denominator for v in values)) if values else 1
    big_m = 1 + max((abs(int(v * scale)) for v in values), default=0)
    edges = g.sorted_edges()
    step = Fraction(1, 2 * len(edges))
    cost = {}
    for u, v in edges:
        if g.is_terminal(v):
            cost[(u, v)] = tuple(
                Fraction(big_m + int(game.cost_at(v, p) * scale)) for p in g.players
            )
        else:
            cost[(u, v)] = (step,) * g.n_players
    return SpReduction(SPGame(g, cost), scale, big_m)


def player_components(graph: GameGraph) -> list[list[int]]:
    """SCCs of each player-induced subgraph; terminals are singletons."""
    intra = [
        (u, v)
        for u, v in graph.edge_set
        if not graph.is_terminal(v) and graph.owner[u] == graph.owner[v]
    ]
    adj = graphalg.out_adjacency(graph.n_vertices, intra)
    return graphalg.strongly_connected_components(graph.n_vertices, adj)


@dataclass(frozen=True)
class ContractionMap:
    """How a terminal game was contracted to its small version.

    ``rep_edge`` holds, for each contracted edge, the lexicographically
    smallest original edge realizing it; lifting roots each component at the
    tail of the representative edge chosen by the situation and routes the
    rest of the component to that root along a reverse breadth-first tree.
    """

    graph: GameGraph
    component: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    rep_edge: Mapping[tuple[int, int], tuple[int, int]]


def contract_small_game(game: TerminalGame) -> tuple[TerminalGame, ContractionMap]:
    """Merge same-player strongly connected components into single vertices.

    Components with at least two vertices get a self-loop standing for the
    ability to cycle internally forever; singleton components keep a loop
    only if the original vertex had one. Parallel edges are collapsed and the
    smallest original edge is kept as representative.
    """
    g = game.graph
    comps = player_components(g)
    comp_of = [0] * g.n_vertices
    for cid, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = cid

    rep: dict[tuple[int, int], tuple[int, int]] = {}
    for u, v in g.sorted_edges():
        cu, cv = comp_of[u], comp_of[v]
        if cu == cv and u != v and len(comps[cu]) < 2:
            raise AssertionError("intra-singleton edge between distinct vertices")
        key = (cu, cv)
        if cu == cv and u == v and len(comps[cu]) >= 2:
            continue  # absorbed by the component loop below
        if key not in rep:
            rep[key] = (u, v)
    for cid, comp in enumerate(comps):
        if len(comp) >= 2:
            u = comp[0]
            v = next(
                x for x in g.out[u] if x != u and not g.is_terminal(x) and comp_of[x] == cid
            )
            rep[(cid, cid)] = (u, v)

    owner = tuple(g.owner[comp[0]] for comp in comps)
    names = tuple(
        g.names[comp[0]] if len(comp) == 1 else "+".join(g.names[v] for v in comp)
        for comp in comps
    )
    terminal_cost = {
        cid: game.terminal_cost[comp[0]]
        for cid, comp in enumerate(comps)
        if owner[cid] is TERMINAL
    }
    initial = comp_of[g.initial] if g.initial is not None else None
    small_graph = GameGraph(
        owner=owner,
        edges=tuple(sorted(rep)),
        n_players=g.n_players,
        initial=initial,
        names=names,
    )
    small = TerminalGame(small_graph, terminal_cost, game.infinite_cost)
    cmap = ContractionMap(
        graph=g,
        component=tuple(comp_of),
        members=tuple(tuple(c) for c in comps),
        rep_edge=rep,
    )
    return small, cmap


def _tree_toward(cmap: ContractionMap, cid: int, root: int) -> dict[int, int]:
    """In-tree over a component: each non-root member's move toward the root.

    Built by reverse breadth-first search so lifted walks are as short as
    possible; within a layer the lowest-id parent wins.
    """
    g = cmap.graph
    members = set(cmap.members[cid])
    tree: dict[int, int] = {}
    layer = {root}
    assigned = {root}
    while len(assigned) < len(members):
        nxt = set()
        for v in sorted(members - assigned):
            parents = [u for u in g.out[v] if u in layer and u != v]
            if parents:
                tree[v] = parents[0]
                nxt.add(v)
        if not nxt:
            raise AssertionError(f"component {cid} not strongly connected")
        assigned |= nxt
        layer = nxt
    return tree


def lift_situation(situation: Situation, cmap: ContractionMap) -> Situation:
    """Expand a situation of the small game to the original game.

    Inside each component the play follows the in-tree to the root, which
    then takes the representative edge; a loop choice is realized by cycling
    between the representative intra-component edge's endpoints.
    """
    g = cmap.graph
    choice: dict[int, int] = {}
    for cid, members in enumerate(cmap.members):
        if g.is_terminal(members[0]):
            continue
        target = situation[cid]
        assert target is not None
        u, v = cmap.rep_edge[(cid, target)]
        if target == cid and len(members) == 1:
            choice[u] = u  # original self-loop
            continue
        for w, parent in _tree_toward(cmap, cid, u).items():
            choice[w] = parent
        choice[u] = v
    return Situation.of(g, choice)


@dataclass(frozen=True)
class UnePrep:
    """Preprocessed 2-person symmetric terminal game plus lifting data.

    ``unreachable`` marks vertices of the preprocessed game that cannot reach
    any terminal; solvers give them fixed lowest-id moves and leave them out
    of the improvement dynamics.
    """

    game: TerminalGame
    contraction: ContractionMap
    dropped_edges: tuple[tuple[int, int], ...]
    unreachable: frozenset[int]

    def lift(self, situation: Situation) -> Situation:
        return lift_situation(situation, self.contraction)


def une_preprocess(game: TerminalGame) -> UnePrep:
    """Normalize a 2-person edge-symmetric terminal game for the UNE solver.

    After contraction, non-loop moves join vertices of different players.
    Of several terminal moves at one vertex only the controller's best is
    kept (ties to the lowest terminal id), and vertices that cannot reach a
    terminal at all are marked for exclusion.
    """
    if game.graph.n_players != 2:
        raise ConditionViolated("TWO", f"{game.graph.n_players} players")
    if not is_edge_symmetric(game.graph):
        raise ConditionViolated("SYM")
    small, cmap = contract_small_game(game)
    g = small.graph
    dropped: list[tuple[int, int]] = []
    keep: set[tuple[int, int]] = set()
    for v in g.nonterminals:
        terminal_moves = [w for w in g.out[v] if g.is_terminal(w)]
        if len(terminal_moves) > 1:
            best = min(terminal_moves, key=lambda w: (small.cost_at(w, g.owner[v]), w))
            dropped.extend((v, w) for w in terminal_moves if w != best)
            keep.update((v, w) for w in terminal_moves if w == best)
        else:
            keep.update((v, w) for w in terminal_moves)
        keep.update((v, w) for w in g.out[v] if not g.is_terminal(w))
    pruned_graph = GameGraph(
        owner=g.owner,
        edges=tuple(sorted(keep)),
        n_players=g.n_players,
        initial=g.initial,
        names=g.names,
    )
    pruned = TerminalGame(pruned_graph, small.terminal_cost, small.infinite_cost)
    can_reach = graphalg.reachable_to(
        pruned_graph.n_vertices, pruned_graph.edge_set, pruned_graph.terminals
    )
    unreachable = frozenset(v for v in pruned_graph.nonterminals if v not in can_reach)
    return UnePrep(pruned, cmap, tuple(sorted(dropped)), unreachable)
