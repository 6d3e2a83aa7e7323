"""NE construction for edge-symmetric positive n-person shortest path games.

Pipeline: merge terminals, decompose the board into per-player strongly
connected components, find a path crossing as few components as possible,
repair it until no single player can undercut it in their own one-player
relaxation, then extend it to a full strategy profile that locks the path
in place. The result is checked against the one-player best-response oracle
before being returned.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from . import graphalg, oracle
from .errors import (
    MeasureNotDecreased,
    NotPositive,
    NotSymmetric,
    Unreachable,
    VerificationFailed,
)
from .model import (
    GameGraph,
    SPGame,
    Situation,
    is_edge_symmetric,
    is_positive,
    lowest_id_situation,
    merge_terminals,
)
from .reductions import gallai_transform, player_components

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ComponentDecomposition:
    """Per-player strongly connected components, one terminal singleton."""

    comp_of: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    comp_owner: tuple[int | None, ...]

    @property
    def n_components(self) -> int:
        return len(self.members)


def decompose(game: SPGame) -> ComponentDecomposition:
    """Decompose a single-terminal game board into components.

    Also re-derives the components with an independent reachability-based
    pass in debug builds, and checks that edges between distinct components
    always change owner, which is what edge-symmetry guarantees.
    """
    g = game.graph
    if len(g.terminals) != 1:
        raise ValueError("decompose expects a single-terminal game (merge first)")
    comps = player_components(g)
    if __debug__:
        intra = [
            (u, v)
            for u, v in g.edge_set
            if not g.is_terminal(v) and g.owner[u] == g.owner[v]
        ]
        adj = graphalg.out_adjacency(g.n_vertices, intra)
        assert comps == graphalg.scc_naive(g.n_vertices, adj), "SCC passes disagree"
    comp_of = [0] * g.n_vertices
    for cid, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = cid
    owners = tuple(g.owner[comp[0]] for comp in comps)
    for u, v in g.edge_set:
        if comp_of[u] != comp_of[v] and not g.is_terminal(v):
            if g.owner[u] == g.owner[v]:
                raise NotSymmetric(
                    f"same-player edge ({u}, {v}) crosses components; "
                    "the graph cannot be edge-symmetric"
                )
    return ComponentDecomposition(tuple(comp_of), tuple(tuple(c) for c in comps), owners)


@dataclass(frozen=True)
class SpecialPath:
    """A terminal path with its component block structure and cost vector.

    ``blocks`` splits the path into maximal same-component runs; ``r_vector``
    measures each non-final block's outgoing moves with the block owner's
    costs, the quantity that shrinks reverse-lexicographically during
    repair.
    """

    vertices: tuple[int, ...]
    block_comp: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    r_vector: tuple[Fraction, ...]

    @property
    def q(self) -> int:
        return len(self.blocks)


def _split_blocks(path: list[int], dec: ComponentDecomposition):
    blocks: list[list[int]] = []
    comps: list[int] = []
    for v in path:
        c = dec.comp_of[v]
        if comps and comps[-1] == c:
            blocks[-1].append(v)
        else:
            comps.append(c)
            blocks.append([v])
    return blocks, comps


def _path_cost(game: SPGame, path: list[int], player: int) -> Fraction:
    return sum(
        (game.cost(u, v, player) for u, v in zip(path, path[1:])), Fraction(0)
    )


def _make_special_path(game: SPGame, dec: ComponentDecomposition, path: list[int]) -> SpecialPath:
    blocks, comps = _split_blocks(path, dec)
    if len(set(comps)) != len(comps):
        raise AssertionError("path re-enters a component it left")
    r = []
    for j, block in enumerate(blocks[:-1]):
        owner = dec.comp_owner[comps[j]]
        total = Fraction(0)
        pos = path.index(block[0])
        for k in range(pos, pos + len(block)):
            total += game.cost(path[k], path[k + 1], owner)
        r.append(total)
    return SpecialPath(
        vertices=tuple(path),
        block_comp=tuple(comps),
        blocks=tuple(tuple(b) for b in blocks),
        r_vector=tuple(r),
    )


def _check_no_forward_jumps(g: GameGraph, dec: ComponentDecomposition, sp: SpecialPath) -> None:
    """No vertex of block j may see a component of block j+2 or later."""
    later_than = {c: j for j, c in enumerate(sp.block_comp)}
    for j, c in enumerate(sp.block_comp[:-2]):
        for v in dec.members[c]:
            for w in g.out[v]:
                k = later_than.get(dec.comp_of[w])
                if k is not None and k >= j + 2:
                    raise AssertionError(
                        f"edge ({v}, {w}) jumps from block {j} to block {k}"
                    )


def lambda_shortest(game: SPGame, dec: ComponentDecomposition, v0: int) -> SpecialPath:
    """Terminal path minimizing the number of component crossings.

    Crossing edges cost one, intra-component edges nothing; among optimal
    paths the canonical fewest-hop lowest-id one is returned. Raises
    Unreachable when no terminal path exists.
    """
    g = game.graph
    vt = g.terminals[0]
    lam = lambda u, v: Fraction(int(dec.comp_of[u] != dec.comp_of[v]))
    dist = graphalg.lex_dist_to(g.n_vertices, g.edge_set, lam, [vt])
    if dist[v0] is None:
        raise Unreachable(f"terminal not reachable from vertex {v0}")
    path = graphalg.canonical_path(v0, g.out, lam, dist)
    sp = _make_special_path(game, dec, path)
    assert sp.q == dist[v0][0] + 1, "block count disagrees with crossing distance"
    return sp


def intra_component_distance(
    game: SPGame, dec: ComponentDecomposition, comp: int, u: int, v: int
) -> Fraction:
    """Shortest u -> v cost inside one component, in its owner's costs."""
    owner = dec.comp_owner[comp]
    if owner is None:
        assert u == v
        return Fraction(0)
    members = set(dec.members[comp])
    edges = [
        (a, b)
        for a in dec.members[comp]
        for b in game.graph.out[a]
        if b in members
    ]
    dist = graphalg.lex_dist_from(
        game.graph.n_vertices, edges, lambda a, b: game.cost(a, b, owner), [u]
    )
    assert dist[v] is not None, "component is not strongly connected"
    return dist[v][0]


def _g_ip_edges(g: GameGraph, path: tuple[int, ...], player: int) -> list[tuple[int, int]]:
    """Edge set of the one-player relaxation: path moves plus all of i's moves."""
    edges = set(zip(path, path[1:]))
    for v in g.nonterminals:
        if g.owner[v] == player:
            edges.update((v, w) for w in g.out[v])
    return sorted(edges)


def _speciality_gap(
    game: SPGame, sp: SpecialPath, player: int
) -> tuple[Fraction, list[tuple[int, int]]]:
    """Best cost player i can get in their relaxation, minus the path cost."""
    g = game.graph
    vt = g.terminals[0]
    edges = _g_ip_edges(g, sp.vertices, player)
    dist = graphalg.lex_dist_to(
        g.n_vertices, edges, lambda u, v: game.cost(u, v, player), [vt]
    )
    own = _path_cost(game, list(sp.vertices), player)
    assert dist[sp.vertices[0]] is not None
    gap = dist[sp.vertices[0]][0] - own
    assert gap <= 0, "path cost exceeds its own relaxation"
    return gap, edges


def _best_splice(
    game: SPGame, dec: ComponentDecomposition, sp: SpecialPath, player: int
) -> list[int] | None:
    """Cheapest single-deviation improvement of the path by one player.

    Deviations leave the path at one of the player's vertices, wander inside
    that vertex's component through the player's own vertices, and rejoin the
    path in the same or the next block. The best strictly improving splice
    (then earliest, then lowest ids) is returned, or None.
    """
    g = game.graph
    path = list(sp.vertices)
    pos_block = []
    for j, block in enumerate(sp.blocks):
        pos_block.extend([j] * len(block))
    best = None  # (delta, a, b, splice vertices)
    for a, v in enumerate(path[:-1]):
        if g.owner[v] != player:
            continue
        j = pos_block[a]
        comp_members = set(dec.members[sp.block_comp[j]])
        for b in range(a + 1, len(path)):
            if pos_block[b] > j + 1:
                break
            w = path[b]
            segment_cost = _path_cost(game, path[a : b + 1], player)
            banned = set(path[: a + 1]) | set(path[b:])
            interior = (comp_members - banned) | {w}
            edges = []
            for x in [v] + sorted(interior - {w}):
                if g.owner[x] != player:
                    continue
                for y in g.out[x]:
                    if y in interior:
                        edges.append((x, y))
            dist = graphalg.lex_dist_to(
                g.n_vertices, edges, lambda s, t: game.cost(s, t, player), [w]
            )
            if dist[v] is None or dist[v][0] >= segment_cost:
                continue
            delta = dist[v][0] - segment_cost
            key = (delta, a, b)
            if best is None or key < best[0]:
                adj = graphalg.out_adjacency(g.n_vertices, edges)
                splice = graphalg.canonical_path(
                    v, adj, lambda s, t: game.cost(s, t, player), dist
                )
                best = (key, path[:a] + splice + path[b + 1 :])
    return best[1] if best else None


def _revlex_smaller(new: tuple[Fraction, ...], old: tuple[Fraction, ...]) -> bool:
    return tuple(reversed(new)) < tuple(reversed(old))


def make_special(game: SPGame, dec: ComponentDecomposition, start_path: SpecialPath) -> SpecialPath:
    """Repair a minimum-crossing path until it is special for every player.

    Each round finds a player whose relaxation beats the path and splices in
    their cheapest deviation; the per-block cost vector must then shrink in
    reverse-lexicographic order, which is asserted. Raises
    MeasureNotDecreased if an improvement fails to shrink it, which would
    indicate a bug rather than a property of the input.
    """
    sp = start_path
    _check_no_forward_jumps(game.graph, dec, sp)
    rounds = 0
    while True:
        improved = False
        for player in game.graph.players:
            gap, gip_edges = _speciality_gap(game, sp, player)
            if gap == 0:
                continue
            rounds += 1
            candidate = _best_splice(game, dec, sp, player)
            if candidate is None:
                # Improvements decompose into single splices; fall back to
                # the full relaxation optimum if that ever fails to hold.
                g = game.graph
                dist = graphalg.lex_dist_to(
                    g.n_vertices, gip_edges,
                    lambda u, v: game.cost(u, v, player), [g.terminals[0]],
                )
                adj = graphalg.out_adjacency(g.n_vertices, gip_edges)
                candidate = graphalg.canonical_path(
                    sp.vertices[0], adj, lambda u, v: game.cost(u, v, player), dist
                )
            new_sp = _make_special_path(game, dec, candidate)
            if new_sp.q != sp.q or not _revlex_smaller(new_sp.r_vector, sp.r_vector):
                raise MeasureNotDecreased(
                    f"improvement for player {player} did not shrink the measure"
                )
            _check_no_forward_jumps(game.graph, dec, new_sp)
            sp = new_sp
            improved = True
            break
        if not improved:
            log.debug("path became special after %d improvement rounds", rounds)
            return sp


def extend_to_situation(
    game: SPGame, dec: ComponentDecomposition, sp: SpecialPath
) -> Situation:
    """Extend a special path to a full strategy profile.

    On-path vertices follow the path. An off-path vertex adjacent to any
    component the path visits aims at the earliest such block, entering it
    as close (in the block owner's metric, from the block's first path
    vertex) as possible; everyone else takes their lowest-id move.
    """
    g = game.graph
    path = sp.vertices
    choice: dict[int, int] = {v: w for v, w in zip(path, path[1:])}
    block_of_comp = {c: j for j, c in enumerate(sp.block_comp)}
    entry = {j: block[0] for j, block in enumerate(sp.blocks)}
    for v in g.nonterminals:
        if v in choice:
            continue
        hits = [
            (block_of_comp[dec.comp_of[w]], w)
            for w in g.out[v]
            if dec.comp_of[w] in block_of_comp
        ]
        if hits:
            k = min(j for j, _ in hits)
            comp = sp.block_comp[k]
            candidates = sorted(w for j, w in hits if j == k)
            u = min(
                candidates,
                key=lambda w: (intra_component_distance(game, dec, comp, entry[k], w), w),
            )
            choice[v] = u
        else:
            choice[v] = g.out[v][0]
    return Situation.of(g, choice)


def solve_theorem1(
    game: SPGame, start: int | None = None, transform: bool = False
) -> Situation:
    """Construct a NE of an edge-symmetric positive shortest path game.

    With ``transform`` set, a game whose costs are not all positive but whose
    cycle sums are is first reweighted; the returned situation is then an
    equilibrium of both versions since the reweighting shifts all terminal
    path costs per player by a constant. If no terminal is reachable from the
    start every play is infinitely bad for everyone, so the all-lowest-id
    situation is returned.
    """
    g = game.graph
    if start is None:
        start = g.initial
    if start is None or g.is_terminal(start):
        raise ValueError("a non-terminal start vertex is required")
    if not is_edge_symmetric(g):
        raise NotSymmetric("the graph is not edge-symmetric")
    report = is_positive(game)
    working = game
    if not report.edge_positive:
        if not (transform and report.cycle_positive):
            raise NotPositive(
                "edge costs are not all positive"
                + ("" if report.cycle_positive else " and neither are cycle sums")
            )
        working = gallai_transform(game).game

    merged, mmap = merge_terminals(working)
    dec = decompose(merged)
    v0 = mmap.old_to_new[start]
    try:
        base = lambda_shortest(merged, dec, v0)
    except Unreachable:
        return lowest_id_situation(g)
    sp = make_special(merged, dec, base)
    situation = mmap.lift(extend_to_situation(merged, dec, sp))
    check = oracle.verify_ne_sp(working, situation, start)
    if not check.ok:
        raise VerificationFailed(
            f"constructed situation admits a deviation: {check.note}"
        )
    return situation
