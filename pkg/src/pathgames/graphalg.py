"""Deterministic exact-arithmetic graph primitives.

All functions work on vertices 0..n-1 with explicit edge lists and weight
callables returning exact numbers (int or Fraction). Every tie is broken by
vertex id so repeated runs produce identical results.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Callable, Iterable, Sequence

Weight = Callable[[int, int], Fraction]


def out_adjacency(n: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
    for row in adj:
        row.sort()
    return adj


def in_adjacency(n: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[v].append(u)
    for row in adj:
        row.sort()
    return adj


def strongly_connected_components(
    n: int, out: Sequence[Sequence[int]]
) -> list[list[int]]:
    """Tarjan's algorithm, iterative.

    Components are returned with sorted members, ordered by smallest member.
    """
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, ei = work[-1]
            if ei == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            while ei < len(out[v]):
                w = out[v][ei]
                ei += 1
                if index[w] == -1:
                    work[-1] = (v, ei)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comp.sort()
                comps.append(comp)
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    comps.sort(key=lambda c: c[0])
    return comps


def scc_naive(n: int, out: Sequence[Sequence[int]]) -> list[list[int]]:
    """Reachability-based SCCs, used as an independent cross-check."""
    reach = []
    for s in range(n):
        seen = {s}
        todo = [s]
        while todo:
            v = todo.pop()
            for w in out[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        reach.append(seen)
    assigned = [False] * n
    comps = []
    for v in range(n):
        if assigned[v]:
            continue
        comp = sorted(u for u in range(n) if u in reach[v] and v in reach[u])
        for u in comp:
            assigned[u] = True
        comps.append(comp)
    comps.sort(key=lambda c: c[0])
    return comps


def reachable_to(
    n: int, edges: Iterable[tuple[int, int]], targets: Iterable[int]
) -> set[int]:
    """Vertices from which some target is reachable (targets included)."""
    radj = in_adjacency(n, edges)
    seen = set(targets)
    todo = sorted(seen)
    while todo:
        v = todo.pop()
        for u in radj[v]:
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return seen


def lex_dist_to(
    n: int,
    edges: Iterable[tuple[int, int]],
    weight: Weight,
    targets: Iterable[int],
) -> list[tuple[Fraction, int] | None]:
    """Lexicographic (cost, hops) shortest distance from each vertex to targets.

    Runs Dijkstra on the reversed graph, so weights must be nonnegative.
    Together with :func:`canonical_path` this yields one well-defined optimal
    path per query: cheapest, then fewest edges, then lowest vertex ids.
    """
    edge_list = sorted(set(edges))
    radj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edge_list:
        w = weight(u, v)
        if w < 0:
            raise ValueError(f"negative weight on edge ({u}, {v})")
        radj[v].append(u)
    dist: list[tuple[Fraction, int] | None] = [None] * n
    heap: list[tuple[Fraction, int, int]] = []
    for t in sorted(set(targets)):
        dist[t] = (Fraction(0), 0)
        heap.append((Fraction(0), 0, t))
    heapq.heapify(heap)
    done = [False] * n
    while heap:
        c, h, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for u in radj[v]:
            if done[u]:
                continue
            cand = (c + weight(u, v), h + 1)
            if dist[u] is None or cand < dist[u]:
                dist[u] = cand
                heapq.heappush(heap, (cand[0], cand[1], u))
    return dist


def lex_dist_from(
    n: int,
    edges: Iterable[tuple[int, int]],
    weight: Weight,
    sources: Iterable[int],
) -> list[tuple[Fraction, int] | None]:
    """Forward counterpart of :func:`lex_dist_to`."""
    edge_list = sorted(set(edges))
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edge_list:
        if weight(u, v) < 0:
            raise ValueError(f"negative weight on edge ({u}, {v})")
        adj[u].append(v)
    dist: list[tuple[Fraction, int] | None] = [None] * n
    heap: list[tuple[Fraction, int, int]] = []
    for s in sorted(set(sources)):
        dist[s] = (Fraction(0), 0)
        heap.append((Fraction(0), 0, s))
    heapq.heapify(heap)
    done = [False] * n
    while heap:
        c, h, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for u in adj[v]:
            if done[u]:
                continue
            cand = (c + weight(v, u), h + 1)
            if dist[u] is None or cand < dist[u]:
                dist[u] = cand
                heapq.heappush(heap, (cand[0], cand[1], u))
    return dist


def canonical_path(
    start: int,
    out: Sequence[Sequence[int]],
    weight: Weight,
    dist: Sequence[tuple[Fraction, int] | None],
) -> list[int]:
    """Reconstruct the canonical optimal path for a lex_dist_to table."""
    if dist[start] is None:
        raise ValueError(f"no path from vertex {start}")
    path = [start]
    v = start
    while dist[v] != (Fraction(0), 0):
        c, h = dist[v]
        step = None
        for u in out[v]:
            du = dist[u]
            if du is not None and du[0] + weight(v, u) == c and du[1] + 1 == h:
                step = u
                break
        assert step is not None, "inconsistent distance table"
        path.append(step)
        v = step
    return path


def bellman_ford_potentials(
    n: int, edges: Iterable[tuple[int, int]], weight: Weight
) -> list[Fraction]:
    """Shortest walk cost to each vertex from a virtual all-zero source.

    The caller must guarantee there is no negative cycle; an AssertionError
    here means that guarantee was broken.
    """
    edge_list = sorted(set(edges))
    dist = [Fraction(0)] * n
    for _ in range(n):
        changed = False
        for u, v in edge_list:
            cand = dist[u] + weight(u, v)
            if cand < dist[v]:
                dist[v] = cand
                changed = True
        if not changed:
            break
    else:
        raise AssertionError("negative cycle in potential computation")
    return dist


def _karp_min_mean(
    comp: list[int], edges: list[tuple[int, int]], weight: Weight
) -> Fraction | None:
    """Minimum cycle mean inside one strongly connected component."""
    if not edges:
        return None
    local = {v: i for i, v in enumerate(comp)}
    m = len(comp)
    ledges = [(local[u], local[v], weight(u, v)) for u, v in edges]
    d: list[list[Fraction | None]] = [[None] * m for _ in range(m + 1)]
    d[0][0] = Fraction(0)
    for k in range(1, m + 1):
        prev, cur = d[k - 1], d[k]
        for u, v, w in ledges:
            if prev[u] is not None:
                cand = prev[u] + w
                if cur[v] is None or cand < cur[v]:
                    cur[v] = cand
    best: Fraction | None = None
    for v in range(m):
        if d[m][v] is None:
            continue
        worst: Fraction | None = None
        for k in range(m):
            if d[k][v] is None:
                continue
            ratio = (d[m][v] - d[k][v]) / (m - k)
            if worst is None or ratio > worst:
                worst = ratio
        if worst is not None and (best is None or worst < best):
            best = worst
    return best


def _extract_mean_cycle(
    comp: list[int], edges: list[tuple[int, int]], weight: Weight, mean: Fraction
) -> list[int]:
    """Find a cycle of the given (minimum) mean inside one component.

    After shifting every weight by the mean, minimum-mean cycles become
    zero-sum and lie entirely on tight shortest-path edges.
    """
    shifted = lambda u, v: weight(u, v) - mean
    pot = {v: Fraction(0) for v in comp}
    for _ in range(len(comp)):
        changed = False
        for u, v in sorted(edges):
            cand = pot[u] + shifted(u, v)
            if cand < pot[v]:
                pot[v] = cand
                changed = True
        if not changed:
            break
    tight: dict[int, list[int]] = {v: [] for v in comp}
    for u, v in sorted(edges):
        if pot[u] + shifted(u, v) == pot[v]:
            tight[u].append(v)
    # Any cycle of tight edges telescopes to a zero shifted sum.
    color = {v: 0 for v in comp}
    stack_pos: dict[int, int] = {}
    for root in comp:
        if color[root]:
            continue
        path: list[int] = []
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            v, ei = work[-1]
            if ei == 0:
                color[v] = 1
                stack_pos[v] = len(path)
                path.append(v)
            advanced = False
            while ei < len(tight[v]):
                w = tight[v][ei]
                ei += 1
                if color[w] == 1:
                    cyc = path[stack_pos[w]:]
                    k = cyc.index(min(cyc))
                    return cyc[k:] + cyc[:k]
                if color[w] == 0:
                    work[-1] = (v, ei)
                    work.append((w, 0))
                    advanced = True
                    break
            if advanced:
                continue
            work.pop()
            color[v] = 2
            path.pop()
    raise AssertionError(f"no cycle of mean {mean} found in component {comp}")


def min_cycle_mean(
    n: int, edges: Iterable[tuple[int, int]], weight: Weight
) -> tuple[Fraction | None, list[int] | None]:
    """Exact minimum directed-cycle mean and one witness cycle.

    Returns (None, None) when the graph is acyclic. The witness cycle is
    listed from its smallest vertex.
    """
    edge_list = sorted(set(edges))
    adj = out_adjacency(n, edge_list)
    comps = strongly_connected_components(n, adj)
    comp_id = {}
    for i, comp in enumerate(comps):
        for v in comp:
            comp_id[v] = i
    best: Fraction | None = None
    best_comp: list[int] | None = None
    best_edges: list[tuple[int, int]] | None = None
    for comp in comps:
        inner = [(u, v) for u, v in edge_list if comp_id[u] == comp_id[v] == comp_id[comp[0]]]
        mean = _karp_min_mean(comp, inner, weight)
        if mean is not None and (best is None or mean < best):
            best, best_comp, best_edges = mean, comp, inner
    if best is None:
        return None, None
    cycle = _extract_mean_cycle(best_comp, best_edges, weight, best)
    return best, cycle
