"""Directed graphs with interval arc costs and the searches the bounds need.

Holds the graph container, plain and bidirectional Dijkstra, shortest path
search under branch constraints (forced prefix, forbidden arcs), a two-unit
minimum cost flow used by the pair-scenario bound, and the adapter that
turns all of this into a standard-problem oracle.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import IntervalInstance, SolutionIndicator


def _frozen(values, dtype) -> np.ndarray:
    out = np.array(values, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Path:
    """Arc ids of a simple path, in traversal order."""

    edges: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(int(e) for e in self.edges))

    def indicator(self) -> SolutionIndicator:
        return SolutionIndicator(frozenset(self.edges))

    def value(self, costs) -> float:
        c = np.asarray(costs, dtype=float)
        return float(sum(c[e] for e in self.edges))

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class IntervalDigraph:
    """Digraph with an interval cost per arc and fixed terminals.

    Parallel arcs are allowed; arcs are identified by index into the tail,
    head, lo and hi arrays.  Construction rejects graphs whose target is
    not reachable from the source.
    """

    node_count: int
    tails: np.ndarray
    heads: np.ndarray
    lo: np.ndarray
    hi: np.ndarray
    source: int
    target: int
    out_edges: tuple[tuple[int, ...], ...] = None
    in_edges: tuple[tuple[int, ...], ...] = None
    instance: IntervalInstance = None

    def __post_init__(self):
        n = int(self.node_count)
        tails = _frozen(self.tails, np.int64)
        heads = _frozen(self.heads, np.int64)
        instance = IntervalInstance(self.lo, self.hi)
        if n < 2:
            raise ValueError("graph needs at least two nodes")
        if tails.ndim != 1 or tails.shape != heads.shape:
            raise ValueError("tails and heads must be 1-d arrays of equal length")
        if tails.size != instance.n:
            raise ValueError("one cost interval per arc required")
        for arr in (tails, heads):
            if arr.size and (arr.min() < 0 or arr.max() >= n):
                raise ValueError("arc endpoint out of range")
        s, t = int(self.source), int(self.target)
        if not (0 <= s < n and 0 <= t < n):
            raise ValueError("terminal out of range")
        if s == t:
            raise ValueError("source and target must differ")
        out_adj: list[list[int]] = [[] for _ in range(n)]
        in_adj: list[list[int]] = [[] for _ in range(n)]
        for e in range(tails.size):
            out_adj[tails[e]].append(e)
            in_adj[heads[e]].append(e)
        object.__setattr__(self, "node_count", n)
        object.__setattr__(self, "tails", tails)
        object.__setattr__(self, "heads", heads)
        object.__setattr__(self, "lo", instance.lo)
        object.__setattr__(self, "hi", instance.hi)
        object.__setattr__(self, "source", s)
        object.__setattr__(self, "target", t)
        object.__setattr__(self, "out_edges", tuple(tuple(a) for a in out_adj))
        object.__setattr__(self, "in_edges", tuple(tuple(a) for a in in_adj))
        object.__setattr__(self, "instance", instance)
        if not self._reaches_target():
            raise ValueError("target is not reachable from the source")

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[tuple], source: int, target: int) -> "IntervalDigraph":
        """Build from (tail, head, lo, hi) tuples."""
        rows = list(edges)
        tails = [r[0] for r in rows]
        heads = [r[1] for r in rows]
        lo = [r[2] for r in rows]
        hi = [r[3] for r in rows]
        return cls(node_count, np.asarray(tails), np.asarray(heads), np.asarray(lo), np.asarray(hi), source, target)

    @property
    def m(self) -> int:
        return self.tails.size

    def _reaches_target(self) -> bool:
        seen = [False] * self.node_count
        seen[self.source] = True
        stack = [self.source]
        while stack:
            u = stack.pop()
            if u == self.target:
                return True
            for e in self.out_edges[u]:
                v = self.heads[e]
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        return False

    def path_nodes(self, path: Path) -> tuple[int, ...]:
        if not path.edges:
            return ()
        nodes = [int(self.tails[path.edges[0]])]
        for e in path.edges:
            if int(self.tails[e]) != nodes[-1]:
                raise ValueError("edges do not chain into a path")
            nodes.append(int(self.heads[e]))
        return tuple(nodes)


@dataclass(frozen=True)
class PathConstraint:
    """Branch state: a forced arc prefix out of the source plus forbidden arcs."""

    in_chain: tuple[int, ...] = ()
    out_set: frozenset[int] = frozenset()

    def __post_init__(self):
        chain = tuple(int(e) for e in self.in_chain)
        out = frozenset(int(e) for e in self.out_set)
        if set(chain) & out:
            raise ValueError("an arc cannot be both forced and forbidden")
        if len(set(chain)) != len(chain):
            raise ValueError("forced prefix repeats an arc")
        object.__setattr__(self, "in_chain", chain)
        object.__setattr__(self, "out_set", out)

    def validate(self, graph: IntervalDigraph) -> None:
        """Check the prefix really is a simple path leaving the source."""
        for e in self.in_chain:
            if not 0 <= e < graph.m:
                raise ValueError("forced arc id out of range")
        for e in self.out_set:
            if not 0 <= e < graph.m:
                raise ValueError("forbidden arc id out of range")
        node = graph.source
        seen = {node}
        for e in self.in_chain:
            if int(graph.tails[e]) != node:
                raise ValueError("forced prefix does not chain from the source")
            node = int(graph.heads[e])
            if node in seen:
                raise ValueError("forced prefix revisits a node")
            seen.add(node)
        if graph.target in seen - {node}:
            raise ValueError("forced prefix passes through the target")

    def chain_end(self, graph: IntervalDigraph) -> int:
        return int(graph.heads[self.in_chain[-1]]) if self.in_chain else graph.source

    def chain_nodes(self, graph: IntervalDigraph) -> tuple[int, ...]:
        nodes = [graph.source]
        for e in self.in_chain:
            nodes.append(int(graph.heads[e]))
        return tuple(nodes)


def _check_costs(graph: IntervalDigraph, costs) -> np.ndarray:
    c = np.asarray(costs, dtype=float)
    if c.shape != (graph.m,):
        raise ValueError("one cost per arc required")
    if not np.isfinite(c).all() or (c < 0).any():
        raise ValueError("arc costs must be finite and nonnegative")
    return c


def _settle_all(graph, costs, src, banned_edges, banned_nodes, target):
    """Dijkstra labels from src; equal-cost relaxations keep the smallest arc id.

    Predecessors are only rewritten while the head is unsettled, so the
    predecessor chain always walks strictly back in settle order and stays
    acyclic even across zero-cost arcs.
    """
    n = graph.node_count
    dist = np.full(n, np.inf)
    pred = np.full(n, -1, dtype=np.int64)
    settled = np.zeros(n, dtype=bool)
    if src in banned_nodes:
        return dist, pred
    dist[src] = 0.0
    heap = [(0.0, src)]
    limit = np.inf
    while heap:
        d, u = heapq.heappop(heap)
        if settled[u]:
            continue
        if d > limit:
            break
        settled[u] = True
        if u == target:
            limit = d
        for e in graph.out_edges[u]:
            if e in banned_edges:
                continue
            v = int(graph.heads[e])
            if v in banned_nodes or settled[v]:
                continue
            nd = d + costs[e]
            if nd < dist[v]:
                dist[v] = nd
                pred[v] = e
                heapq.heappush(heap, (nd, v))
            elif nd == dist[v] and (pred[v] < 0 or e < pred[v]):
                pred[v] = e
    return dist, pred


def _walk_back(graph, pred, src, dst) -> Path:
    edges = []
    node = dst
    while node != src:
        e = int(pred[node])
        edges.append(e)
        node = int(graph.tails[e])
    edges.reverse()
    return Path(tuple(edges))


def dijkstra(graph: IntervalDigraph, costs, source: int | None = None, target: int | None = None):
    """Shortest path under the given arc costs; None when target is unreachable."""
    c = _check_costs(graph, costs)
    src = graph.source if source is None else int(source)
    dst = graph.target if target is None else int(target)
    if src == dst:
        return Path(()), 0.0
    dist, pred = _settle_all(graph, c, src, frozenset(), frozenset(), dst)
    if not np.isfinite(dist[dst]):
        return None
    return _walk_back(graph, pred, src, dst), float(dist[dst])


def _splice_cycles(graph: IntervalDigraph, edges: list[int]) -> tuple[int, ...]:
    """Drop zero-cost loops a bidirectional meet can create, keeping a simple path."""
    while True:
        seen: dict[int, int] = {}
        nodes = [int(graph.tails[edges[0]])] if edges else []
        for e in edges:
            nodes.append(int(graph.heads[e]))
        for pos, node in enumerate(nodes):
            if node in seen:
                del edges[seen[node] : pos]
                break
            seen[node] = pos
        else:
            return tuple(edges)


def bidirectional_dijkstra(graph: IntervalDigraph, costs, source: int | None = None, target: int | None = None):
    """Meet-in-the-middle Dijkstra; stops once the frontier minima cross the best meet.

    Returns the same value as dijkstra; under cost ties the reported path
    may legitimately differ.
    """
    c = _check_costs(graph, costs)
    src = graph.source if source is None else int(source)
    dst = graph.target if target is None else int(target)
    if src == dst:
        return Path(()), 0.0
    n = graph.node_count
    dist = [np.full(n, np.inf), np.full(n, np.inf)]
    link = [np.full(n, -1, dtype=np.int64), np.full(n, -1, dtype=np.int64)]
    settled = [np.zeros(n, dtype=bool), np.zeros(n, dtype=bool)]
    heaps = [[(0.0, src)], [(0.0, dst)]]
    dist[0][src] = 0.0
    dist[1][dst] = 0.0
    best = np.inf
    meet = -1

    def top(side):
        h = heaps[side]
        while h and settled[side][h[0][1]]:
            heapq.heappop(h)
        return h[0][0] if h else np.inf

    while True:
        t0, t1 = top(0), top(1)
        if t0 + t1 >= best or (not np.isfinite(t0) and not np.isfinite(t1)):
            break
        side = 0 if t0 <= t1 else 1
        d, u = heapq.heappop(heaps[side])
        if settled[side][u]:
            continue
        settled[side][u] = True
        other = 1 - side
        if np.isfinite(dist[other][u]) and d + dist[other][u] < best:
            best = d + dist[other][u]
            meet = u
        arcs = graph.out_edges[u] if side == 0 else graph.in_edges[u]
        for e in arcs:
            v = int(graph.heads[e]) if side == 0 else int(graph.tails[e])
            nd = d + c[e]
            if not settled[side][v]:
                if nd < dist[side][v]:
                    dist[side][v] = nd
                    link[side][v] = e
                    heapq.heappush(heaps[side], (nd, v))
                elif nd == dist[side][v] and (link[side][v] < 0 or e < link[side][v]):
                    link[side][v] = e
            if np.isfinite(dist[other][v]) and min(nd, dist[side][v]) + dist[other][v] < best:
                best = min(nd, dist[side][v]) + dist[other][v]
                meet = v

    if meet < 0:
        return None
    edges = []
    node = meet
    while node != src:
        e = int(link[0][node])
        edges.append(e)
        node = int(graph.tails[e])
    edges.reverse()
    node = meet
    while node != dst:
        e = int(link[1][node])
        edges.append(e)
        node = int(graph.heads[e])
    return Path(_splice_cycles(graph, edges)), float(best)


def constrained_sp(graph: IntervalDigraph, costs, constraint: PathConstraint):
    """Cheapest s-t path honoring the forced prefix and the forbidden arcs.

    The completion search starts at the end of the prefix and may not
    revisit any earlier prefix node.  Returns None when no such path exists.
    """
    c = _check_costs(graph, costs)
    constraint.validate(graph)
    chain_value = float(sum(c[e] for e in constraint.in_chain))
    start = constraint.chain_end(graph)
    if start == graph.target:
        return Path(constraint.in_chain), chain_value
    banned_nodes = frozenset(constraint.chain_nodes(graph)[:-1])
    dist, pred = _settle_all(graph, c, start, constraint.out_set, banned_nodes, graph.target)
    if not np.isfinite(dist[graph.target]):
        return None
    tail = _walk_back(graph, pred, start, graph.target)
    return Path(constraint.in_chain + tail.edges), chain_value + float(dist[graph.target])


def two_unit_min_flow(graph: IntervalDigraph, lo_costs, hi_costs, constraint: PathConstraint | None = None):
    """Cheapest way to route two units from source to target, priced per use.

    A free arc costs lo on first use and hi on the second; arcs forced by
    the constraint cost hi on both uses, forbidden arcs lo on both.  Solved
    as two successive shortest path augmentations with Dijkstra on reduced
    costs, so the second pass may cancel the first.  Returns the total cost,
    or None when the target is unreachable.
    """
    lo = _check_costs(graph, lo_costs)
    hi_arr = _check_costs(graph, hi_costs)
    if (hi_arr < lo).any():
        raise ValueError("per-arc second-use cost below first-use cost")
    first = np.array(lo)
    second = np.array(hi_arr)
    if constraint is not None:
        constraint.validate(graph)
        for e in constraint.in_chain:
            first[e] = hi_arr[e]
        for e in constraint.out_set:
            second[e] = lo[e]

    dist, pred = _settle_all(graph, first, graph.source, frozenset(), frozenset(), None)
    if not np.isfinite(dist[graph.target]):
        return None
    used = set(_walk_back(graph, pred, graph.source, graph.target).edges)

    # second augmentation on the residual graph, with potentials from pass one
    n = graph.node_count
    res: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for e in range(graph.m):
        u, v = int(graph.tails[e]), int(graph.heads[e])
        if not (np.isfinite(dist[u]) and np.isfinite(dist[v])):
            continue
        if e in used:
            res[u].append((v, max(second[e] + dist[u] - dist[v], 0.0)))
            res[v].append((u, 0.0))  # cancel the first unit; reduced cost is tight
        else:
            res[u].append((v, max(first[e] + dist[u] - dist[v], 0.0)))
    rdist = np.full(n, np.inf)
    rdist[graph.source] = 0.0
    done = np.zeros(n, dtype=bool)
    heap = [(0.0, graph.source)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        if u == graph.target:
            break
        for v, w in res[u]:
            nd = d + w
            if not done[v] and nd < rdist[v]:
                rdist[v] = nd
                heapq.heappush(heap, (nd, v))
    if not np.isfinite(rdist[graph.target]):
        return None
    return float(2.0 * dist[graph.target] + rdist[graph.target])


def order_path_edges(graph: IntervalDigraph, members: frozenset[int]) -> Path:
    """Rebuild traversal order from the arc set of a simple s-t path."""
    by_tail: dict[int, int] = {}
    for e in members:
        u = int(graph.tails[e])
        if u in by_tail:
            raise ValueError("arc set leaves a node twice; not a simple path")
        by_tail[u] = e
    edges = []
    node = graph.source
    while node != graph.target:
        if node not in by_tail:
            raise ValueError("arc set does not connect source to target")
        e = by_tail.pop(node)
        edges.append(e)
        node = int(graph.heads[e])
    if by_tail:
        raise ValueError("arc set has leftovers beyond the s-t path")
    return Path(tuple(edges))


class ShortestPathOracle:
    """Standard-problem oracle over the graph's simple s-t paths.

    Satisfies the oracle contract used by the game engine: n is the arc
    count and solve returns an optimal path for any nonnegative costs,
    deterministically under ties.
    """

    def __init__(self, graph: IntervalDigraph):
        self.graph = graph
        self.n = graph.m

    def solve_path(self, costs, restriction: PathConstraint | None = None) -> tuple[Path, float]:
        if restriction is None:
            found = dijkstra(self.graph, costs)
        else:
            found = constrained_sp(self.graph, costs, restriction)
        if found is None:
            from .double_oracle import NoFeasibleSolution

            raise NoFeasibleSolution("no path satisfies the restriction")
        return found

    def solve(self, costs, restriction: PathConstraint | None = None) -> tuple[SolutionIndicator, float]:
        path, value = self.solve_path(costs, restriction)
        return path.indicator(), value


def sp_oracle(graph: IntervalDigraph) -> ShortestPathOracle:
    """Adapter from an interval digraph to the standard-problem oracle contract."""
    return ShortestPathOracle(graph)
