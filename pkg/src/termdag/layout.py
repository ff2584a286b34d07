"""Deterministic layered layout.

The pipeline is the usual one for hierarchical drawings: longest-path
layering, dummy vertices on every layer a long edge passes, barycenter
crossing reduction, then horizontal coordinates that favour vertical
segments. Roots sit on layer 0 at ``y = 0`` and ``y`` grows downward one
unit per layer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from statistics import median
from typing import Union

from termdag.graph import Edge, PackageGraph

SWEEPS = 4
MIN_GAP = 1.0


@dataclass(frozen=True, order=True)
class Dummy:
    """Placeholder for ``edge`` on an intermediate ``layer``."""

    source: str
    target: str
    layer: int

    @property
    def edge(self) -> Edge:
        return (self.source, self.target)

    def __str__(self) -> str:
        return f"<{self.source}->{self.target}@{self.layer}>"


Vertex = Union[str, Dummy]


def vertex_key(v: Vertex) -> tuple:
    """Total order used for tie-breaks: real nodes by id, then dummies."""
    if isinstance(v, Dummy):
        return (1, v.source, v.target, v.layer)
    return (0, v, "", 0)


@dataclass(frozen=True)
class Segment:
    """Straight piece of an edge between consecutive layers, top to bottom."""

    x1: float
    y1: float
    x2: float
    y2: float
    edge: Edge
    upper: Vertex
    lower: Vertex

    @property
    def vertical(self) -> bool:
        return self.x1 == self.x2


@dataclass
class AugmentedGraph:
    graph: PackageGraph
    layer: dict[Vertex, int]
    dummies: list[Dummy]
    chains: dict[Edge, list[Vertex]]
    down: dict[Vertex, list[Vertex]] = field(default_factory=dict)
    up: dict[Vertex, list[Vertex]] = field(default_factory=dict)

    @property
    def layer_count(self) -> int:
        return max(self.layer.values(), default=-1) + 1

    def vertices(self) -> list[Vertex]:
        return list(self.graph.nodes) + list(self.dummies)


@dataclass
class LayeredLayout:
    graph: PackageGraph
    positions: dict[Vertex, tuple[float, float]]
    segments: dict[Edge, list[Segment]]
    layers: list[list[Vertex]]

    @property
    def max_x(self) -> float:
        return max((x for x, _ in self.positions.values()), default=0.0)

    @property
    def dummies(self) -> list[Dummy]:
        return [v for layer in self.layers for v in layer if isinstance(v, Dummy)]

    def all_segments(self) -> list[Segment]:
        return [s for e in self.graph.edges for s in self.segments[e]]

    def in_segments(self, v: Vertex) -> list[Segment]:
        return [s for s in self.all_segments() if s.lower == v]


def assign_layers(g: PackageGraph) -> dict[str, int]:
    """Longest-path layering: a node sits one below its deepest dependent."""
    layer: dict[str, int] = {}
    for n in g.topological_order():
        layer[n] = max((layer[p] + 1 for p in g.predecessors(n)), default=0)
    return {n: layer[n] for n in g.nodes}


def insert_dummies(g: PackageGraph, layers: dict[str, int]) -> AugmentedGraph:
    layer: dict[Vertex, int] = dict(layers)
    dummies: list[Dummy] = []
    chains: dict[Edge, list[Vertex]] = {}
    down: dict[Vertex, list[Vertex]] = {n: [] for n in g.nodes}
    up: dict[Vertex, list[Vertex]] = {n: [] for n in g.nodes}
    for s, t in g.edges:
        chain: list[Vertex] = [s]
        for k in range(layers[s] + 1, layers[t]):
            d = Dummy(s, t, k)
            dummies.append(d)
            layer[d] = k
            down[d], up[d] = [], []
            chain.append(d)
        chain.append(t)
        chains[(s, t)] = chain
        for a, b in zip(chain, chain[1:]):
            down[a].append(b)
            up[b].append(a)
    return AugmentedGraph(g, layer, dummies, chains, down, up)


def count_crossings(ag: AugmentedGraph, orderings: list[list[Vertex]]) -> int:
    """Crossings between unit-span segments of adjacent layers."""
    total = 0
    for i in range(len(orderings) - 1):
        lower = {v: k for k, v in enumerate(orderings[i + 1])}
        pairs = [(a, lower[b]) for a, v in enumerate(orderings[i]) for b in ag.down[v]]
        pairs.sort()
        for j, (a1, b1) in enumerate(pairs):
            for a2, b2 in pairs[j + 1:]:
                if a2 > a1 and b2 < b1:
                    total += 1
    return total


def _barycenter_sort(layer: list[Vertex], fixed: list[Vertex],
                     nbrs: dict[Vertex, list[Vertex]]) -> list[Vertex]:
    pos = {v: k for k, v in enumerate(fixed)}

    def key(item):
        k, v = item
        ps = [pos[u] for u in nbrs[v]]
        bary = sum(ps) / len(ps) if ps else float(k)
        return (bary, vertex_key(v))

    return [v for _, v in sorted(enumerate(layer), key=key)]


def reduce_crossings(ag: AugmentedGraph) -> list[list[Vertex]]:
    """Barycenter sweeps from an id-sorted start, keeping the best ordering seen."""
    orderings: list[list[Vertex]] = [[] for _ in range(ag.layer_count)]
    for v in sorted(ag.vertices(), key=vertex_key):
        orderings[ag.layer[v]].append(v)

    best = [list(o) for o in orderings]
    best_count = count_crossings(ag, best)
    for _ in range(SWEEPS):
        if best_count == 0:
            break
        for i in range(1, len(orderings)):
            orderings[i] = _barycenter_sort(orderings[i], orderings[i - 1], ag.up)
        count = count_crossings(ag, orderings)
        if count < best_count:
            best, best_count = [list(o) for o in orderings], count
        for i in range(len(orderings) - 2, -1, -1):
            orderings[i] = _barycenter_sort(orderings[i], orderings[i + 1], ag.down)
        count = count_crossings(ag, orderings)
        if count < best_count:
            best, best_count = [list(o) for o in orderings], count
    return best


def _priority(v: Vertex, nbrs: list[Vertex]) -> int:
    # dummy chains straighten first, then nodes with many connections
    if isinstance(v, Dummy):
        return 10**6 + sum(isinstance(u, Dummy) for u in nbrs)
    return len(nbrs)


def _place_layer(layer: list[Vertex], x: dict[Vertex, float],
                 nbrs: dict[Vertex, list[Vertex]]) -> None:
    """Move each vertex toward the median of its neighbours in priority order.

    A vertex may push lower-priority vertices aside but never a vertex that
    has already been placed, and never closer than MIN_GAP.
    """
    n = len(layer)
    xs = [x[v] for v in layer]
    fixed = [False] * n
    order = sorted(range(n), key=lambda i: (-_priority(layer[i], nbrs[layer[i]]), i))
    for i in order:
        ref = [x[u] for u in nbrs[layer[i]]]
        if ref:
            target = float(median(ref))
            if target > xs[i]:
                for j in range(i + 1, n):
                    if fixed[j]:
                        target = min(target, xs[j] - MIN_GAP * (j - i))
                        break
                if target > xs[i]:
                    xs[i] = target
                    for j in range(i + 1, n):
                        if xs[j] >= xs[j - 1] + MIN_GAP:
                            break
                        xs[j] = xs[j - 1] + MIN_GAP
            elif target < xs[i]:
                for j in range(i - 1, -1, -1):
                    if fixed[j]:
                        target = max(target, xs[j] + MIN_GAP * (i - j))
                        break
                if target < xs[i]:
                    xs[i] = target
                    for j in range(i - 1, -1, -1):
                        if xs[j] <= xs[j + 1] - MIN_GAP:
                            break
                        xs[j] = xs[j + 1] - MIN_GAP
        fixed[i] = True
    for v, value in zip(layer, xs):
        x[v] = value


def assign_coordinates(ag: AugmentedGraph, orderings: list[list[Vertex]]) -> LayeredLayout:
    """Unit layer spacing; x by priority placement toward neighbour medians.

    Sweeps alternate top-down (aligning under dependents) and bottom-up
    (centering over dependencies), finishing top-down so that single-parent
    nodes and dummy chains end up vertical.
    """
    x: dict[Vertex, float] = {v: float(k) for layer in orderings for k, v in enumerate(layer)}
    for direction in ("down", "up", "down"):
        if direction == "down":
            for layer in orderings[1:]:
                _place_layer(layer, x, ag.up)
        else:
            for layer in reversed(orderings[:-1]):
                _place_layer(layer, x, ag.down)

    shift = min(x.values(), default=0.0)
    positions = {v: (x[v] - shift, float(ag.layer[v])) for layer in orderings for v in layer}

    segments: dict[Edge, list[Segment]] = {}
    for e in ag.graph.edges:
        chain = ag.chains[e]
        segs = []
        for a, b in zip(chain, chain[1:]):
            (x1, y1), (x2, y2) = positions[a], positions[b]
            segs.append(Segment(x1, y1, x2, y2, e, a, b))
        segments[e] = segs
    return LayeredLayout(ag.graph, positions, segments, [list(o) for o in orderings])


def layout(g: PackageGraph) -> LayeredLayout:
    ag = insert_dummies(g, assign_layers(g))
    return assign_coordinates(ag, reduce_crossings(ag))
