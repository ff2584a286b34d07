"""Package dependency graph model and topological queries.

An edge ``(a, b)`` means *a depends on b*; ``b`` is drawn below ``a``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

Edge = tuple[str, str]


class GraphError(ValueError):
    """Raised for structurally invalid graphs."""


class CycleError(GraphError):
    """Raised when the input contains a directed cycle.

    ``cycle`` holds a witness path whose first and last entries are equal,
    e.g. ``["a", "b", "a"]``.
    """

    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        super().__init__("cycle detected: " + " -> ".join(cycle))


class UnknownNodeError(GraphError, KeyError):
    def __init__(self, node: str):
        self.node = node
        super().__init__(f"unknown node id: {node!r}")

    def __str__(self) -> str:
        return self.args[0]


class PackageGraph:
    """An immutable, labeled DAG with deterministic iteration order.

    Nodes and edges keep their insertion order. Duplicate edges are
    collapsed; self-loops, dangling endpoints and cycles raise.
    """

    def __init__(self, nodes: Iterable[tuple[str, str | None]] = (),
                 edges: Iterable[Edge] = ()):
        labels: dict[str, str] = {}
        for node_id, label in nodes:
            if node_id in labels:
                raise GraphError(f"duplicate node id: {node_id!r}")
            labels[node_id] = node_id if label is None else label

        seen: set[Edge] = set()
        edge_list: list[Edge] = []
        succ: dict[str, list[str]] = {n: [] for n in labels}
        pred: dict[str, list[str]] = {n: [] for n in labels}
        for source, target in edges:
            for end in (source, target):
                if end not in labels:
                    raise GraphError(f"edge ({source!r}, {target!r}) references undeclared node {end!r}")
            if source == target:
                raise GraphError(f"self-loop on node {source!r}")
            if (source, target) in seen:
                continue
            seen.add((source, target))
            edge_list.append((source, target))
            succ[source].append(target)
            pred[target].append(source)

        self._labels = labels
        self._edges = tuple(edge_list)
        self._edge_set = frozenset(seen)
        self._succ = {n: tuple(v) for n, v in succ.items()}
        self._pred = {n: tuple(v) for n, v in pred.items()}
        self._topo = self._toposort()

    def _toposort(self) -> tuple[str, ...]:
        indeg = {n: len(p) for n, p in self._pred.items()}
        queue = deque(n for n in self._labels if indeg[n] == 0)
        order = []
        while queue:
            n = queue.popleft()
            order.append(n)
            for m in self._succ[n]:
                indeg[m] -= 1
                if indeg[m] == 0:
                    queue.append(m)
        if len(order) != len(self._labels):
            raise CycleError(self._find_cycle({n for n in self._labels if indeg[n] > 0}))
        return tuple(order)

    def _find_cycle(self, remaining: set[str]) -> list[str]:
        # every node left after Kahn's algorithm has a predecessor that is also left,
        # so walking predecessors must revisit a node
        start = next(n for n in self._labels if n in remaining)
        walk = [start]
        index = {start: 0}
        node = start
        while True:
            node = next(p for p in self._pred[node] if p in remaining)
            if node in index:
                loop = walk[index[node]:] + [node]
                loop.reverse()
                return loop
            index[node] = len(walk)
            walk.append(node)

    @property
    def nodes(self) -> tuple[str, ...]:
        return tuple(self._labels)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    def label(self, node: str) -> str:
        self._check(node)
        return self._labels[node]

    @property
    def labels(self) -> dict[str, str]:
        return dict(self._labels)

    def successors(self, node: str) -> tuple[str, ...]:
        """Direct dependencies of ``node``."""
        self._check(node)
        return self._succ[node]

    def predecessors(self, node: str) -> tuple[str, ...]:
        """Direct dependents of ``node``."""
        self._check(node)
        return self._pred[node]

    def topological_order(self) -> tuple[str, ...]:
        return self._topo

    def has_edge(self, source: str, target: str) -> bool:
        return (source, target) in self._edge_set

    def _check(self, node: str) -> None:
        if node not in self._labels:
            raise UnknownNodeError(node)

    def __contains__(self, node: object) -> bool:
        return node in self._labels

    def __iter__(self) -> Iterator[str]:
        return iter(self._labels)

    def __len__(self) -> int:
        return len(self._labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PackageGraph):
            return NotImplemented
        return self._labels == other._labels and self._edges == other._edges and \
            list(self._labels) == list(other._labels)

    def __repr__(self) -> str:
        return f"PackageGraph({len(self._labels)} nodes, {len(self._edges)} edges)"


@dataclass(frozen=True)
class NeighborSets:
    dependents: frozenset[str]
    dependencies: frozenset[str]


@dataclass(frozen=True)
class ReachabilitySets:
    ancestors: frozenset[str]
    descendants: frozenset[str]
    path_edges: frozenset[Edge]


def neighbors(g: PackageGraph, n: str) -> NeighborSets:
    return NeighborSets(frozenset(g.predecessors(n)), frozenset(g.successors(n)))


def _closure(start: str, step) -> set[str]:
    seen: set[str] = set()
    stack = list(step(start))
    while stack:
        m = stack.pop()
        if m not in seen:
            seen.add(m)
            stack.extend(step(m))
    return seen


def reachable(g: PackageGraph, n: str) -> ReachabilitySets:
    """Ancestors, descendants and every edge on a path through ``n``."""
    ancestors = _closure(n, g.predecessors)
    descendants = _closure(n, g.successors)
    up = ancestors | {n}
    down = descendants | {n}
    path_edges = frozenset(
        (s, t) for s, t in g.edges
        if (s in ancestors and t in up) or (s in down and t in descendants)
    )
    return ReachabilitySets(frozenset(ancestors), frozenset(descendants), path_edges)


def count_paths(g: PackageGraph, source: str, target: str) -> int:
    """Number of distinct directed paths from ``source`` to ``target``."""
    g._check(source)
    g._check(target)
    paths = {target: 1}
    for node in reversed(g.topological_order()):
        if node != target:
            paths[node] = sum(paths[m] for m in g.successors(node))
    return paths[source]
