"""Small graph factories for tests and demos."""

from __future__ import annotations

import random

from termdag.graph import PackageGraph


def diamond() -> PackageGraph:
    """``target`` depends on A and B, which both depend on C."""
    return PackageGraph([(n, None) for n in ("target", "A", "B", "C")],
                        [("target", "A"), ("target", "B"), ("A", "C"), ("B", "C")])


def chain(*names: str) -> PackageGraph:
    names = names or ("a", "b", "c")
    return PackageGraph([(n, None) for n in names], list(zip(names, names[1:])))


def random_dag(n: int, density: float = 0.15, seed: int | None = None,
               max_edges: int | None = None, rooted: bool = False) -> PackageGraph:
    """Random DAG on ``n`` nodes.

    Nodes are shuffled into a hidden topological order and each forward pair
    becomes an edge with probability ``density``. With ``rooted`` a single
    root is added that reaches every former source, like a package and its
    dependency closure.
    """
    rng = random.Random(seed)
    ids = [f"p{i:02d}" for i in range(n)]
    rng.shuffle(ids)
    pairs = [(ids[i], ids[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    if max_edges is not None and len(pairs) > max_edges:
        pairs = sorted(rng.sample(pairs, max_edges), key=lambda e: (ids.index(e[0]), ids.index(e[1])))
    nodes = [(i, None) for i in ids]
    if rooted and n:
        has_parent = {t for _, t in pairs}
        nodes.insert(0, ("root", None))
        pairs = [("root", i) for i in ids if i not in has_parent] + pairs
    return PackageGraph(nodes, pairs)


def random_dag_with_edges(n: int, m: int, seed: int | None = None) -> PackageGraph:
    """Random DAG with exactly ``min(m, n*(n-1)/2)`` edges."""
    rng = random.Random(seed)
    ids = [f"p{i:02d}" for i in range(n)]
    rng.shuffle(ids)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = sorted(rng.sample(pairs, min(m, len(pairs))))
    return PackageGraph([(i, None) for i in ids], [(ids[i], ids[j]) for i, j in chosen])
