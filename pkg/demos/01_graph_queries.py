"""Loading a dependency graph and asking questions of it.

Run with ``python demos/01_graph_queries.py``.
"""

from pathlib import Path

from termdag import load_graph
from termdag.graph import CycleError, count_paths, neighbors, reachable
from termdag.parsers import parse_edge_list, parse_json, to_json

DATA = Path(__file__).parent / "data"

# %% Load a DOT file. Edge ``a -> b`` reads "a depends on b".
g = load_graph(DATA / "packages.dot")
print(f"{len(g)} packages, {len(g.edges)} dependency edges")
print("topological order:", " ".join(g.topological_order()))

# %% One hop: who uses zlib, and what does python need directly?
nb = neighbors(g, "zlib")
print("\nzlib is used directly by:", sorted(nb.dependents))
print("python depends directly on:", sorted(neighbors(g, "python").dependencies))

# %% Transitive view. Everything upstream of readline is affected when it changes.
rs = reachable(g, "readline")
print("\nreadline affects:", sorted(rs.ancestors))
print("readline needs:", sorted(rs.descendants))
print("edges on those paths:", len(rs.path_edges))

# %% Counting routes. Several chains lead from the application to readline.
print("\npaths viewer -> readline:", count_paths(g, "viewer", "readline"))
print("paths readline -> viewer:", count_paths(g, "readline", "viewer"))

# %% The same graph in the other formats.
again = parse_json(to_json(g))
print("\nJSON round trip equal:", again == g)

chain = parse_edge_list("app -> lib\nlib -> libc\n# comments are fine\n")
print("edge list:", chain.edges)

# %% Cycles are rejected with a witness.
try:
    parse_edge_list("a b\nb c\nc a")
except CycleError as exc:
    print("\nrejected:", exc)
