"""Step by step through the layered layout.

The layout places dependents above their dependencies, splits long edges
with placeholder vertices, orders each layer to cut crossings, then picks x
coordinates that keep edges vertical where it can.
"""

from pathlib import Path

import numpy as np

from termdag import load_graph
from termdag.layout import (
    assign_coordinates,
    assign_layers,
    count_crossings,
    insert_dummies,
    reduce_crossings,
    vertex_key,
)

g = load_graph(Path(__file__).parent / "data" / "packages.dot")

# %% Longest-path layering.
layers = assign_layers(g)
for k in range(max(layers.values()) + 1):
    print(f"layer {k}: {[n for n in g.nodes if layers[n] == k]}")

# %% Edges that skip layers get one placeholder per layer crossed.
ag = insert_dummies(g, layers)
print(f"\n{len(ag.dummies)} placeholders:", ", ".join(map(str, ag.dummies)))

# %% Crossing reduction, compared with plain id order.
initial = [[] for _ in range(ag.layer_count)]
for v in sorted(ag.vertices(), key=vertex_key):
    initial[ag.layer[v]].append(v)
orderings = reduce_crossings(ag)
print(f"\ncrossings: id order {count_crossings(ag, initial)}, after sweeps {count_crossings(ag, orderings)}")

# %% Coordinates. Collect them into an array to look at the spread.
lay = assign_coordinates(ag, orderings)
real = np.array([lay.positions[n] for n in g.nodes])
print("\nreal nodes (x, y):")
for n, (x, y) in zip(g.nodes, real):
    print(f"  {n:9s} {x:5.1f} {y:4.1f}")
print("width", real[:, 0].max(), "height", real[:, 1].max())

segs = lay.all_segments()
vertical = sum(s.vertical for s in segs)
print(f"\n{vertical} of {len(segs)} segments are vertical")
