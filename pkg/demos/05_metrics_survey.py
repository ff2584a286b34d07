"""Layout statistics over a batch of random graphs.

``termdag --metrics`` prints the same record per file; this aggregates it
for generated graphs so the shape of the numbers is visible.
"""

import numpy as np

from termdag.cli import MetricsReport
from termdag.generate import random_dag_with_edges
from termdag.render import draw

rng = np.random.default_rng(7)
reports = []
for _ in range(60):
    n = int(rng.integers(5, 51))
    m = int(n * rng.choice([0.8, 1.2, 1.6, 2.0]))
    reports.append(MetricsReport.from_drawing(draw(random_dag_with_edges(n, m, seed=int(rng.integers(1 << 30))))))

# %% Table of the per-graph numbers.
cols = ["node_count", "edge_count", "layer_count", "grid_rows", "grid_cols", "crossing_count", "max_bracket_length"]
table = np.array([[getattr(r, c) for c in cols] for r in reports])
print(f"{'metric':20s} {'min':>6s} {'median':>7s} {'mean':>7s} {'max':>6s}")
for c, column in zip(cols, table.T):
    print(f"{c:20s} {column.min():6d} {np.median(column):7.1f} {column.mean():7.2f} {column.max():6d}")

# %% How often labels overflow into brackets.
counts = np.bincount(table[:, cols.index("max_bracket_length")])
print("\nmax bracket length histogram:")
for k, count in enumerate(counts):
    print(f"  {k:2d} {'#' * int(count)}")

# %% Grid size against graph size.
nodes, area = table[:, 0], table[:, 3] * table[:, 4]
print("\ncorrelation of node count with grid area: %.2f" % np.corrcoef(nodes, area)[0, 1])

print("\none record:", reports[0].format("kv"))
