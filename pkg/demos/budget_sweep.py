"""Max cut value as the budget grows, on one bundled 20-vertex instance.

Shows the tree-size cost of the MAX problem and compares the exact value
with the fractional knapsack upper bound.

Run:  python demos/budget_sweep.py
"""

import numpy as np

from budgetcut import bundled_instance, compute_budget, constrained_cut
from budgetcut.bnb import Limits
from budgetcut.bounds import fractional_max_bound, ranked_edges

g = bundled_instance("rnd_20_30_1").graph
edges = ranked_edges(g)
ps = np.array([0.25, 0.5, 0.75, 1.0, 2.0, 4.0, 8.0])

print(f"{'p':>5} {'T':>4} {'value':>6} {'bound':>7} {'nodes':>7} {'proven':>7}")
for p in ps:
    T = compute_budget(g, p).T
    r = constrained_cut(g, T, "max", limits=Limits(max_seconds=20))
    value = "-" if r.optimal is None else r.optimal.weight
    print(f"{p:5.2f} {T:4d} {value!s:>6} {float(fractional_max_bound(edges, T)):7.1f} "
          f"{r.nodes_explored:7d} {str(r.proven):>7}")
