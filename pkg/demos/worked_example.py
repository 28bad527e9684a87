"""Walk through the branch-and-bound tree on the four-vertex example.

Run:  python demos/worked_example.py
"""

from budgetcut import bundled_instance, constrained_cut
from budgetcut.bnb import CUT

g = bundled_instance("f4").graph
rho = 5

print("edges (u, v, weight, cost):")
for eid, rec in sorted(g.edge_table.items()):
    print(f"  e{eid}: {rec}")

# The observer sees the search state at every tree node.  We print the
# path of decisions: a plain edge was cut, a bracketed one was shrunk.
def show(state):
    labels = []
    for entry in state.path:
        name = "+".join(f"e{i}" for i in sorted(entry.edge.origin))
        labels.append(name if entry.state == CUT else f"[{name}]")
    print(f"  node: {' '.join(labels) or '(root)':<28} W={state.weight:<3} C={state.cost:<3} R={state.R}")

for sense in ("min", "max"):
    print(f"\n{sense.upper()} cut with budget {rho}")
    report = constrained_cut(g, rho, sense, observer=show)
    cut = report.optimal
    print(f"optimum: weight {cut.weight}, cost {cut.cost}, "
          f"sides {sorted(cut.side_a)} | {sorted(cut.side_b)}, {report.nodes_explored} nodes")

# For MIN the unconstrained minimum cut already fits the budget, so it is
# the starting incumbent and the bound closes the tree at the root.
