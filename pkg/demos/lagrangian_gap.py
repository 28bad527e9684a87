"""How close does the Lagrangian heuristic get to the exact minimum?

Random graphs, three budget levels; compares solve_dual with the exact
branch and bound and prints the duality gap per instance.

Run:  python demos/lagrangian_gap.py
"""

import numpy as np

from budgetcut import compute_budget, constrained_cut, generate_random, solve_dual

rows = []
for seed in range(40):
    inst = generate_random(12, 24, seed)
    g = inst.graph
    for p in ("1/4", "1/2", "3/4"):
        T = compute_budget(g, p).T
        exact = constrained_cut(g, T, "min").optimal
        if exact is None:
            continue
        dual = solve_dual(g, T)
        rows.append((exact.weight, dual.best_primal.weight, float(dual.dual_bound),
                     dual.iterations, dual.proven))

opt, heur, bound, iters, proven = (np.array(c) for c in zip(*rows))
gap = (heur - opt) / opt
print(f"{len(rows)} feasible solves")
print(f"heuristic optimal on {np.mean(heur == opt):.1%}, certified on {np.mean(proven):.1%}")
print(f"mean gap {gap.mean():.3%}, worst gap {gap.max():.3%}")
print(f"dual bound / optimum: mean {np.mean(bound / opt):.3f}, min {np.min(bound / opt):.3f}")
print(f"multiplier probes per solve: mean {iters.mean():.1f}, max {iters.max()}")

# Without harvesting the phase cuts and without local search, only the
# extreme points of the dual search are available.
plain = []
for seed in range(40):
    g = generate_random(12, 24, seed).graph
    T = compute_budget(g, "1/2").T
    r = solve_dual(g, T, harvest=False, refine=False)
    if r.best_primal is not None:
        plain.append(r.best_primal.weight == constrained_cut(g, T, "min").optimal.weight)
print(f"extreme points only: optimal on {np.mean(plain):.1%}")
