"""
Constrained versus free switching
=================================

Two diagonal projectors.  Switched freely, the letter ``0`` can repeat
forever and nothing decays.  Forced to alternate, every product of length
two is zero.  The per-depth spectral radius at depth one still reads 1,
which is why it never serves as a lower bound under a constraint.
"""

import numpy as np

from cjsr import Constraint, SwitchedSystem, certify, jsr_bounds

S0 = np.array([[1.0, 0.0], [0.0, 0.0]])
S1 = np.array([[0.0, 0.0], [0.0, 1.0]])
system = SwitchedSystem.from_matrices([S0, S1])

alternating = Constraint.sft([[0, 1], [1, 0]])
free = Constraint.free(2)

# %%
# Alternating: the interval collapses to [0, 0] at depth 2
report = jsr_bounds(system, alternating, tol=0)
for row in report.rows:
    print(f"n={row.n}  rho_hat={row.rho_hat:g}  rho={row.rho:g}  zero_product={row.zero_product}")
print("interval:", report.lb, report.ub)

# %%
# The verdict flips with the constraint
for name, c in [("alternating", alternating), ("free", free)]:
    v = certify(system, c)
    print(f"{name:12s} {v.status.value:18s} witness={v.witness}")
