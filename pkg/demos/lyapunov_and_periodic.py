"""
Lyapunov exponents along periodic signals
=========================================

For a periodic signal the exponent is exact, ``log rho(S_w) / |w|``.  The
finite-horizon estimate along the same signal converges to it.  The table
at the end lists, per period length, the best spectral radius root and
the best norm root over periodic words.  Whether those two sequences share
a limit is an open question; the table only shows what happens.
"""

import numpy as np

from cjsr import Constraint, Cycle, SwitchedSystem, exponent_along, question1_experiment

A0 = np.array([[1.0, 1.0], [0.0, 1.0]])
A1 = np.array([[1.0, 0.0], [1.0, 1.0]])
pair = SwitchedSystem.from_matrices([A0, A1])

for horizon in (8, 64, 512):
    e = exponent_along(pair, Cycle((0, 1)), horizon)
    print(f"horizon {horizon:4d}: exact {e.chi_hat:.6f}  finite {e.chi_finite:.6f}  from x0 {e.chi_x0:.6f}")

# %%
rng = np.random.default_rng(11)
system = SwitchedSystem.from_matrices(rng.uniform(-1, 1, (2, 3, 3)))
for row in question1_experiment(system, Constraint.sft([[1, 1], [1, 0]]), 10):
    print(f"n={row.n:2d}  count={row.count:3d}  rho^(1/n)={row.rho_root:.6f}  |.|^(1/n)={row.norm_root:.6f}")
