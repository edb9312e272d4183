"""
Depth sweep for a classical pair
================================

``A0 = [[1,1],[0,1]]`` and ``A1 = [[1,0],[1,1]]``.  The cycle ``01`` has
``rho(A1 A0) = (3 + sqrt 5)/2``, so the lower bound is the golden ratio.
The upper bounds ``max |S_w|^(1/n)`` come down to meet it.
"""

import time

import numpy as np

from cjsr import Constraint, SwitchedSystem, depth_sweep, jsr_bounds

A0 = np.array([[1.0, 1.0], [0.0, 1.0]])
A1 = np.array([[1.0, 0.0], [1.0, 1.0]])
pair = SwitchedSystem.from_matrices([A0, A1])
free = Constraint.free(2)
phi = (1 + 5**0.5) / 2

# %%
# Every depth, with and without pruning.  Both give identical rows;
# pruning only visits fewer words.
for prune in (False, True):
    t0 = time.perf_counter()
    rows = list(depth_sweep(pair, free, 14, prune=prune))
    visited = sum(r.visited for r in rows)
    print(f"prune={prune!s:5s} visited={visited:6d}  {time.perf_counter() - t0:.3f}s")
for r in rows[:6]:
    print(f"  n={r.n:2d}  rho_hat_n={r.rho_hat:.12f}  witness={r.witness}")

# %%
report = jsr_bounds(pair, free, max_depth=20)
print(f"[{report.lb:.12f}, {report.ub:.12f}]  phi={phi:.12f}  cycle={report.lb_witness.word}")
