"""
Stability certificates and what they promise
============================================

A stable certificate ``(N, lam)`` says that every admissible product of
length ``N`` has norm at most ``lam**N``.  Below we draw random admissible
signals and compare their product norms with that envelope.  Condition (c)
of the equivalence theorem is then checked on a finite range of lengths.
"""

import math

import numpy as np

from cjsr import Constraint, SwitchedSystem, certify, check_condition_c, norm, simulate_decay
from cjsr.lyapunov import random_admissible_signal
from cjsr.stability import decay_slack, envelope_violations

rng = np.random.default_rng(7)
system = SwitchedSystem.from_matrices(0.6 * rng.uniform(-1, 1, (3, 3, 3)))
c = Constraint.sft([[0, 1, 1], [1, 0, 1], [1, 1, 0]])  # no letter twice in a row

v = certify(system, c, max_depth=10, tol=1e-4)
print(v.status.value, "N =", v.N, "lambda =", v.lam, "interval =", (v.lb, v.ub))

# %%
if v.N is not None:
    beta = max(norm(m) for m in system.matrices)
    C = decay_slack(v.N, beta, v.lam)
    worst = 0
    for seed in range(20):
        trace = simulate_decay(system, c, random_admissible_signal(c, 6 * v.N, seed), 6 * v.N)
        worst = max(worst, len(envelope_violations(trace, v.lam, v.N, C)))
    print("envelope violations over 20 signals:", worst)
    print("condition (c):", check_condition_c(system, c, v.N, (v.lam + 1) / 2, 3 * v.N))

# %%
# The decay along one signal, in log scale
trace = simulate_decay(system, c, random_admissible_signal(c, 30, 0), 30)
print(" ".join(f"{x:.2f}" if math.isfinite(x) else "-inf" for _, x in trace[::5]))
