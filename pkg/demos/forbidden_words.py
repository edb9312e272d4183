"""
Forbidden words through a higher-block recoding
===============================================

Forbidding ``11`` gives the golden-mean shift.  The recoding turns it into
an SFT over blocks; bounds run on the lifted system and witnesses project
back to the original letters.
"""

import numpy as np

from cjsr import Constraint, SwitchedSystem, admissible_words, higher_block_recode, jsr_bounds

rec = higher_block_recode(Constraint.free(2), [(1, 1)])
print("blocks:", rec.blocks)
print("transition:\n", rec.constraint.transition)
print("words of length 4:", [rec.project(w) for w in admissible_words(rec.constraint, 4)])

# %%
# Forbidding 000 instead needs blocks of length two
rec3 = higher_block_recode(Constraint.free(2), [(0, 0, 0)])
print("blocks:", rec3.blocks)

# %%
A0 = np.array([[1.0, 1.0], [0.0, 1.0]])
A1 = np.array([[1.0, 0.0], [1.0, 1.0]])
lifted = SwitchedSystem.from_matrices(rec.lift_matrices(np.stack([A0, A1])))
r = jsr_bounds(lifted, rec.constraint, max_depth=16)
print(f"no two 1s in a row: [{r.lb:.9f}, {r.ub:.9f}] via cycle {rec.project(r.lb_witness.word)}")
