from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .constraint import Alphabet
from .matcore import as_cmatrix

__all__ = ["SwitchedSystem", "product_along_word"]


@dataclass(frozen=True, eq=False)
class SwitchedSystem:
    """A finite family of ``d x d`` complex matrices indexed by an alphabet.

    ``matrices`` is a read-only ``(k, d, d)`` complex stack; letter ``i`` of
    ``alphabet`` selects ``matrices[i]``.
    """

    alphabet: Alphabet
    matrices: np.ndarray

    def __post_init__(self):
        mats = [as_cmatrix(m) for m in self.matrices]
        if len(mats) != self.alphabet.size:
            raise ValueError(f"{len(mats)} matrices for {self.alphabet.size} letters")
        d = mats[0].shape[0]
        if any(m.shape != (d, d) for m in mats):
            raise ValueError("all matrices must share one dimension")
        stack = np.stack(mats)
        stack.setflags(write=False)
        object.__setattr__(self, "matrices", stack)

    @classmethod
    def from_matrices(cls, matrices, labels: Sequence[str] | None = None) -> "SwitchedSystem":
        matrices = list(matrices)
        alphabet = Alphabet(tuple(labels)) if labels is not None else Alphabet.of_size(len(matrices))
        return cls(alphabet, matrices)

    @property
    def dim(self) -> int:
        return self.matrices.shape[1]

    @property
    def size(self) -> int:
        return self.matrices.shape[0]

    def scaled(self, c: complex) -> "SwitchedSystem":
        return SwitchedSystem(self.alphabet, self.matrices * c)

    def conjugated(self, p) -> "SwitchedSystem":
        """The system ``P^-1 S_i P``."""
        p = np.asarray(p, dtype=np.complex128)
        pinv = np.linalg.inv(p)
        return SwitchedSystem(self.alphabet, pinv @ self.matrices @ p)


def product_along_word(sys: SwitchedSystem, w: Sequence[int]) -> np.ndarray:
    """``S_w = S_{i_n} ... S_{i_1}``: the last letter is the leftmost factor."""
    w = tuple(w)
    if not w:
        raise ValueError("empty word")
    mats = sys.matrices
    p = mats[w[0]]
    for i in w[1:]:
        p = np.matmul(mats[i], p)
    return np.array(p)
