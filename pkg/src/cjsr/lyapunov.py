"""Lyapunov exponents along switching signals and over periodic signals."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import constraint as cons
from .bounds import cycle_lower_bound
from .constraint import Constraint, Cycle, Word
from .errors import InadmissibleSignal
from .matcore import NormKind, norms, spectral_radii, spectral_radius
from .stability import log_norm_trace
from .system import SwitchedSystem, product_along_word

__all__ = [
    "ExponentEstimate",
    "Q1Row",
    "exponent_along",
    "best_periodic_exponent",
    "question1_experiment",
    "random_admissible_signal",
    "dominant_direction",
]


@dataclass(frozen=True)
class ExponentEstimate:
    """Exponent of ``|S_{i_n}...S_{i_1}|`` along one signal.

    For a cycle ``chi_hat`` is the exact value ``log rho(S_w) / |w|`` and
    ``chi_finite`` the finite-horizon estimate; for a finite word both are
    the finite-horizon estimate.  ``chi_x0`` is the matching estimate for
    the trajectory of ``x0``, so ``chi_x0 <= chi_finite`` always.
    """

    signal: Cycle | Word
    horizon: int
    chi_hat: float
    chi_finite: float
    exact: bool
    chi_x0: float | None = None
    x0: np.ndarray | None = None


def dominant_direction(a, squarings: int = 10) -> np.ndarray:
    """Leading right singular vector of ``a**(2**squarings)``.

    Powers are renormalized after every squaring.  For a nilpotent matrix the
    power vanishes and the first basis vector is returned.
    """
    b = np.asarray(a, dtype=np.complex128)
    d = b.shape[0]
    for _ in range(squarings + 1):
        s = np.linalg.norm(b)
        if s == 0.0:
            e = np.zeros(d, dtype=np.complex128)
            e[0] = 1.0
            return e
        b = b / s
        b = b @ b
    if np.linalg.norm(b) == 0.0:
        e = np.zeros(d, dtype=np.complex128)
        e[0] = 1.0
        return e
    _, _, vh = np.linalg.svd(b)
    return vh[0].conj()


def exponent_along(
    sys: SwitchedSystem,
    signal: Cycle | Sequence[int],
    horizon: int,
    c: Constraint | None = None,
    x0=None,
) -> ExponentEstimate:
    """Lyapunov exponent estimate along a periodic or finite signal.

    A :class:`Cycle` is read as its infinite repetition; its exponent is
    exact.  When `x0` is omitted for a cycle, the dominant direction of the
    cycle product is used, which realizes the signal's exponent.  A finite
    word is followed for ``min(len(word), horizon)`` steps.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if isinstance(signal, Cycle):
        if c is not None and not cons.is_periodic(c, signal.word):
            raise InadmissibleSignal(f"cycle {signal.word} is not an admissible periodic signal")
        n = len(signal)
        rho = spectral_radius(product_along_word(sys, signal.word))
        chi = math.log(rho) / n if rho > 0 else -math.inf
        letters = signal.signal(horizon)
        if x0 is None:
            x0 = dominant_direction(product_along_word(sys, signal.word))
        exact = True
    else:
        letters = tuple(int(i) for i in signal)[:horizon]
        if not letters:
            raise ValueError("empty signal")
        if c is not None and not cons.is_admissible(c, letters):
            raise InadmissibleSignal(f"signal {letters} is not admissible")
        exact = False
    steps = len(letters)
    finite = log_norm_trace(sys, letters)[-1] / steps
    chi_x0 = None
    if x0 is not None:
        x0 = np.asarray(x0, dtype=np.complex128)
        x0 = x0 / np.linalg.norm(x0)
        chi_x0 = log_norm_trace(sys, letters, x0)[-1] / steps
    if not exact:
        chi = finite
    sig = signal if isinstance(signal, Cycle) else letters
    return ExponentEstimate(sig, steps, chi, finite, exact, chi_x0, x0)


def best_periodic_exponent(sys: SwitchedSystem, c: Constraint, max_len: int) -> tuple:
    """Largest exact exponent over periodic signals of period <= `max_len`.

    Equals the log of :func:`cycle_lower_bound`; returns
    ``(chi_star, witness_cycle)`` with ``-inf`` when every periodic product
    is nilpotent.
    """
    lb, witness = cycle_lower_bound(sys, c, max_len)
    return (math.log(lb) if lb > 0 else -math.inf), witness


@dataclass(frozen=True)
class Q1Row:
    n: int
    count: int
    rho_root: float | None
    norm_root: float | None
    rho_witness: Word | None = None
    norm_witness: Word | None = None

    @property
    def empty(self) -> bool:
        return self.count == 0


def question1_experiment(
    sys: SwitchedSystem, c: Constraint, max_len: int, kind=NormKind.SPECTRAL2
) -> list:
    """Per period length n, the largest ``rho(S_w)^(1/n)`` and
    ``|S_w|^(1/n)`` over periodic words of length n.

    Observational only: whether the two columns share a limit is an open
    question.  Rows with no periodic words have ``count == 0`` and None
    values.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    rows = []
    for n in range(1, max_len + 1):
        words = list(cons.periodic_words(c, n))
        if not words:
            rows.append(Q1Row(n, 0, None, None))
            continue
        w = np.array(words, dtype=np.int64)
        prods = sys.matrices[w[:, 0]]
        for j in range(1, n):
            prods = np.matmul(sys.matrices[w[:, j]], prods)
        radii = spectral_radii(prods)
        nrm = norms(prods, kind)
        i, k = int(np.argmax(radii)), int(np.argmax(nrm))
        root = lambda v: float(v) ** (1.0 / n) if v > 0 else 0.0  # noqa: E731
        rows.append(Q1Row(n, len(words), root(radii[i]), root(nrm[k]), words[i], words[k]))
    return rows


def random_admissible_signal(c: Constraint, length: int, seed=None) -> Word:
    """Admissible word from a uniform random walk on the constraint graph.

    The first letter is uniform over live letters and each next letter
    uniform over allowed successors.  For orbit constraints an orbit and a
    phase are drawn uniformly instead.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    rng = np.random.default_rng(seed)
    if c.kind == cons.ORBITS:
        roots = c.roots
        r = roots[int(rng.integers(len(roots)))]
        s = int(rng.integers(len(r)))
        rot = r[s:] + r[:s]
        return (rot * (length // len(r) + 1))[:length]
    live = c.live_transition()
    letters = c.letters()
    w = [letters[int(rng.integers(len(letters)))]]
    while len(w) < length:
        succ = np.flatnonzero(live[w[-1]])
        w.append(int(succ[int(rng.integers(len(succ)))]))
    return tuple(w)
