"""Lower and upper bounds for the constrained joint spectral radius.

The upper bound is ``min_n rho_hat_n`` where ``rho_hat_n`` is the largest
n-th root of a product norm over admissible words of length n.  Each depth is
searched by a level-synchronous branch and bound over the word tree: a prefix
``u`` of length ``m`` is dropped when ``|S_u| * M[n-m]`` cannot beat the
target, ``M[k]`` being the best known bound on length-k product norms (valid
because every suffix of an admissible word is admissible).

The lower bound comes from periodic admissible words: the repetition of
``w`` is a signal of the set, so ``rho(S_w)^(1/|w|)`` never exceeds the
generalized spectral radius.  Per-depth spectral radii of non-periodic words
give no such guarantee and are reported only as a diagnostic.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from . import constraint as cons
from .constraint import Constraint, Cycle, Word
from .errors import EmptyConstraint
from .matcore import NormKind, norms, spectral_radii
from .system import SwitchedSystem, product_along_word

__all__ = [
    "BoundsConfig",
    "DepthRow",
    "BoundsReport",
    "SwitchedSystem",
    "product_along_word",
    "all_products",
    "rho_hat_n",
    "depth_sweep",
    "rho_n",
    "cycle_lower_bound",
    "jsr_bounds",
    "refine_norm",
]

PRUNE_RTOL = 1e-12
PERIODIC_WORD_BUDGET = 1 << 16


@dataclass(frozen=True)
class BoundsConfig:
    max_depth: int = 12
    max_cycle_len: int = 8
    tol: float = 1e-6
    kind: NormKind = NormKind.SPECTRAL2
    threads: int = 1
    prune: bool = True
    # cap on products evaluated over the whole depth sweep
    max_words: int = 4_000_000
    # rho_n diagnostics are skipped above this many words per depth
    rho_word_cap: int = 1 << 18
    refine_iterations: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", NormKind.parse(self.kind))
        if self.max_depth < 1 or self.max_cycle_len < 1:
            raise ValueError("max_depth and max_cycle_len must be >= 1")
        if self.tol < 0:
            raise ValueError("tol must be >= 0")


@dataclass(frozen=True)
class DepthRow:
    """One depth of the sweep.

    ``rho_hat`` is exact when ``exact`` is true; otherwise the branch and
    bound discarded everything below the lb-based cutoff and ``rho_hat`` is
    that cutoff, still an upper bound.  ``rho`` is None when skipped.
    """

    n: int
    rho_hat: float
    rho: float | None
    visited: int
    pruned: int
    exact: bool
    zero_product: bool
    witness: Word | None
    rho_witness: Word | None = None


@dataclass
class BoundsReport:
    rows: list
    lb: float
    lb_witness: Cycle | None
    ub: float
    ub_depth: int
    kind: NormKind
    converged: bool = False
    budget_exceeded: bool = False
    refined: bool = False
    refine_scaling: np.ndarray | None = field(default=None, repr=False)

    @property
    def width(self) -> float:
        return self.ub - self.lb

    @property
    def ub_witness(self) -> Word | None:
        for row in self.rows:
            if row.n == self.ub_depth:
                return row.witness
        return None


def _root(value: float, n: int) -> float:
    return float(value) ** (1.0 / n) if value > 0 else 0.0


def all_products(sys: SwitchedSystem, c: Constraint, n: int) -> tuple:
    """Every admissible word of length `n` with its product, lexicographically.

    Returns ``(words, products)`` with shapes ``(count, n)`` and
    ``(count, d, d)``.
    """
    mats = sys.matrices
    if c.kind == cons.ORBITS:
        words = cons.word_array(c, n)
        prods = mats[words[:, 0]]
        for j in range(1, n):
            prods = np.matmul(mats[words[:, j]], prods)
        return words, prods
    live = c.live_transition()
    words = np.array(c.letters(), dtype=np.int64).reshape(-1, 1)
    prods = mats[words[:, 0]]
    for _ in range(n - 1):
        words, parent = cons.extend_words(words, live)
        prods = np.matmul(mats[words[:, -1]], prods[parent])
    return words, prods


class _FrontierOverflow(Exception):
    pass


@dataclass
class _DepthResult:
    maxnorm: float
    witness: Word | None
    visited: int
    pruned: int
    cut: bool


class _Sweeper:
    """Depth-by-depth maximal product norms with branch and bound."""

    def __init__(self, sys, c, kind, *, prune=True, threads=1, max_frontier=None):
        if sys.size != c.size:
            raise ValueError(f"system has {sys.size} letters, constraint {c.size}")
        self.sys = sys
        self.c = c
        self.kind = NormKind.parse(kind)
        self.prune = prune
        self.threads = max(1, int(threads))
        self.max_frontier = max_frontier
        self.live = None if c.kind == cons.ORBITS else c.live_transition()
        self.letters = c.letters()
        # bound[k] >= max |S_v| over admissible v of length k
        self.bound = [1.0]
        self.witnesses = [None]

    def _norm_of(self, w) -> float:
        return float(norms(product_along_word(self.sys, w)[np.newaxis], self.kind)[0])

    def _seed(self, n: int, hints: Sequence[Word]) -> float:
        """Norm of some admissible length-n word: a valid pruning floor."""
        cands = set()
        prev = self.witnesses[n - 1] if n - 1 < len(self.witnesses) else None
        if prev is not None:
            for a in self.letters:
                cands.add(tuple(prev) + (a,))
        for h in hints:
            if h:
                cands.add(tuple((tuple(h) * n)[:n]))
        best = 0.0
        for w in sorted(cands):
            if cons.is_admissible(self.c, w):
                best = max(best, self._norm_of(w))
        return best

    def _partition(self, a: int, n: int, floor: float, cutoff_pow: float) -> _DepthResult:
        mats = self.sys.matrices
        words = np.array([[a]], dtype=np.int64)
        prods = mats[[a]]
        nrm = norms(prods, self.kind)
        visited, pruned, cut = 1, 0, False
        threshold = max(floor, cutoff_pow)
        for m in range(1, n):
            if self.prune:
                bound = nrm * self.bound[n - m] * (1.0 + PRUNE_RTOL)
                drop = bound < threshold
                if drop.any():
                    pruned += int(drop.sum())
                    if (bound[drop] >= floor).any():
                        cut = True
                    keep = ~drop
                    words, prods, nrm = words[keep], prods[keep], nrm[keep]
                    if words.shape[0] == 0:
                        return _DepthResult(-1.0, None, visited, pruned, cut)
            words, parent = cons.extend_words(words, self.live)
            if self.max_frontier is not None and words.shape[0] > self.max_frontier:
                raise _FrontierOverflow
            prods = np.matmul(mats[words[:, -1]], prods[parent])
            nrm = norms(prods, self.kind)
            visited += words.shape[0]
        if words.shape[0] == 0:
            return _DepthResult(-1.0, None, visited, pruned, cut)
        i = int(np.argmax(nrm))
        return _DepthResult(float(nrm[i]), tuple(int(x) for x in words[i]), visited, pruned, cut)

    def depth(self, n: int, cutoff: float | None = None, hints: Sequence[Word] = ()) -> DepthRow:
        """Search depth `n`; depths ``1..n-1`` must already be done."""
        assert len(self.bound) == n
        if self.c.kind == cons.ORBITS:
            words, prods = all_products(self.sys, self.c, n)
            nrm = norms(prods, self.kind)
            i = int(np.argmax(nrm))
            res = _DepthResult(float(nrm[i]), tuple(int(x) for x in words[i]), len(words), 0, False)
        else:
            use_cut = self.prune and cutoff is not None
            cutoff_pow = cutoff**n if use_cut else -math.inf
            floor = self._seed(n, hints) if self.prune else -math.inf
            parts = list(self.letters)
            run = lambda a: self._partition(a, n, floor, cutoff_pow)  # noqa: E731
            if self.threads > 1 and len(parts) > 1:
                with ThreadPoolExecutor(max_workers=self.threads) as pool:
                    results = list(pool.map(run, parts))
            else:
                results = [run(a) for a in parts]
            best = max(r.maxnorm for r in results)
            witness = next((r.witness for r in results if r.maxnorm == best), None)
            res = _DepthResult(
                best,
                witness,
                sum(r.visited for r in results),
                sum(r.pruned for r in results),
                any(r.cut for r in results),
            )
            if res.cut and res.maxnorm < cutoff_pow:
                self.bound.append(cutoff_pow)
                self.witnesses.append(res.witness)
                return DepthRow(n, float(cutoff), None, res.visited, res.pruned, False, False, res.witness)
        self.bound.append(res.maxnorm)
        self.witnesses.append(res.witness)
        return DepthRow(
            n, _root(res.maxnorm, n), None, res.visited, res.pruned, True, res.maxnorm == 0.0, res.witness
        )


def depth_sweep(sys: SwitchedSystem, c: Constraint, max_depth: int, kind=NormKind.SPECTRAL2, *, prune=True, threads=1):
    """Yield the exact :class:`DepthRow` for each depth ``1..max_depth``.

    No early stop and no lower-bound cutoff; ``prune=False`` visits every
    admissible word.
    """
    sweeper = _Sweeper(sys, c, kind, prune=prune, threads=threads)
    for n in range(1, max_depth + 1):
        yield sweeper.depth(n)


def rho_hat_n(sys: SwitchedSystem, c: Constraint, n: int, kind=NormKind.SPECTRAL2) -> tuple:
    """Largest ``|S_w|^(1/n)`` over admissible words of length `n`.

    Returns ``(value, witness)`` with the lexicographically least maximizing
    word.  Value 0 means every product of length `n` vanishes.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    row = None
    for row in depth_sweep(sys, c, n, kind):
        pass
    return row.rho_hat, row.witness


def rho_n(sys: SwitchedSystem, c: Constraint, n: int) -> tuple:
    """Largest ``rho(S_w)^(1/n)`` over admissible words of length `n`.

    Diagnostic only: under a constraint this is not a lower bound for the
    generalized spectral radius unless the words are periodic.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    words, prods = all_products(sys, c, n)
    radii = spectral_radii(prods)
    i = int(np.argmax(radii))
    return _root(radii[i], n), tuple(int(x) for x in words[i])


def _periodic_candidates(c: Constraint, max_len: int) -> list:
    roots = {cyc.word for cyc in cons.simple_cycles(c, max_len)}
    total = sum(cons.count_admissible(c, n) for n in range(1, max_len + 1))
    if total <= PERIODIC_WORD_BUDGET:
        for n in range(1, max_len + 1):
            for w in cons.periodic_words(c, n):
                roots.add(cons.canonical_rotation(cons.primitive_root(w)))
    return sorted(roots, key=lambda w: (len(w), w))


def cycle_lower_bound(sys: SwitchedSystem, c: Constraint, max_len: int) -> tuple:
    """Certified lower bound ``max rho(S_w)^(1/|w|)`` over periodic words.

    Candidates are the simple cycles of the constraint graph plus, when the
    word count up to `max_len` is modest, every periodic word (reduced to its
    primitive root, since ``rho(A^k)^(1/k) = rho(A)``).  Returns
    ``(lb, witness)``; the witness is the shortest, then lexicographically
    least, maximizing cycle.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    if sys.size != c.size:
        raise ValueError(f"system has {sys.size} letters, constraint {c.size}")
    cands = _periodic_candidates(c, max_len)
    best, witness = -1.0, None
    by_len: dict = {}
    for w in cands:
        by_len.setdefault(len(w), []).append(w)
    for n in sorted(by_len):
        group = by_len[n]
        words = np.array(group, dtype=np.int64)
        prods = sys.matrices[words[:, 0]]
        for j in range(1, n):
            prods = np.matmul(sys.matrices[words[:, j]], prods)
        radii = spectral_radii(prods)
        for w, r in zip(group, radii):
            v = _root(r, n)
            if v > best:
                best, witness = v, w
    if witness is None:
        raise EmptyConstraint("constraint has no periodic signal")
    return best, Cycle(witness)


def jsr_bounds(sys: SwitchedSystem, c: Constraint, config: BoundsConfig | None = None, **overrides) -> BoundsReport:
    """Certified interval ``[lb, ub]`` for the constrained spectral radius.

    The lower bound is :func:`cycle_lower_bound`; the upper bound is the
    running minimum of ``rho_hat_n`` over the depth sweep, which stops once
    ``ub - lb <= tol``.  With pruning on and ``tol > 0`` prefixes that cannot
    reach ``lb + tol/2`` are discarded, so a row may report that cutoff
    instead of its exact value (``row.exact`` is then false); the interval
    stays valid either way.

    A sweep that exceeds ``max_words`` stops with ``budget_exceeded`` set and
    the rows completed so far.
    """
    config = replace(config or BoundsConfig(), **overrides)
    lb, lb_witness = cycle_lower_bound(sys, c, config.max_cycle_len)
    cutoff = lb + config.tol / 2.0 if (config.prune and config.tol > 0) else None
    sweeper = _Sweeper(
        sys, c, config.kind, prune=config.prune, threads=config.threads, max_frontier=config.max_words
    )
    rows: list = []
    ub, ub_depth = math.inf, 0
    converged = budget = False
    spent = 0
    for n in range(1, config.max_depth + 1):
        try:
            row = sweeper.depth(n, cutoff, hints=(lb_witness.word,))
        except _FrontierOverflow:
            budget = True
            break
        spent += row.visited
        if cons.count_admissible(c, n) <= config.rho_word_cap:
            r, rw = rho_n(sys, c, n)
            row = replace(row, rho=r, rho_witness=rw)
        rows.append(row)
        if row.rho_hat < ub:
            ub, ub_depth = row.rho_hat, n
        if ub - lb <= config.tol:
            converged = True
            break
        if spent > config.max_words:
            budget = n < config.max_depth
            break
    report = BoundsReport(rows, lb, lb_witness, ub, ub_depth, config.kind, converged, budget)
    if config.refine_iterations > 0:
        p, achieved = refine_norm(sys, c, config.refine_iterations, config.kind)
        report.refine_scaling = p
        if achieved < report.ub:
            report.ub = achieved
            report.ub_depth = 1
            report.refined = True
            report.converged = report.ub - report.lb <= config.tol
    return report


def refine_norm(sys: SwitchedSystem, c: Constraint, iterations: int, kind=NormKind.SPECTRAL2) -> tuple:
    """Diagonal rescaling that lowers ``max_i |P^-1 S_i P|`` over live letters.

    Coordinate descent on ``log diag(P)`` with per-coordinate step doubling
    on success and halving on failure.  Any norm gives a valid depth-1 upper
    bound, so the returned ``achieved`` is an upper bound for the spectral
    radius, never worse than the unscaled one.

    Returns ``(P, achieved)``.
    """
    kind = NormKind.parse(kind)
    letters = list(c.letters())
    mats = sys.matrices[letters]
    d = sys.dim

    def cost(logp):
        p = np.exp(logp)
        scaled = mats * (p[np.newaxis, np.newaxis, :] / p[np.newaxis, :, np.newaxis])
        return float(np.max(norms(scaled, kind)))

    logp = np.zeros(d)
    best = cost(logp)
    step = np.ones(d)
    for _ in range(max(0, int(iterations))):
        moved = False
        for j in range(1, d):
            for sign in (1.0, -1.0):
                trial = logp.copy()
                trial[j] = np.clip(trial[j] + sign * step[j], -600.0, 600.0)
                v = cost(trial)
                if v < best:
                    logp, best = trial, v
                    step[j] *= 2.0
                    moved = True
                    break
            else:
                step[j] *= 0.5
        if not moved and np.all(step < 1e-12):
            break
    return np.diag(np.exp(logp)).astype(np.complex128), best
