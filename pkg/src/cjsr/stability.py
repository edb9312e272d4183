"""Stability and instability certificates for constrained switched systems.

A system is certified stable when the upper bound of :func:`jsr_bounds`
drops below one: every admissible product of length ``N`` (the depth that
achieved the bound) then has norm at most ``lambda^N``, which gives uniform
exponential decay along every admissible signal.  It is certified unstable
when some periodic admissible word has ``rho(S_w) >= 1``; repeating that word
is an admissible signal along which products do not go to zero.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import constraint as cons
from .bounds import BoundsConfig, BoundsReport, _Sweeper, all_products, jsr_bounds
from .constraint import Constraint, Cycle, Word
from .errors import BudgetExceeded, InadmissibleSignal
from .matcore import NormKind, norms, spectral_radii
from .system import SwitchedSystem

__all__ = [
    "Status",
    "Reason",
    "StabilityVerdict",
    "certify",
    "check_condition_c",
    "check_product_boundedness",
    "simulate_decay",
    "decay_slack",
    "envelope_violations",
]

SLACK = 1e-9


class Status(str, enum.Enum):
    CERTIFIED_STABLE = "CertifiedStable"
    CERTIFIED_UNSTABLE = "CertifiedUnstable"
    UNDETERMINED = "Undetermined"


class Reason(str, enum.Enum):
    UB_BELOW_ONE = "UbBelowOne"
    CYCLE_AT_OR_ABOVE_ONE = "CycleAtOrAboveOne"
    BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass(frozen=True)
class StabilityVerdict:
    """Outcome of :func:`certify`.

    For a stable verdict ``N`` is the depth achieving the upper bound and
    ``lam`` the bound itself: admissible products of length ``N`` have
    2-norm (or the configured norm) at most ``lam**N``.  For an unstable one
    ``witness`` is a cycle with ``rho(S_w) >= 1``.  ``marginal`` flags the
    boundary case where the interval pins the radius at one.
    """

    status: Status
    reason: Reason
    report: BoundsReport
    witness: Cycle | Word | None = None
    N: int | None = None
    lam: float | None = None
    gamma: float | None = None
    marginal: bool = False

    @property
    def lb(self) -> float:
        return self.report.lb

    @property
    def ub(self) -> float:
        return self.report.ub


def certify(
    sys: SwitchedSystem, c: Constraint, config: BoundsConfig | None = None, *, slack: float = SLACK, **overrides
) -> StabilityVerdict:
    """Decide stability from the certified interval ``[lb, ub]``.

    ``ub < 1 - slack`` gives CertifiedStable, ``lb >= 1 - slack`` gives
    CertifiedUnstable (a radius of exactly one counts as unstable: the
    witness cycle keeps products away from zero), anything else is
    Undetermined.
    """
    report = jsr_bounds(sys, c, config, **overrides)
    if report.ub < 1.0 - slack:
        return StabilityVerdict(
            Status.CERTIFIED_STABLE,
            Reason.UB_BELOW_ONE,
            report,
            witness=report.ub_witness,
            N=report.ub_depth,
            lam=report.ub,
        )
    if report.lb >= 1.0 - slack:
        return StabilityVerdict(
            Status.CERTIFIED_UNSTABLE,
            Reason.CYCLE_AT_OR_ABOVE_ONE,
            report,
            witness=report.lb_witness,
            marginal=report.lb <= 1.0 + slack and report.ub <= 1.0 + slack,
        )
    return StabilityVerdict(Status.UNDETERMINED, Reason.BUDGET_EXHAUSTED, report)


def _norm_envelope(sys: SwitchedSystem, c: Constraint, n_max: int) -> float | None:
    """``G`` with ``|S_v| <= G`` for every admissible word of any length.

    Found from a depth ``p`` whose maximal product norm is at most one:
    then every length factors into blocks of ``p`` and a shorter remainder.
    Returns None when no such depth shows up by `n_max`.
    """
    sweeper = _Sweeper(sys, c, NormKind.SPECTRAL2)
    g = 1.0
    for p in range(1, n_max + 1):
        sweeper.depth(p)
        top = sweeper.bound[p]
        if top <= 1.0:
            return g
        g = max(g, top)
    return None


def check_condition_c(
    sys: SwitchedSystem,
    c: Constraint,
    N: int,
    gamma: float,
    n_max: int,
    *,
    slack: float = SLACK,
    max_words: int = 4_000_000,
) -> tuple:
    """Check ``rho(S_w) <= gamma`` for admissible words with ``N <= |w| <= n_max``.

    Only a finite shadow of the infinite condition.  Words are scanned by
    length, then lexicographically; subtrees whose norm times a uniform
    bound on product norms already sits below `gamma` are skipped.

    Returns ``(holds, counterexample)``, the counterexample being the first
    violating word or None.
    """
    if not 0.0 < gamma < 1.0:
        raise ValueError("gamma must lie in (0, 1)")
    if N < 1 or n_max < N:
        raise ValueError("need 1 <= N <= n_max")
    limit = gamma + slack
    if c.kind == cons.ORBITS:
        for n in range(N, n_max + 1):
            words, prods = all_products(sys, c, n)
            bad = np.flatnonzero(spectral_radii(prods) > limit)
            if bad.size:
                return False, tuple(int(x) for x in words[bad[0]])
        return True, None

    envelope = _norm_envelope(sys, c, n_max)
    live = c.live_transition()
    mats = sys.matrices
    words = np.array(c.letters(), dtype=np.int64).reshape(-1, 1)
    prods = mats[words[:, 0]]
    for m in range(1, n_max + 1):
        if m > 1:
            words, parent = cons.extend_words(words, live)
            if words.shape[0] > max_words:
                raise BudgetExceeded(f"condition (c) scan exceeded {max_words} words at length {m}", partial=m - 1)
            prods = np.matmul(mats[words[:, -1]], prods[parent])
        nrm = norms(prods, NormKind.SPECTRAL2)
        if envelope is not None:
            safe = nrm * envelope * (1.0 + 1e-12) <= gamma
        else:
            safe = np.zeros(len(nrm), dtype=bool)
        if m >= N:
            check = np.flatnonzero(~safe)
            if check.size:
                radii = spectral_radii(prods[check])
                bad = check[radii > limit]
                if bad.size:
                    return False, tuple(int(x) for x in words[bad[0]])
        if safe.any():
            keep = ~safe
            words, prods = words[keep], prods[keep]
            if words.shape[0] == 0:
                break
    return True, None


def check_product_boundedness(
    sys: SwitchedSystem, c: Constraint, horizon: int, bound_cap: float, *, max_words: int = 4_000_000
) -> tuple:
    """Largest 2-norm of admissible products up to length `horizon`.

    A finite probe, not a proof of boundedness.  Returns
    ``(bounded_up_to_horizon, max_norm_seen, argmax)``.

    Raises
    ------
    BudgetExceeded
        When a level exceeds `max_words` words; ``partial`` holds the
        triple for the lengths completed so far.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    best, arg = -1.0, None
    if c.kind == cons.ORBITS:
        levels = (all_products(sys, c, n) for n in range(1, horizon + 1))
    else:
        levels = _levels(sys, c, horizon, max_words)
    try:
        for words, prods in levels:
            nrm = norms(prods, NormKind.SPECTRAL2)
            i = int(np.argmax(nrm))
            if nrm[i] > best:
                best, arg = float(nrm[i]), tuple(int(x) for x in words[i])
    except BudgetExceeded as exc:
        exc.partial = (best <= bound_cap, best, arg)
        raise
    return best <= bound_cap, best, arg


def _levels(sys, c, horizon, max_words):
    live = c.live_transition()
    mats = sys.matrices
    words = np.array(c.letters(), dtype=np.int64).reshape(-1, 1)
    prods = mats[words[:, 0]]
    yield words, prods
    for m in range(2, horizon + 1):
        words, parent = cons.extend_words(words, live)
        if words.shape[0] > max_words:
            raise BudgetExceeded(f"more than {max_words} admissible words of length {m}")
        prods = np.matmul(mats[words[:, -1]], prods[parent])
        yield words, prods


def _signal_letters(c: Constraint | None, signal, horizon: int) -> Word:
    if isinstance(signal, Cycle):
        if c is not None and not cons.is_periodic(c, signal.word):
            raise InadmissibleSignal(f"cycle {signal.word} is not an admissible periodic signal")
        return signal.signal(horizon)
    letters = tuple(int(i) for i in itertools.islice(iter(signal), horizon))
    if not letters:
        raise ValueError("empty signal")
    if c is not None and not cons.is_admissible(c, letters):
        raise InadmissibleSignal(f"signal {letters} is not admissible")
    return letters


def log_norm_trace(sys: SwitchedSystem, letters: Sequence[int], x0=None) -> list:
    """``log |S_{i_n}...S_{i_1}|`` (or ``log |... x0|``) for each n.

    The running product is renormalized at every step and the scale kept in
    log form, so long horizons neither overflow nor underflow.  Once the
    product vanishes the remaining entries are ``-inf``.
    """
    mats = sys.matrices
    if x0 is None:
        state = np.eye(sys.dim, dtype=np.complex128)
    else:
        state = np.asarray(x0, dtype=np.complex128)
    out = []
    scale = 0.0
    for i in letters:
        if scale == -math.inf:
            out.append(-math.inf)
            continue
        state = mats[i] @ state
        s = float(np.linalg.norm(state, 2)) if state.ndim == 2 else float(np.linalg.norm(state))
        if s == 0.0:
            scale = -math.inf
        else:
            scale += math.log(s)
            state = state / s
        out.append(scale)
    return out


def simulate_decay(sys: SwitchedSystem, c: Constraint | None, signal, horizon: int) -> list:
    """Product 2-norm along one admissible signal, as ``[(n, log_norm), ...]``.

    `signal` is a :class:`Cycle` (its periodic repetition) or any iterable of
    letters; only the first `horizon` letters are used.  ``log_norm`` is
    ``-inf`` once the product vanishes.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    letters = _signal_letters(c, signal, horizon)
    return list(enumerate(log_norm_trace(sys, letters), start=1))


def decay_slack(N: int, beta_max: float, lam: float | None = None) -> float:
    """Offset ``C`` for the envelope ``log|S_{w(n)}| <= n log(lam) + C``.

    Without `lam` this is ``N log(beta_max) + 1``.  That offset is negative
    when ``beta_max < e**(-1/N)``, and the envelope then fails at ``n = N``
    for any word that attains ``lam**N``.  Passing `lam` gives
    ``N log(beta_max / lam) + 1``, which always holds: write ``n = qN + r``,
    bound the ``q`` full blocks by ``lam**N`` each and the rest by
    ``beta_max**r``.
    """
    if beta_max <= 0:
        return -math.inf
    if lam is None:
        return N * math.log(beta_max) + 1.0
    if lam <= 0:
        return math.inf
    return N * math.log(beta_max / lam) + 1.0


def envelope_violations(trace: Iterable, lam: float, N: int, C: float, n_min: int | None = None) -> list:
    """Steps ``n >= N`` where ``log_norm > n log(lam) + C``."""
    n_min = N if n_min is None else n_min
    log_lam = math.log(lam) if lam > 0 else -math.inf
    bad = []
    for n, v in trace:
        if n < n_min or v == -math.inf:
            continue
        if v > n * log_lam + C:
            bad.append(n)
    return bad
