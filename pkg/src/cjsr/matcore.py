"""Dense complex matrix kernel: products, norms and spectral radius.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  :func:`as_cmatrix`
validates and freezes them; every other function accepts anything array-like
and also works on stacks of shape ``(..., d, d)`` where noted.
"""

from __future__ import annotations

import enum

import numpy as np

__all__ = [
    "NormKind",
    "as_cmatrix",
    "identity",
    "zeros",
    "mat_mul",
    "vec_apply",
    "norm",
    "norms",
    "spectral_radius",
    "spectral_radii",
]

GELFAND_MAX_SQUARINGS = 60
GELFAND_RTOL = 1e-14


class NormKind(str, enum.Enum):
    """Submultiplicative matrix norms available to the bound computations."""

    SPECTRAL2 = "spectral2"
    FROBENIUS = "frobenius"
    MAX_ROW_SUM = "maxrowsum"
    MAX_COL_SUM = "maxcolsum"

    @classmethod
    def parse(cls, value: "NormKind | str") -> "NormKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "").replace("-", "")
        for kind in cls:
            if kind.value == key or kind.name.replace("_", "").lower() == key:
                return kind
        raise ValueError(f"unknown norm kind {value!r}")


def as_cmatrix(a) -> np.ndarray:
    """Return `a` as a read-only square ``complex128`` array.

    Raises
    ------
    ValueError
        If `a` is not a non-empty square matrix or has non-finite entries.
    """
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    m.setflags(write=False)
    return m


def identity(d: int) -> np.ndarray:
    return as_cmatrix(np.eye(d))


def zeros(d: int) -> np.ndarray:
    return as_cmatrix(np.zeros((d, d)))


def mat_mul(a, b) -> np.ndarray:
    """Complex matrix product ``a @ b``; dimensions must agree."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape[-2:] != b.shape[-2:] or a.shape[-2] != a.shape[-1]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return np.matmul(a, b)


def vec_apply(a, x) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim != 1 or x.shape[0] != a.shape[-1]:
        raise ValueError(f"dimension mismatch: {a.shape} applied to {x.shape}")
    return a @ x


def norms(stack, kind: NormKind | str = NormKind.SPECTRAL2) -> np.ndarray:
    """Norms of a stack of matrices, shape ``(..., d, d)`` -> ``(...)``."""
    kind = NormKind.parse(kind)
    stack = np.asarray(stack, dtype=np.complex128)
    if stack.shape[-1] == 0:
        return np.zeros(stack.shape[:-2])
    if kind is NormKind.SPECTRAL2:
        return np.linalg.norm(stack, ord=2, axis=(-2, -1))
    if kind is NormKind.FROBENIUS:
        return np.sqrt(np.sum(stack.real**2 + stack.imag**2, axis=(-2, -1)))
    if kind is NormKind.MAX_ROW_SUM:
        return np.max(np.sum(np.abs(stack), axis=-1), axis=-1)
    return np.max(np.sum(np.abs(stack), axis=-2), axis=-1)


def norm(a, kind: NormKind | str = NormKind.SPECTRAL2) -> float:
    """Matrix norm of a single matrix.

    ``SPECTRAL2`` is the largest singular value; the others are closed form
    (Frobenius, induced infinity-norm, induced 1-norm).
    """
    a = np.asarray(a, dtype=np.complex128)
    return float(norms(a[np.newaxis], kind)[0])


def _frobenius(stack: np.ndarray) -> np.ndarray:
    # scaled by the largest modulus so squares neither overflow nor underflow
    mag = np.abs(stack)
    top = mag.max(axis=(-2, -1))
    safe = np.where(top > 0, top, 1.0)
    return top * np.sqrt(np.sum((mag / safe[..., None, None]) ** 2, axis=(-2, -1)))


def spectral_radii(stack) -> np.ndarray:
    """Spectral radii of a stack of matrices by normalized repeated squaring.

    For each matrix ``B0 = A / |A|_F`` and ``B_{k+1} = B_k^2 / |B_k^2|_F``;
    the accumulated log-scale ``s_k = log|A|_F + sum_j log|B_{j-1}^2|_F / 2^j``
    gives the Gelfand estimate ``exp(s_k) ~ |A^(2^k)|^(1/2^k)``.  Iteration
    stops per matrix once successive estimates agree to ``GELFAND_RTOL`` or
    after ``GELFAND_MAX_SQUARINGS`` squarings.  A power that vanishes exactly
    (nilpotent) yields exactly 0.
    """
    stack = np.asarray(stack, dtype=np.complex128)
    batch_shape = stack.shape[:-2]
    d = stack.shape[-1]
    b = stack.reshape(-1, d, d)
    out = np.zeros(b.shape[0])

    n0 = _frobenius(b)
    live = np.flatnonzero(n0 > 0)
    if live.size == 0:
        return out.reshape(batch_shape)
    b = b[live] / n0[live, None, None]
    logscale = np.log(n0[live])
    estimate = np.exp(logscale)

    weight = 1.0
    for _ in range(GELFAND_MAX_SQUARINGS):
        weight *= 0.5
        sq = np.matmul(b, b)
        nk = _frobenius(sq)
        vanished = nk == 0
        if vanished.any():
            # nilpotent: the rest of this column stays at exactly 0
            estimate[vanished] = 0.0
            keep = ~vanished
            out[live[vanished]] = 0.0
            live, sq, nk = live[keep], sq[keep], nk[keep]
            logscale, estimate = logscale[keep], estimate[keep]
            if live.size == 0:
                break
        logscale = logscale + weight * np.log(nk)
        new_estimate = np.exp(logscale)
        done = np.abs(new_estimate - estimate) <= GELFAND_RTOL * new_estimate
        b = sq / nk[:, None, None]
        estimate = new_estimate
        if done.any():
            out[live[done]] = estimate[done]
            keep = ~done
            live, b, logscale, estimate = live[keep], b[keep], logscale[keep], estimate[keep]
            if live.size == 0:
                break
    out[live] = estimate
    return out.reshape(batch_shape)


def spectral_radius(a) -> float:
    """Largest eigenvalue modulus of `a` (see :func:`spectral_radii`)."""
    a = np.asarray(a, dtype=np.complex128)
    return float(spectral_radii(a[np.newaxis])[0])
