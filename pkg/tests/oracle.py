"""Brute-force reference implementations, written independently of cjsr.

Everything here enumerates ``itertools.product`` over the alphabet and uses
plain numpy calls (``eigvals``, ``norm(ord=2)``), so agreement with the
package is a real cross-check rather than a tautology.
"""

import itertools

import numpy as np


def live_letters(t):
    """Letters from which arbitrarily long paths start (sinks removed)."""
    t = np.asarray(t)
    k = t.shape[0]
    # a letter survives iff some path of length k leaves it
    reach = np.linalg.matrix_power(t.astype(float), k)
    return [i for i in range(k) if reach[i].sum() > 0]


def admissible(t, n):
    """Length-n words along edges of `t` that end at a surviving letter."""
    t = np.asarray(t)
    k = t.shape[0]
    live = set(live_letters(t))
    out = []
    for w in itertools.product(range(k), repeat=n):
        if all(x in live for x in w) and all(t[a, b] for a, b in zip(w, w[1:])):
            out.append(w)
    return out


def periodic(t, n):
    t = np.asarray(t)
    return [w for w in admissible(t, n) if t[w[-1], w[0]]]


def product(mats, w):
    p = np.eye(mats[0].shape[0], dtype=complex)
    for i in w:
        p = np.asarray(mats[i], dtype=complex) @ p
    return p


def rho(a):
    return float(np.max(np.abs(np.linalg.eigvals(a))))


def rho_hat_n(mats, t, n):
    return max(np.linalg.norm(product(mats, w), 2) for w in admissible(t, n)) ** (1.0 / n)


def rho_n(mats, t, n):
    return max(rho(product(mats, w)) for w in admissible(t, n)) ** (1.0 / n)


def periodic_lb(mats, t, max_len):
    best = 0.0
    for n in range(1, max_len + 1):
        for w in periodic(t, n):
            best = max(best, rho(product(mats, w)) ** (1.0 / n))
    return best


def free(k):
    return np.ones((k, k), dtype=int)
