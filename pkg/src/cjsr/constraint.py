"""Admissible switching signals: free shifts, subshifts of finite type and
finite unions of periodic orbits.

Words are tuples of letter indices ``(i_1, ..., i_n)`` in *application order*:
``i_1`` acts first.  A word is admissible when it is the prefix of some
infinite signal in the constraint set, and periodic when its infinite
repetition is itself a signal in the set.

SFTs are vertex-labelled: ``transition[a][b] == 1`` allows letter ``b`` to
follow letter ``a``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import networkx as nx
import numpy as np

from .errors import EmptyConstraint, InadmissibleSignal

__all__ = [
    "Word",
    "Alphabet",
    "Constraint",
    "Cycle",
    "Recoding",
    "canonical_rotation",
    "primitive_root",
    "prune_sinks",
    "admissible_words",
    "periodic_words",
    "simple_cycles",
    "is_admissible",
    "is_periodic",
    "count_admissible",
    "higher_block_recode",
]

Word = tuple  # tuple[int, ...]

FREE, SFT, ORBITS = "free", "sft", "orbits"


@dataclass(frozen=True)
class Alphabet:
    labels: tuple

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        if not labels:
            raise ValueError("alphabet must have at least one letter")
        if len(set(labels)) != len(labels):
            raise ValueError(f"alphabet labels must be unique: {labels}")
        if any("," in x or x == "" for x in labels):
            raise ValueError("labels must be non-empty and must not contain ','")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def of_size(cls, k: int) -> "Alphabet":
        return cls(tuple(str(i) for i in range(k)))

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown letter {label!r}") from None

    def parse_word(self, text) -> Word:
        """Parse ``"0,1,0"`` or, for single-character labels, ``"010"``.

        A list of labels is accepted as well.
        """
        if isinstance(text, str):
            text = text.strip()
            if "," in text:
                parts = [p.strip() for p in text.split(",")]
            elif all(len(x) == 1 for x in self.labels):
                parts = list(text)
            else:
                parts = [text]
        else:
            parts = [str(p) for p in text]
        if not parts or parts == [""]:
            raise ValueError("empty word")
        return tuple(self.index(p) for p in parts)

    def format_word(self, word: Sequence[int]) -> str:
        return ",".join(self.labels[i] for i in word)


def canonical_rotation(word: Sequence[int]) -> Word:
    """Lexicographically least rotation of `word`."""
    word = tuple(word)
    return min(word[i:] + word[:i] for i in range(len(word)))


def primitive_root(word: Sequence[int]) -> Word:
    """Shortest ``u`` with ``word == u * k``."""
    word = tuple(word)
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word[:p] * (n // p) == word:
            return word[:p]
    return word


@dataclass(frozen=True)
class Cycle:
    """A periodic signal ``word word word ...`` stored in canonical rotation."""

    word: Word

    def __post_init__(self):
        w = tuple(int(i) for i in self.word)
        if not w:
            raise ValueError("cycle word must be non-empty")
        object.__setattr__(self, "word", canonical_rotation(w))

    def __len__(self):
        return len(self.word)

    def signal(self, length: int) -> Word:
        """First `length` letters of the periodic signal."""
        reps = -(-length // len(self.word))
        return (self.word * reps)[:length]


@dataclass(frozen=True, eq=False)
class Constraint:
    """Description of the admissible signal set.

    Build with :meth:`free`, :meth:`sft` or :meth:`orbits` rather than the
    constructor.
    """

    kind: str
    size: int
    transition: np.ndarray | None = None
    periods: tuple = ()
    _live: np.ndarray | None = field(default=None, repr=False, compare=False)

    @classmethod
    def free(cls, size: int) -> "Constraint":
        if size < 1:
            raise ValueError("alphabet size must be >= 1")
        return cls(FREE, int(size))

    @classmethod
    def sft(cls, transition) -> "Constraint":
        t = np.array(transition, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] < 1:
            raise ValueError(f"transition matrix must be square, got shape {t.shape}")
        if not np.isin(t, (0, 1)).all():
            raise ValueError("transition matrix entries must be 0 or 1")
        t.setflags(write=False)
        return cls(SFT, t.shape[0], t)

    @classmethod
    def orbits(cls, size: int, periods) -> "Constraint":
        ps = []
        for p in periods:
            p = tuple(int(i) for i in p)
            if not p:
                raise ValueError("period words must be non-empty")
            if any(i < 0 or i >= size for i in p):
                raise ValueError(f"period {p} uses letters outside the alphabet")
            ps.append(p)
        if not ps:
            raise EmptyConstraint("no periodic orbits given")
        return cls(ORBITS, int(size), None, tuple(ps))

    def __eq__(self, other):
        if not isinstance(other, Constraint):
            return NotImplemented
        same_t = (self.transition is None and other.transition is None) or (
            self.transition is not None
            and other.transition is not None
            and np.array_equal(self.transition, other.transition)
        )
        return (self.kind, self.size, self.periods) == (other.kind, other.size, other.periods) and same_t

    def __hash__(self):
        t = None if self.transition is None else self.transition.tobytes()
        return hash((self.kind, self.size, self.periods, t))

    @property
    def roots(self) -> tuple:
        """Distinct orbits as canonical primitive words (orbits only)."""
        return tuple(sorted({canonical_rotation(primitive_root(p)) for p in self.periods}))

    def live_transition(self) -> np.ndarray:
        """Transition matrix in original letter indices with sinks removed.

        For the free shift this is the all-ones matrix.  Not defined for
        orbit constraints.
        """
        if self.kind == ORBITS:
            raise TypeError("orbit constraints have no letter transition matrix")
        if self._live is None:
            if self.kind == FREE:
                live = np.ones((self.size, self.size), dtype=np.int64)
            else:
                alive = _surviving_letters(self.transition)
                if not alive:
                    raise EmptyConstraint("every letter is removed by sink pruning")
                live = np.zeros_like(self.transition)
                idx = np.array(alive)
                live[np.ix_(idx, idx)] = self.transition[np.ix_(idx, idx)]
            live.setflags(write=False)
            object.__setattr__(self, "_live", live)
        return self._live

    def letters(self) -> tuple:
        """Letters that occur in some admissible signal."""
        if self.kind == ORBITS:
            return tuple(sorted({i for r in self.roots for i in r}))
        live = self.live_transition()
        return tuple(int(i) for i in np.flatnonzero(live.any(axis=1)))


def _surviving_letters(t: np.ndarray) -> list:
    alive = list(range(t.shape[0]))
    while True:
        sub = t[np.ix_(alive, alive)] if alive else t[:0, :0]
        keep = [a for a, row in zip(alive, sub) if row.any()]
        if len(keep) == len(alive):
            return alive
        alive = keep


def prune_sinks(c: Constraint) -> tuple:
    """Remove letters with no admissible successor until a fixpoint.

    Returns ``(pruned, kept)`` where `pruned` is an SFT over the surviving
    letters and ``kept[j]`` is the original index of its letter ``j``.

    Raises
    ------
    EmptyConstraint
        If every letter is removed.
    """
    if c.kind != SFT:
        raise TypeError("prune_sinks applies to SFT constraints")
    kept = _surviving_letters(c.transition)
    if not kept:
        raise EmptyConstraint("every letter is removed by sink pruning")
    idx = np.array(kept)
    return Constraint.sft(c.transition[np.ix_(idx, idx)]), tuple(kept)


def _orbit_windows(c: Constraint, n: int) -> list:
    out = set()
    for r in c.roots:
        L = len(r)
        rep = r * (-(-(n + L) // L))
        for s in range(L):
            out.add(rep[s : s + n])
    return sorted(out)


def _orbit_periodic(c: Constraint, n: int) -> list:
    out = set()
    for r in c.roots:
        L = len(r)
        if n % L == 0:
            for s in range(L):
                out.add((r[s:] + r[:s]) * (n // L))
    return sorted(out)


def admissible_words(c: Constraint, n: int) -> Iterator[Word]:
    """Length-`n` prefixes of signals in the constraint set, lexicographically."""
    if n < 1:
        raise ValueError("word length must be >= 1")
    if c.kind == ORBITS:
        yield from _orbit_windows(c, n)
        return
    live = c.live_transition()
    succ = [tuple(int(b) for b in np.flatnonzero(row)) for row in live]
    starts = [a for a in range(c.size) if succ[a]]
    stack = [iter(starts)]
    prefix: list = []
    while stack:
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            if prefix:
                prefix.pop()
            continue
        prefix.append(nxt)
        if len(prefix) == n:
            yield tuple(prefix)
            prefix.pop()
        else:
            stack.append(iter(succ[nxt]))


def word_array(c: Constraint, n: int) -> np.ndarray:
    """All admissible words of length `n` as an ``(count, n)`` int array in
    lexicographic order."""
    if c.kind == ORBITS:
        words = _orbit_windows(c, n)
        return np.array(words, dtype=np.int64).reshape(len(words), n)
    live = c.live_transition()
    words = np.array(c.letters(), dtype=np.int64).reshape(-1, 1)
    for _ in range(n - 1):
        words, _parent = extend_words(words, live)
    return words


def extend_words(words: np.ndarray, live: np.ndarray) -> tuple:
    """Admissible one-letter extensions of each row of `words`.

    Children keep lexicographic order.  Returns ``(children, parent_index)``.
    """
    k = live.shape[0]
    m = words.shape[0]
    parent = np.repeat(np.arange(m), k)
    letters = np.tile(np.arange(k), m)
    ok = live[words[parent, -1], letters].astype(bool)
    parent, letters = parent[ok], letters[ok]
    children = np.concatenate([words[parent], letters[:, None]], axis=1)
    return children, parent


def count_admissible(c: Constraint, n: int) -> int:
    if c.kind == ORBITS:
        return len(_orbit_windows(c, n))
    live = c.live_transition().astype(object)
    v = np.array([1 if live[a].any() else 0 for a in range(c.size)], dtype=object)
    for _ in range(n - 1):
        v = live @ v
    return int(sum(v))


def periodic_words(c: Constraint, n: int) -> Iterator[Word]:
    """Length-`n` words whose infinite repetition lies in the constraint set."""
    if n < 1:
        raise ValueError("word length must be >= 1")
    if c.kind == ORBITS:
        yield from _orbit_periodic(c, n)
        return
    live = c.live_transition()
    for w in admissible_words(c, n):
        if live[w[-1], w[0]]:
            yield w


def simple_cycles(c: Constraint, max_len: int) -> Iterator[Cycle]:
    """Simple cycles of the constraint digraph with length <= `max_len`.

    Cycles come in canonical rotation, ordered by length and then
    lexicographically.  For orbit constraints the distinct orbits (as
    primitive words) are returned.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    if c.kind == ORBITS:
        for r in sorted(c.roots, key=lambda w: (len(w), w)):
            if len(r) <= max_len:
                yield Cycle(r)
        return
    live = c.live_transition()
    g = nx.DiGraph()
    g.add_nodes_from(range(c.size))
    g.add_edges_from((int(a), int(b)) for a, b in zip(*np.nonzero(live)))
    found = {canonical_rotation(cyc) for cyc in nx.simple_cycles(g, length_bound=max_len)}
    for w in sorted(found, key=lambda w: (len(w), w)):
        yield Cycle(w)


def is_admissible(c: Constraint, w: Sequence[int]) -> bool:
    """Whether `w` is a prefix of some signal in the constraint set."""
    w = tuple(int(i) for i in w)
    if not w or any(i < 0 or i >= c.size for i in w):
        return False
    if c.kind == FREE:
        return True
    if c.kind == ORBITS:
        return w in set(_orbit_windows(c, len(w)))
    live = c.live_transition()
    if not live[w[0]].any():
        return False
    return all(live[a, b] for a, b in zip(w, w[1:]))


def is_periodic(c: Constraint, w: Sequence[int]) -> bool:
    """Whether the infinite repetition of `w` is a signal in the set."""
    w = tuple(int(i) for i in w)
    if not is_admissible(c, w):
        return False
    if c.kind == FREE:
        return True
    if c.kind == ORBITS:
        return w in set(_orbit_periodic(c, len(w)))
    return bool(c.live_transition()[w[-1], w[0]])


@dataclass(frozen=True)
class Recoding:
    """Higher-block presentation of a constraint with forbidden words.

    ``blocks[j]`` is the letter block coded by block letter ``j``; a block
    signal ``b_1 b_2 ...`` corresponds to the letter signal whose n-th
    letter is ``blocks[b_n][0]``.
    """

    constraint: Constraint
    blocks: tuple
    block_len: int

    @property
    def projection(self) -> tuple:
        return tuple(b[0] for b in self.blocks)

    def project(self, word: Sequence[int]) -> Word:
        return tuple(self.blocks[b][0] for b in word)

    def lift_matrices(self, matrices: np.ndarray) -> np.ndarray:
        """Matrix stack indexed by block letters."""
        return np.asarray(matrices)[list(self.projection)]

    def block_labels(self, labels: Sequence[str]) -> tuple:
        sep = "" if all(len(x) == 1 for x in labels) else "."
        return tuple(sep.join(labels[i] for i in b) for b in self.blocks)

    def lift_periodic(self, word: Sequence[int]) -> Word:
        """Block word whose repetition codes the repetition of `word`."""
        w = tuple(word)
        if not w:
            raise ValueError("empty word")
        m = self.block_len
        rep = w * (-(-(len(w) + m) // len(w)))
        index = {b: j for j, b in enumerate(self.blocks)}
        try:
            lifted = tuple(index[rep[s : s + m]] for s in range(len(w)))
        except KeyError:
            raise InadmissibleSignal(f"periodic signal {w} contains a forbidden word") from None
        if not is_periodic(self.constraint, lifted):
            raise InadmissibleSignal(f"periodic signal {w} is not admissible")
        return lifted


def higher_block_recode(c: Constraint, forbidden) -> Recoding:
    """Recode `c` with extra forbidden words as an SFT over letter blocks.

    With forbidden words of maximal length ``m`` (at least 2) the new letters
    are the admissible blocks of length ``m - 1``; block ``u`` may be followed
    by ``v`` when they overlap (``u[1:] == v[:-1]``) and ``u + v[-1:]`` avoids
    every forbidden word.  Sinks are pruned afterwards.

    Raises
    ------
    EmptyConstraint
        If no infinite signal avoids the forbidden words.
    """
    if c.kind == ORBITS:
        raise TypeError("forbidden-word recoding needs a free or SFT base")
    forbidden = [tuple(int(i) for i in w) for w in forbidden]
    if any(not w for w in forbidden):
        raise ValueError("forbidden words must be non-empty")
    if not forbidden:
        return Recoding(c, tuple((a,) for a in range(c.size)), 1)
    m = max(2, max(len(w) for w in forbidden))
    base = np.ones((c.size, c.size), dtype=np.int64) if c.kind == FREE else c.transition
    bad = set(forbidden)

    def clean(word):
        if any(not base[a, b] for a, b in zip(word, word[1:])):
            return False
        return not any(word[i:j] in bad for i in range(len(word)) for j in range(i + 1, len(word) + 1))

    blocks = [b for b in itertools.product(range(c.size), repeat=m - 1) if clean(b)]
    if not blocks:
        raise EmptyConstraint("every block contains a forbidden word")
    t = np.zeros((len(blocks), len(blocks)), dtype=np.int64)
    for i, u in enumerate(blocks):
        for j, v in enumerate(blocks):
            if u[1:] == v[:-1] and clean(u + v[-1:]):
                t[i, j] = 1
    pruned, kept = prune_sinks(Constraint.sft(t))
    return Recoding(pruned, tuple(blocks[k] for k in kept), m - 1)
