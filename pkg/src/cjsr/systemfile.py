"""JSON system files.

A system file names the alphabet, one ``d x d`` matrix per letter with
entries written as ``[re, im]`` pairs, and a constraint::

    {
      "schema": "cjsr/1",
      "d": 2,
      "alphabet": ["0", "1"],
      "matrices": {"0": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]],
                   "1": [[[0, 0], [0, 0]], [[0, 0], [1, 0]]]},
      "constraint": {"type": "sft", "transition": [[0, 1], [1, 0]]}
    }

Constraint types are ``free``, ``sft`` (with ``transition``), ``orbits``
(with ``periods``) and ``forbidden`` (with ``words``, optionally on top of
an SFT ``transition``).  Words are label strings such as ``"01"`` or
``"a,b"``, in application order: the first letter acts first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .constraint import Alphabet, Constraint, Cycle, Recoding, higher_block_recode
from .system import SwitchedSystem

__all__ = ["SCHEMA", "SystemFileError", "SystemFile", "Problem"]

SCHEMA = "cjsr/1"
CONSTRAINT_TYPES = ("free", "sft", "orbits", "forbidden")


class SystemFileError(ValueError):
    """Malformed or inconsistent system file; the message names the field."""


def _fail(path: str, msg: str):
    raise SystemFileError(f"{path}: {msg}")


def _entry(value, path):
    if isinstance(value, bool):
        _fail(path, "expected a number or [re, im] pair")
    if isinstance(value, (int, float)):
        return complex(value, 0.0)
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
    ):
        return complex(value[0], value[1])
    _fail(path, "expected a number or [re, im] pair")


def _matrix(value, d, path) -> np.ndarray:
    if not isinstance(value, list) or len(value) != d:
        _fail(path, f"expected {d} rows")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != d:
            _fail(f"{path}[{i}]", f"expected {d} entries")
        rows.append([_entry(v, f"{path}[{i}][{j}]") for j, v in enumerate(row)])
    m = np.array(rows, dtype=np.complex128)
    if not np.all(np.isfinite(m)):
        _fail(path, "entries must be finite")
    return m


def _words(value, alphabet: Alphabet, path) -> tuple:
    if not isinstance(value, list):
        _fail(path, "expected a list of words")
    out = []
    for i, w in enumerate(value):
        try:
            out.append(alphabet.parse_word(w))
        except (KeyError, ValueError) as exc:
            _fail(f"{path}[{i}]", str(exc).strip("'\""))
    return tuple(out)


def _transition(value, k, path) -> np.ndarray:
    if not isinstance(value, list) or len(value) != k:
        _fail(path, f"expected a {k}x{k} 0/1 matrix")
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != k:
            _fail(f"{path}[{i}]", f"expected {k} entries")
        for j, v in enumerate(row):
            if v not in (0, 1) or isinstance(v, float) and v not in (0.0, 1.0):
                _fail(f"{path}[{i}][{j}]", "entries must be 0 or 1")
    return np.array(value, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class SystemFile:
    alphabet: Alphabet
    matrices: tuple  # one read-only complex array per letter
    constraint_type: str
    transition: np.ndarray | None = None
    words: tuple = ()

    @property
    def d(self) -> int:
        return self.matrices[0].shape[0]

    @classmethod
    def from_dict(cls, data) -> "SystemFile":
        if not isinstance(data, dict):
            _fail("$", "expected a JSON object")
        schema = data.get("schema", SCHEMA)
        if schema != SCHEMA:
            _fail("schema", f"unsupported schema {schema!r}, expected {SCHEMA!r}")
        d = data.get("d")
        if not isinstance(d, int) or isinstance(d, bool) or d < 1:
            _fail("d", "expected a positive integer")
        labels = data.get("alphabet")
        if not isinstance(labels, list) or not labels or not all(isinstance(x, str) for x in labels):
            _fail("alphabet", "expected a non-empty list of label strings")
        try:
            alphabet = Alphabet(tuple(labels))
        except ValueError as exc:
            _fail("alphabet", str(exc))
        mats = data.get("matrices")
        if not isinstance(mats, dict):
            _fail("matrices", "expected an object mapping labels to matrices")
        extra = set(mats) - set(alphabet.labels)
        if extra:
            _fail("matrices", f"labels not in alphabet: {sorted(extra)}")
        matrices = []
        for label in alphabet.labels:
            if label not in mats:
                _fail(f"matrices.{label}", "missing matrix")
            m = _matrix(mats[label], d, f"matrices.{label}")
            m.setflags(write=False)
            matrices.append(m)

        cdef = data.get("constraint", "free")
        if isinstance(cdef, str):
            cdef = {"type": cdef}
        if not isinstance(cdef, dict):
            _fail("constraint", "expected an object or \"free\"")
        kind = cdef.get("type")
        if kind not in CONSTRAINT_TYPES:
            _fail("constraint.type", f"expected one of {list(CONSTRAINT_TYPES)}")
        k = alphabet.size
        transition, words = None, ()
        if kind == "sft" or (kind == "forbidden" and "transition" in cdef):
            if "transition" not in cdef:
                _fail("constraint.transition", "missing")
            transition = _transition(cdef["transition"], k, "constraint.transition")
            transition.setflags(write=False)
        if kind == "orbits":
            if "periods" not in cdef:
                _fail("constraint.periods", "missing")
            words = _words(cdef["periods"], alphabet, "constraint.periods")
            if not words:
                _fail("constraint.periods", "need at least one period")
        if kind == "forbidden":
            if "words" not in cdef:
                _fail("constraint.words", "missing")
            words = _words(cdef["words"], alphabet, "constraint.words")
        return cls(alphabet, tuple(matrices), kind, transition, words)

    @classmethod
    def loads(cls, text: str) -> "SystemFile":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SystemFileError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        return cls.from_dict(data)

    @classmethod
    def load(cls, path) -> "SystemFile":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise SystemFileError(f"{path}: {exc.strerror}") from None
        return cls.loads(text)

    def to_dict(self) -> dict:
        def enc(m):
            return [[[float(z.real), float(z.imag)] for z in row] for row in m]

        cdef: dict = {"type": self.constraint_type}
        if self.transition is not None:
            cdef["transition"] = self.transition.tolist()
        if self.constraint_type == "orbits":
            cdef["periods"] = [self.alphabet.format_word(w) for w in self.words]
        if self.constraint_type == "forbidden":
            cdef["words"] = [self.alphabet.format_word(w) for w in self.words]
        return {
            "schema": SCHEMA,
            "d": self.d,
            "alphabet": list(self.alphabet.labels),
            "matrices": {lab: enc(m) for lab, m in zip(self.alphabet.labels, self.matrices)},
            "constraint": cdef,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def __eq__(self, other):
        if not isinstance(other, SystemFile):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    __hash__ = None

    @classmethod
    def from_system(cls, sys: SwitchedSystem, constraint: Constraint) -> "SystemFile":
        mats = tuple(np.array(m) for m in sys.matrices)
        if constraint.kind == "free":
            return cls(sys.alphabet, mats, "free")
        if constraint.kind == "sft":
            return cls(sys.alphabet, mats, "sft", np.array(constraint.transition))
        return cls(sys.alphabet, mats, "orbits", None, constraint.periods)

    def build(self) -> "Problem":
        """Validated system plus constraint, recoding forbidden words.

        Raises EmptyConstraint when the constraint admits no signal.
        """
        sys = SwitchedSystem(self.alphabet, list(self.matrices))
        k = self.alphabet.size
        if self.constraint_type == "free":
            c = Constraint.free(k)
        elif self.constraint_type == "sft":
            c = Constraint.sft(self.transition)
        elif self.constraint_type == "orbits":
            c = Constraint.orbits(k, self.words)
        else:
            base = Constraint.free(k) if self.transition is None else Constraint.sft(self.transition)
            rec = higher_block_recode(base, self.words)
            lifted = SwitchedSystem(
                Alphabet(rec.block_labels(self.alphabet.labels)), list(rec.lift_matrices(sys.matrices))
            )
            return Problem(self.alphabet, sys, lifted, rec.constraint, rec)
        c.letters()  # surfaces EmptyConstraint early
        return Problem(self.alphabet, sys, sys, c, None)


@dataclass(frozen=True)
class Problem:
    """What the analyses run on.

    ``system`` and ``constraint`` are the working pair (over letter blocks
    when forbidden words were recoded); ``base`` and ``alphabet`` are the
    system as written in the file.
    """

    alphabet: Alphabet
    base: SwitchedSystem
    system: SwitchedSystem
    constraint: Constraint
    recoding: Recoding | None = None

    def to_letters(self, word) -> tuple:
        if word is None:
            return None
        word = tuple(word)
        return self.recoding.project(word) if self.recoding is not None else word

    def format_word(self, word) -> str | None:
        if word is None:
            return None
        return self.alphabet.format_word(self.to_letters(word))

    def format_cycle(self, cycle: Cycle | None) -> str | None:
        if cycle is None:
            return None
        return self.alphabet.format_word(Cycle(self.to_letters(cycle.word)).word)

    def parse_cycle(self, text: str) -> Cycle:
        """Cycle in working letters from a word written in file labels."""
        w = self.alphabet.parse_word(text)
        if self.recoding is not None:
            w = self.recoding.lift_periodic(w)
        return Cycle(w)
