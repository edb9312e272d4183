import json
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from cjsr import Constraint, SwitchedSystem  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("default")

SYSTEMS = Path(__file__).resolve().parent.parent / "demos" / "systems"

S0 = np.array([[1, 0], [0, 0]], dtype=complex)
S1 = np.array([[0, 0], [0, 1]], dtype=complex)
A0 = np.array([[1, 1], [0, 1]], dtype=complex)
A1 = np.array([[1, 0], [1, 1]], dtype=complex)
ALT = [[0, 1], [1, 0]]
PHI = (1 + 5**0.5) / 2


@pytest.fixture
def projectors():
    return SwitchedSystem.from_matrices([S0, S1])


@pytest.fixture
def pair():
    return SwitchedSystem.from_matrices([A0, A1])


@pytest.fixture
def alternating():
    return Constraint.sft(ALT)


@pytest.fixture
def systems_dir():
    return SYSTEMS


def write_system(path, mats, constraint, labels=None):
    mats = [np.asarray(m, dtype=complex) for m in mats]
    labels = labels or [str(i) for i in range(len(mats))]
    doc = {
        "schema": "cjsr/1",
        "d": mats[0].shape[0],
        "alphabet": labels,
        "matrices": {
            lab: [[[z.real, z.imag] for z in row] for row in m] for lab, m in zip(labels, mats)
        },
        "constraint": constraint,
    }
    Path(path).write_text(json.dumps(doc))
    return path


def irreducible_sft(rng, k):
    t = (rng.random((k, k)) < 0.5).astype(int)
    for i in range(k):
        t[i, (i + 1) % k] = 1
    return t


@st.composite
def small_systems(draw, max_d=3, max_k=3, complex_entries=False):
    """(matrices, transition) with entries in [-1, 1]."""
    d = draw(st.integers(1, max_d))
    k = draw(st.integers(1, max_k))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    mats = rng.uniform(-1, 1, (k, d, d))
    if complex_entries:
        mats = mats + 1j * rng.uniform(-1, 1, (k, d, d))
    if draw(st.booleans()):
        t = np.ones((k, k), dtype=int)
    else:
        t = irreducible_sft(rng, k)
    return mats, t


def constraint_of(t):
    t = np.asarray(t)
    return Constraint.free(t.shape[0]) if t.all() else Constraint.sft(t)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
