"""Acceptance criteria, one check per criterion.

Each ``criterion_k`` returns ``(passed, detail)``.  Under pytest every
criterion is a test and the pass/fail lines are printed in the terminal
summary; ``python tests/test_acceptance.py`` prints the same lines directly.
"""

import io
import json
import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cjsr import Constraint, SwitchedSystem, depth_sweep, jsr_bounds, rho_n  # noqa: E402
from cjsr.cli import main  # noqa: E402
from cjsr.lyapunov import random_admissible_signal  # noqa: E402
from cjsr.matcore import norm  # noqa: E402
from cjsr.stability import (  # noqa: E402
    check_condition_c,
    decay_slack,
    envelope_violations,
    simulate_decay,
)

import oracle  # noqa: E402

SYSTEMS = Path(__file__).resolve().parent.parent / "demos" / "systems"
ALT_PROJ = str(SYSTEMS / "projectors_alternating.json")
FREE_PROJ = str(SYSTEMS / "projectors_free.json")
PAIR = str(SYSTEMS / "pair_free.json")

GOLDEN_ROOT = math.sqrt((3 + math.sqrt(5)) / 2)
SEED = 1729
N_SYSTEMS = 50

RESULTS: dict = {}


def _cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def _cli_files(out_dir, *argv):
    code, _ = _cli(*argv, "--out", str(out_dir))
    files = {p.name: p.read_bytes() for p in sorted(Path(out_dir).iterdir())}
    return code, files


def random_cases():
    """The 50 random systems, each paired with Free and an irreducible SFT."""
    rng = np.random.default_rng(SEED)
    cases = []
    for _ in range(N_SYSTEMS):
        d = int(rng.integers(1, 4))
        k = int(rng.integers(1, 4))
        mats = rng.uniform(-1, 1, (k, d, d))
        t = (rng.random((k, k)) < 0.5).astype(int)
        for i in range(k):
            t[i, (i + 1) % k] = 1  # Hamiltonian cycle keeps it irreducible
        cases.append((mats, np.ones((k, k), dtype=int)))
        cases.append((mats, t))
    return cases


def _constraint(t):
    return Constraint.free(t.shape[0]) if t.all() else Constraint.sft(t)


def criterion_1(tmp):
    t0 = time.perf_counter()
    code, files = _cli_files(tmp, "bounds", ALT_PROJ, "--tol", "0")
    elapsed = time.perf_counter() - t0
    s = json.loads(files["summary.json"])
    row1, row2 = s["rows"][0], s["rows"][1]
    ok = (
        code == 0
        and s["lb"] == 0.0
        and s["ub"] == 0.0
        and row2["zero_product"]
        and 2 in s["zero_product_depths"]
        and row1["rho_n"] == 1.0
        and elapsed < 1.0
    )
    return ok, f"lb={s['lb']} ub={s['ub']} zero_product@2={row2['zero_product']} rho_1={row1['rho_n']} t={elapsed:.3f}s"


def criterion_2(tmp):
    t0 = time.perf_counter()
    code_b, files = _cli_files(tmp, "bounds", FREE_PROJ)
    code_s, text = _cli("stability", FREE_PROJ)
    elapsed = time.perf_counter() - t0
    s = json.loads(files["summary.json"])
    v = json.loads(text)
    ok = (
        code_b == 0
        and abs(s["lb"] - 1) <= 1e-9
        and abs(s["ub"] - 1) <= 1e-9
        and s["ub_depth"] == 1
        and code_s == 3
        and v["witness"] == "0"
        and v["witness_kind"] == "cycle"
        and elapsed < 1.0
    )
    return ok, f"lb={s['lb']} ub={s['ub']} depth={s['ub_depth']} exit={code_s} witness={v['witness']!r} t={elapsed:.3f}s"


def criterion_3(tmp):
    t0 = time.perf_counter()
    code, files = _cli_files(tmp, "bounds", PAIR, "--depth", "20", "--threads", "1")
    elapsed = time.perf_counter() - t0
    s = json.loads(files["summary.json"])
    lb, ub = s["lb"], s["ub"]
    # 1.618034 is phi rounded to six decimals; containment is read at that precision
    contains = lb - 5e-7 <= 1.618034 <= ub + 5e-7
    ok = (
        code == 0
        and contains
        and ub - lb <= 1e-2
        and s["lb_witness"] == "0,1"
        and abs(lb - GOLDEN_ROOT) <= 1e-8
        and elapsed < 30.0
    )
    return ok, f"lb={lb!r} ub={ub!r} width={ub - lb:.3g} witness={s['lb_witness']} |lb-oracle|={abs(lb - GOLDEN_ROOT):.2g} t={elapsed:.2f}s"


def criterion_4():
    t0 = time.perf_counter()
    bad = []
    for idx, (mats, t) in enumerate(random_cases()):
        sys_ = SwitchedSystem.from_matrices(mats)
        c = _constraint(t)
        r = jsr_bounds(sys_, c, max_depth=10, tol=0)
        if not r.lb <= r.ub + 1e-9:
            bad.append((idx, "lb>ub"))
        rows = list(depth_sweep(sys_, c, 10))
        for row in rows:
            rn = rho_n(sys_, c, row.n)[0]
            if not rn <= row.rho_hat + 1e-9:
                bad.append((idx, f"rho_n>rho_hat at {row.n}"))
        for row in rows[:8]:
            words = oracle.admissible(t, row.n)
            values = [np.linalg.norm(oracle.product(mats, w), 2) for w in words]
            top = max(values)
            witness = words[values.index(top)]
            if (row.rho_hat, row.witness) != (top ** (1.0 / row.n) if top > 0 else 0.0, witness):
                bad.append((idx, f"oracle mismatch at {row.n}"))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 300
    return ok, f"{2 * N_SYSTEMS} cases, violations={bad[:3]} t={elapsed:.1f}s"


def _stable_cases():
    for mats, t in random_cases():
        sys_ = SwitchedSystem.from_matrices(mats)
        c = _constraint(t)
        r = jsr_bounds(sys_, c, max_depth=10, tol=0)
        if r.ub < 0.95:
            yield sys_, c, r


def criterion_5(slack="literal"):
    """Condition (c) plus the decay envelope.

    ``slack="literal"`` uses ``C = N log(beta_max) + 1``; ``"sound"`` uses
    ``C = N log(beta_max / lambda) + 1``.
    """
    t0 = time.perf_counter()
    count = c_fail = traces = violating = 0
    for sys_, c, r in _stable_cases():
        count += 1
        N, lam = r.ub_depth, r.ub
        holds, _ = check_condition_c(sys_, c, N, (lam + 1) / 2, 3 * N)
        c_fail += not holds
        beta = max(norm(m) for m in sys_.matrices)
        C = decay_slack(N, beta) if slack == "literal" else decay_slack(N, beta, lam)
        for seed in range(20):
            signal = random_admissible_signal(c, 4 * N, seed)
            trace = simulate_decay(sys_, c, signal, 4 * N)
            traces += 1
            violating += bool(envelope_violations(trace, lam, N, C))
    elapsed = time.perf_counter() - t0
    ok = count > 0 and c_fail == 0 and violating == 0 and elapsed < 300
    return ok, (
        f"{count} systems with ub<0.95, condition (c) failures={c_fail}, "
        f"envelope ({slack} C) violated on {violating}/{traces} traces t={elapsed:.1f}s"
    )


def criterion_6():
    code_sft, v1 = _cli("stability", ALT_PROJ)
    code_free, v2 = _cli("stability", FREE_PROJ)
    s1, s2 = json.loads(v1)["status"], json.loads(v2)["status"]
    ok = code_sft == 0 and code_free == 3 and s1 == "CertifiedStable" and s2 == "CertifiedUnstable"
    return ok, f"alternating SFT: exit {code_sft} {s1}; free: exit {code_free} {s2}"


def criterion_7(tmp):
    runs = [
        ("bounds", ALT_PROJ, "--tol", "0"),
        ("bounds", FREE_PROJ),
        ("stability", FREE_PROJ),
        ("bounds", PAIR, "--depth", "20"),
        ("bounds", PAIR, "--depth", "20", "--tol", "0"),
    ]
    diffs = []
    for i, argv in enumerate(runs):
        outs = [_cli_files(Path(tmp) / f"{i}_{th}", *argv, "--threads", th) for th in ("1", "8")]
        if outs[0] != outs[1]:
            diffs.append(" ".join(argv[:2]))
    return not diffs, f"{len(runs)} runs compared, differing={diffs}"


def _record(k, result):
    RESULTS[k] = result
    return result


def test_criterion_1_alternating_projectors(tmp_path):
    ok, detail = _record(1, criterion_1(tmp_path))
    assert ok, detail


def test_criterion_2_free_projectors(tmp_path):
    ok, detail = _record(2, criterion_2(tmp_path))
    assert ok, detail


def test_criterion_3_berger_wang(tmp_path):
    ok, detail = _record(3, criterion_3(tmp_path))
    assert ok, detail


def test_criterion_4_interval_consistency():
    ok, detail = _record(4, criterion_4())
    assert ok, detail


@pytest.mark.xfail(
    strict=True,
    reason="C = N log(beta_max) + 1 is negative when beta_max < e^(-1/N); the envelope then "
    "fails at n = N for signals close to the extremal word",
)
def test_criterion_5_soundness_chain():
    ok, detail = _record(5, criterion_5("literal"))
    assert ok, detail


def test_criterion_5_sound_slack_variant():
    ok, detail = criterion_5("sound")
    RESULTS["5*"] = (ok, detail)
    assert ok, detail


def test_criterion_6_constraint_sensitivity():
    ok, detail = _record(6, criterion_6())
    assert ok, detail


def test_criterion_7_determinism(tmp_path):
    ok, detail = _record(7, criterion_7(tmp_path))
    assert ok, detail


def report_lines(results=None):
    results = RESULTS if results is None else results
    lines = []
    for k in sorted(results, key=str):
        ok, detail = results[k]
        label = "criterion 5 (sound slack variant)" if k == "5*" else f"criterion {k}"
        lines.append(f"{label}: {'PASS' if ok else 'FAIL'}  {detail}")
    return lines


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        for k, fn in [(1, criterion_1), (2, criterion_2), (3, criterion_3), (7, criterion_7)]:
            (tmp / str(k)).mkdir()
            RESULTS[k] = fn(tmp / str(k))
        RESULTS[4] = criterion_4()
        RESULTS[5] = criterion_5("literal")
        RESULTS["5*"] = criterion_5("sound")
        RESULTS[6] = criterion_6()
    print("\n".join(report_lines()))
