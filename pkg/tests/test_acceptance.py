"""Acceptance criteria, one test each; every test records a PASS/FAIL line.

The lines are printed as they happen (visible with ``-s``) and repeated in the
terminal summary. Time limits are part of each criterion.
"""

from __future__ import annotations

import itertools
import math
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
from qeccforge.aqecc import delta, expected_M_bound, gamma_vector, infidelity_bound
from qeccforge.classical import hamming_ball_volume, random_code
from qeccforge.construct import build_logical_qubit, build_logical_qudit
from qeccforge.examples import golden, run_example
from qeccforge.feasibility import dines_solve, phase_one
from qeccforge.groundspace import (
    Tn_blocks,
    count_Tn,
    enumerate_Tn,
    equivalence_oracle,
    gv_threshold,
    justesen_threshold,
    kernel_dimension,
    kernel_dimension_closed,
)
from qeccforge.pauli import PauliLabel
from qeccforge.perminv import counting_inequality, dicke_expectation, min_n
from qeccforge.quantum import LogicalState, QuantumCode
from qeccforge.verify import kl_verify

RESULTS: list[str] = []


def record(num: int, ok: bool, detail: str, elapsed: float | None = None, limit: float | None = None) -> bool:
    if limit is not None and elapsed is not None and elapsed >= limit:
        ok = False
        detail += f"; time {elapsed:.2f} s over the {limit:g} s limit"
    elif elapsed is not None:
        detail += f"; {elapsed:.2f} s"
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line, flush=True)
    return ok


def _supports(code):
    return [set(s.support) for s in code.states]


def test_criterion_01_steane():
    t = time.perf_counter()
    rep = run_example("steane")
    entry = golden()["steane"]
    want = [{tuple(int(c) for c in w) for w in ws} for ws in entry["states"]]
    code = rep.code
    ok = (
        rep.ok
        and code.provenance["backend"] == "exact"
        and code.provenance["kernel_dim"] == 1
        and _supports(code) == want
        and all(p == Fraction(1, 8) for s in code.states for p in s.amp_sq)
        and sum(len(s) for s in want) == 16
    )
    el = time.perf_counter() - t
    assert record(1, ok, f"kernel dim {code.provenance['kernel_dim']}, supports 8+8, amp^2 = 1/8 exact", el, 5.0)


def test_criterion_02_negative_controls():
    t = time.perf_counter()
    c422 = run_example("c422")
    t422 = time.perf_counter() - t
    t = time.perf_counter()
    c633 = run_example("c633")
    t633 = time.perf_counter() - t
    want = [{tuple(int(c) for c in w) for w in ws} for ws in golden()["c633"]["states"]]
    ok = (
        c422.ok
        and c422.checks.get("no_code") is True
        and c633.ok
        and c633.checks.get("trivial_at") is True
        and _supports(c633.code) == want
        and all(p == Fraction(1, 4) for s in c633.code.states for p in s.amp_sq)
        and t422 < 5
        and t633 < 5
    )
    detail = f"[4,2,2] no code ({t422:.2f} s); [6,3,3] trivial at d_Z=3, 4+4 code at d_Z=2 ({t633:.2f} s)"
    assert record(2, ok, detail)


def test_criterion_03_cyclic():
    t = time.perf_counter()
    rep = run_example("cyclic482")
    code = rep.code
    kl = kl_verify(code, 2, 2)
    ok = rep.ok and rep.checks["kernel_dim"] == 3 and code.dimension == 4 and kl.passed
    el = time.perf_counter() - t
    assert record(3, ok, f"kernel dim {rep.checks['kernel_dim']}, {code.dimension} states, KL at d=2 {kl.passed}", el, 5.0)


def test_criterion_04_ground_space_embeddings():
    t = time.perf_counter()
    parts = []
    ok = True
    for name, d in (("steane-embedded", 3), ("spin8", 3), ("spin6", 2)):
        rep = run_example(name)
        kl = rep.checks["kl"]
        good = rep.ok and rep.checks["supports_in_Tn"] and kl["passed"] and kl["d_x"] == kl["d_z"] == d
        if name == "spin8":
            full = hamming_ball_volume(5, 8, 2) ** 2
            good = good and kl["paulis"] == full
            parts.append(f"{name} d={d} {good} ({kl['paulis']} Paulis)")
        else:
            parts.append(f"{name} d={d} {good}")
        ok = ok and good
    el = time.perf_counter() - t
    assert record(4, ok, ", ".join(parts), el, 60.0)


def test_criterion_05_mutation_sensitivity(hamming):
    t = time.perf_counter()
    code = build_logical_qubit(hamming, 3, 3)
    caught_flip = caught_drop = 0
    for si, st in enumerate(code.states):
        for k in range(len(st.support)):
            amps = list(st.amplitudes)
            amps[k] = -amps[k]
            flipped = LogicalState(st.label, st.support, tuple(amps))
            states = list(code.states)
            states[si] = flipped
            if not kl_verify(QuantumCode(2, 7, 3, 3, tuple(states))).passed:
                caught_flip += 1
            words = st.support[:k] + st.support[k + 1 :]
            dropped = LogicalState.from_weights(st.label, words, [1] * len(words))
            states[si] = dropped
            if not kl_verify(QuantumCode(2, 7, 3, 3, tuple(states))).passed:
                caught_drop += 1
    el = time.perf_counter() - t
    ok = caught_flip == 16 and caught_drop == 16
    detail = f"sign flips caught {caught_flip}/16, dropped codewords caught {caught_drop}/16"
    assert record(5, ok, detail, el, 30.0)


def test_criterion_06_oracle_equivalence():
    t = time.perf_counter()
    bad = []
    cases = [(1, n) for n in range(1, 11)] + [(2, n) for n in range(1, 9)]
    for s, n in cases:
        res = equivalence_oracle(s, n)
        closed = round(kernel_dimension_closed(s, n))
        if not (res.component_count == closed == kernel_dimension(s, n) and res.one_irreducible_each and res.canonical_constant):
            bad.append((s, n))
    el = time.perf_counter() - t
    ok = not bad
    assert record(6, ok, f"{len(cases)} (s, n) cases, mismatches {bad}", el, 120.0)


def test_criterion_07_counting_identities():
    t = time.perf_counter()
    bad = []
    for s in (1, 2, 3):
        for n in range(0, 11):
            if n <= 6:
                size = sum(1 for _ in enumerate_Tn(s, n))
            else:
                size = sum(len(b) for b in Tn_blocks(s, n))
            if size != count_Tn(s, n):
                bad.append((s, n, size))
            if s == 1 and size != n + 1:
                bad.append((s, n, size))
    kd_ok = all(kernel_dimension(1, n) == (n + 1) * (n + 2) // 2 for n in range(51))
    el = time.perf_counter() - t
    ok = not bad and kd_ok
    assert record(7, ok, f"enumeration vs recursion mismatches {bad}, kernel_dimension(1, n) exact {kd_ok}", el)


def test_criterion_08_feasibility_equivalence():
    t = time.perf_counter()
    rng = np.random.default_rng(20240808)
    disagree = feasible = 0
    for _ in range(500):
        r, c = int(rng.integers(1, 7)), int(rng.integers(1, 9))
        m = rng.integers(-1, 2, size=(r, c))
        d = dines_solve(m).feasible
        p = phase_one(m.tolist()) is not None
        feasible += p
        disagree += d != p
    el = time.perf_counter() - t
    assert record(8, disagree == 0, f"500 systems, {feasible} feasible, disagreements {disagree}", el)


def test_criterion_09_random_codes():
    t = time.perf_counter()
    rng = np.random.default_rng(99)
    valid = halted = 0
    for trial in range(100):
        n = int(rng.integers(4, 11))
        rho = 2 * hamming_ball_volume(2, n, 1)
        m = int(rng.integers(rho, min(2**n, 3 * rho) + 1))
        code = random_code(2, n, m, seed=trial)
        qc = build_logical_qubit(code, 1, 2)
        valid += kl_verify(qc, 1, 2, keep_c_values=False).passed
        multi = build_logical_qudit(code, 1, 2, 3)
        halted += multi.provenance["halted"] is not None
    el = time.perf_counter() - t
    ok = valid == 100
    detail = f"Algorithm 1 KL-valid {valid}/100; Algorithm 2 halting rate {halted}/100 (measured)"
    assert record(9, ok, detail, el)


def test_criterion_10_bound_evaluators(tmp_path):
    t = time.perf_counter()
    gv = [gv_threshold(s) for s in range(1, 21)]
    js = [justesen_threshold(s) for s in range(1, 21)]
    nondecreasing = all(b >= a for a, b in zip(gv, gv[1:]))
    js_ok = all(v <= 0.055 for v in js)
    outs = []
    for i in range(2):
        p = tmp_path / f"gv{i}.csv"
        subprocess.run(
            [sys.executable, "-m", "qeccforge.cli", "groundspace", "bounds", "--construct", "gv", "--out", str(p)],
            check=True,
        )
        outs.append(p.read_bytes())
    deterministic = outs[0] == outs[1]
    el = time.perf_counter() - t
    ok = nondecreasing and js_ok and deterministic
    detail = (
        f"gv nondecreasing {nondecreasing} (tau(1)={gv[0]:.5f}, tau(20)={gv[-1]:.5f}), "
        f"justesen <= 0.055 {js_ok}, CSV deterministic {deterministic}"
    )
    assert record(10, ok, detail, el, 5.0)


def test_criterion_11_permutation_invariant():
    t = time.perf_counter()
    threshold = min_n(3) == 42 and counting_inequality(42, 3) and not counting_inequality(41, 3)
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 9))
        a = tuple(int(x) for x in rng.integers(0, 2, n))
        b = tuple(int(x) for x in rng.integers(0, 2, n))
        perm = rng.permutation(n)
        w = int(rng.integers(0, n + 1))
        p = PauliLabel(a, b, 2)
        pp = PauliLabel(tuple(a[i] for i in perm), tuple(b[i] for i in perm), 2)
        worst = max(worst, abs(dicke_expectation(n, w, p) - dicke_expectation(n, w, pp)))
    el = time.perf_counter() - t
    ok = threshold and worst <= 1e-12
    assert record(11, ok, f"d=3 threshold n >= {min_n(3)}, invariance worst deviation {worst:.1e} over 200 pairs", el)


def test_criterion_12_aqecc(cyclic):
    t = time.perf_counter()
    code = build_logical_qudit(cyclic, 2, 2)
    pairs = [QuantumCode(code.q, code.n, 2, 2, code.states[i : i + 2]) for i in (0, 2)]
    dl = delta([gamma_vector(p, pair_index=i) for i, p in enumerate(pairs)])
    deltas = np.linspace(0.01, 2.0, 50)
    mono = True
    for q, n, dz in itertools.product((2, 3, 4), (5, 7), (2, 3)):
        em = [expected_M_bound(10_000, q, n, dz, d) for d in deltas]
        inf = [infidelity_bound(d, q, n, dz) for d in deltas]
        by_m = [expected_M_bound(m, q, n, dz, 1.5) for m in range(100, 10_000, 250)]
        mono = mono and all(y >= x for x, y in itertools.pairwise(em))
        mono = mono and all(y > x for x, y in itertools.pairwise(inf))
        mono = mono and all(y >= x for x, y in itertools.pairwise(by_m))
    el = time.perf_counter() - t
    ok = math.isclose(dl, 0.0, abs_tol=1e-12) and mono
    assert record(12, ok, f"delta within one code {dl:.1e}, monotone on grid {mono}", el)

