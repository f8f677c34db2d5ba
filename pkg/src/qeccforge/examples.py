"""Reference examples with stored expectations, used as a regression gate."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any

from qeccforge.classical import ClassicalCode, is_allowed, parse_code
from qeccforge.construct import TrivialKernel, build_logical_qubit, build_logical_qudit
from qeccforge.groundspace import embed_and_check, support_ground_check
from qeccforge.quantum import QuantumCode, uniform_state
from qeccforge.verify import certify_distance, kl_verify

EXAMPLES = ("steane", "c633", "c422", "cyclic482", "steane-embedded", "spin8", "spin6")


@dataclass
class ExampleReport:
    name: str
    ok: bool
    checks: dict[str, Any] = field(default_factory=dict)
    diffs: list[str] = field(default_factory=list)
    elapsed: float = 0.0
    code: QuantumCode | None = None

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "ok": self.ok,
            "checks": self.checks,
            "diffs": self.diffs,
            "elapsed_s": round(self.elapsed, 3),
        }


def _data(name: str) -> str:
    return resources.files("qeccforge").joinpath("data", name).read_text()


def golden() -> dict[str, Any]:
    return json.loads(_data("golden.json"))


def load_input(name: str) -> ClassicalCode:
    return parse_code(_data(name))


def _words(strings: list[str]) -> list[tuple[int, ...]]:
    return [tuple(int(ch) for ch in s) for s in strings]


def _fmt(word) -> str:
    return "".join(str(x) for x in word) if all(0 <= x < 10 for x in word) else " ".join(map(str, word))


def _compare_states(code: QuantumCode, expected: list[list[str]], unordered: bool, diffs: list[str]) -> None:
    want = [set(_words(s)) for s in expected]
    got = [set(st.support) for st in code.states]
    if unordered:
        want_k = sorted(sorted(s) for s in want)
        got_k = sorted(sorted(s) for s in got)
        if want_k != got_k:
            diffs.append(f"supports {[[_fmt(w) for w in s] for s in got_k]} != expected {[[_fmt(w) for w in s] for s in want_k]}")
        return
    if len(want) != len(got):
        diffs.append(f"{len(got)} logical states, expected {len(want)}")
        return
    for i, (g, w) in enumerate(zip(got, want)):
        if g != w:
            extra = sorted(_fmt(x) for x in g - w)
            missing = sorted(_fmt(x) for x in w - g)
            diffs.append(f"state {i}: unexpected {extra}, missing {missing}")


def _compare_amps(code: QuantumCode, amp_sq: str, exact: bool, diffs: list[str]) -> None:
    target = Fraction(amp_sq)
    for st in code.states:
        if exact:
            if st.amp_sq is None or any(p != target for p in st.amp_sq):
                diffs.append(f"state {st.label}: squared amplitudes {st.amp_sq} != {target}")
        elif any(abs(a * a - float(target)) > 1e-9 for a in st.amplitudes):
            diffs.append(f"state {st.label}: amplitudes {st.amplitudes} != sqrt({target})")


def _kl(code: QuantumCode, d_x: int, d_z: int, checks: dict, diffs: list[str], key: str = "kl") -> None:
    rep = kl_verify(code, d_x, d_z)
    checks[key] = {"d_x": d_x, "d_z": d_z, "passed": rep.passed, "paulis": rep.paulis_checked}
    if not rep.passed:
        diffs.append(f"KL check failed at d_X={d_x}, d_Z={d_z}: {rep.summary()}")


def _run_qubit(entry: dict, checks: dict, diffs: list[str]) -> QuantumCode | None:
    code = load_input(entry["input"])
    if "trivial_at" in entry:
        t = entry["trivial_at"]
        try:
            build_logical_qubit(code, t["d_x"], t["d_z"], backend="exact")
            diffs.append(f"expected a trivial kernel at d_X={t['d_x']}, d_Z={t['d_z']}")
            checks["trivial_at"] = False
        except TrivialKernel:
            checks["trivial_at"] = True
    if entry.get("no_code"):
        try:
            build_logical_qubit(code, entry["d_x"], entry["d_z"], backend="exact")
            diffs.append("expected no code, but a kernel vector was found")
            checks["no_code"] = False
        except TrivialKernel:
            checks["no_code"] = True
        return None
    qc = build_logical_qubit(code, entry["d_x"], entry["d_z"], backend="exact")
    checks["kernel_dim"] = qc.provenance["kernel_dim"]
    if qc.provenance["kernel_dim"] != entry["kernel_dim"]:
        diffs.append(f"kernel dimension {qc.provenance['kernel_dim']} != {entry['kernel_dim']}")
    _compare_states(qc, entry["states"], False, diffs)
    _compare_amps(qc, entry["amp_sq"], True, diffs)
    _kl(qc, entry["d_x"], entry["d_z"], checks, diffs)
    return qc


def _run_cyclic(entry: dict, checks: dict, diffs: list[str]) -> QuantumCode:
    code = load_input(entry["input"])
    qc = build_logical_qudit(code, entry["d_x"], entry["d_z"], backend="exact")
    dim = qc.provenance["kernel_dim_block1"]
    checks["kernel_dim"] = dim
    checks["states"] = qc.dimension
    checks["halted"] = qc.provenance["halted"]
    if dim != entry["kernel_dim"]:
        diffs.append(f"kernel dimension {dim} != {entry['kernel_dim']}")
    _compare_states(qc, entry["states"], True, diffs)
    _compare_amps(qc, entry["amp_sq"], True, diffs)
    _kl(qc, entry["d_x"], entry["d_z"], checks, diffs)
    return qc


def _check_ground(code: QuantumCode, checks: dict, diffs: list[str]) -> None:
    ok = support_ground_check(code)
    checks["supports_in_Tn"] = ok
    if not ok:
        bad = [_fmt(w) for w in code.support_words() if not is_allowed(w)]
        diffs.append(f"support strings outside T_n: {bad}")


def _run_embedded(entry: dict, checks: dict, diffs: list[str]) -> QuantumCode:
    code = load_input(entry["input"])
    qc = embed_and_check(code, entry["s"], entry["d_x"], entry["d_z"])
    checks["kernel_dim"] = qc.provenance["kernel_dim"]
    if qc.provenance["kernel_dim"] != entry["kernel_dim"]:
        diffs.append(f"kernel dimension {qc.provenance['kernel_dim']} != {entry['kernel_dim']}")
    _compare_states(qc, entry["states"], entry.get("up_to_order", False), diffs)
    _compare_amps(qc, entry["amp_sq"], False, diffs)
    _check_ground(qc, checks, diffs)
    _kl(qc, entry["d_x"], entry["d_z"], checks, diffs)
    return qc


def spin8_code() -> QuantumCode:
    data = json.loads(_data("spin8.json"))
    phi, theta = data["phi"], data["theta"]
    states = [
        uniform_state(label, [tuple(phi[i]) + tuple(theta[j]) for i, j in pairs])
        for label, pairs in enumerate(data["pairs"])
    ]
    return QuantumCode(data["q"], data["n"], data["d_x"], data["d_z"], tuple(states), {"source": "spin8"})


def spin6_code() -> QuantumCode:
    data = json.loads(_data("spin6.json"))
    states = [uniform_state(i, [tuple(w) for w in words]) for i, words in enumerate(data["states"])]
    return QuantumCode(data["q"], data["n"], data["d_x"], data["d_z"], tuple(states), {"source": "spin6"})


def _run_given(name: str, entry: dict, checks: dict, diffs: list[str]) -> QuantumCode:
    qc = spin8_code() if name == "spin8" else spin6_code()
    _check_ground(qc, checks, diffs)
    _kl(qc, entry["d_x"], entry["d_z"], checks, diffs)
    for i, f in enumerate(entry.get("fails", [])):
        rep = kl_verify(qc, f["d_x"], f["d_z"], fail_fast=True, keep_c_values=False)
        checks[f"expected_failure_{i}"] = {"d_x": f["d_x"], "d_z": f["d_z"], "passed": rep.passed}
        if rep.passed:
            diffs.append(f"expected the KL check to fail at d_X={f['d_x']}, d_Z={f['d_z']}")
    if name == "spin6":
        dx, dz = certify_distance(qc)
        checks["certified"] = [dx, dz]
        if min(dx, dz) != 2:
            diffs.append(f"certified distance {min(dx, dz)} != 2")
    return qc


def run_example(name: str) -> ExampleReport:
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    entry = golden()[name]
    checks: dict[str, Any] = {}
    diffs: list[str] = []
    start = time.perf_counter()
    if name in ("steane", "c633", "c422"):
        qc = _run_qubit(entry, checks, diffs)
    elif name == "cyclic482":
        qc = _run_cyclic(entry, checks, diffs)
    elif name == "steane-embedded":
        qc = _run_embedded(entry, checks, diffs)
    else:
        qc = _run_given(name, entry, checks, diffs)
    return ExampleReport(name, not diffs, checks, diffs, time.perf_counter() - start, qc)
