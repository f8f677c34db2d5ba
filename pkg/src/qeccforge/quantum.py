"""Logical states, quantum codes, and their JSON form."""

from __future__ import annotations

import json
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from qeccforge.classical import Codeword

NORM_TOL = 1e-12


@dataclass(frozen=True)
class LogicalState:
    """``|j_L> = sum_c amp_c |c>`` over a set of product basis labels.

    ``amp_sq`` holds exact squared amplitudes when an exact construction path
    produced them, otherwise ``None``.
    """

    label: int
    support: tuple[Codeword, ...]
    amplitudes: tuple[float, ...]
    amp_sq: tuple[Fraction, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.support) != len(self.amplitudes):
            raise ValueError("support and amplitude lists differ in length")
        if self.amp_sq is not None and len(self.amp_sq) != len(self.support):
            raise ValueError("exact amplitude list has the wrong length")

    @classmethod
    def from_weights(cls, label: int, words: Sequence[Codeword], weights: Sequence[Any]) -> LogicalState:
        """Amplitudes ``sqrt(w_k / sum w)`` from nonnegative weights; exact if weights are rational."""
        pairs = [
            (tuple(w), int(x) if isinstance(x, np.integer) else x) for w, x in zip(words, weights) if x != 0
        ]
        if not pairs:
            raise ValueError("state has empty support")
        if any(x < 0 for _, x in pairs):
            raise ValueError("negative weight")
        exact = all(isinstance(x, (int, Fraction)) for _, x in pairs)
        if exact:
            total = sum(Fraction(x) for _, x in pairs)
            sq = tuple(Fraction(x) / total for _, x in pairs)
            amps = tuple(math.sqrt(p) for p in sq)
            return cls(label, tuple(w for w, _ in pairs), amps, sq)
        total = float(sum(float(x) for _, x in pairs))
        amps = tuple(math.sqrt(float(x) / total) for _, x in pairs)
        return cls(label, tuple(w for w, _ in pairs), amps, None)

    def items(self) -> Iterable[tuple[Codeword, float]]:
        return zip(self.support, self.amplitudes)

    def as_dict(self) -> dict[Codeword, float]:
        return dict(zip(self.support, self.amplitudes))

    def norm_sq(self) -> float:
        return sum(a * a for a in self.amplitudes)

    def probabilities(self) -> list[Fraction] | list[float]:
        if self.amp_sq is not None:
            return list(self.amp_sq)
        return [a * a for a in self.amplitudes]


@dataclass(frozen=True)
class QuantumCode:
    q: int
    n: int
    d_x: int
    d_z: int
    states: tuple[LogicalState, ...]
    provenance: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        seen: set[Codeword] = set()
        for st in self.states:
            for w in st.support:
                if len(w) != self.n:
                    raise ValueError(f"support word {w} has length != {self.n}")
                if w in seen:
                    raise ValueError(f"support word {w} shared between logical states")
                seen.add(w)

    @property
    def dimension(self) -> int:
        return len(self.states)

    def support_words(self) -> list[Codeword]:
        return [w for st in self.states for w in st.support]

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return all(abs(st.norm_sq() - 1.0) <= tol for st in self.states)

    # --- JSON -----------------------------------------------------------------

    def to_json_obj(self) -> dict[str, Any]:
        states = []
        for st in self.states:
            entries = []
            for i, (w, amp) in enumerate(st.items()):
                e: dict[str, Any] = {"codeword": list(w), "amp": amp}
                if st.amp_sq is not None:
                    e["amp_sq_num"] = st.amp_sq[i].numerator
                    e["amp_sq_den"] = st.amp_sq[i].denominator
                else:
                    e["amp_sq_num"] = None
                    e["amp_sq_den"] = None
                entries.append(e)
            states.append({"label": st.label, "support": entries})
        return {
            "q": self.q,
            "n": self.n,
            "d_x": self.d_x,
            "d_z": self.d_z,
            "states": states,
            "provenance": self.provenance,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json_obj(cls, obj: dict[str, Any]) -> QuantumCode:
        states = []
        for st in obj["states"]:
            words = tuple(tuple(int(x) for x in e["codeword"]) for e in st["support"])
            amps = tuple(float(e["amp"]) for e in st["support"])
            exact = all(e.get("amp_sq_num") is not None for e in st["support"])
            sq = tuple(Fraction(e["amp_sq_num"], e["amp_sq_den"]) for e in st["support"]) if exact else None
            states.append(LogicalState(int(st["label"]), words, amps, sq))
        return cls(
            int(obj["q"]),
            int(obj["n"]),
            int(obj["d_x"]),
            int(obj["d_z"]),
            tuple(states),
            obj.get("provenance", {}),
        )

    @classmethod
    def loads(cls, text: str) -> QuantumCode:
        return cls.from_json_obj(json.loads(text))


def load_code_json(path: str | Path) -> QuantumCode:
    return QuantumCode.loads(Path(path).read_text())


def uniform_state(label: int, words: Sequence[Sequence[int]]) -> LogicalState:
    """Equal-weight superposition with exact squared amplitudes ``1/len(words)``."""
    return LogicalState.from_weights(label, [tuple(w) for w in words], [1] * len(words))
