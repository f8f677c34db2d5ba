"""Classical q-ary codes, distances, ball volumes and symbol maps.

Codewords are plain tuples of integers. For a spin-s alphabet the symbols are
the signed spin projections ``-s..s``; for a q-ary alphabet they are ``0..q-1``.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

import numpy as np

Codeword = tuple[int, ...]

GF4_LABELS = ("0", "1", "a", "b")


class CodeFormatError(ValueError):
    """Malformed classical-code input."""


@dataclass(frozen=True)
class Alphabet:
    """Symbol alphabet: ``qary`` digits ``0..q-1`` or ``spin`` projections ``-s..s``."""

    kind: Literal["qary", "spin"]
    param: int

    def __post_init__(self) -> None:
        if self.kind not in ("qary", "spin"):
            raise ValueError(f"unknown alphabet kind {self.kind!r}")
        if self.param < 1:
            raise ValueError("alphabet parameter must be a positive integer")

    @classmethod
    def qary(cls, q: int) -> Alphabet:
        return cls("qary", q)

    @classmethod
    def spin(cls, s: int) -> Alphabet:
        return cls("spin", s)

    @property
    def size(self) -> int:
        return self.param if self.kind == "qary" else 2 * self.param + 1

    @property
    def letters(self) -> tuple[int, ...]:
        if self.kind == "qary":
            return tuple(range(self.param))
        return tuple(range(-self.param, self.param + 1))

    @property
    def nonzero_letters(self) -> tuple[int, ...]:
        return tuple(x for x in self.letters if x != 0)

    def __contains__(self, symbol: object) -> bool:
        return isinstance(symbol, (int, np.integer)) and int(symbol) in self.letters

    def header(self) -> str:
        return f"alphabet {self.kind} {self.param}"


@dataclass(frozen=True)
class ClassicalCode:
    """Ordered, duplicate-free list of codewords over one alphabet.

    The order is the canonical column order used downstream (A-matrix columns,
    block partition), so it is fixed at construction: lexicographic unless
    ``keep_order`` is set.
    """

    alphabet: Alphabet
    codewords: tuple[Codeword, ...]
    n: int = field(init=False)

    def __init__(
        self,
        alphabet: Alphabet,
        codewords: Iterable[Sequence[int]],
        *,
        keep_order: bool = False,
    ) -> None:
        words = [tuple(int(x) for x in w) for w in codewords]
        if not words:
            raise ValueError("a classical code needs at least one codeword")
        n = len(words[0])
        for w in words:
            if len(w) != n:
                raise ValueError("codewords have different lengths")
            for x in w:
                if x not in alphabet:
                    raise ValueError(f"symbol {x} not in {alphabet.header()}")
        seen: set[Codeword] = set()
        for w in words:
            if w in seen:
                raise ValueError(f"duplicate codeword {w}")
            seen.add(w)
        if not keep_order:
            words.sort()
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "codewords", tuple(words))
        object.__setattr__(self, "n", n)

    def __len__(self) -> int:
        return len(self.codewords)

    def __iter__(self):
        return iter(self.codewords)

    def __getitem__(self, i: int) -> Codeword:
        return self.codewords[i]

    @property
    def q(self) -> int:
        """Phase modulus used for Pauli arithmetic (``2s+1`` for spin alphabets)."""
        return self.alphabet.size

    def array(self) -> np.ndarray:
        return np.array(self.codewords, dtype=np.int64).reshape(len(self), self.n)

    def residues(self) -> np.ndarray:
        """Codewords reduced mod ``q`` (the cyclic convention for spin symbols)."""
        return np.mod(self.array(), self.q)

    def subcode(self, indices: Iterable[int]) -> ClassicalCode:
        return ClassicalCode(self.alphabet, [self.codewords[i] for i in indices], keep_order=True)


def hamming_distance(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum(1 for x, y in zip(a, b) if x != y)


def code_distance(code: ClassicalCode) -> int:
    """Minimum pairwise Hamming distance."""
    if len(code) < 2:
        raise ValueError("distance needs at least two codewords")
    arr = code.array()
    best = code.n
    for i in range(len(arr) - 1):
        d = (arr[i + 1 :] != arr[i]).sum(axis=1).min()
        best = min(best, int(d))
        if best == 0:
            break
    return best


def hamming_ball_volume(q: int, n: int, r: int) -> int:
    """Number of q-ary words of length ``n`` within distance ``r`` of a fixed word."""
    if q < 2:
        raise ValueError("q must be at least 2")
    if r < 0 or r > n:
        raise ValueError(f"radius {r} outside [0, {n}]")
    return sum(math.comb(n, w) * (q - 1) ** w for w in range(r + 1))


def q_ary_entropy(q: int, x: float) -> float:
    """q-ary entropy, with ``0 log 0 = 0``."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x = {x} outside [0, 1]")
    if q < 2:
        raise ValueError("q must be at least 2")
    out = 0.0
    if 0.0 < x:
        out += x * math.log(q - 1, q) - x * math.log(x, q)
    if x < 1.0:
        out -= (1.0 - x) * math.log(1.0 - x, q)
    return out


def is_allowed(word: Sequence[int]) -> bool:
    """True when ``word`` has no 0 and no adjacent ``(m, -m)`` with ``m > 0``."""
    for i, x in enumerate(word):
        if x == 0:
            return False
        if x > 0 and i + 1 < len(word) and word[i + 1] == -x:
            return False
    return True


def map_beta(code: ClassicalCode, s: int = 2) -> ClassicalCode:
    """Send binary symbols 0 -> 2 and 1 -> 1, landing in the spin-s alphabet."""
    if code.alphabet != Alphabet.qary(2):
        raise ValueError("map_beta needs a binary code")
    if s < 2:
        raise ValueError("map_beta needs spin s >= 2")
    return ClassicalCode(Alphabet.spin(s), [tuple(2 - x for x in w) for w in code])


_PHI = {1: 0, -1: 1, 2: 2, -2: 3}
_PHI_INV = {v: k for k, v in _PHI.items()}


def map_phi(word: Sequence[int]) -> Codeword:
    """Map a nonzero spin-2 string to GF(4) symbols, encoded as 0, 1, 2 (=a), 3 (=b)."""
    try:
        return tuple(_PHI[int(x)] for x in word)
    except KeyError as exc:
        raise ValueError(f"symbol {exc.args[0]} has no GF(4) image (need s=2, no zeros)") from None


def map_phi_inv(word: Sequence[int]) -> Codeword:
    try:
        return tuple(_PHI_INV[int(x)] for x in word)
    except KeyError as exc:
        raise ValueError(f"{exc.args[0]} is not a GF(4) label index") from None


def gf4_string(word: Sequence[int]) -> str:
    return "".join(GF4_LABELS[x] for x in word)


def phi_forbidden(word: Sequence[int]) -> list[int]:
    """Positions ``i`` where a GF(4) word has the forbidden pair (0 1) or (a b) at ``i, i+1``."""
    bad = {(0, 1), (2, 3)}
    return [i for i in range(len(word) - 1) if (word[i], word[i + 1]) in bad]


def filter_forbidden(code: ClassicalCode) -> ClassicalCode | None:
    """Keep the codewords that label product ground states; ``None`` if none survive."""
    if code.alphabet.kind != "spin":
        raise ValueError("filter_forbidden needs a spin alphabet")
    kept = [w for w in code if is_allowed(w)]
    if not kept:
        return None
    return ClassicalCode(code.alphabet, kept, keep_order=True)


def random_code(q: int, n: int, m: int, seed: int) -> ClassicalCode:
    """``m`` distinct uniformly random q-ary words, reproducible per ``seed``."""
    if m > q**n:
        raise ValueError(f"cannot draw {m} distinct words from {q}^{n}")
    rng = np.random.default_rng(seed)
    seen: dict[Codeword, None] = {}
    while len(seen) < m:
        w = tuple(int(x) for x in rng.integers(0, q, size=n))
        seen.setdefault(w, None)
    return ClassicalCode(Alphabet.qary(q), seen)


# --- text format ------------------------------------------------------------


def parse_code(text: str, *, keep_order: bool = False) -> ClassicalCode:
    alphabet: Alphabet | None = None
    words: list[Codeword] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("alphabet"):
            parts = line.split()
            if len(parts) != 3 or parts[1] not in ("qary", "spin"):
                raise CodeFormatError(f"line {lineno}: bad header {line!r}")
            alphabet = Alphabet(parts[1], int(parts[2]))  # type: ignore[arg-type]
            continue
        if alphabet is None:
            raise CodeFormatError("missing 'alphabet qary <q>' or 'alphabet spin <s>' header")
        try:
            if " " in line:
                words.append(tuple(int(tok) for tok in line.split()))
            else:
                words.append(tuple(int(ch) for ch in line))
        except ValueError:
            raise CodeFormatError(f"line {lineno}: cannot parse {line!r}") from None
    if alphabet is None:
        raise CodeFormatError("missing alphabet header")
    try:
        return ClassicalCode(alphabet, words, keep_order=keep_order)
    except ValueError as exc:
        raise CodeFormatError(str(exc)) from None


def read_code(path: str | Path, *, keep_order: bool = False) -> ClassicalCode:
    return parse_code(Path(path).read_text(), keep_order=keep_order)


def format_code(code: ClassicalCode) -> str:
    lines = [code.alphabet.header()]
    digits = code.alphabet.kind == "qary" and code.q <= 10
    for w in code:
        lines.append("".join(map(str, w)) if digits else " ".join(map(str, w)))
    return "\n".join(lines) + "\n"
