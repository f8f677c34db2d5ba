"""Quantum codes from classical codes, and spin-chain ground-space codes."""

from __future__ import annotations

from qeccforge.amatrix import AMatrix, build_a_matrix, kernel
from qeccforge.classical import Alphabet, ClassicalCode, parse_code, random_code, read_code
from qeccforge.construct import build_logical_qubit, build_logical_qudit
from qeccforge.quantum import LogicalState, QuantumCode
from qeccforge.verify import KLReport, certify_distance, kl_verify

__version__ = "0.1.0"

__all__ = [
    "AMatrix",
    "Alphabet",
    "ClassicalCode",
    "KLReport",
    "LogicalState",
    "QuantumCode",
    "build_a_matrix",
    "build_logical_qubit",
    "build_logical_qudit",
    "certify_distance",
    "kernel",
    "kl_verify",
    "parse_code",
    "random_code",
    "read_code",
]
