"""Command-line entry point: ``qeccforge <subcommand> ...``.

Exit codes: 0 success, 1 verification failed, 2 golden mismatch,
3 construction infeasible, 4 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any

from qeccforge import aqecc, groundspace, perminv
from qeccforge.amatrix import build_a_matrix, kernel
from qeccforge.classical import ClassicalCode, CodeFormatError, format_code, random_code, read_code
from qeccforge.construct import (
    ConstructionError,
    DistanceTooSmall,
    InsufficientCode,
    RecursionHalted,
    build_logical_qubit,
    build_logical_qudit,
)
from qeccforge.examples import EXAMPLES, run_example
from qeccforge.quantum import QuantumCode, load_code_json
from qeccforge.verify import certify_distance, kl_verify

OK, VERIFY_FAILED, GOLDEN_MISMATCH, INFEASIBLE, INPUT_ERROR = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def fmt_num(x: float) -> str:
    return f"{x:.12g}"


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(header: list[str], rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_num(v) if isinstance(v, float) else ("" if v is None else v) for v in row])
    return buf.getvalue()


def _load_classical(path: str) -> ClassicalCode:
    try:
        return read_code(path)
    except (OSError, CodeFormatError) as exc:
        raise InputError(f"cannot read classical code {path}: {exc}") from None


def _load_quantum(path: str) -> QuantumCode:
    try:
        return load_code_json(path)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read code JSON {path}: {exc}") from None


def _parse_range(text: str) -> range:
    try:
        lo, hi = text.split("..")
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise InputError(f"bad range {text!r}; expected A..B") from None


def _parse_string(text: str) -> tuple[int, ...]:
    toks = text.replace(",", " ").split()
    try:
        return tuple(int(t) for t in toks)
    except ValueError:
        raise InputError(f"bad spin string {text!r}") from None


# --- subcommands --------------------------------------------------------------------


def _parse_states(text: str) -> int | None:
    if text == "max":
        return None
    try:
        m = int(text)
    except ValueError:
        raise InputError(f"bad --states {text!r}; expected an integer or max") from None
    if m < 2:
        raise InputError("--states must be at least 2")
    return m


def cmd_construct(args: argparse.Namespace) -> int:
    code = _load_classical(args.code)
    target = _parse_states(args.states)
    try:
        if target == 2 and not args.recursive:
            qc = build_logical_qubit(code, args.dx, args.dz, backend=args.backend, kernel_index=args.kernel_index)
        else:
            qc = build_logical_qudit(
                code,
                args.dx,
                args.dz,
                target,
                backend=args.backend,
                kernel_index=args.kernel_index,
                strict=args.strict,
            )
    except (DistanceTooSmall, InsufficientCode) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except ConstructionError as exc:
        print(f"no code: {exc}", file=sys.stderr)
        return INFEASIBLE
    _write(qc.dumps(), args.out)
    if target is not None and qc.dimension < target:
        halted = qc.provenance.get("halted")
        print(f"only {qc.dimension} of {target} states; halted: {halted}", file=sys.stderr)
        return INFEASIBLE
    return OK


def cmd_verify(args: argparse.Namespace) -> int:
    qc = _load_quantum(args.code)
    rep = kl_verify(qc, args.dx, args.dz, args.tol, fail_fast=args.fail_fast)
    _write(_dump(rep.to_json_obj(with_c_values=not args.no_c_values)), args.out)
    print(rep.summary(), file=sys.stderr)
    return OK if rep.passed else VERIFY_FAILED


def cmd_certify(args: argparse.Namespace) -> int:
    qc = _load_quantum(args.code)
    dx, dz = certify_distance(qc, args.tol)
    _write(_dump({"d_x_max": dx, "d_z_max": dz, "distance": min(dx, dz)}), args.out)
    return OK


def cmd_amatrix(args: argparse.Namespace) -> int:
    code = _load_classical(args.code)
    a = build_a_matrix(code, args.dz, prune=not args.no_prune)
    entries = a.entries
    header = ["row"] + ["".join(map(str, w)) if code.q <= 10 and min(w) >= 0 else " ".join(map(str, w)) for w in a.codewords]
    rows = [[str(lbl)] + [float(v) for v in entries[i]] for i, lbl in enumerate(a.rows)]
    side = {
        "q": a.q,
        "n": a.n,
        "d_z": a.d_z,
        "shape": list(a.shape),
        "rows_unpruned": a.n_rows_unpruned,
        "exact": a.exact,
        "pruned": list(a.pruned),
        "columns": header[1:],
    }
    basis = kernel(a, args.backend)
    side["backend"] = basis.backend
    side["kernel_dim"] = basis.dim
    side["kernel_basis"] = [[str(x) if basis.backend == "exact" else float(x) for x in v] for v in basis.vectors]
    if args.out:
        Path(args.out).write_text(_csv(header, rows))
        Path(args.out).with_suffix(".json").write_text(_dump(side))
    else:
        sys.stdout.write(_csv(header, rows))
        print(json.dumps(side, sort_keys=True), file=sys.stderr)
    return OK


def cmd_groundspace(args: argparse.Namespace) -> int:
    sub = args.gs_command
    if sub == "enum":
        for t in groundspace.enumerate_Tn(args.s, args.n):
            sys.stdout.write(" ".join(map(str, t)) + "\n")
    elif sub == "dim":
        out = {
            "s": args.s,
            "n": args.n,
            "Tn": groundspace.count_Tn(args.s, args.n),
            "Tn_closed": groundspace.count_Tn_closed(args.s, args.n),
            "kernel_dimension": groundspace.kernel_dimension(args.s, args.n),
            "product_fraction": groundspace.product_ground_fraction(args.s, args.n),
        }
        if args.oracle:
            res = groundspace.equivalence_oracle(args.s, args.n)
            out["oracle"] = {
                "components": res.component_count,
                "one_irreducible_each": res.one_irreducible_each,
                "canonical_constant": res.canonical_constant,
                "backend": res.backend,
            }
        _write(_dump(out), None)
    elif sub == "reduce":
        t = _parse_string(args.string)
        cf = groundspace.canonicalize(t)
        _write(_dump({"input": list(t), "irreducible": list(cf.irreducible), "k": cf.k, "canonical": list(cf.string)}), None)
    elif sub == "bounds":
        table = groundspace.threshold_table(args.construct, _parse_range(args.s_range))
        rows: list[list[Any]] = []
        for s, tau in table:
            row: list[Any] = [s, tau]
            if args.construct == "justesen":
                row.append(int(groundspace.justesen_side_condition(s, tau)))
            rows.append(row)
        header = ["s", "tau"] + (["side_condition"] if args.construct == "justesen" else [])
        _write(_csv(header, rows), args.out)
    elif sub == "embed":
        code = _load_classical(args.code)
        try:
            qc = groundspace.embed_and_check(code, args.s, args.dx, args.dz)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        except ConstructionError as exc:
            print(f"no code: {exc}", file=sys.stderr)
            return INFEASIBLE
        _write(qc.dumps(), args.out)
    return OK


def cmd_aqecc(args: argparse.Namespace) -> int:
    if args.pairs:
        pairs = [_load_quantum(p) for p in args.pairs]
        dz = args.dz
        try:
            gammas = [aqecc.gamma_vector(p, dz, pair_index=i) for i, p in enumerate(pairs)]
        except aqecc.InvalidPair as exc:
            raise InputError(str(exc)) from None
        dl = aqecc.delta(gammas)
        q, n = pairs[0].q, pairs[0].n
        m = sum(len(p.support_words()) for p in pairs)
        out = {
            "pairs": len(pairs),
            "delta": dl,
            "infidelity_bound": aqecc.infidelity_bound(dl, q, n, dz),
            "expected_M_bound": aqecc.expected_M_bound(m, q, n, dz, dl) if dl > 0 else None,
            "caveat": aqecc.INFIDELITY_CAVEAT,
        }
        _write(_dump(out), args.out)
        return OK
    if args.random is None:
        raise InputError("give --pairs FILE... or --random Q,N,M")
    try:
        q, n, m = (int(x) for x in args.random.split(","))
    except ValueError:
        raise InputError(f"bad --random {args.random!r}; expected Q,N,M") from None
    rows = aqecc.monte_carlo(q, n, m, args.dz, args.trials, args.seed)
    table = [[r.seed, r.m, r.pairs, r.logical_states, r.delta, r.expected_M, r.infidelity] for r in rows]
    text = _csv(["seed", "m", "pairs", "logical_states", "delta", "expected_M_bound", "infidelity_bound"], table)
    _write(f"# {aqecc.INFIDELITY_CAVEAT}\n" + text, args.out)
    return OK


def cmd_perminv(args: argparse.Namespace) -> int:
    counts = perminv.pauli_classes_up_to_permutation(args.n, args.d - 1)
    try:
        code = perminv.build_perminv_code(args.n, args.d, kernel_index=args.kernel_index)
    except perminv.InequalityNotMet as exc:
        print(f"no code: {exc}", file=sys.stderr)
        return INFEASIBLE
    except ConstructionError as exc:
        print(f"no code: {exc}", file=sys.stderr)
        return INFEASIBLE
    out = code.to_json_obj()
    out["class_counts"] = {"exact": counts.exact, "stated": counts.stated, "bound": counts.bound}
    out["dicke_kl"] = perminv.kl_verify_dicke(code).passed
    if args.expand:
        qc = code.to_quantum_code()
        out["computational_kl"] = kl_verify(qc, args.d, args.d).passed
        out["expanded"] = qc.to_json_obj()
    _write(_dump(out), args.out)
    return OK


def cmd_examples(args: argparse.Namespace) -> int:
    names = EXAMPLES if args.name == "all" else (args.name,)
    if args.name != "all" and args.name not in EXAMPLES:
        raise InputError(f"unknown example {args.name!r}; choose from {', '.join(EXAMPLES)} or all")
    status = OK
    reports = []
    for name in names:
        rep = run_example(name)
        reports.append(rep.to_json_obj())
        mark = "match" if rep.ok else "MISMATCH"
        print(f"{name}: {mark} ({rep.elapsed:.2f} s)", file=sys.stderr)
        for d in rep.diffs:
            print(f"  {d}", file=sys.stderr)
        if not rep.ok:
            status = GOLDEN_MISMATCH
        if args.emit_code and rep.code is not None and len(names) == 1:
            _write(rep.code.dumps(), args.emit_code)
    _write(_dump(reports if len(reports) > 1 else reports[0]), args.out)
    return status


def cmd_random_code(args: argparse.Namespace) -> int:
    try:
        code = random_code(args.q, args.n, args.m, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write(format_code(code), args.out)
    return OK


# --- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qeccforge", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="logical states from a classical code file")
    c.add_argument("--code", required=True)
    c.add_argument("--dx", type=int, required=True)
    c.add_argument("--dz", type=int, required=True)
    c.add_argument("--states", default="2", help="number of logical states, or max (recursive construction)")
    c.add_argument("--recursive", action="store_true", help="use the recursive construction even for 2 states")
    c.add_argument("--backend", choices=("auto", "exact", "float"), default="auto")
    c.add_argument("--kernel-index", type=int, default=0)
    c.add_argument("--strict", action="store_true", help="require |C| >= 2 V_q(d_Z - 1)")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="Knill-Laflamme check of a code JSON")
    v.add_argument("--code", required=True)
    v.add_argument("--dx", type=int)
    v.add_argument("--dz", type=int)
    v.add_argument("--tol", type=float, default=1e-8)
    v.add_argument("--fail-fast", action="store_true")
    v.add_argument("--no-c-values", action="store_true")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    ce = sub.add_parser("certify", help="largest passing d_X and d_Z")
    ce.add_argument("--code", required=True)
    ce.add_argument("--tol", type=float, default=1e-8)
    ce.add_argument("--out")
    ce.set_defaults(func=cmd_certify)

    a = sub.add_parser("amatrix", help="emit the A-matrix as CSV plus a JSON sidecar")
    a.add_argument("--code", required=True)
    a.add_argument("--dz", type=int, required=True)
    a.add_argument("--no-prune", action="store_true")
    a.add_argument("--backend", choices=("auto", "exact", "float"), default="auto")
    a.add_argument("--out", help="CSV path; the sidecar goes next to it with a .json suffix")
    a.set_defaults(func=cmd_amatrix)

    g = sub.add_parser("groundspace", help="spin-chain ground-space tools")
    gs = g.add_subparsers(dest="gs_command", required=True)
    ge = gs.add_parser("enum")
    ge.add_argument("--s", type=int, required=True)
    ge.add_argument("--n", type=int, required=True)
    gd = gs.add_parser("dim")
    gd.add_argument("--s", type=int, required=True)
    gd.add_argument("--n", type=int, required=True)
    gd.add_argument("--oracle", action="store_true", help="also run the union-find oracle")
    gr = gs.add_parser("reduce")
    gr.add_argument("--string", required=True, help='space- or comma-separated symbols, e.g. "2 0 -2"')
    gb = gs.add_parser("bounds")
    gb.add_argument("--construct", choices=("gv", "justesen"), required=True)
    gb.add_argument("--s-range", default="1..20")
    gb.add_argument("--out")
    gm = gs.add_parser("embed")
    gm.add_argument("--code", required=True)
    gm.add_argument("--s", type=int, default=2)
    gm.add_argument("--dx", type=int, required=True)
    gm.add_argument("--dz", type=int, required=True)
    gm.add_argument("--out")
    g.set_defaults(func=cmd_groundspace)

    q = sub.add_parser("aqecc", help="deviation between qubit pairs and the approximate-code bounds")
    q.add_argument("--pairs", nargs="+", help="code JSON files, each a 2-state code")
    q.add_argument("--random", help="Q,N,M for seeded random classical codes")
    q.add_argument("--dz", type=int, default=2)
    q.add_argument("--trials", type=int, default=10)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out")
    q.set_defaults(func=cmd_aqecc)

    pi = sub.add_parser("perminv", help="permutation-invariant code on Dicke states")
    pi.add_argument("--n", type=int, required=True)
    pi.add_argument("--d", type=int, required=True)
    pi.add_argument("--kernel-index", type=int, default=0)
    pi.add_argument("--expand", action="store_true", help="also expand and verify in the computational basis")
    pi.add_argument("--out")
    pi.set_defaults(func=cmd_perminv)

    e = sub.add_parser("examples", help="run a reference example against its stored expectation")
    e.add_argument("name", help=f"one of {', '.join(EXAMPLES)}, or all")
    e.add_argument("--emit-code", help="write the resulting code JSON here")
    e.add_argument("--out")
    e.set_defaults(func=cmd_examples)

    r = sub.add_parser("random-code", help="seeded random classical code")
    r.add_argument("--q", type=int, required=True)
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--m", type=int, required=True)
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--out")
    r.set_defaults(func=cmd_random_code)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except RecursionHalted as exc:
        print(f"no code: {exc}", file=sys.stderr)
        return INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
