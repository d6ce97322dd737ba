"""Command-line entry point.

Exit codes: 0 success, 1 verification failure or non-isomorphic pair,
2 parse/usage error, 3 the two verifiers disagree, 4 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any

from . import __doc__ as _pkg_doc
from ._accel import backend_name
from .construct import build_max_symmetric, build_trivial, validate_params
from .core import (
    TransitionSequence,
    is_symmetric,
    label_counts,
    max_bit_run,
    verify_spread,
)
from .errors import CircuitCodeError, SearchAborted, SequenceParseError
from .io import format_sequence, format_sequences, read_sequences, report_document
from .isomorphism import are_isomorphic, canonicalize
from .oracle import verify_spread_bruteforce
from .search import PruneFlags, SearchConfig, enumerate_symmetric

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_DISAGREE = 3
EXIT_ABORTED = 4


def _emit(args, doc: dict[str, Any], text: str) -> None:
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        print(text)


def _load(path: str, d: int | None = None) -> list[TransitionSequence]:
    seqs = [p.sequence for p in read_sequences(path)]
    if d is not None:
        seqs = [TransitionSequence(T.entries, d) for T in seqs]
    if not seqs:
        raise SequenceParseError("file contains no sequence", 1, 1)
    return seqs


def _single(path: str) -> TransitionSequence:
    seqs = _load(path)
    if len(seqs) != 1:
        raise SequenceParseError(f"expected one sequence, found {len(seqs)}", 1, 1)
    return seqs[0]


def _verdict_of(fn, T, k) -> tuple[str, Any]:
    try:
        rep = fn(T, k)
    except CircuitCodeError as exc:
        return type(exc).__name__, str(exc)
    return rep.status, rep


def cmd_verify(args) -> int:
    seqs = _load(args.file, args.d)
    witnesses = []
    failed = disagree = False
    lines = []
    for i, T in enumerate(seqs):
        status, rep = _verdict_of(verify_spread, T, args.k)
        entry: dict[str, Any] = {"index": i, "N": T.n, "status": status}
        if status == "spread_violation":
            entry.update(
                segment={"start": rep.segment.start, "length": rep.segment.length},
                delta=rep.delta,
                required=rep.required,
            )
        elif status != "pass":
            entry["message"] = rep
        line = f"[{i}] N={T.n} {status}"
        if status == "spread_violation":
            line += f" at segment start={rep.segment.start} length={rep.segment.length} (delta {rep.delta} < {rep.required})"
        if args.oracle:
            ostatus, orep = _verdict_of(verify_spread_bruteforce, T, args.k)
            entry["oracle"] = {"status": ostatus}
            if ostatus == "spread_violation":
                p = orep.pair
                entry["oracle"]["pair"] = {
                    "i": p.i,
                    "j": p.j,
                    "cycle_distance": p.cycle_distance,
                    "hamming": p.hamming,
                }
            if (ostatus == "pass") != (status == "pass") or (
                status != "pass" and ostatus != status
            ):
                disagree = True
                line += f" [oracle disagrees: {ostatus}]"
        failed |= status != "pass"
        witnesses.append(entry)
        lines.append(line)

    verdict = "disagreement" if disagree else ("fail" if failed else "pass")
    first = seqs[0]
    doc = report_document(
        "verify", verdict, d=first.d, k=args.k, N=first.n, witnesses=witnesses,
        details={"backend": backend_name(), "oracle": bool(args.oracle)},
    )
    _emit(args, doc, "\n".join(lines + [f"verdict: {verdict}"]))
    if disagree:
        return EXIT_DISAGREE
    return EXIT_FAIL if failed else EXIT_OK


def _analysis(T: TransitionSequence) -> dict[str, Any]:
    phi, seg = max_bit_run(T)
    try:
        sym = is_symmetric(T)
    except CircuitCodeError:
        sym = None
    return {
        "N": T.n,
        "d": T.d,
        "phi": phi,
        "phi_witness": {"start": seg.start, "length": seg.length},
        "symmetric": sym,
        "counts": {str(x): c for x, c in label_counts(T).items()},
    }


def cmd_analyze(args) -> int:
    seqs = _load(args.file, args.d)
    rows = [_analysis(T) for T in seqs]
    lines = []
    for i, row in enumerate(rows):
        counts = " ".join(f"{x}:{c}" for x, c in row["counts"].items())
        lines.append(
            f"[{i}] N={row['N']} d={row['d']} phi={row['phi']} "
            f"(start {row['phi_witness']['start']}) symmetric={row['symmetric']}\n"
            f"    counts {counts}"
        )
    first = rows[0]
    doc = report_document(
        "analyze", "ok", d=first["d"], N=first["N"], details={"sequences": rows}
    )
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_construct(args) -> int:
    if args.trivial:
        T = build_trivial(args.k)
        params = {"d": T.d, "k": args.k, "N": T.n}
    else:
        if args.l is None:
            raise CircuitCodeError("--l is required unless --trivial is given")
        p = validate_params(args.k, args.l)
        T = build_max_symmetric(args.k, args.l, check=not args.no_check)
        params = {"d": p.d, "k": p.k, "l": p.l, "r": p.r, "N": p.N}
    doc = report_document(
        "construct", "ok", classes=[canonicalize(T).sequence.entries],
        details={"sequence": list(T.entries)}, **params,
    )
    _emit(args, doc, format_sequences([T]).rstrip("\n"))
    return EXIT_OK


def cmd_canon(args) -> int:
    seqs = _load(args.file, args.d)
    lines, rows = [], []
    for T in seqs:
        c = canonicalize(T, args.with_reversal)
        rows.append({"shift": c.shift, "relabel": list(c.relabel), "reversed": c.reversed})
        lines.append(format_sequence(c.sequence))
        lines.append(f"# shift={c.shift} relabel={format_sequence(c.relabel)}"
                     + (" reversed" if c.reversed else ""))
    first = seqs[0]
    doc = report_document(
        "canon", "ok", d=first.d, N=first.n,
        classes=[canonicalize(T, args.with_reversal).sequence.entries for T in seqs],
        witnesses=rows, details={"with_reversal": bool(args.with_reversal)},
    )
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_iso(args) -> int:
    A, B = _single(args.file_a), _single(args.file_b)
    res = are_isomorphic(A, B, args.with_reversal)
    witnesses = []
    if res:
        w = res.witness
        witnesses.append(
            {"shift": w.shift, "permutation": list(w.permutation), "reversed": w.reversed}
        )
        text = (
            f"isomorphic: shift={w.shift} permutation={format_sequence(w.permutation)}"
            + (" reversed" if w.reversed else "")
        )
    else:
        text = "not isomorphic"
    doc = report_document(
        "iso", "isomorphic" if res else "not_isomorphic", d=max(A.d, B.d), N=A.n,
        witnesses=witnesses,
        classes=[canonicalize(A, args.with_reversal).sequence.entries,
                 canonicalize(B, args.with_reversal).sequence.entries],
        details={"with_reversal": bool(args.with_reversal)},
    )
    _emit(args, doc, text)
    return EXIT_OK if res else EXIT_FAIL


def _search_doc(report, verdict: str) -> dict[str, Any]:
    cfg = report.config
    per = {
        str(n): {
            "completions": res.completions,
            "classes": len(res.classes),
            "nodes": res.nodes,
            "exhaustive": res.exhaustive,
        }
        for n, res in report.per_length.items()
    }
    best = report.best_n
    classes = report.per_length[best].classes if best is not None else []
    return report_document(
        "search", verdict, d=cfg.d, k=cfg.k, l=cfg.l, r=cfg.r, N=best,
        classes=classes, nodes=report.nodes, pruned=report.pruned,
        seconds=round(report.seconds, 6),
        details={
            "per_length": per,
            "exhaustive": report.exhaustive,
            "symmetric": cfg.symmetric,
            "backend": backend_name(),
        },
    )


def _search_text(report) -> str:
    lines = []
    for n, res in report.per_length.items():
        flag = "" if res.exhaustive else " (incomplete)"
        lines.append(f"N={n}: {res.completions} completions, {len(res.classes)} classes, "
                     f"{res.nodes} nodes{flag}")
        for c in res.classes:
            lines.append("  " + format_sequence(c))
    lines.append(f"best N: {report.best_n}")
    return "\n".join(lines)


def cmd_search(args) -> int:
    prune = PruneFlags(
        prefix=not args.no_prune_prefix,
        windows=not args.no_prune_windows,
        overlap=not args.no_prune_overlap,
        unused=not args.no_prune_unused,
    )
    cfg = SearchConfig.create(
        args.d, args.k, args.r, args.nmin, args.nmax,
        prune=prune, workers=args.workers, symmetric=not args.asymmetric,
        max_nodes=args.max_nodes,
    )
    t0 = time.perf_counter()
    try:
        report = enumerate_symmetric(cfg)
    except SearchAborted as exc:
        report = exc.report
        report.seconds = time.perf_counter() - t0
        _emit(args, _search_doc(report, "aborted"), _search_text(report) + "\naborted: " + str(exc))
        return EXIT_ABORTED
    _emit(args, _search_doc(report, "complete"), _search_text(report))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the structured report")

    parser = argparse.ArgumentParser(prog="circuitcodes", description=_pkg_doc)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check the spread-k property")
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--oracle", action="store_true", help="also run the vertex-walk verifier")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", parents=[common], help="bit runs, symmetry, label counts")
    p.add_argument("file")
    p.add_argument("--d", type=int)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", parents=[common], help="print a maximum-length symmetric code")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int)
    p.add_argument("--trivial", action="store_true", help="(1..k, 1..k) instead")
    p.add_argument("--no-check", action="store_true", help="skip the self-verification")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("canon", parents=[common], help="canonical form under shift + relabel")
    p.add_argument("file")
    p.add_argument("--d", type=int)
    p.add_argument("--with-reversal", action="store_true",
                   help="also minimize over the reversed sequence (not part of isomorphism)")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("iso", parents=[common], help="decide isomorphism of two sequences")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--with-reversal", action="store_true")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("search", parents=[common], help="exhaustive symmetric search")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--nmin", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--asymmetric", action="store_true",
                   help="enumerate whole sequences instead of (h, h); tiny parameters only")
    for name in ("prefix", "windows", "overlap", "unused"):
        p.add_argument(f"--no-prune-{name}", action="store_true")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
