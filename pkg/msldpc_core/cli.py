# msldpc_core/cli.py
"""
Command-line surface.

    msldpc cosets --n 15
    msldpc factor --n 21 --json
    msldpc search --n 21 --rmin 0.5 --d 4 --delta 1 --catalog codes.jsonl
    msldpc analyze --reference 51,26
    msldpc export-alist --u "1+x+x^2+x^4" --n 7 --out hamming.alist
    msldpc simulate --reference 127,84 --snr 2 3 4 --out fer.csv

Records and reports go to stdout (JSON lines / JSON / CSV), logs to stderr.
Exit status: 0 success, 1 file errors, 2 invalid input or internal
consistency failure, 3 search truncated by its node budget.
"""

from typing import Any, Dict, List, Optional, Tuple
import argparse
import json
import logging
import sys

import numpy as np

from msldpc_core import settings
from msldpc_core.alist import format_alist, read_alist
from msldpc_core.catalog import CodeCatalog
from msldpc_core.chansim import ChannelConfig, DecoderConfig, simulate_fer, uncoded_fer, write_csv
from msldpc_core.codecraft import (
    CyclicCode,
    build_code,
    difference_profile,
    gf2_nullspace,
    gf2_rank,
    min_distance_exact,
    parity_check_matrix,
    satisfies_weight_condition,
)
from msldpc_core.codesearch import SearchConfig, SearchStats, code_search
from msldpc_core.cyclotomic import cosets, factorize
from msldpc_core.errors import BudgetExceeded, MsldpcError, RecordNotFound
from msldpc_core.fieldcore import build_field
from msldpc_core.msdomain import prepare_factor_set, spectral_profile
from msldpc_core.polyring import BinaryPolynomial, is_idempotent
from msldpc_core.record import CodeRecord
from msldpc_core.reference_codes import find_reference

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2
EXIT_TRUNCATED = 3


def _emit(obj: Any, out=None) -> None:
    print(json.dumps(obj, ensure_ascii=False, sort_keys=True), file=out or sys.stdout)


def _reference_arg(text: str) -> Tuple[int, int]:
    try:
        n, k = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'n,k', got {text!r}")
    return n, k


def _resolve_u(args: argparse.Namespace) -> Tuple[BinaryPolynomial, int]:
    """u(x) and n from --reference, or from --u and --n."""
    if getattr(args, "reference", None):
        ref = find_reference(*args.reference)
        return ref.u, ref.n
    if args.u is None or args.n is None:
        raise argparse.ArgumentTypeError("give --u and --n, or --reference n,k")
    return BinaryPolynomial.from_text(args.u), args.n


# ---------- commands ----------
def cmd_cosets(args: argparse.Namespace) -> int:
    cs = cosets(args.n)
    if args.json:
        _emit({"n": args.n, "cosets": [c.to_dict() for c in cs]})
    else:
        for c in cs:
            print(f"{c.leader}, {c.size}, {{{', '.join(str(m) for m in c.members)}}}")
    return EXIT_OK


def cmd_factor(args: argparse.Namespace) -> int:
    if args.json:
        _, fs = prepare_factor_set(args.n)
        _emit(fs.to_dict())
    else:
        fs = factorize(args.n, build_field(args.n))
        for line in fs.dump_lines():
            print(line)
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    cfg = SearchConfig(
        n=args.n, r_min=args.rmin, d=args.d, delta=args.delta,
        max_results=args.max_results, budget=args.budget,
        workers=args.workers or settings.search_workers(),
    )
    ctx, fs = prepare_factor_set(cfg.n)
    stats = SearchStats()
    # ranked output needs the full result set first
    stream = not (args.sorted or cfg.max_results is not None)
    on_record = _emit_record if stream else None

    status = EXIT_OK
    try:
        records = code_search(cfg, fs, ctx, on_record=on_record, stats=stats)
    except BudgetExceeded as e:
        records = list(e.partial)
        status = EXIT_TRUNCATED
        print(f"warning: {e}; results are partial", file=sys.stderr)

    if not stream:
        for rec in records:
            _emit_record(rec)

    added = 0
    if not args.no_catalog:
        catalog = CodeCatalog(args.catalog)
        added = catalog.append_new(records, provenance=cfg.model_dump())
    _emit({"summary": {**stats.to_dict(), "catalog_added": added}})
    return status


def _emit_record(rec: CodeRecord) -> None:
    _emit(rec.to_dict())


def analyze(u: BinaryPolynomial, n: int, budget: Optional[int] = None) -> Dict[str, Any]:
    """Everything measurable about the code defined by u at length n."""
    ctx = build_field(n)
    code = build_code(u, n)
    profile = spectral_profile(u, ctx)
    diffs = difference_profile(u, n)
    budget = settings.dmin_budget() if budget is None else budget
    report: Dict[str, Any] = {
        "n": n,
        "k": code.k,
        "rate": code.rate,
        "u": u.to_text("x"),
        "weight": u.weight,
        "g": code.g.to_text("x"),
        "h": code.h.to_text("x"),
        "idempotent": is_idempotent(u, n),
        "bch_run": profile.bch_run,
        "bch_bound": profile.bch_bound,
        "orthogonal": diffs.orthogonal,
        "weight_condition": satisfies_weight_condition(u, n),
        "four_cycles": diffs.four_cycles,
        "dmin": None,
    }
    try:
        report["dmin"] = min_distance_exact(code, budget=budget, lower_bound=profile.bch_bound)
    except BudgetExceeded:
        log.info("d_min of (%d,%d) not enumerated: 2^%d exceeds budget %d", n, code.k, code.k, budget)
    return report


def cmd_analyze(args: argparse.Namespace) -> int:
    u, n = _resolve_u(args)
    report = analyze(u, n, budget=args.budget)
    if args.reference:
        ref = find_reference(*args.reference)
        report["reference"] = {"k": ref.k, "dmin": ref.dmin, "orthogonal": ref.orthogonal}
    print(json.dumps(report, ensure_ascii=False, sort_keys=True, indent=2))
    return EXIT_OK


def _code_from_args(args: argparse.Namespace) -> CyclicCode:
    if getattr(args, "record", None):
        with open(args.record, "r", encoding="utf-8") as f:
            lines = [ln for ln in f.read().splitlines() if ln.strip() and '"summary"' not in ln]
        if not 0 <= args.index < len(lines):
            raise RecordNotFound(f"{args.record} holds {len(lines)} record(s); no index {args.index}")
        try:
            rec = CodeRecord.from_json(lines[args.index])
        except (ValueError, KeyError, TypeError) as e:
            raise RecordNotFound(f"{args.record}: record {args.index} is malformed ({e})") from e
        return build_code(rec.u, rec.n)
    u, n = _resolve_u(args)
    return build_code(u, n)


def _parity_matrix(code: CyclicCode, reduced: bool):
    H = parity_check_matrix(code.u, code.n)
    return H.reduced(code.k) if reduced else H


def cmd_export_alist(args: argparse.Namespace) -> int:
    code = _code_from_args(args)
    text = format_alist(_parity_matrix(code, args.reduced).to_dense())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
        log.info("wrote %s", args.out)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.alist:
        H = read_alist(args.alist)
        code = gf2_nullspace(H)
        k, n = code.shape
        if k == 0:
            raise MsldpcError(f"{args.alist}: the parity-check matrix has full column rank")
        log.info("alist code: n=%d k=%d rank(H)=%d", n, k, gf2_rank(H))
    else:
        code = _code_from_args(args)
        H = _parity_matrix(code, args.reduced)
        n, k = code.n, code.k

    dec = DecoderConfig(
        max_iterations=args.iters or settings.bp_iterations(),
        algorithm=args.decoder,
        early_stop=not args.no_early_stop,
    )
    points = [ChannelConfig(ebn0_db=s, rate=k / n, seed=args.seed) for s in args.snr]
    results = simulate_fer(
        code, H, points, dec,
        min_frame_errors=args.min_frame_errors,
        max_frames=args.max_frames,
        batch_size=args.batch_size,
        random_codewords=args.random_codewords,
    )
    for res in results:
        log.info("Eb/N0=%.2f dB: uncoded FER for %d bits = %.3e", res.ebn0_db, k, uncoded_fer(res.ebn0_db, k))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            write_csv(results, f)
    else:
        write_csv(results, sys.stdout)
    return EXIT_OK


# ---------- parser ----------
def _add_code_source(p: argparse.ArgumentParser, with_record: bool = True) -> None:
    p.add_argument("--u", help='defining polynomial, e.g. "1+x+x^2+x^4"')
    p.add_argument("--n", type=int, help="code length (odd)")
    p.add_argument("--reference", type=_reference_arg, metavar="N,K", help="a published example code")
    if with_record:
        p.add_argument("--record", help="JSON-lines file of search records")
        p.add_argument("--index", type=int, default=0, help="which record of --record (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="msldpc", description="Cyclic LDPC codes from binary idempotents.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cosets", help="cyclotomic cosets mod n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cosets)

    p = sub.add_parser("factor", help="irreducible factors of z^n+1")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true", help="JSON, including primitive idempotents")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("search", help="bounded search for low-weight idempotents")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rmin", type=float, required=True, help="minimum code rate")
    p.add_argument("--d", type=int, required=True, help="lowest expected minimum distance")
    p.add_argument("--delta", type=int, default=1, help="slack on the sqrt(n) weight bound (default 1)")
    p.add_argument("--max-results", type=int, default=None)
    p.add_argument("--budget", type=int, default=None, help="node budget")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--sorted", action="store_true",
                   help="print records ranked after the search instead of as they are found")
    p.add_argument("--catalog", default=None, help="catalog path (default $MSLDPC_CATALOG or codes_catalog.jsonl)")
    p.add_argument("--no-catalog", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("analyze", help="report on the code defined by u(x)")
    _add_code_source(p, with_record=False)
    p.add_argument("--budget", type=int, default=None, help="d_min enumeration budget (messages)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("export-alist", help="circulant parity-check matrix as alist")
    _add_code_source(p)
    p.add_argument("--reduced", action="store_true", help="leading n-k rows only")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_export_alist)

    p = sub.add_parser("simulate", help="BPSK/AWGN frame error rate")
    _add_code_source(p)
    p.add_argument("--alist", default=None, help="parity-check matrix file")
    p.add_argument("--snr", type=float, nargs="+", required=True, help="Eb/N0 points in dB")
    p.add_argument("--iters", type=int, default=None)
    p.add_argument("--decoder", choices=["spa", "minsum"], default="spa")
    p.add_argument("--no-early-stop", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-frame-errors", type=int, default=100)
    p.add_argument("--max-frames", type=int, default=100_000)
    p.add_argument("--batch-size", type=int, default=None)
    p.add_argument("--random-codewords", action="store_true")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except MsldpcError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (argparse.ArgumentTypeError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
