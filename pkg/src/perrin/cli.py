"""Command-line surface.

Results go to stdout, progress to stderr, so pipelines stay clean.  Every
run is deterministic: no sampling, no randomness, and scan result sets do
not depend on the worker count.  Exit code 0 on success, 1 on expected
errors, 2 on usage errors (argparse).

Environment overrides: PERRIN_STORE for the store path, PERRIN_THREADS for
the worker count.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import baseline, scanner, search, store
from .engine import is_perrin_probable, perrin_trace
from .recurrence import (
    SequenceSpec,
    builtin_spec,
    compile_spec,
    parse_coefficients,
    power_sum_mod,
    target_residue,
)


def _progress(label: str):
    def report(done: int, total: int) -> None:
        print(f"{label}: chunk {done}/{total}", file=sys.stderr, flush=True)

    return report


def _resolve_spec(args) -> SequenceSpec:
    if getattr(args, "coeffs", None):
        return compile_spec(parse_coefficients(args.coeffs))
    return builtin_spec(args.spec)


def _emit(args, *fields) -> None:
    if args.format == "tsv":
        print("\t".join(str(f) for f in fields))
    else:
        print(" ".join(str(f) for f in fields))


def cmd_test(args) -> int:
    n = args.n
    spec = _resolve_spec(args)
    if args.trace:
        if spec.name != "perrin":
            print("--trace is only available for the perrin spec", file=sys.stderr)
            return 1
        tr = perrin_trace(n)
        print(f"{n} = 3*{tr.m} + {tr.i}")
        print(f"word: {tr.word}")
        parts = [f"({tr.states[0].a},{tr.states[0].b},{tr.states[0].c})"]
        pos = 1
        for op in tr.word:
            s = tr.states[pos]
            parts.append(f"-{op}-> ({s.a},{s.b},{s.c})")
            pos += 1
        print(" ".join(parts))
        print(f"extract: {tr.extraction} = {tr.extraction_value} = {tr.residue} (mod {n})")
        residue = tr.residue
    else:
        residue = (power_sum_mod(spec, n) - target_residue(spec, n)) % n
    passing = residue == 0
    if baseline.is_prime(n):
        verdict = "prime"
    elif passing:
        verdict = "pseudoprime"
    else:
        verdict = "composite non-pseudoprime"
    if args.format == "tsv":
        print(f"{n}\t{verdict}\t{residue}")
    else:
        print(f"{n}: {verdict} (residue {residue})")
    return 0


def cmd_scan(args) -> int:
    spec = _resolve_spec(args)
    t0 = time.time()
    hits = scanner.scan_range(
        spec, args.lo, args.hi, processes=args.threads, progress=_progress("scan")
    )
    elapsed = time.time() - t0
    pseudoprimes = [n for n in hits if not baseline.is_prime(n)]
    if pseudoprimes and args.store:
        st = store.PppStore(args.store)
        added = st.append(
            store.PppRecord(v, "exhaustive", verified=True) for v in pseudoprimes
        )
        print(f"stored {added} new record(s) in {args.store}", file=sys.stderr)
    for v in pseudoprimes:
        _emit(args, v)
    print(
        f"scan [{args.lo}, {args.hi}) spec={spec}: "
        f"{len(pseudoprimes)} pseudoprime(s), {elapsed:.1f}s",
        file=sys.stderr,
    )
    return 0


def _parse_ktuple(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(","))


def cmd_structured(args) -> int:
    ks = _parse_ktuple(args.k)
    if args.discover:
        rs = search.discover_residues(
            ks,
            modulus=args.modulus,
            target_samples=args.samples,
            p_budget=args.p_budget,
        )
        flag = " (provisional)" if rs.provisional else ""
        _emit(args, f"residues mod {rs.modulus} for {rs.multipliers}:",
              "{" + ",".join(map(str, rs.residues)) + "}",
              f"samples={rs.sample_count}{flag}")
        return 0
    if args.core:
        shape = store.CandidateShape(ks, args.core)
        value = shape.value()
        hit = is_perrin_probable(value)
        _emit(args, value, "pseudoprime" if hit else "not-a-pseudoprime")
        return 0
    records = search.scan_shapes(
        ks,
        (args.p_min, args.p_max),
        value_cap=args.value_cap,
        primes_only=args.primes_only,
        coprime=False if args.no_coprime else None,
    )
    _store_and_print(args, records)
    return 0


def _store_and_print(args, records) -> None:
    if records and getattr(args, "store", None):
        st = store.PppStore(args.store)
        added = st.append(records)
        print(f"stored {added} new record(s) in {args.store}", file=sys.stderr)
    for rec in records:
        shape = rec.shape
        core = shape.core if shape else "-"
        mults = ",".join(map(str, shape.multipliers)) if shape else "-"
        _emit(args, rec.value, rec.method, core, mults)


def cmd_discover(args) -> int:
    args.discover = True
    args.core = None
    return cmd_structured(args)


def cmd_extend(args) -> int:
    st = store.PppStore(args.store)
    sources = [r for r in st.records if r.shape is not None]
    if args.value is not None:
        sources = [r for r in sources if r.value == args.value]
        if not sources:
            print(f"no shaped record with value {args.value} in store", file=sys.stderr)
            return 1
    hits = []
    for rec in sources:
        hits.extend(search.extend_ppp(rec, args.c_max, value_cap=args.value_cap))
    _store_and_print(args, hits)
    print(f"extended {len(sources)} record(s): {len(hits)} hit(s)", file=sys.stderr)
    return 0


def cmd_giant(args) -> int:
    candidates = search.giant_candidates(args.k, args.primes)
    records = []
    for cand in candidates:
        line = [cand.value if args.full else f"<{len(str(cand.value))} digits>",
                f"k={cand.k}", f"core=23*primorial({cand.prime_index})"]
        if args.test:
            hit = is_perrin_probable(cand.value)
            line.append("pseudoprime" if hit else "not-a-pseudoprime")
            if hit:
                records.append(store.PppRecord(cand.value, "giant", verified=True))
        _emit(args, *line)
    if records and args.store:
        st = store.PppStore(args.store)
        added = st.append(records)
        print(f"stored {added} new record(s) in {args.store}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    st = store.PppStore(args.store)
    failures = st.verify_all()
    for rec, reason in failures:
        _emit(args, rec.value, "FAIL", reason)
    print(f"verified {len(st)} record(s), {len(failures)} failure(s)", file=sys.stderr)
    return 0 if not failures else 1


def cmd_stats(args) -> int:
    st = store.PppStore(args.store)
    if args.format != "tsv":
        _emit(args, "bound", "count", "W")
    for bound, count, w in st.stats(args.decades):
        _emit(args, bound, count, w if w is not None else "-")
    return 0


def cmd_import(args) -> int:
    st = store.PppStore(args.store)
    added = st.import_plain(args.file)
    print(f"imported {added} new record(s) into {args.store}", file=sys.stderr)
    return 0


def _add_spec_args(p) -> None:
    p.add_argument("--spec", default="perrin",
                   help="built-in spec name (perrin, q17, r14, g154)")
    p.add_argument("--coeffs", default=None,
                   help="polynomial coefficients a1,...,ak (overrides --spec)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perrin",
        description="Pseudoprime tests from integer polynomials, and a Perrin pseudoprime hunter.",
    )
    parser.add_argument(
        "--store",
        default=os.environ.get("PERRIN_STORE", "ppp.tsv"),
        help="pseudoprime store path (env PERRIN_STORE)",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("PERRIN_THREADS", "1")),
        help="worker process count for scans (env PERRIN_THREADS)",
    )
    parser.add_argument("--format", choices=("text", "tsv"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test", help="classify one number")
    p.add_argument("n", type=int)
    _add_spec_args(p)
    p.add_argument("--trace", action="store_true",
                   help="print the Q/M word and register evolution (perrin only)")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("scan", help="exhaustive scan of [lo, hi)")
    p.add_argument("lo", type=int)
    p.add_argument("hi", type=int)
    _add_spec_args(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("structured", help="scan structured candidates")
    p.add_argument("-k", required=True, help="multiplier tuple, e.g. 3,1")
    p.add_argument("--p-min", type=int, default=3)
    p.add_argument("--p-max", type=int, default=10**5)
    p.add_argument("--primes-only", action="store_true")
    p.add_argument("--no-coprime", action="store_true",
                   help="allow non-coprime multiplier pairs")
    p.add_argument("--value-cap", type=int, default=None)
    p.add_argument("--core", type=int, default=None,
                   help="test a single core instead of scanning")
    p.add_argument("--discover", action="store_true",
                   help="discover the residue set instead of scanning")
    p.add_argument("--modulus", type=int, default=search.DEFAULT_MODULUS)
    p.add_argument("--samples", type=int, default=search.PROVISIONAL_SAMPLES)
    p.add_argument("--p-budget", type=int, default=10**6)
    p.set_defaults(func=cmd_structured)

    p = sub.add_parser("discover", help="discover residue set for a multiplier tuple")
    p.add_argument("-k", required=True)
    p.add_argument("--modulus", type=int, default=search.DEFAULT_MODULUS)
    p.add_argument("--samples", type=int, default=search.PROVISIONAL_SAMPLES)
    p.add_argument("--p-budget", type=int, default=10**6)
    p.set_defaults(func=cmd_discover)

    p = sub.add_parser("extend", help="extend stored shaped records by lcm multiples")
    p.add_argument("--value", type=int, default=None,
                   help="extend just this stored value")
    p.add_argument("--c-max", type=int, default=20)
    p.add_argument("--value-cap", type=int, default=None)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("giant", help="residue-1 giant candidate construction")
    p.add_argument("-k", type=int, choices=(2, 3), default=2)
    p.add_argument("--primes", type=int, required=True,
                   help="number of leading primes in the core primorial")
    p.add_argument("--test", action="store_true", help="run the Perrin test on each")
    p.add_argument("--full", action="store_true", help="print full decimal values")
    p.set_defaults(func=cmd_giant)

    p = sub.add_parser("verify", help="re-test every stored record")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="per-decade counts and error rates")
    p.add_argument("--decades", type=int, default=9)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("import", help="import a plain one-value-per-line list")
    p.add_argument("file")
    p.set_defaults(func=cmd_import)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
