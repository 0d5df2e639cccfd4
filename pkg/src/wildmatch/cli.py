"""Command-line driver.

Subcommands: ``match`` (and its alias ``exact``), ``oracle`` for
differential checking, ``gen-lb`` for certified hard instances, ``bench``
for the CSV benchmark harness, and ``selftest`` for the seeded randomized
differential suite. Inputs are raw bytes; positions in all outputs are
1-based. Exit codes: 0 success, 1 verification mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time
from dataclasses import dataclass

from . import corpora
from .driver import ChunkPlan, match_full, plan_chunks
from .errors import WildmatchError
from .instrument import Counters
from .lowerbound import build_instance, certify_instance
from .occset import materialize
from .oracle import naive_occurrences, reduction_occurrences
from .wstring import parse_solid, parse_wstring, solid_to_bytes, to_bytes


@dataclass
class BenchRecord:
    n: int
    m: int
    d: int
    g: int
    k: int
    wall_time: float
    kangaroo_count: int
    event_count: int
    candidate_count: int

    FIELDS = ("n", "m", "D", "G", "k", "wall_time", "kangaroo_count",
              "event_count", "candidate_count")

    def row(self):
        return [self.n, self.m, self.d, self.g, self.k,
                f"{self.wall_time:.6f}", self.kangaroo_count,
                self.event_count, self.candidate_count]


def _read_inputs(args, parser):
    if args.pattern and args.text:
        with open(args.pattern, "rb") as f:
            pdata = f.read()
        with open(args.text, "rb") as f:
            tdata = f.read()
    elif not args.pattern and not args.text:
        data = sys.stdin.buffer.read()
        if b"\n" not in data:
            parser.error("stdin mode needs a pattern line and a text body")
        pdata, tdata = data.split(b"\n", 1)
    else:
        parser.error("--pattern and --text must be given together")
    return parse_wstring(pdata, args.wildcard_char), parse_solid(tdata)


def _emit(oset, args) -> None:
    if args.output == "tsv":
        sys.stdout.write(oset.to_tsv())
        return
    if args.explicit:
        positions = materialize(oset)
        payload = {"q": 1, "progressions": [], "extras": positions,
                   "count": len(positions)}
    else:
        payload = oset.to_json()
    print(json.dumps(payload))


def _cmd_match(args, parser, k_override=None) -> int:
    p, t = _read_inputs(args, parser)
    k = args.k if k_override is None else k_override
    counters = Counters()
    oset = match_full(p, t, k, counters=counters, threads=args.threads)
    _emit(oset, args)
    if args.stats:
        print(json.dumps(counters.snapshot()), file=sys.stderr)
    return 0


def _cmd_oracle(args, parser) -> int:
    p, t = _read_inputs(args, parser)
    expected = naive_occurrences(p, t, args.k).occurrences
    if args.output == "tsv":
        sys.stdout.write("".join(f"{pos}\n" for pos in expected))
    else:
        print(json.dumps({"positions": expected, "count": len(expected)}))
    got = materialize(match_full(p, t, args.k))
    if got != expected:
        print(f"mismatch: matcher returned {len(got)} positions, "
              f"oracle {len(expected)}", file=sys.stderr)
        return 1
    return 0


def _cmd_gen_lb(args) -> int:
    inst = build_instance(args.d, args.k)
    cert = certify_instance(inst)
    with open(args.out_prefix + ".pattern", "wb") as f:
        f.write(to_bytes(inst.p, args.wildcard_char))
    with open(args.out_prefix + ".text", "wb") as f:
        f.write(solid_to_bytes(inst.t))
    with open(args.out_prefix + ".cert.json", "w") as f:
        json.dump(cert.to_json(), f, indent=2)
        f.write("\n")
    print(json.dumps(cert.to_json()))
    return 0


def selftest(cases: int, seed: int):
    """Randomized differential suite; returns (ok, report_text)."""
    rng = random.Random(seed)
    lines = [f"selftest cases={cases} seed={seed}"]
    failures = 0
    checked = 0
    for i in range(cases):
        k = rng.choice((0, 0, 1, 2, 5))
        if i % 4 == 3:
            p, t = corpora.periodic_instance(rng, k)
        else:
            p, t = corpora.suite_instance(
                rng, k, d_cap_div=4 if k == 0 else 8
            )
        expected = naive_occurrences(p, t, k).occurrences
        second = reduction_occurrences(p, t, k)
        got = materialize(match_full(p, t, k))
        checked += 1
        if expected != second or got != expected:
            failures += 1
            if failures <= 10:
                lines.append(
                    f"FAIL case={i} k={k} m={len(p)} n={len(t)} "
                    f"expected={len(expected)} got={len(got)}"
                )
    lines.append(f"checked={checked} failures={failures}")
    lines.append("PASS" if failures == 0 else "FAIL")
    return failures == 0, "\n".join(lines) + "\n"


def _cmd_selftest(args) -> int:
    ok, report = selftest(args.cases, args.seed)
    sys.stdout.write(report)
    return 0 if ok else 1


def _bench_instance(rng, family: str, n: int, k: int):
    if family == "uniform":
        m = max(1, n // 2)
        sigma = 4
        g = min(8, max(0, m // 64))
        d = min(g * 2, (m - 1) // 8)
        g = min(g, d)
        p = corpora.random_wstring(rng, m, sigma, g, d)
        t = corpora.random_solid(rng, n, sigma)
        return p, t, k
    if family == "periodic":
        p, t, c = corpora.scaling_instance(rng, n)
        return p, t, c
    if family == "lowerbound":
        inst = build_instance(max(1, k), 2 * max(1, k // 2))
        return inst.p, inst.t, inst.k
    raise ValueError(f"unknown family {family!r}")


def _cmd_bench(args) -> int:
    rng = random.Random(args.seed)
    writer = csv.writer(sys.stdout)
    writer.writerow(BenchRecord.FIELDS)
    for n in args.sizes:
        for _ in range(args.runs):
            p, t, k = _bench_instance(rng, args.family, n, args.k)
            counters = Counters()
            start = time.perf_counter()
            match_full(p, t, k, counters=counters)
            elapsed = time.perf_counter() - start
            rec = BenchRecord(len(t), len(p), p.d_count, p.g_count, k,
                              elapsed, counters.kangaroo_calls,
                              counters.event_count, counters.candidate_count)
            writer.writerow(rec.row())
    return 0


def _int_list(text: str):
    return [int(x) for x in text.split(",") if x]


def _add_io_flags(sp) -> None:
    sp.add_argument("--pattern", help="pattern file (raw bytes)")
    sp.add_argument("--text", help="text file (raw bytes)")
    sp.add_argument("--wildcard-char", default="?",
                    help="pattern byte treated as the wildcard (default '?')")
    sp.add_argument("--output", choices=("json", "tsv"), default="json")
    sp.add_argument("--explicit", action="store_true",
                    help="emit materialized positions instead of progressions")
    sp.add_argument("--stats", action="store_true",
                    help="emit work counters to stderr")
    sp.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wildmatch",
        description="exact and k-mismatch matching of wildcard patterns",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("match", help="find k-mismatch occurrences")
    _add_io_flags(sp)
    sp.add_argument("--k", type=int, default=0)

    sp = sub.add_parser("exact", help="alias for match --k 0")
    _add_io_flags(sp)

    sp = sub.add_parser("oracle", help="brute-force reference + differential check")
    _add_io_flags(sp)
    sp.add_argument("--k", type=int, default=0)

    sp = sub.add_parser("gen-lb", help="generate a certified hard instance")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--out-prefix", required=True)
    sp.add_argument("--wildcard-char", default="?")

    sp = sub.add_parser("bench", help="benchmark harness (CSV to stdout)")
    sp.add_argument("--family", choices=("uniform", "periodic", "lowerbound"),
                    default="uniform")
    sp.add_argument("--sizes", type=_int_list, default=[1 << 14])
    sp.add_argument("--runs", type=int, default=3)
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("selftest", help="seeded randomized differential suite")
    sp.add_argument("--cases", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)

    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "match":
            return _cmd_match(args, parser)
        if args.command == "exact":
            return _cmd_match(args, parser, k_override=0)
        if args.command == "oracle":
            return _cmd_oracle(args, parser)
        if args.command == "gen-lb":
            return _cmd_gen_lb(args)
        if args.command == "bench":
            return _cmd_bench(args)
        if args.command == "selftest":
            return _cmd_selftest(args)
    except WildmatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
