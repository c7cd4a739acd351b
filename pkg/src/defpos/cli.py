"""Command-line front end: generate, analyze, bench, verify.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 non-convergence guard.  Diagnostics go to stderr; results to stdout
or the requested output file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys

from . import _kernel as kern
from .analyzer import (
    AnalysisResult,
    NonConvergenceError,
    analyze,
)
from .boolfun import (
    Domain,
    chain_element,
    down_set,
    intersection_close,
    is_intersection_closed,
    nth_model,
)
from .generators import FAMILIES
from .oracle import (
    SCALE_CAP,
    OracleScaleError,
    expected_chain_sets,
    random_program,
    ref_analyze,
    ref_closure,
)
from .program import ParseError, parse, render, size_metric

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_NO_CONVERGENCE = 3

CSV_HEADER = ["family", "domain", "n", "m", "rounds", "p_increases", "wall_ms"]


def _bitstr(width: int, value: int) -> str:
    return format(value, f"0{width}b")


def _predicate_records(result: AnalysisResult) -> list[dict]:
    records = []
    for sig in sorted(result.fixpoint.entries):
        value = result.fixpoint.entries[sig]
        records.append(
            {
                "predicate": sig[0],
                "arity": sig[1],
                "models": [_bitstr(sig[1], v) for v in value.models.values()],
                "ground_args": list(value.ground_positions()),
                "strict_increases": result.strict_increases[sig],
                "intersection_closed": is_intersection_closed(value.models),
                "unreachable": value.is_bottom(),
            }
        )
    return records


def _update_records(result: AnalysisResult) -> list[dict]:
    out = []
    for ev in result.trace.updates:
        added = ev.new.table & ~ev.old.table
        out.append(
            {
                "round": ev.round,
                "predicate": ev.signature[0],
                "arity": ev.signature[1],
                "added_models": [_bitstr(ev.signature[1], v) for v in kern.indices(added)],
            }
        )
    return out


def _write_text(result: AnalysisResult, trace: bool, out) -> None:
    print(f"domain: {result.tag}", file=out)
    print(f"rounds to fixpoint: {result.rounds_to_fixpoint}", file=out)
    for rec in _predicate_records(result):
        name = f"{rec['predicate']}/{rec['arity']}"
        models = ",".join(rec["models"]) if rec["models"] else "(none)"
        print(f"{name}: models {models}", file=out)
        ground = ",".join(str(j) for j in rec["ground_args"]) or "(none)"
        flags = "" if rec["intersection_closed"] else "  [not intersection closed]"
        if rec["unreachable"]:
            flags += "  [unreachable]"
        print(f"  ground args: {ground}{flags}", file=out)
        print(f"  strict increases: {rec['strict_increases']}", file=out)
    if trace:
        for upd in _update_records(result):
            added = ",".join(upd["added_models"])
            print(
                f"round {upd['round']}: {upd['predicate']}/{upd['arity']} added {added}",
                file=out,
            )
    print(f"wall: {result.wall_ms:.3f} ms", file=out)


def cmd_generate(args) -> int:
    family = FAMILIES[args.family]
    try:
        program = family.generate(args.n)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = render(program)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_analyze(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            program = parse(fh.read())
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ParseError as exc:
        print(f"error: {args.file}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        result = analyze(
            program,
            Domain(args.domain),
            max_rounds=args.max_rounds,
            record_trace=args.trace,
        )
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    if args.format == "json":
        doc = {
            "domain": result.tag.value,
            "rounds": result.rounds_to_fixpoint,
            "wall_ms": result.wall_ms,
            "predicates": _predicate_records(result),
        }
        if args.trace:
            doc["updates"] = _update_records(result)
        json.dump(doc, sys.stdout, indent=2)
        print()
    else:
        _write_text(result, args.trace, sys.stdout)
    return EXIT_OK


def cmd_bench(args) -> int:
    family = FAMILIES[args.family]
    if args.n_min < family.min_n or args.n_min > args.n_max:
        print(
            f"error: need {family.min_n} <= n-min <= n-max for {family.name}",
            file=sys.stderr,
        )
        return EXIT_INPUT
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_HEADER)
    for n in range(args.n_min, args.n_max + 1):
        program = family.generate(n)
        metric = size_metric(program)
        try:
            result = analyze(program, Domain(args.domain), max_rounds=args.max_rounds)
        except NonConvergenceError as exc:
            print(f"error: n={n}: {exc}", file=sys.stderr)
            return EXIT_NO_CONVERGENCE
        writer.writerow(
            [
                family.name,
                args.domain,
                n,
                metric.arg_positions,
                result.rounds_to_fixpoint,
                result.strict_increases[("p", n)],
                f"{result.wall_ms:.3f}",
            ]
        )
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def _verify_closure_exhaustive(report) -> bool:
    """intersection_close against the oracle on every set of width <= 3."""
    from .boolfun import ModelSet

    ok = True
    cases = 0
    for width in (1, 2, 3):
        for table in range(1 << (1 << width)):
            s = ModelSet(width, table)
            got = frozenset(intersection_close(s).values())
            want = ref_closure(frozenset(s.values()))
            cases += 1
            if got != want:
                report(f"closure mismatch on width {width} table {table:#x}")
                ok = False
    report(f"closure vs oracle, exhaustive width <= 3: {cases} cases")
    return ok


def _verify_down_sets(report) -> bool:
    """Down-sets of every model of width <= 4 are intersection-closed."""
    ok = True
    cases = 0
    for width in range(1, 5):
        for value in range(1 << width):
            cases += 1
            if not is_intersection_closed(down_set(nth_model(width, value))):
                report(f"down-set of {_bitstr(width, value)} not closed")
                ok = False
    report(f"down-set closure, exhaustive width <= 4: {cases} cases")
    return ok


def _sets_of(result_entry) -> frozenset:
    return frozenset(result_entry.models.values())


def _verify_program(program, tag: Domain, cap: int, max_rounds: int, report) -> bool:
    """Main analyzer vs oracle on one program; reports first divergence."""
    try:
        ref = ref_analyze(program, tag.value, max_rounds=max_rounds, cap=cap)
    except OracleScaleError as exc:
        report(f"  skipped ({exc})")
        return True
    main = analyze(program, tag, max_rounds=max_rounds, record_trace=True)
    if tag is Domain.DEF:
        for interp in main.trace.rounds:
            for sig, value in interp.entries.items():
                if not is_intersection_closed(value.models):
                    report(
                        f"  def round value for {sig[0]}/{sig[1]} not closed: "
                        f"{value.render()}"
                    )
                    return False
    for sig in sorted(main.fixpoint.entries):
        main_seq = main.trace.value_sequence(sig)
        ref_seq = ref.value_sequence(sig)
        rounds = max(len(main_seq), len(ref_seq))
        for k in range(rounds):
            got = _sets_of(main_seq[k]) if k < len(main_seq) else _sets_of(main_seq[-1])
            want = ref_seq[k] if k < len(ref_seq) else ref_seq[-1]
            if got != want:
                report(
                    f"  divergence: domain {tag}, predicate {sig[0]}/{sig[1]}, "
                    f"value step {k}:\n"
                    f"    main:   {sorted(got)}\n"
                    f"    oracle: {sorted(want)}\n"
                    f"  program:\n{render(program)}"
                )
                return False
    return True


def _verify_families(n_max: int, cap: int, report) -> bool:
    ok = True
    for name, family in FAMILIES.items():
        for n in range(family.min_n, n_max + 1):
            program = family.generate(n)
            for tag in (Domain.POS, Domain.DEF):
                if not _verify_program(program, tag, cap, 100000, report):
                    report(f"family {name} n={n} domain {tag}: FAIL")
                    ok = False
    report(f"analyzer vs oracle on families, n <= {n_max}: done")
    return ok


def _verify_random(seed: int, count: int, cap: int, report) -> bool:
    rng = random.Random(seed)
    ok = True
    for i in range(count):
        program = random_program(rng)
        for tag in (Domain.POS, Domain.DEF):
            if not _verify_program(program, tag, cap, 1000, report):
                report(f"random program #{i} (seed {seed}) domain {tag}: FAIL")
                ok = False
    report(f"analyzer vs oracle on {count} random programs (seed {seed}): done")
    return ok


def _verify_chain_walk(n_max: int, report) -> bool:
    """Def analysis of the def-chain family walks the canonical chain."""
    ok = True
    for n in range(2, min(n_max, 8) + 1):
        result = analyze(FAMILIES["def-chain"].generate(n), Domain.DEF, record_trace=True)
        got = [_sets_of(v) for v in result.trace.value_sequence(("p", n))]
        want = expected_chain_sets(n)
        also = [frozenset(chain_element(n, i).models.values()) for i in range(1 << n)]
        if got != want or also != want:
            report(f"chain walk mismatch at n={n}")
            ok = False
    report(f"def-chain trace equals canonical chain, n <= {min(n_max, 8)}: done")
    return ok


def cmd_verify(args) -> int:
    def report(line: str) -> None:
        print(line)

    checks = [
        _verify_closure_exhaustive(report),
        _verify_down_sets(report),
        _verify_chain_walk(args.n_max, report),
        _verify_families(args.n_max, args.cap, report),
        _verify_random(args.seed, args.random_count, args.cap, report),
    ]
    if all(checks):
        print("verify: all checks passed")
        return EXIT_OK
    print("verify: FAILURES (see above)", file=sys.stderr)
    return EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="defpos",
        description="Groundness analysis over the Pos/Def domains, "
        "worst-case families, benchmarks, and oracle verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="emit a worst-case family instance")
    gen.add_argument("--family", choices=sorted(FAMILIES), required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("-o", "--output", help="write to file instead of stdout")
    gen.set_defaults(func=cmd_generate)

    ana = sub.add_parser("analyze", help="analyze a clause program")
    ana.add_argument("file")
    ana.add_argument("--domain", choices=["pos", "def"], required=True)
    ana.add_argument("--trace", action="store_true", help="print strict updates")
    ana.add_argument("--format", choices=["text", "json"], default="text")
    ana.add_argument("--max-rounds", type=int, default=None)
    ana.set_defaults(func=cmd_analyze)

    ben = sub.add_parser("bench", help="sweep a family, emit CSV")
    ben.add_argument("--family", choices=sorted(FAMILIES), required=True)
    ben.add_argument("--domain", choices=["pos", "def"], required=True)
    ben.add_argument("--n-min", type=int, required=True)
    ben.add_argument("--n-max", type=int, required=True)
    ben.add_argument("-o", "--output", help="CSV path (default stdout)")
    ben.add_argument("--max-rounds", type=int, default=None)
    ben.set_defaults(func=cmd_bench)

    ver = sub.add_parser("verify", help="run the oracle differential suites")
    ver.add_argument("--n-max", type=int, default=5, help="family size cap")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--random-count", type=int, default=100)
    ver.add_argument("--cap", type=int, default=SCALE_CAP, help="oracle joint-position cap")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
