#!/usr/bin/env python3
"""Time the pure-Python and compiled model-set kernels side by side.

Micro-benchmarks hit the kernel scan loops directly; the end-to-end
rows rebind the hot functions inside ``defpos._kernel`` and rerun the
analyzer, so they measure exactly what backend selection changes.
The table algebra (masks, cofactors, coordinate moves) is identical
big-int arithmetic under both backends and is not compared.

Usage: python3 benchmarks/compare_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import defpos._kernel as kern
from defpos._kernel import pybits

try:
    from defpos._kernel import _bitkern
except ImportError:
    _bitkern = None

from defpos.analyzer import analyze
from defpos.boolfun import Domain
from defpos.generators import def_chain, pos_linear

# the functions backend selection actually swaps (count/common_ones stay pure)
HOT = ("indices", "closure", "closure_update", "is_closed", "closure_witness")


def bind(impl) -> None:
    for name in HOT:
        setattr(kern, name, getattr(impl, name))


def timed(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best * 1000.0


def dense_table(width: int, stride: int = 3) -> int:
    table = 1 << ((1 << width) - 1)
    for v in range(0, 1 << width, stride):
        table |= 1 << v
    return table


def chain_prefix(width: int, size: int) -> int:
    return ((1 << size) - 1) | (1 << ((1 << width) - 1))


def micro_cases():
    t12 = dense_table(12)
    t17 = dense_table(17, stride=2)
    closed12 = pybits.closure(chain_prefix(12, 1 << 11))
    yield "closure, dense width 12", lambda impl: impl.closure(t12)
    yield "closure_update, +1 model x512", lambda impl: [
        impl.closure_update(closed12, 1 << v) for v in range(512)
    ]
    yield "is_closed, chain prefix width 12", lambda impl: impl.is_closed(closed12)
    yield "indices, dense width 17", lambda impl: impl.indices(t17)
    yield "count, dense width 17", lambda impl: impl.count(t17)
    yield "common_ones, dense width 17", lambda impl: impl.common_ones(t17, 17)


def end_to_end_cases():
    yield "analyze def-chain n=9 (def)", lambda: analyze(
        def_chain(9), Domain.DEF, max_rounds=100000
    )
    yield "analyze pos-linear n=7 (pos)", lambda: analyze(
        pos_linear(7), Domain.POS, max_rounds=100000
    )
    yield "analyze pos-linear n=5 (def)", lambda: analyze(
        pos_linear(5), Domain.DEF, max_rounds=100000
    )

    from defpos.boolfun import is_intersection_closed

    trace = analyze(def_chain(8), Domain.DEF, record_trace=True).trace

    def validate_rounds():
        # the verify-command workload: closedness of every round value
        for interp in trace.rounds:
            for value in interp.entries.values():
                assert is_intersection_closed(value.models)

    yield "validate def-chain n=8 trace closedness", validate_rounds


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = [("python", pybits)] + ([("cython", _bitkern)] if _bitkern else [])
    if _bitkern is None:
        print("compiled kernel not built; timing the pure backend only\n")

    rows = []
    for label, case in micro_cases():
        cells = [timed(lambda: case(impl), args.repeat) for _, impl in backends]
        rows.append((label, cells))
    for label, case in end_to_end_cases():
        cells = []
        for _, impl in backends:
            bind(impl)
            cells.append(timed(case, max(1, args.repeat - 1)))
        bind(kern._impl)
        rows.append((label, cells))

    width = max(len(r[0]) for r in rows)
    header = f"{'benchmark':<{width}}  " + "".join(
        f"{name + ' (ms)':>14}" for name, _ in backends
    )
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, cells in rows:
        line = f"{label:<{width}}  " + "".join(f"{ms:>14.3f}" for ms in cells)
        if len(cells) == 2 and cells[1] > 0:
            line += f"{cells[0] / cells[1]:>9.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
