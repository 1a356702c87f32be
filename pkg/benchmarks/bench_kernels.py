"""Times the tally kernels on both backends and verifies identical outputs.

Usage: python benchmarks/bench_kernels.py [--rounds N] [--repeat K]
"""

import argparse
import time

import numpy as np

from bellkit import backend
from bellkit.nogo import ghz_satisfaction_table
from bellkit.superdet import GhzSampler, run_ghz_rounds, uniform_chooser


def best_of(repeat, fn, *args, **kwargs):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args, **kwargs)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rounds", type=int, default=5_000_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    names = backend.available_backends()
    if "compiled" not in names:
        print("note: compiled kernels not built; timing the python backend only")

    rng = np.random.default_rng(0)
    n = args.rounds
    codes = rng.integers(0, 64, n, dtype=np.uint8)
    lines = rng.integers(0, 4, n, dtype=np.uint8)
    masks = rng.integers(0, 2**10, n, dtype=np.uint32)
    choices = rng.integers(0, 10, n, dtype=np.uint8)
    a = rng.choice(np.array([-1, 1], dtype=np.int8), n)
    b = rng.choice(np.array([-1, 1], dtype=np.int8), n)
    hist_codes = codes.astype(np.uint16)
    sat = ghz_satisfaction_table()

    cases = {
        "ghz_line_tally": lambda k: k.ghz_line_tally(codes, lines, sat),
        "masked_choice_tally": lambda k: k.masked_choice_tally(masks, choices, 10),
        "equal_count": lambda k: k.equal_count(a, b),
        "code_histogram": lambda k: k.code_histogram(hist_codes, 64),
    }

    print(f"{n:,} rounds, best of {args.repeat}\n")
    print(f"{'kernel':<22}" + "".join(f"{name:>14}" for name in names) + f"{'speedup':>10}")
    for label, fn in cases.items():
        times, outputs = {}, {}
        for name in names:
            times[name], outputs[name] = best_of(args.repeat, fn, backend.get_backend(name))
        if len(names) == 2:
            ref, cmp_ = outputs["python"], outputs["compiled"]
            ref = ref if isinstance(ref, tuple) else (ref,)
            cmp_ = cmp_ if isinstance(cmp_, tuple) else (cmp_,)
            assert all(np.array_equal(x, y) for x, y in zip(ref, cmp_)), label
        row = f"{label:<22}" + "".join(f"{times[name] * 1e3:>12.2f}ms" for name in names)
        if len(names) == 2:
            row += f"{times['python'] / times['compiled']:>9.2f}x"
        print(row)

    # end-to-end: a full experiment, per backend, via the kernel override
    print()
    saved = backend.kernels
    try:
        for name in names:
            backend.kernels = backend.get_backend(name)
            elapsed, report = best_of(
                max(1, args.repeat // 2),
                run_ghz_rounds,
                GhzSampler(),
                uniform_chooser(),
                n,
                7,
            )
            print(
                f"run_ghz_rounds[{name:>8}]: {elapsed * 1e3:8.2f}ms "
                f"(violation_frequency={report.violation_frequency:.4f})"
            )
    finally:
        backend.kernels = saved


if __name__ == "__main__":
    main()
