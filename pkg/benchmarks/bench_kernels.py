"""Benchmark the compiled kernels against the numpy fallback.

Runs the three hot loops (word recurrence, generator-word product, batch
invertibility) on a couple of corpus rings and prints a speed table.
Results are cross-checked for equality before timing, so a mismatch
aborts the run instead of reporting a meaningless speedup.

Usage: python benchmarks/bench_kernels.py [--words 200000] [--repeats 5]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from ringline import _kernels_py
from ringline.presets import ring_preset

try:
    from ringline import _kernels_cy
except ImportError:
    _kernels_cy = None


def _ring_tables(name):
    ring = ring_preset(name)
    return ring, ring.mul_table, ring.add_table, ring.neg_table, ring.one, ring.zero


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_ring(name, n_words, word_len, repeats):
    ring, mul_t, add_t, neg_t, one, zero = _ring_tables(name)
    rng = np.random.default_rng(0)
    digits = rng.integers(0, ring.size, size=(word_len, n_words), dtype=np.int32)

    backends = [("py", _kernels_py)]
    if _kernels_cy is not None:
        backends.append(("cy", _kernels_cy))

    rows = []
    for label, fn_name, args_fn in [
        ("eval_words_e", "eval_words_e", lambda k: k.eval_words_e(mul_t, add_t, neg_t, one, zero, digits)),
        ("eval_words_eword", "eval_words_eword", lambda k: k.eval_words_eword(mul_t, add_t, neg_t, one, zero, digits)),
    ]:
        outs = {}
        times = {}
        for bname, impl in backends:
            outs[bname] = args_fn(impl)
            times[bname] = _time(lambda impl=impl: args_fn(impl), repeats)
        if len(backends) == 2:
            for x, y in zip(outs["py"], outs["cy"]):
                assert np.array_equal(np.asarray(x), np.asarray(y)), label
        rows.append((name, label, n_words, times))

    a, b, c, d = _kernels_py.eval_words_eword(mul_t, add_t, neg_t, one, zero, digits)
    outs = {}
    times = {}
    for bname, impl in backends:
        outs[bname] = impl.batch_invertible(mul_t, add_t, one, zero, a, b, c, d)
        times[bname] = _time(
            lambda impl=impl: impl.batch_invertible(mul_t, add_t, one, zero, a, b, c, d),
            repeats,
        )
    if len(backends) == 2:
        for x, y in zip(outs["py"], outs["cy"]):
            assert np.array_equal(np.asarray(x), np.asarray(y)), "batch_invertible"
    rows.append((name, "batch_invertible", n_words, times))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--words", type=int, default=200_000)
    ap.add_argument("--word-len", type=int, default=6)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--rings", nargs="*", default=["zmod6", "m2f2", "bm3"])
    args = ap.parse_args()

    if _kernels_cy is None:
        print("note: compiled extension not built; timing the fallback only")

    all_rows = []
    for name in args.rings:
        all_rows.extend(bench_ring(name, args.words, args.word_len, args.repeats))

    header = f"{'ring':<8} {'kernel':<18} {'words':>8} {'py (ms)':>10}"
    if _kernels_cy is not None:
        header += f" {'cy (ms)':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, label, n_words, times in all_rows:
        line = f"{name:<8} {label:<18} {n_words:>8} {times['py'] * 1e3:>10.2f}"
        if "cy" in times:
            speed = times["py"] / times["cy"] if times["cy"] > 0 else float("inf")
            line += f" {times['cy'] * 1e3:>10.2f} {speed:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
