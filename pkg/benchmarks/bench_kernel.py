"""Timing comparison: compiled 2x2 kernel against the pure-Python fallback.

Run from the repository root:

    python3 benchmarks/bench_kernel.py

Both implementations are imported directly, so the comparison works no
matter which one the package selected at import time.
"""

import time

import numpy as np

import pleatlab._kernel_py as kernel_py

try:
    import pleatlab._kernel as kernel_c
except ImportError:
    kernel_c = None

from pleatlab.words import WordEvaluator, random_reduced_word


def _random_matrices(rng, n):
    entries = rng.standard_normal((n, 8))
    return [
        tuple(complex(r, i) for r, i in zip(row[:4], row[4:]))
        for row in entries
    ]


def _bench(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def workload_mat_mul(mod, mats):
    def run():
        acc = (1 + 0j, 0j, 0j, 1 + 0j)
        for m in mats:
            acc = mod.mat_mul(acc, m)
        return acc

    return run


def workload_inverse_det(mod, mats):
    def run():
        s = 0j
        for m in mats:
            s += mod.mat_det(mod.mat_inv(m))
        return s

    return run


def workload_eval_word(mod, coded_words, gens):
    def run():
        s = 0j
        for codes in coded_words:
            s += mod.mat_trace(mod.eval_word(codes, gens))
        return s

    return run


def workload_mobius(mod, mats, points):
    def run():
        s = 0j
        for m in mats:
            for z in points:
                w = mod.apply_mobius(m, z)
                if w is not None:
                    s += w
        return s

    return run


def main():
    rng = np.random.default_rng(0)
    mats = _random_matrices(rng, 20_000)
    points = [complex(r, i) for r, i in rng.standard_normal((50, 2))]

    gens = {
        "a": (1.1 + 0j, 1.0 + 0j, 0j, 1 / 1.1 + 0j),
        "b": (1.0 + 0j, 0j, 0.7 + 0j, 1.0 + 0j),
    }
    evaluator = WordEvaluator(gens)
    words = [random_reduced_word(rng, "ab", 4, 40) for _ in range(4_000)]
    coded = [evaluator.codes(w) for w in words]
    gen_mats = tuple(evaluator.generator_matrix(ch) for ch in "ab")

    workloads = [
        ("mat_mul chain (20k)", lambda mod: workload_mat_mul(mod, mats)),
        ("inv + det (20k)", lambda mod: workload_inverse_det(mod, mats)),
        ("eval_word (4k words)", lambda mod: workload_eval_word(mod, coded, gen_mats)),
        ("mobius apply (20k x 50)", lambda mod: workload_mobius(mod, mats[:400], points)),
    ]

    impls = [("python", kernel_py)]
    if kernel_c is not None:
        impls.append(("cython", kernel_c))
    else:
        print("compiled kernel not built; timing the fallback only\n")

    width = max(len(name) for name, _ in workloads)
    header = f"{'workload':<{width}}  " + "  ".join(f"{n:>10}" for n, _ in impls)
    if len(impls) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))

    for name, make in workloads:
        times = [_bench(make(mod)) for _, mod in impls]
        row = f"{name:<{width}}  " + "  ".join(f"{t * 1e3:9.2f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"  {times[0] / times[1]:7.2f}x"
        print(row)


if __name__ == "__main__":
    main()
