"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints per-kernel timings and the speed-up; the end-to-end row rebuilds a
rank-3 simple module and its battery relations in a subprocess per backend.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from symsub import kernels


def _poly(rng, span, terms, bound):
    return {rng.randrange(-span, span): rng.randint(-bound, bound) or 1 for _ in range(terms)}


def _cols(rng, n, density, span):
    cols = {}
    for c in range(n):
        col = {}
        for r in range(n):
            if rng.random() < density:
                col[r] = _poly(rng, span, 4, 9)
        if col:
            cols[c] = col
    return cols


def kernel_rows(repeat):
    rng = random.Random(1)
    a = [_poly(rng, 40, 30, 1000) for _ in range(50)]
    b = [_poly(rng, 40, 30, 1000) for _ in range(50)]
    ints_a = _cols(rng, 60, 0.1, 1)
    ints_a = {c: {r: sum(v.values()) for r, v in col.items()} for c, col in ints_a.items()}
    ints_b = {c: dict(col) for c, col in ints_a.items()}
    rows = []
    py, cy = kernels.python_backend, kernels.compiled_backend
    cases = [
        ("lp_mul x50", lambda m: [m.lp_mul(x, y) for x, y in zip(a, b)]),
        ("lp_add x50", lambda m: [m.lp_add(x, y) for x, y in zip(a, b)]),
        ("spmm 60x60 int", lambda m: m.spmm(ints_a, ints_b)),
    ]
    for name, fn in cases:
        tp = min(timeit.repeat(lambda: fn(py), number=20, repeat=repeat))
        tc = min(timeit.repeat(lambda: fn(cy), number=20, repeat=repeat)) if cy else float("nan")
        rows.append((name, tp, tc))
    return rows


END_TO_END = (
    "import time; from symsub import catalog; from symsub.uq.battery import default_battery, check_relations;"
    "rd = catalog.get('A2-split').datum; t = time.perf_counter();"
    "assert all(r.ok for r in check_relations(default_battery(rd, 2)));"
    "print(time.perf_counter() - t)"
)


def end_to_end():
    out = {}
    for label, env in (("python", {"SYMSUB_PURE_PYTHON": "1"}), ("compiled", {})):
        res = subprocess.run([sys.executable, "-c", END_TO_END], env=dict(os.environ, **env),
                             capture_output=True, text=True, check=True)
        out[label] = float(res.stdout.strip())
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"active backend: {kernels.BACKEND}")
    if kernels.compiled_backend is None:
        print("compiled extension not built; only the fallback is timed")
    print(f"{'kernel':<18}{'python s':>10}{'compiled s':>12}{'speed-up':>10}")
    for name, tp, tc in kernel_rows(args.repeat):
        print(f"{name:<18}{tp:>10.4f}{tc:>12.4f}{tp / tc:>10.2f}")
    e = end_to_end()
    print(f"{'A2 battery+rels':<18}{e['python']:>10.3f}{e['compiled']:>12.3f}{e['python'] / e['compiled']:>10.2f}")


if __name__ == "__main__":
    main()
