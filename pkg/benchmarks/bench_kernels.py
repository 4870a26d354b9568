"""Compare the numba and pure-numpy kernel paths.

    python benchmarks/bench_kernels.py [--repeat 5]

Both paths are always importable; without numba the "numba" column runs the
undecorated Python loops and is very slow, so pass --skip-numba in that case.
"""
import argparse
import time

import numpy as np

from sl2ext._accel import HAVE_NUMBA
from sl2ext.ext import ExtEngine, top_degree
from sl2ext.kernels import deficit_grid, ext_layers


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--skip-numba", action="store_true")
    args = parser.parse_args()
    use_numba = HAVE_NUMBA and not args.skip_numba

    cases = [
        ("layers p=7 s=3 T=686", lambda nb: ext_layers(7, 3, 686, use_numba=nb)),
        ("layers p=3 s=5 T=1458", lambda nb: ext_layers(3, 5, 1458, use_numba=nb)),
        ("layers p=2 s=8 T=1024", lambda nb: ext_layers(2, 8, 1024, use_numba=nb)),
        ("deficit p=7 s<=3 a,b<=200", lambda nb: deficit_grid(7, 3, 200, 200, use_numba=nb)),
    ]
    if use_numba:
        # compile outside the timed region
        ext_layers(2, 1, 4, use_numba=True)
        deficit_grid(2, 0, 1, 1, use_numba=True)

    print(f"{'case':<28} {'numpy [s]':>10} {'numba [s]':>10} {'speedup':>8}  agree")
    for name, fn in cases:
        t_np, r_np = best_of(lambda: fn(False), args.repeat)
        if use_numba:
            t_nb, r_nb = best_of(lambda: fn(True), args.repeat)
            if isinstance(r_np, list):
                agree = all(np.array_equal(a, b) for a, b in zip(r_np, r_nb))
            else:
                agree = r_np == r_nb
            print(f"{name:<28} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>8.1f}  {agree}")
        else:
            print(f"{name:<28} {t_np:>10.4f} {'-':>10} {'-':>8}  -")

    engine = ExtEngine()
    q = top_degree(4, 7)
    memo_engine = ExtEngine()
    t_memo, _ = best_of(lambda: [memo_engine.ext_delta_nabla2(q - n, n, 3, 7) for n in range(q + 1)], 1)
    t_tab, _ = best_of(lambda: engine.decompose_ext_k_nabla2(q, 4, 7), 1)
    print(f"\ntop decomposition p=7 r=4: memoized recursion {t_memo:.3f}s, table route {t_tab:.3f}s")


if __name__ == "__main__":
    main()
