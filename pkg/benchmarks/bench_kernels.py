"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--orders 4,8,16] [--repeat 5]

Prints the best-of-``repeat`` time per call for each kernel, backend and
matrix order, and the speedup of the compiled kernels where they exist.
"""

import argparse
import random
import timeit

from ninner.kernels import available_backends


def workloads(order, rng):
    ints = [[rng.randint(-9, 9) for _ in range(order)] for _ in range(order)]
    floats = [[rng.uniform(-1, 1) for _ in range(order)] for _ in range(order)]
    steps = max(order - 2, 0)
    return {
        "det_int": lambda k: k.det_int(ints),
        "det_float": lambda k: k.det_float(floats),
        "eliminate_object": lambda k: k.eliminate_object(ints, steps),
        "eliminate_float": lambda k: k.eliminate_float(floats, steps),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--orders", default="4,8,16")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels are not built; timing the pure-Python fallback only")
    rng = random.Random(args.seed)
    print(f"{'kernel':18}{'order':>6}" + "".join(f"{b + ' us':>14}" for b in backends) + f"{'speedup':>10}")
    for order in (int(o) for o in args.orders.split(",")):
        for name, call in workloads(order, rng).items():
            times = {}
            for bname, mod in backends.items():
                timer = timeit.Timer(lambda: call(mod))
                number, _ = timer.autorange()
                times[bname] = min(timer.repeat(args.repeat, number)) / number * 1e6
            row = f"{name:18}{order:>6}" + "".join(f"{times[b]:>14.2f}" for b in backends)
            if "cython" in times:
                row += f"{times['python'] / times['cython']:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
