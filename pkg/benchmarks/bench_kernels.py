"""Compare the compiled and pure-Python world-enumeration kernels.

    python3 benchmarks/bench_kernels.py [--vars 12 16 18] [--repeat 3]

Times the chain rule on a random network and clause recovery on its
compiled knowledge base, once per available backend, and checks that the
backends agree.
"""

import argparse
import itertools
import random
import time
from fractions import Fraction

from certnet import _accel
from certnet.kb import compile_network, recover_distribution
from certnet.network import CertainNetwork, ConditionalTable, Row, joint_distribution

TENTHS = [Fraction(i, 10) for i in range(11)]


def make_network(n_vars, seed):
    """Random normalized network, up to 3 parents per node."""
    rng = random.Random(seed)
    names = [f"x{i}" for i in range(n_vars)]
    tables = []
    for i, node in enumerate(names):
        parents = tuple(rng.sample(names[:i], min(i, rng.randint(0, 3))))
        rows = []
        for ctx in itertools.product((True, False), repeat=len(parents)):
            pos = rng.random() < 0.5
            rows.append(Row(pos, ctx, Fraction(1)))
            rows.append(Row(not pos, ctx, rng.choice(TENTHS)))
        tables.append(ConditionalTable(node, parents, tuple(rows)))
    return CertainNetwork(f"bench{n_vars}", names, tables)


def best_of(fn, repeat):
    times = []
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--vars", type=int, nargs="+", default=[12, 16, 18])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args(argv)

    backends = _accel.available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'vars':>4}  {'task':<8}  " + "  ".join(f"{b:>10}" for b in backends) + "  speedup")
    for n_vars in args.vars:
        n = make_network(n_vars, args.seed)
        kb = compile_network(n)
        tasks = {
            "joint": lambda: joint_distribution(n, max_vars=None),
            "recover": lambda: recover_distribution(kb, max_vars=None),
        }
        for task, fn in tasks.items():
            timings, results = [], []
            for b in backends:
                with _accel.use_backend(b):
                    t, r = best_of(fn, args.repeat)
                timings.append(t)
                results.append(r)
            if any(r != results[0] for r in results):
                raise SystemExit(f"backends disagree on {task} with {n_vars} vars")
            speedup = f"{timings[0] / timings[-1]:7.1f}x" if len(timings) > 1 else "      -"
            cells = "  ".join(f"{t:9.3f}s" for t in timings)
            print(f"{n_vars:>4}  {task:<8}  {cells}  {speedup}")


if __name__ == "__main__":
    main()
