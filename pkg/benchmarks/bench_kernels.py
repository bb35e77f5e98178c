"""Time the numba kernels against their pure-numpy counterparts.

    python benchmarks/bench_kernels.py --atoms 12 16 20 --clauses 40
"""
import argparse
import timeit

import numpy as np

from posslogic import _kernels as k


def make_inputs(n_atoms, n_clauses, seed):
    rng = np.random.default_rng(seed)
    full = (1 << n_atoms) - 1
    pos = rng.integers(0, full + 1, n_clauses, dtype=np.int64)
    neg = rng.integers(0, full + 1, n_clauses, dtype=np.int64) & ~pos
    # keep clauses short, as in real bases
    keep = rng.integers(0, full + 1, n_clauses) & rng.integers(0, full + 1, n_clauses)
    pos &= keep
    neg &= keep
    cost = rng.integers(0, 11, n_clauses, dtype=np.int64)
    return pos, neg, cost


def run_backend(kernels, pos, neg, cost, n_atoms):
    clause_truth, necessity_bounds, row_maxima = kernels
    truth = clause_truth(pos, neg, n_atoms)
    bound = necessity_bounds(truth, cost, 10)
    return row_maxima(truth, bound)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--atoms", type=int, nargs="+", default=[12, 16, 20])
    parser.add_argument("--clauses", type=int, default=40)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    numpy_kernels = (k.clause_truth_numpy, k.necessity_bounds_numpy, k.row_maxima_numpy)
    loop_kernels = (k.clause_truth_loops, k.necessity_bounds_loops, k.row_maxima_loops)
    label = "numba" if k.HAVE_NUMBA else "loops (no numba)"

    # compile outside the timed region
    warm = make_inputs(3, 2, 0)
    run_backend(loop_kernels, *warm, 3)

    print(f"{'atoms':>5} {'clauses':>7} {'numpy s':>10} {label + ' s':>12} {'speedup':>8}")
    for n in args.atoms:
        pos, neg, cost = make_inputs(n, args.clauses, args.seed)
        a = run_backend(numpy_kernels, pos, neg, cost, n)
        b = run_backend(loop_kernels, pos, neg, cost, n)
        assert (a == b).all(), "backends disagree"
        t_np = min(timeit.repeat(lambda: run_backend(numpy_kernels, pos, neg, cost, n),
                                 number=1, repeat=args.repeat))
        t_nb = min(timeit.repeat(lambda: run_backend(loop_kernels, pos, neg, cost, n),
                                 number=1, repeat=args.repeat))
        print(f"{n:>5} {args.clauses:>7} {t_np:>10.4f} {t_nb:>12.4f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
