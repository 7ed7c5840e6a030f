"""Largest uniform mixing weight that keeps every reachable state nonnegative."""
import argparse
import time

from entroqubit.states import domain_bound_search

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--dims", default="3,4")
parser.add_argument("--family", choices=("rotations", "permutations"), default="rotations")
parser.add_argument("--directions", type=int, default=1000)
parser.add_argument("--seed", type=int, default=0)
args = parser.parse_args()

for d in (int(x) for x in args.dims.split(",")):
    t0 = time.perf_counter()
    r = domain_bound_search(d, family=args.family, n_directions=args.directions, seed=args.seed)
    print(f"d={d} family={r.family} lambda_max={r.lambda_max:.12f} K={r.K:.12f} "
          f"K over random directions in [{r.K_random_min:.6f}, {r.K_random_max:.6f}] "
          f"({time.perf_counter() - t0:.1f}s)")
