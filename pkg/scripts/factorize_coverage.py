"""Lift Haar-random 3D rotations to 4x4 dynamics and factorize each one."""
import argparse
import time

import numpy as np

from entroqubit.dynamics4 import factorize
from entroqubit.oracle import lift_to_lattice, random_rotation
from entroqubit.states import default_frame

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("-n", type=int, default=1000)
parser.add_argument("--seed", type=int, default=0)
parser.add_argument("--starts", type=int, default=64)
args = parser.parse_args()

rng = np.random.default_rng(args.seed)
frame = default_frame(4)
t0 = time.perf_counter()
results = [factorize(lift_to_lattice(random_rotation(rng), frame), n_starts=args.starts, seed=i)
           for i in range(args.n)]
res = np.array([r.residual for r in results])
starts = np.array([r.starts_used for r in results])
failed = sum(not r.converged for r in results)
print(f"{args.n} rotations, {failed} failures, {time.perf_counter() - t0:.1f}s")
print(f"residual: max {res.max():.2e} median {np.median(res):.2e}")
print(f"starts used: mean {starts.mean():.2f} max {starts.max()}")
