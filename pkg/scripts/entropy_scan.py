"""Worst Renyi entropy change under S+(phi) over trine-domain states, per order."""
import argparse

import numpy as np

from entroqubit.cli import entropy_scan
from entroqubit.core import DEFAULT_TOLERANCES

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--alphas", default="0.5,1,2,3,10")
parser.add_argument("--grid", type=int, default=72)
parser.add_argument("--n-states", type=int, default=300)
parser.add_argument("--seed", type=int, default=0)
args = parser.parse_args()

alphas = [float(a) for a in args.alphas.split(",")]
phis = np.arange(args.grid) * (2 * np.pi / args.grid)
rows = entropy_scan(alphas, phis, args.n_states, args.seed, DEFAULT_TOLERANCES)
for a in alphas:
    devs = np.array([r["max_deviation"] for r in rows if r["alpha"] == a])
    worst = phis[devs.argmax()]
    print(f"alpha={a:<5g} max |dH| = {devs.max():.3e} at phi = {worst:.4f}")
