"""Exit criteria, one test per criterion, at the pinned tolerances."""
import time

import numpy as np

from entroqubit.cli import main
from entroqubit.core import bistochastic_residual, orthogonality_residual
from entroqubit.dynamics3 import angle_from_q, make_sminus, make_splus, q_coefficients, d2_nogo_check
from entroqubit.dynamics4 import factorize, make_composed
from entroqubit.effects import make_effect
from entroqubit.entropy import renyi_entropy
from entroqubit.geometry import simplex_sphere_point
from entroqubit.oracle import lift_to_lattice, planar, random_rotation
from entroqubit.states import (
    bloch_to_state,
    default_frame,
    domain_bound_search,
    rotation_correspondence_check,
)

N = 10_000
TRINE = default_frame(3)
TETRA = default_frame(4)


def disc(rng, n):
    r, th = np.sqrt(rng.uniform(0, 1, n)), rng.uniform(0, 2 * np.pi, n)
    return np.stack([r * np.sin(th), r * np.cos(th)], axis=1)


def ball(rng, n):
    v = rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True) * np.cbrt(rng.uniform(0, 1, (n, 1)))


def test_c01_orthogonality_and_bistochasticity(criterion, rng):
    t0 = time.perf_counter()
    phis = rng.uniform(0, 2 * np.pi, N)
    mats = [make_splus(p) for p in phis] + [make_sminus(p) for p in phis]
    mats += [make_composed(a) for a in rng.uniform(0, 2 * np.pi, (N, 4))]
    orth = max(orthogonality_residual(m) for m in mats)
    bist = max(bistochastic_residual(m) for m in mats)
    elapsed = time.perf_counter() - t0
    criterion("1 orthogonality + bistochasticity (S+, S-, d=4)",
              orth <= 1e-10 and bist <= 1e-12 and elapsed < 5,
              f"orth={orth:.2e} sums={bist:.2e} t={elapsed:.2f}s")


def test_c02_collision_entropy_conservation(criterion, rng):
    worst = 0.0
    half = N // 2
    for phi, b in zip(rng.uniform(0, 2 * np.pi, half), disc(rng, half)):
        p = bloch_to_state(b, TRINE).entries
        worst = max(worst, abs(renyi_entropy(make_splus(phi) @ p, 2) - renyi_entropy(p, 2)))
    for a, b in zip(rng.uniform(0, 2 * np.pi, (half, 4)), ball(rng, half)):
        p = bloch_to_state(b, TETRA).entries
        worst = max(worst, abs(renyi_entropy(make_composed(a) @ p, 2) - renyi_entropy(p, 2)))
    p = np.array([2 / 3, 1 / 6, 1 / 6])
    shannon = abs(renyi_entropy(make_splus(1.0) @ p, 1) - renyi_entropy(p, 1))
    criterion("2 collision entropy conserved; Shannon counter-check",
              worst <= 1e-9 and shannon > 1e-3, f"H2 dev={worst:.2e} H1 dev={shannon:.3f}")


def test_c03_q_range_and_single_negativity(criterion):
    qs = np.array([q_coefficients(p) for p in np.linspace(0, 2 * np.pi, N, endpoint=False)])
    negatives = (qs < 0).sum(axis=1).max()
    ok = qs.min() >= -1 / 3 - 1e-12 and qs.max() <= 1 + 1e-12 and negatives <= 1
    criterion("3 q_k in [-1/3, 1], at most one negative", ok,
              f"min={qs.min():.15f} max={qs.max():.15f} max#neg={negatives}")


def test_c04_d2_nogo(criterion):
    pts = d2_nogo_check().orthogonal_points
    ok = len(pts) == 2 and abs(pts[0]) <= 1e-6 and abs(pts[1] - 1) <= 1e-6
    criterion("4 d=2 orthogonal points only at q in {0, 1}", ok, f"points={pts}")


def test_c05_domain_bounds(criterion):
    t0 = time.perf_counter()
    r3 = domain_bound_search(3, n_directions=1000)
    t3 = time.perf_counter() - t0
    t0 = time.perf_counter()
    r4 = domain_bound_search(4, n_directions=1000)
    t4 = time.perf_counter() - t0
    ok = (abs(r3.lambda_max - 0.5) <= 1e-6 and abs(r3.K - 0.5) <= 1e-6
          and abs(r4.K - 1 / 3) <= 1e-6 and t3 < 30 and t4 < 30)
    criterion("5 domain bounds", ok,
              f"d3 lambda={r3.lambda_max:.9f} K={r3.K:.9f} ({t3:.1f}s); d4 K={r4.K:.9f} ({t4:.1f}s)")


def test_c06_frame_identities(criterion):
    devs = []
    for f in (TRINE, TETRA):
        v, d = f.vectors, f.d
        devs.append(np.abs(v.sum(0)).max())
        devs.append(np.abs(v.T @ v - d / (d - 1) * np.eye(d - 1)).max())
    criterion("6 frame sums and overcompleteness", max(devs) <= 1e-12, f"max dev={max(devs):.2e}")


def test_c07_measurement_consistency(criterion, rng):
    worst = 0.0
    for frame, points in ((TRINE, disc(rng, N)), (TETRA, ball(rng, N))):
        ms = rng.standard_normal((N, frame.d - 1))
        ms /= np.linalg.norm(ms, axis=1, keepdims=True)
        for m, b in zip(ms, points):
            p = bloch_to_state(b, frame).entries
            for sign, outcome in ((1, "+"), (-1, "-")):
                e = make_effect(m, outcome, frame).e
                worst = max(worst, abs(e @ p - 0.5 * (1 + sign * m @ b)))
    criterion("7 effect probabilities = (1 +/- m.s)/2", worst <= 1e-12, f"max dev={worst:.2e}")


def test_c08_rotation_correspondence(criterion):
    rep = rotation_correspondence_check(np.linspace(0, 2 * np.pi, 100),
                                        np.linspace(0, 2 * np.pi, 100), np.linspace(0, 1, 10))
    planar_dev = max(np.abs(lift_to_lattice(planar(rep.sigma * p), TRINE) - make_splus(p)).max()
                     for p in np.linspace(0, 2 * np.pi, 1000))
    criterion("8 S+(phi) = lifted planar rotation with one global sign",
              rep.max_deviation <= 1e-12 and planar_dev <= 1e-12,
              f"sigma={rep.sigma:+d} grid dev={rep.max_deviation:.2e} lift dev={planar_dev:.2e}")


def test_c09_oracle_factorization(criterion, rng):
    t0 = time.perf_counter()
    worst_orth = worst_sum = worst_res = 0.0
    failures = 0
    for i in range(1000):
        S = lift_to_lattice(random_rotation(rng), TETRA)
        worst_orth = max(worst_orth, orthogonality_residual(S))
        worst_sum = max(worst_sum, bistochastic_residual(S))
        f = factorize(S, seed=i)
        worst_res = max(worst_res, f.residual)
        failures += not f.converged
    elapsed = time.perf_counter() - t0
    ok = (worst_orth <= 1e-10 and worst_sum <= 1e-12 and worst_res <= 1e-8
          and failures == 0 and elapsed < 120)
    criterion("9 lifted SO(3) rotations factorize", ok,
              f"residual={worst_res:.2e} failures={failures} t={elapsed:.1f}s")


def test_c10_hypersphere_hyperplane(criterion, rng):
    worst = 0.0
    for n in range(2, 17):
        for _ in range(1000):
            if n == 2:
                a = simplex_sphere_point(2, [], sign=rng.choice([-1, 1]))
            else:
                a = simplex_sphere_point(n, rng.uniform(0, 2 * np.pi, n - 2))
            worst = max(worst, abs(a.sum() - 1), abs(a @ a - 1))
    circle = max(np.abs(q_coefficients(angle_from_q(a)) - a).max()
                 for a in (simplex_sphere_point(3, [t]) for t in rng.uniform(0, 2 * np.pi, 1000)))
    criterion("10 unit-sum unit-norm vectors; n=3 circle is the q family",
              worst <= 1e-12 and circle <= 1e-10, f"constraint dev={worst:.2e} circle dev={circle:.2e}")


def test_c11_determinism(criterion, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    code_a = main(["verify", "all", "--seed", "42", "--out", str(a)])
    code_b = main(["verify", "all", "--seed", "42", "--out", str(b)])
    same = a.read_bytes() == b.read_bytes()
    criterion("11 verify all --seed 42 is byte-identical", same and code_a == code_b == 0,
              f"exit codes {code_a},{code_b}")
