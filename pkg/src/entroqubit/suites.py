"""Verification suites behind ``entroqubit verify``.

Each suite returns a list of ``Claim`` rows.  Randomness comes from one
64-bit seed; every suite gets its own counter-based Philox stream keyed by
``(seed, suite index)`` so suites are reproducible independently and in any
order.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from entroqubit import dynamics3, dynamics4, effects, entropy, geometry, oracle, states
from entroqubit.core import (
    DEFAULT_TOLERANCES,
    Tolerances,
    bistochastic_residual,
    orthogonality_residual,
)

SUITES = ("d2nogo", "d3", "d4", "geometry", "oracle")


@dataclass(frozen=True)
class Claim:
    suite: str
    claim: str
    ref: str
    measured: float
    relation: str  # "<=", ">=", "=="
    bound: float

    def __post_init__(self):
        object.__setattr__(self, "measured", float(self.measured))
        object.__setattr__(self, "bound", float(self.bound))

    @property
    def passed(self) -> bool:
        if self.relation == "<=":
            return self.measured <= self.bound
        if self.relation == ">=":
            return self.measured >= self.bound
        return self.measured == self.bound

    def as_dict(self) -> dict:
        out = asdict(self)
        out["passed"] = bool(self.passed)
        return out


def suite_rng(seed: int, suite: str) -> np.random.Generator:
    key = (int(seed) & 0xFFFFFFFFFFFFFFFF) | (SUITES.index(suite) << 64)
    return np.random.Generator(np.random.Philox(key=key))


def _disc_states(rng, n, frame):
    r = np.sqrt(rng.uniform(0, 1, n))
    th = rng.uniform(0, 2 * np.pi, n)
    b = np.stack([r * np.sin(th), r * np.cos(th)], axis=1)
    return (1 + b @ frame.vectors.T) / frame.d, b


def _ball_states(rng, n, frame):
    dirs = rng.standard_normal((n, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    b = dirs * np.cbrt(rng.uniform(0, 1, n))[:, None]
    return (1 + b @ frame.vectors.T) / frame.d, b


def _unit_vectors(rng, n, dim):
    v = rng.standard_normal((n, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _h2(p):
    return -np.log(np.sum(p * p, axis=-1))


def run_d2nogo(rng, grid: int, tol: Tolerances) -> list[Claim]:
    rep = dynamics3.d2_nogo_check(tol=tol)
    pts = rep.orthogonal_points
    exact = len(pts) == 2 and abs(pts[0]) <= 1e-6 and abs(pts[1] - 1) <= 1e-6
    return [
        Claim("d2nogo", "orthogonal 2x2 quasi-bistochastic points found", "d2-no-go",
              float(len(pts)), "==", 2.0),
        Claim("d2nogo", "orthogonal points are exactly q=0 and q=1", "d2-no-go",
              float(exact), "==", 1.0),
    ]


def _matrix_family_claims(suite, name, mats, det, tol):
    orth = max(orthogonality_residual(m) for m in mats)
    bist = max(bistochastic_residual(m) for m in mats)
    dets = max(abs(np.linalg.det(m) - det) for m in mats)
    return [
        Claim(suite, f"{name}: orthogonality residual", "orthogonal-dynamics", orth, "<=", tol.orth),
        Claim(suite, f"{name}: row/column sum residual", "quasi-bistochastic", bist, "<=", tol.sum),
        Claim(suite, f"{name}: determinant {det:+.0f}", "determinant", dets, "<=", 1e-10),
    ]


def run_d3(rng, grid: int, tol: Tolerances) -> list[Claim]:
    s = "d3"
    frame = states.default_frame(3)
    phis = np.arange(grid) * (2 * np.pi / grid)
    plus = [dynamics3.make_splus(p) for p in phis]
    minus = [dynamics3.make_sminus(p) for p in phis]
    claims = _matrix_family_claims(s, "S+", plus, 1.0, tol)
    claims += _matrix_family_claims(s, "S-", minus, -1.0, tol)

    qs = np.array([dynamics3.q_coefficients(p) for p in phis])
    n_neg = (qs < -tol.pos).sum(axis=1)
    claims += [
        Claim(s, "q_k lower bound -1/3", "q-range", float(qs.min() + 1 / 3), ">=", -1e-12),
        Claim(s, "q_k upper bound 1", "q-range", float(qs.max() - 1), "<=", 1e-12),
        Claim(s, "at most one negative q_k", "single-negativity", float(n_neg.max()), "<=", 1.0),
        Claim(s, "sum q = 1", "q-constraints", float(np.abs(qs.sum(1) - 1).max()), "<=", tol.sum),
        Claim(s, "sum q^2 = 1", "q-constraints", float(np.abs((qs ** 2).sum(1) - 1).max()), "<=", tol.sum),
    ]

    a, b = rng.uniform(0, 2 * np.pi, (2, grid))
    group = max(np.abs(dynamics3.make_splus(x) @ dynamics3.make_splus(y)
                       - dynamics3.make_splus(x + y)).max() for x, y in zip(a, b))
    invol = max(np.abs(m @ m - np.eye(3)).max() for m in minus)
    claims += [
        Claim(s, "S+ composition adds angles", "rotation-group", float(group), "<=", 1e-12),
        Claim(s, "S- is an involution", "reflection-family", float(invol), "<=", 1e-12),
    ]

    worst_cls, unclassified = 0.0, 0
    for m in plus + minus:
        try:
            kind, phi = dynamics3.classify_orthogonal_qbistoch3(m, tol)
        except dynamics3.ClassificationError:
            unclassified += 1
            continue
        rebuilt = dynamics3.make_splus(phi) if kind == "plus" else dynamics3.make_sminus(phi)
        worst_cls = max(worst_cls, np.abs(rebuilt - m).max())
    worst_bvn = max(np.abs(dynamics3.decompose_bvn(m, tol).reconstruct() - m).max() for m in plus)
    claims += [
        Claim(s, "classification round trip", "classification", float(worst_cls), "<=", 1e-10),
        Claim(s, "orthogonal matrices fitting neither family", "classification",
              float(unclassified), "==", 0.0),
        Claim(s, "signed permutation expansion reconstructs S", "bvn-decomposition",
              float(worst_bvn), "<=", 1e-12),
    ]

    p, _ = _disc_states(rng, grid, frame)
    pick = rng.uniform(0, 2 * np.pi, grid)
    img = np.stack([dynamics3.make_splus(x) @ v for x, v in zip(pick, p)])
    claims += [
        Claim(s, "collision entropy conserved on the trine domain", "collision-conservation",
              float(np.abs(_h2(img) - _h2(p)).max()), "<=", tol.ent),
        Claim(s, "trine domain stays positive under S+", "domain-closure",
              float(img.min()), ">=", -tol.pos),
    ]
    extremal = states.bloch_to_state([0.0, 1.0], frame)
    shannon = entropy.conserves_renyi(dynamics3.make_splus(1.0), 1.0, lambda: extremal, 1, tol)
    claims.append(Claim(s, "Shannon entropy not conserved at phi=1", "shannon-counter-check",
                        shannon.max_deviation, ">=", 1e-3))

    bound = states.domain_bound_search(3, n_dynamics=max(6 * grid, 600),
                                       n_directions=grid, seed=int(rng.integers(2 ** 63)), tol=tol)
    claims += [
        Claim(s, "lambda_max = 1/2", "domain-bound", abs(bound.lambda_max - 0.5), "<=", 1e-6),
        Claim(s, "extremal squared norm K = 1/2", "domain-bound", abs(bound.K - 0.5), "<=", 1e-6),
        Claim(s, "K independent of ray direction", "domain-bound",
              bound.K_random_max - bound.K_random_min, "<=", 1e-6),
    ]

    claims += _frame_claims(s, frame)
    corr = states.rotation_correspondence_check(
        phis, np.linspace(0, 2 * np.pi, grid, endpoint=False), np.linspace(0, 1, 10), frame)
    claims.append(Claim(s, f"S+(phi) acts as Bloch rotation by {corr.sigma:+d}*phi",
                        "rotation-correspondence", corr.max_deviation, "<=", 1e-12))
    claims.append(_measurement_claim(s, rng, grid, frame))
    return claims


def _frame_claims(suite, frame):
    v = frame.vectors
    d = frame.d
    return [
        Claim(suite, "frame vectors sum to zero", "frame", float(np.abs(v.sum(0)).max()), "<=", 1e-12),
        Claim(suite, f"frame overcompleteness {d}/{d - 1}", "frame",
              float(np.abs(v.T @ v - d / (d - 1) * np.eye(d - 1)).max()), "<=", 1e-12),
    ]


def _measurement_claim(suite, rng, n, frame):
    dim = frame.d - 1
    ms = _unit_vectors(rng, n, dim)
    ps, bs = (_disc_states if dim == 2 else _ball_states)(rng, n, frame)
    worst = 0.0
    for m, p, b in zip(ms, ps, bs):
        for sign, outcome in ((1, "+"), (-1, "-")):
            e = effects.make_effect(m, outcome, frame)
            worst = max(worst, abs(e.e @ p - 0.5 * (1 + sign * m @ b)))
    return Claim(suite, "effect probabilities match Bloch-side formula", "measurement",
                 float(worst), "<=", 1e-12)


def run_d4(rng, grid: int, tol: Tolerances) -> list[Claim]:
    s = "d4"
    frame = states.default_frame(4)
    angles = rng.uniform(0, 2 * np.pi, (grid, 4))
    mats = [dynamics4.make_composed(a) for a in angles]
    claims = _matrix_family_claims(s, "R1R2R3R4", mats, 1.0, tol)
    u = np.full(4, 0.25)
    vecs = rng.standard_normal((grid, 4))
    norm_dev = max(abs(np.sum((m @ v) ** 2) - v @ v) for m, v in zip(mats, vecs))
    claims += [
        Claim(s, "uniform state is fixed", "uniform-fixed",
              float(max(np.abs(m @ u - u).max() for m in mats)), "<=", 1e-12),
        Claim(s, "collision norm conserved on arbitrary vectors", "collision-conservation",
              float(norm_dev), "<=", 1e-10),
    ]
    worst, failures = 0.0, 0
    for i, m in enumerate(mats[: max(1, grid // 4)]):
        f = dynamics4.factorize(m, seed=i)
        worst = max(worst, f.residual)
        failures += not f.converged
    claims += [
        Claim(s, "factorization round trip residual", "factorization", float(worst), "<=", 1e-8),
        Claim(s, "factorization failures", "factorization", float(failures), "==", 0.0),
    ]
    bound = states.domain_bound_search(4, n_dynamics=max(10 * grid, 2000),
                                       n_directions=grid, seed=int(rng.integers(2 ** 63)), tol=tol)
    claims += [
        Claim(s, "extremal squared norm K = 1/3", "domain-bound", abs(bound.K - 1 / 3), "<=", 1e-6),
        Claim(s, "K independent of ray direction", "domain-bound",
              bound.K_random_max - bound.K_random_min, "<=", 1e-6),
    ]
    claims += _frame_claims(s, frame)
    claims.append(_measurement_claim(s, rng, grid, frame))
    return claims


def run_geometry(rng, grid: int, tol: Tolerances) -> list[Claim]:
    s = "geometry"
    sum_dev = sq_dev = basis_dev = 0.0
    for n in range(2, 17):
        U = geometry.complete_basis(n)
        basis_dev = max(basis_dev, np.abs(U.T @ U - np.eye(n)).max())
        for _ in range(grid if n > 2 else 1):
            a_set = ([geometry.simplex_sphere_point(2, [], sign=sg) for sg in (1, -1)] if n == 2
                     else [geometry.simplex_sphere_point(n, rng.uniform(0, 2 * np.pi, n - 2))])
            for a in a_set:
                sum_dev = max(sum_dev, abs(a.sum() - 1))
                sq_dev = max(sq_dev, abs(a @ a - 1))
    circle_dev = 0.0
    for t in np.linspace(0, 2 * np.pi, grid, endpoint=False):
        a = geometry.simplex_sphere_point(3, [t])
        phi = dynamics3.angle_from_q(a)
        circle_dev = max(circle_dev, np.abs(dynamics3.q_coefficients(phi) - a).max())
    return [
        Claim(s, "completed basis is orthogonal (n=2..16)", "basis-completion",
              float(basis_dev), "<=", 1e-13),
        Claim(s, "unit coordinate sum (n=2..16)", "hyperplane", float(sum_dev), "<=", 1e-12),
        Claim(s, "unit norm (n=2..16)", "hypersphere", float(sq_dev), "<=", 1e-12),
        Claim(s, "n=3 solution circle equals the q_k family", "q-family-circle",
              float(circle_dev), "<=", 1e-10),
    ]


def run_oracle(rng, grid: int, tol: Tolerances) -> list[Claim]:
    s = "oracle"
    tri = states.default_frame(3)
    tet = states.default_frame(4)
    sigma = states.rotation_sign(tri)
    phis = rng.uniform(0, 2 * np.pi, grid)
    planar_dev = max(np.abs(oracle.lift_to_lattice(oracle.planar(sigma * p), tri)
                            - dynamics3.make_splus(p)).max() for p in phis)

    rots = [oracle.random_rotation(rng) for _ in range(grid)]
    lifts = [oracle.lift_to_lattice(o, tet) for o in rots]
    claims = [Claim(s, "planar rotation lifts to S+", "rotation-correspondence",
                    float(planar_dev), "<=", 1e-12)]
    claims += _matrix_family_claims(s, "lifted SO(3)", lifts, 1.0, tol)

    hom = max(np.abs(oracle.lift_to_lattice(oracle.BlochRotation(a.matrix @ b.matrix), tet)
                     - la @ lb).max()
              for a, b, la, lb in zip(rots, rots[1:], lifts, lifts[1:]))
    _, bs = _ball_states(rng, grid, tet)
    trip = max(np.abs(states.state_to_bloch(lf @ states.bloch_to_state(b, tet).entries, tet).vector
                      - o.matrix @ b).max() for lf, o, b in zip(lifts, rots, bs))
    worst, failures = 0.0, 0
    for i, lf in enumerate(lifts):
        f = dynamics4.factorize(lf, seed=i)
        worst = max(worst, f.residual)
        failures += not f.converged
    claims += [
        Claim(s, "lift is a homomorphism", "lift-homomorphism", float(hom), "<=", 1e-12),
        Claim(s, "Bloch round trip through lifted dynamics", "lift-round-trip", float(trip), "<=", 1e-12),
        Claim(s, "lifted rotations factorize (max residual)", "factorization-coverage",
              float(worst), "<=", 1e-8),
        Claim(s, "lifted rotations with no factorization", "factorization-coverage",
              float(failures), "==", 0.0),
    ]

    mirror = oracle.reflection_lift(np.diag([-1.0, 1.0]), tri)
    kind, _ = dynamics3.classify_orthogonal_qbistoch3(mirror, tol)
    point = oracle.lift_to_lattice(-np.eye(2), tri)
    pkind, pphi = dynamics3.classify_orthogonal_qbistoch3(point, tol)
    unot = oracle.reflection_lift(-np.eye(3), tet)
    try:
        dynamics4.factorize(unot)
        rejected = 0.0
    except dynamics4.FactorizationError:
        rejected = 1.0
    claims += [
        Claim(s, "planar mirror lifts into the S- family", "reflection-lift",
              float(kind == "minus"), "==", 1.0),
        Claim(s, "planar -I lifts to S+(pi)", "reflection-lift",
              float(pkind == "plus" and abs(pphi - np.pi) < 1e-10), "==", 1.0),
        Claim(s, "universal-NOT lift has determinant -1", "universal-not",
              float(abs(np.linalg.det(unot) + 1)), "<=", 1e-10),
        Claim(s, "universal-NOT lift rejected by factorization", "universal-not", rejected, "==", 1.0),
    ]
    return claims


RUNNERS = {
    "d2nogo": run_d2nogo,
    "d3": run_d3,
    "d4": run_d4,
    "geometry": run_geometry,
    "oracle": run_oracle,
}


def run_suite(suite: str, seed: int = 0, grid: int = 100,
              tol: Tolerances = DEFAULT_TOLERANCES) -> list[Claim]:
    names = SUITES if suite == "all" else (suite,)
    claims = []
    for name in names:
        try:
            claims += RUNNERS[name](suite_rng(seed, name), grid, tol)
        except Exception as exc:  # a crashing suite is a failed claim, not a crashed report
            claims.append(Claim(name, f"suite raised {type(exc).__name__}: {exc}", "harness",
                                1.0, "==", 0.0))
    return claims

