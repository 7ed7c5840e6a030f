"""State spaces on the 3- and 4-site lattices.

A frame is a set of ``d`` unit vectors in ``d - 1`` dimensions summing to
zero with ``sum_k f_k f_k^T = d/(d-1) I``.  A Bloch point ``b`` maps to the
lattice state ``p_k = (1 + f_k . b) / d``, and back through
``b = (d - 1) sum_k p_k f_k``.  Squared norms are linked by

    |p|^2 = 1/d + |b|^2 / (d (d - 1)),

so the unit ball corresponds to ``1/d <= |p|^2 <= 1/(d-1)``: 1/2 on the
trine (d=3) and 1/3 on the tetrahedron (d=4).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from entroqubit.core import DEFAULT_TOLERANCES, ProbVector, Tolerances, as_vector

FRAME_TOL = 1e-12
BALL_TOL = 1e-12


@dataclass(frozen=True)
class Frame:
    vectors: np.ndarray  # shape (d, d - 1)

    def __post_init__(self):
        v = np.array(self.vectors, dtype=float)
        if v.ndim != 2 or v.shape[1] != v.shape[0] - 1:
            raise ValueError(f"frame must have shape (d, d-1), got {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)
        if frame_defects(v):
            raise ValueError("frame invariants violated: " + ", ".join(frame_defects(v)))

    @property
    def d(self) -> int:
        return self.vectors.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        """Frame vectors as columns, shape ``(d - 1, d)``."""
        return self.vectors.T

    def to_json(self) -> str:
        return json.dumps([[float(x) for x in row] for row in self.vectors])

    @classmethod
    def from_json(cls, text: str) -> "Frame":
        return cls(np.array(json.loads(text), dtype=float))


def frame_defects(v: np.ndarray, tol: float = FRAME_TOL) -> list[str]:
    d = v.shape[0]
    out = []
    if np.abs(np.linalg.norm(v, axis=1) - 1).max() > tol:
        out.append("non-unit vectors")
    if np.abs(v.sum(axis=0)).max() > tol:
        out.append("nonzero sum")
    if np.abs(v.T @ v - d / (d - 1) * np.eye(d - 1)).max() > tol:
        out.append("not overcomplete with constant d/(d-1)")
    return out


def _trine() -> np.ndarray:
    h = np.sqrt(3) / 2
    return np.array([[0.0, 1.0], [h, -0.5], [-h, -0.5]])


def _tetrahedron() -> np.ndarray:
    return np.array([
        [0.0, 0.0, 1.0],
        [np.sqrt(8 / 9), 0.0, -1 / 3],
        [-np.sqrt(2 / 9), np.sqrt(2 / 3), -1 / 3],
        [-np.sqrt(2 / 9), -np.sqrt(2 / 3), -1 / 3],
    ])


def default_frame(d: int) -> Frame:
    if d == 3:
        return Frame(_trine())
    if d == 4:
        return Frame(_tetrahedron())
    raise ValueError(f"no default frame for d={d}; only 3 and 4")


@dataclass(frozen=True)
class BlochPoint:
    x: float
    y: float
    z: float = 0.0

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.vector))

    @property
    def in_ball(self) -> bool:
        return self.norm <= 1 + BALL_TOL

    @property
    def extremal(self) -> bool:
        return abs(self.norm - 1) <= BALL_TOL

    @classmethod
    def from_vector(cls, v) -> "BlochPoint":
        v = as_vector(v)
        return cls(*[float(c) for c in v], *([0.0] * (3 - v.size)))

    def to_json(self) -> str:
        return json.dumps({"x": self.x, "y": self.y, "z": self.z})

    @classmethod
    def from_json(cls, text: str) -> "BlochPoint":
        obj = json.loads(text)
        return cls(obj["x"], obj["y"], obj.get("z", 0.0))


def _bloch_coords(b, frame: Frame) -> np.ndarray:
    """Coordinates of ``b`` in the frame's ``d - 1`` dimensional space."""
    if isinstance(b, BlochPoint):
        v = b.vector
    else:
        v = as_vector(b)
    n = frame.d - 1
    if v.size == n:
        return v
    if v.size > n and np.all(v[n:] == 0):
        return v[:n]
    raise ValueError(f"Bloch point {v} does not fit a d={frame.d} frame")


def bloch_to_state(b, frame: Frame, tol: Tolerances = DEFAULT_TOLERANCES) -> ProbVector:
    v = _bloch_coords(b, frame)
    if np.linalg.norm(v) > 1 + BALL_TOL:
        raise ValueError(f"Bloch point outside the unit ball: |b| = {np.linalg.norm(v)}")
    return ProbVector((1 + frame.vectors @ v) / frame.d, tol=tol)


def state_to_bloch(p, frame: Frame) -> BlochPoint:
    """Inverse of ``bloch_to_state``; quasi-states give points with ``in_ball`` False."""
    p = as_vector(p)
    if p.size != frame.d:
        raise ValueError("state length does not match frame")
    return BlochPoint.from_vector((frame.d - 1) * (frame.matrix @ p))


def extremal_norm(d: int) -> float:
    return 1.0 / (d - 1)


@dataclass(frozen=True)
class StateDomain:
    d: int
    norm_lo: float = field(init=False)
    norm_hi: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "norm_lo", 1.0 / self.d)
        object.__setattr__(self, "norm_hi", extremal_norm(self.d))


class Membership(str, Enum):
    INTERIOR = "interior"
    EXTREMAL = "extremal"
    OUTSIDE_SIMPLEX = "outside_simplex"
    OUTSIDE_BALL = "outside_ball"


def domain_membership(p, d: int | None = None, band: float = 1e-9) -> Membership:
    p = as_vector(p)
    dom = StateDomain(d or p.size)
    if abs(p.sum() - 1) > band or np.any(p < -band):
        return Membership.OUTSIDE_SIMPLEX
    n2 = float(p @ p)
    if n2 > dom.norm_hi + band:
        return Membership.OUTSIDE_BALL
    if n2 >= dom.norm_hi - band:
        return Membership.EXTREMAL
    return Membership.INTERIOR


# --- positivity-domain search -------------------------------------------

@dataclass(frozen=True)
class DomainBound:
    d: int
    family: str
    lambda_max: float
    K: float
    K_random_min: float
    K_random_max: float
    n_directions: int


def _family_sampler(d: int, family: str, n: int, rng: np.random.Generator):
    """Matrices of the dynamics family plus a refiner for a single ray.

    The refiner polishes the most negative entry of ``S v`` by local
    optimization over the family's angles, starting from a coarse optimum.
    """
    from entroqubit.dynamics3 import make_splus
    from entroqubit.dynamics4 import _composed_jacobian, make_composed

    if family == "permutations":
        import itertools
        from entroqubit.core import permutation_matrix
        mats = np.array([permutation_matrix(p) for p in itertools.permutations(range(d))])
        return mats, None, None
    if d == 3 and family == "rotations":
        # multiple of 6 so the q_k = -1/3 points are on the grid
        n = 6 * max(1, n // 6)
        phis = np.arange(n) * (2 * np.pi / n)
        mats = np.array([make_splus(ph) for ph in phis])

        def refine(v, j):
            lo, hi = phis[j] - 2 * np.pi / n, phis[j] + 2 * np.pi / n
            r = minimize_scalar(lambda ph: (make_splus(ph) @ v).min(), bounds=(lo, hi),
                                method="bounded", options={"xatol": 1e-12})
            return float(r.fun)
        return mats, phis, refine
    if d == 4 and family == "rotations":
        angles = rng.uniform(0, 2 * np.pi, size=(n, 4))
        mats = np.array([make_composed(a) for a in angles])

        def refine(v, j):
            k = int(np.argmin(mats[j] @ v))

            def entry(a):
                return (make_composed(a) @ v)[k], (v @ _composed_jacobian(a).reshape(4, 4, 4)[k])

            r = minimize(entry, angles[j], jac=True, method="BFGS", options={"gtol": 1e-12})
            return float(min(r.fun, (mats[j] @ v).min()))
        return mats, angles, refine
    raise ValueError(f"unsupported dynamics family {family!r} for d={d}")


def _lambda_for(min_entry: float, d: int, pos_tol: float) -> float:
    """Largest ``lam <= 1`` with ``1/d + lam * min_entry >= -pos_tol``."""
    if min_entry >= 0:
        return 1.0
    return min(1.0, (1.0 / d + pos_tol) / -min_entry)


def domain_bound_search(d: int, family: str = "rotations", n_dynamics: int = 6000,
                        n_directions: int = 1000, seed: int = 0,
                        tol: Tolerances = DEFAULT_TOLERANCES) -> DomainBound:
    """Largest mixing ``lam`` keeping ``lam * v + uniform`` positive under the family.

    ``v`` runs over the vertex rays ``e_k - 1/d`` and ``n_directions`` random
    sum-zero directions scaled to the same length.  ``K`` is the squared norm
    of the vertex-ray boundary state ``lam * e_0 + (1 - lam) / d``.
    """
    rng = np.random.default_rng(seed)
    mats, _, refine = _family_sampler(d, family, n_dynamics, rng)
    uniform = np.full(d, 1.0 / d)

    def ray_lambda(v):
        entries = np.einsum("nij,j->ni", mats, v).min(axis=1)
        j = int(np.argmin(entries))
        worst = float(entries[j])
        if refine is not None and worst < 0:
            worst = min(worst, refine(v, j))
        return _lambda_for(worst, d, tol.pos)

    vertex_lams = [ray_lambda(np.eye(d)[k] - uniform) for k in range(d)]
    lam = min(vertex_lams)
    K = float(np.sum((lam * np.eye(d)[0] + (1 - lam) * uniform) ** 2))

    ks = []
    scale = np.linalg.norm(np.eye(d)[0] - uniform)
    for _ in range(n_directions):
        w = rng.standard_normal(d)
        w -= w.mean()
        w *= scale / np.linalg.norm(w)
        lw = ray_lambda(w)
        ks.append(float(np.sum((uniform + lw * w) ** 2)))
    return DomainBound(d, family, lam, K,
                       min(ks) if ks else K, max(ks) if ks else K, n_directions)


# --- rotation correspondence ------------------------------------------------

def planar_rotation(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


class SignError(RuntimeError):
    pass


@dataclass(frozen=True)
class CorrespondenceReport:
    sigma: int
    max_deviation: float
    n_points: int


def _correspondence_deviation(sigma, phis, thetas, ts, frame):
    from entroqubit.dynamics3 import make_splus

    th, t = np.meshgrid(np.asarray(thetas, float), np.asarray(ts, float), indexing="ij")
    bs = np.stack([(t * np.sin(th)).ravel(), (t * np.cos(th)).ravel()], axis=1)
    F = frame.vectors
    states = (1 + bs @ F.T) / frame.d
    worst = 0.0
    for phi in phis:
        left = states @ make_splus(phi).T
        right = (1 + bs @ planar_rotation(sigma * phi).T @ F.T) / frame.d
        worst = max(worst, float(np.abs(left - right).max()))
    return worst


def rotation_sign(frame: Frame | None = None) -> int:
    """Sign ``s`` with ``S+(phi)`` acting as counterclockwise rotation by ``s * phi``.

    Determined from the single point ``phi = 2 pi/3``, ``b = (0, 1)``.
    """
    frame = frame or default_frame(3)
    dev = {s: _correspondence_deviation(s, [2 * np.pi / 3], [0.0], [1.0], frame) for s in (1, -1)}
    return min(dev, key=dev.get)


ROTATION_SIGN = rotation_sign()


def rotation_correspondence_check(phis, thetas, ts, frame: Frame | None = None,
                                  tol: float = 1e-12) -> CorrespondenceReport:
    frame = frame or default_frame(3)
    sigma = rotation_sign(frame)
    worst = _correspondence_deviation(sigma, phis, thetas, ts, frame)
    if worst > tol:
        other = _correspondence_deviation(-sigma, phis, thetas, ts, frame)
        if other > tol:
            raise SignError(f"no consistent rotation sign (deviations {worst}, {other})")
    n = len(phis) * len(thetas) * len(ts)
    return CorrespondenceReport(sigma, worst, n)
