"""Orthogonal quasi-bistochastic 3x3 dynamics.

Two families exist.  The rotation family ``S+(phi) = q0 I + q1 PI + q2 PI^2``
is a continuous one-parameter group with determinant +1.  The reflection
family ``S-(phi) = q0 R + q1 PI R + q2 PI^2 R`` has determinant -1, is not
reachable continuously from the identity and is tagged unphysical.  Both use

    q_k(phi) = (1 + 2 cos(phi + 2 pi k / 3)) / 3.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from entroqubit.core import (
    DEFAULT_TOLERANCES,
    PI3,
    R3,
    Tolerances,
    bistochastic_residual,
    is_orthogonal,
)

TWO_PI = 2.0 * np.pi

_PI2 = PI3 @ PI3
# I, PI, PI^2, R, PI R, PI^2 R
PERMUTATIONS3 = (np.eye(3), PI3, _PI2, R3, PI3 @ R3, _PI2 @ R3)
_BASIS = np.stack([P.ravel() for P in PERMUTATIONS3], axis=1)  # 9 x 6
GAUGE_DIRECTION = np.array([1.0, 1.0, 1.0, -1.0, -1.0, -1.0])


def q_coefficients(phi: float) -> np.ndarray:
    k = np.arange(3)
    return (1.0 + 2.0 * np.cos(phi + TWO_PI * k / 3.0)) / 3.0


def q_derivative(phi: float) -> np.ndarray:
    k = np.arange(3)
    return -2.0 * np.sin(phi + TWO_PI * k / 3.0) / 3.0


def circulant(q) -> np.ndarray:
    q0, q1, q2 = q
    return np.array([[q0, q2, q1],
                     [q1, q0, q2],
                     [q2, q1, q0]])


def anticirculant(q) -> np.ndarray:
    q0, q1, q2 = q
    return np.array([[q0, q1, q2],
                     [q1, q2, q0],
                     [q2, q0, q1]])


def make_splus(phi: float) -> np.ndarray:
    return circulant(q_coefficients(phi))


def make_sminus(phi: float) -> np.ndarray:
    return anticirculant(q_coefficients(phi))


def angle_from_q(q) -> float:
    """Invert ``q_coefficients``: angle in ``[0, 2 pi)``."""
    q0, q1, q2 = q
    cos_phi = (3.0 * q0 - 1.0) / 2.0
    sin_phi = np.sqrt(3.0) / 2.0 * (q2 - q1)
    phi = float(np.arctan2(sin_phi, cos_phi) % TWO_PI)
    # -0 and tiny negatives wrap to exactly 2 pi
    return 0.0 if phi == TWO_PI else phi


@dataclass(frozen=True)
class Generator3:
    phi: float
    chirality: str  # "plus" or "minus"

    def __post_init__(self):
        if self.chirality not in ("plus", "minus"):
            raise ValueError(f"unknown chirality {self.chirality!r}")
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)

    @property
    def unphysical(self) -> bool:
        return self.chirality == "minus"

    def matrix(self) -> np.ndarray:
        return make_splus(self.phi) if self.chirality == "plus" else make_sminus(self.phi)


def compose(a: Generator3, b: Generator3) -> Generator3:
    """Product ``a.matrix() @ b.matrix()`` as a generator.

    Rotations add angles.  Every product lands back in one of the two
    families, so mixed products are classified from the explicit matrix.
    """
    if a.chirality == b.chirality == "plus":
        return Generator3(a.phi + b.phi, "plus")
    kind, phi = classify_orthogonal_qbistoch3(a.matrix() @ b.matrix())
    return Generator3(phi, kind)


@dataclass(frozen=True)
class BvNDecomposition3:
    """Signed expansion over the six 3x3 permutations.

    ``q`` weights ``I, PI, PI^2`` and ``r`` weights ``R, PI R, PI^2 R``.  The
    six matrices satisfy one linear relation, so coefficients are defined up
    to adding ``c * (1, 1, 1, -1, -1, -1)``; the stored pair is the
    minimum-norm representative.
    """

    q: np.ndarray
    r: np.ndarray

    def coefficients(self) -> np.ndarray:
        return np.concatenate([self.q, self.r])

    def reconstruct(self) -> np.ndarray:
        return (_BASIS @ self.coefficients()).reshape(3, 3)

    def shifted(self, c: float) -> "BvNDecomposition3":
        coef = self.coefficients() + c * GAUGE_DIRECTION
        return BvNDecomposition3(coef[:3], coef[3:])

    def rotation_gauge(self) -> "BvNDecomposition3":
        """Representative whose ``r`` has zero mean.

        For a rotation-family matrix this puts all weight on ``q``.
        """
        return self.shifted(float(np.mean(self.r)))


def decompose_bvn(S, tol: Tolerances = DEFAULT_TOLERANCES) -> BvNDecomposition3:
    S = np.asarray(S, dtype=float)
    if S.shape != (3, 3) or bistochastic_residual(S) > tol.sum:
        raise ValueError("decompose_bvn needs a 3x3 quasi-bistochastic matrix")
    coef = np.linalg.pinv(_BASIS) @ S.ravel()
    return BvNDecomposition3(coef[:3], coef[3:])


class ClassificationError(RuntimeError):
    """An orthogonal quasi-bistochastic 3x3 matrix fit neither family."""


def classify_orthogonal_qbistoch3(S, tol: Tolerances = DEFAULT_TOLERANCES):
    """Return ``("plus", phi)``, ``("minus", phi)`` or ``("not_orthogonal", None)``."""
    S = np.asarray(S, dtype=float)
    if S.shape != (3, 3) or bistochastic_residual(S) > tol.sum:
        raise ValueError("classification needs a 3x3 quasi-bistochastic matrix")
    if not is_orthogonal(S, tol):
        return "not_orthogonal", None
    if np.linalg.det(S) > 0:
        phi = angle_from_q(S[:, 0])
        kind, rebuilt = "plus", make_splus(phi)
    else:
        phi = angle_from_q(S[0, :])
        kind, rebuilt = "minus", make_sminus(phi)
    if np.abs(rebuilt - S).max() > tol.orth:
        raise ClassificationError(f"orthogonal matrix outside the {kind} family:\n{S}")
    return kind, phi


@dataclass(frozen=True)
class NoGoReport:
    orthogonal_points: list
    n_grid: int
    q_range: tuple


def d2_nogo_check(step: float = 1e-4, q_range=(-1.0, 2.0),
                  tol: Tolerances = DEFAULT_TOLERANCES) -> NoGoReport:
    """Sweep ``[[q, 1-q], [1-q, q]]`` and collect the orthogonal grid points."""
    per_unit = int(round(1.0 / step))
    lo = int(round(q_range[0] * per_unit))
    hi = int(round(q_range[1] * per_unit))
    # integer numerators keep 0 and 1 exactly on the grid
    qs = np.arange(lo, hi + 1) / per_unit
    S = np.empty((qs.size, 2, 2))
    S[:, 0, 0] = S[:, 1, 1] = qs
    S[:, 0, 1] = S[:, 1, 0] = 1 - qs
    dev = np.abs(S @ S.transpose(0, 2, 1) - np.eye(2)).max(axis=(1, 2))
    hits = qs[dev <= tol.orth]
    return NoGoReport([float(q) for q in hits], qs.size, tuple(q_range))
