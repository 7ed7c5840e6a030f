"""Reference qubit kinematics as real rotations of the Bloch vector.

Nothing here touches the lattice dynamics modules; the lift below is the
only bridge, and it is derived from the frame alone:

    S = J/d + (d - 1)/d * F^T O F

with ``F`` the ``(d-1) x d`` matrix of frame columns and ``J`` all-ones.
It satisfies ``S bloch_to_state(b) = bloch_to_state(O b)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.transform import Rotation

from entroqubit.states import Frame

ORTH_TOL = 1e-12


@dataclass(frozen=True)
class BlochRotation:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.shape not in ((2, 2), (3, 3)):
            raise ValueError("Bloch rotations are 2x2 or 3x3")
        if np.abs(m @ m.T - np.eye(m.shape[0])).max() > ORTH_TOL:
            raise ValueError("Bloch rotation is not orthogonal")
        if abs(np.linalg.det(m) - 1) > ORTH_TOL:
            raise ValueError("Bloch rotation must have determinant +1")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def planar(angle: float) -> BlochRotation:
    c, s = np.cos(angle), np.sin(angle)
    return BlochRotation(np.array([[c, -s], [s, c]]))


def random_rotation(rng: np.random.Generator) -> BlochRotation:
    """Haar-random element of SO(3)."""
    return BlochRotation(Rotation.random(random_state=rng).as_matrix())


def _conjugate(O: np.ndarray, frame: Frame) -> np.ndarray:
    if O.shape != (frame.d - 1, frame.d - 1):
        raise ValueError(f"{O.shape[0]}D map does not match a d={frame.d} frame")
    d = frame.d
    F = frame.matrix
    return np.full((d, d), 1.0 / d) + (d - 1) / d * (F.T @ O @ F)


def lift_to_lattice(O, frame: Frame) -> np.ndarray:
    m = O.matrix if isinstance(O, BlochRotation) else BlochRotation(O).matrix
    return _conjugate(m, frame)


def reflection_lift(O, frame: Frame) -> np.ndarray:
    """Lift of an improper orthogonal map; the result is unphysical dynamics."""
    m = np.asarray(O, dtype=float)
    if m.shape[0] != m.shape[1] or np.abs(m @ m.T - np.eye(m.shape[0])).max() > ORTH_TOL:
        raise ValueError("reflection must be orthogonal")
    if abs(np.linalg.det(m) + 1) > ORTH_TOL:
        raise ValueError("reflection must have determinant -1")
    return _conjugate(m, frame)
