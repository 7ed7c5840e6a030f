"""4x4 dynamics built from elementary rotations.

``R_k(phi)`` fixes site ``k`` (1-based) and applies the 3x3 rotation
pattern to the remaining three sites in index order.  A general rotation is
the ordered product ``R_1 R_2 R_3 R_4``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from entroqubit.core import DEFAULT_TOLERANCES, Tolerances, bistochastic_residual, is_orthogonal
from entroqubit.dynamics3 import TWO_PI, circulant, q_coefficients, q_derivative

AXES = (1, 2, 3, 4)


_BLOCKS = {a: np.ix_(*[[i for i in range(4) if i != a - 1]] * 2) for a in AXES}


def make_elementary(axis: int, phi: float) -> np.ndarray:
    if axis not in AXES:
        raise ValueError(f"axis must be one of 1..4, got {axis}")
    m = np.eye(4)
    m[_BLOCKS[axis]] = circulant(q_coefficients(phi))
    return m


def _elementary_derivative(axis: int, phi: float) -> np.ndarray:
    m = np.zeros((4, 4))
    m[_BLOCKS[axis]] = circulant(q_derivative(phi))
    return m


def make_composed(angles) -> np.ndarray:
    angles = np.asarray(angles, dtype=float)
    if angles.shape != (4,):
        raise ValueError("make_composed takes exactly four angles")
    out = np.eye(4)
    for axis, phi in zip(AXES, angles):
        out = out @ make_elementary(axis, phi)
    return out


def _composed_jacobian(angles) -> np.ndarray:
    mats = [make_elementary(a, p) for a, p in zip(AXES, angles)]
    prefix = [np.eye(4)]
    for m in mats[:-1]:
        prefix.append(prefix[-1] @ m)
    suffix = [np.eye(4)]
    for m in mats[:0:-1]:
        suffix.insert(0, m @ suffix[0])
    cols = [(prefix[j] @ _elementary_derivative(a, p) @ suffix[j]).ravel()
            for j, (a, p) in enumerate(zip(AXES, angles))]
    return np.stack(cols, axis=1)


@dataclass(frozen=True)
class Factorization:
    angles: np.ndarray
    residual: float
    converged: bool
    starts_used: int


class FactorizationError(RuntimeError):
    pass


def _coarse_starts() -> np.ndarray:
    grid = np.arange(3) * TWO_PI / 3
    return np.array(list(itertools.product(grid, repeat=4)))


_COARSE = _coarse_starts()


def factorize(S, n_starts: int = 64, threshold: float = 1e-8, seed: int = 0,
              tol: Tolerances = DEFAULT_TOLERANCES) -> Factorization:
    """Find angles with ``make_composed(angles) ~= S``.

    Multi-start Levenberg-Marquardt on the 16 entry residuals.  Starts come
    from the 3^4 coarse grid ranked by residual, interleaved with seeded
    uniform draws on the 4-torus.  Returns the first start reaching
    ``threshold`` (max-abs entry error); otherwise the best seen, with
    ``converged=False``.  The map is 4 parameters onto a 3-dimensional
    group, so the returned angles are one point of a 1-dimensional fiber.
    """
    S = np.asarray(S, dtype=float)
    if S.shape != (4, 4):
        raise ValueError("factorize needs a 4x4 matrix")
    if not is_orthogonal(S, tol) or bistochastic_residual(S) > tol.sum:
        raise ValueError("factorize needs an orthogonal quasi-bistochastic matrix")
    if abs(np.linalg.det(S) - 1.0) > 1e-8:
        raise FactorizationError("determinant -1: not reachable by composed rotations")

    rng = np.random.default_rng(seed)
    coarse_res = [np.abs(make_composed(a) - S).max() for a in _COARSE]
    ranked = _COARSE[np.argsort(coarse_res, kind="stable")]

    def residuals(a):
        return (make_composed(a) - S).ravel()

    best_angles, best_res = None, np.inf
    for i in range(n_starts):
        x0 = ranked[i // 2] if i % 2 == 0 else rng.uniform(0, TWO_PI, 4)
        fit = least_squares(residuals, x0, jac=_composed_jacobian, method="lm",
                            xtol=1e-15, ftol=1e-15, gtol=1e-15)
        res = float(np.abs(residuals(fit.x)).max())
        if res < best_res:
            best_angles, best_res = fit.x % TWO_PI, res
        if best_res <= threshold:
            return Factorization(best_angles, best_res, True, i + 1)
    return Factorization(best_angles, best_res, False, n_starts)
