"""Unit vectors with unit coordinate sum, in any dimension.

Solutions of ``sum(a) = 1`` and ``sum(a**2) = 1`` in ``R^n`` form an
``(n - 2)``-sphere.  Write ``a = U b`` with ``U`` orthogonal and last column
``(1, ..., 1)/sqrt(n)``; then ``b_n = 1/sqrt(n)`` and the remaining ``b`` lie
on a sphere of radius ``sqrt(1 - 1/n)``, parameterized by nested angles.
"""
from __future__ import annotations

import numpy as np

from entroqubit.core import MAX_DIM, MIN_DIM


def _check_n(n: int) -> None:
    if not MIN_DIM <= n <= MAX_DIM:
        raise ValueError(f"n must be in [{MIN_DIM}, {MAX_DIM}], got {n}")


def complete_basis(n: int) -> np.ndarray:
    """Orthogonal ``n x n`` matrix whose last column is the normalized all-ones vector.

    Gram-Schmidt (modified, with one reorthogonalization pass) over
    ``e_1, ..., e_n`` in index order after the fixed column; a candidate
    that collapses is skipped.  No randomness.
    """
    _check_n(n)
    basis = [np.full(n, 1.0 / np.sqrt(n))]
    for j in range(n):
        v = np.zeros(n)
        v[j] = 1.0
        for _ in range(2):
            for u in basis:
                v = v - (u @ v) * u
        norm = np.linalg.norm(v)
        if norm < 1e-8:
            continue
        basis.append(v / norm)
        if len(basis) == n:
            break
    return np.column_stack(basis[1:] + basis[:1])


def sphere_point(n: int, angles, radius: float, sign: int = 1) -> np.ndarray:
    """Point ``(b_1, ..., b_{n-1})`` on the sphere of the given radius.

    Nested polar coordinates: ``b_1 = r cos t_1``, ``b_2 = r sin t_1 cos t_2``,
    ..., with the last coordinate the product of all sines.  Takes ``n - 2``
    angles.  For ``n = 2`` there are no angles and ``sign`` picks one of the
    two points of the 0-sphere.
    """
    angles = np.asarray(angles, dtype=float).ravel()
    if angles.size != n - 2:
        raise ValueError(f"expected {n - 2} angles for n={n}, got {angles.size}")
    if n == 2:
        return np.array([np.copysign(radius, sign)])
    out = np.empty(n - 1)
    r = radius
    for j, t in enumerate(angles):
        out[j] = r * np.cos(t)
        r = r * np.sin(t)
    out[-1] = r
    return out


def simplex_sphere_point(n: int, angles, sign: int = 1) -> np.ndarray:
    _check_n(n)
    b = np.empty(n)
    b[:-1] = sphere_point(n, angles, np.sqrt(1.0 - 1.0 / n), sign=sign)
    b[-1] = 1.0 / np.sqrt(n)
    return complete_basis(n) @ b
