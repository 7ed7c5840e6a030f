"""Small real vectors and matrices, permutations and validity predicates.

States are column vectors and dynamics act on the left, ``S @ p``.  The
3-cycle ``PI3`` sends occupation of site 0 to site 1 (string ``123 -> 312``)
and ``R3`` swaps the last two sites (``123 -> 132``).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

MIN_DIM = 2
MAX_DIM = 16


@dataclass(frozen=True)
class Tolerances:
    sum: float = 1e-12
    orth: float = 1e-10
    pos: float = 1e-12
    ent: float = 1e-9


DEFAULT_TOLERANCES = Tolerances()


def _check_dim(d: int) -> None:
    if not MIN_DIM <= d <= MAX_DIM:
        raise ValueError(f"dimension {d} outside [{MIN_DIM}, {MAX_DIM}]")


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class ProbVector:
    """Lattice state: a probability or quasi-probability vector.

    ``normalized`` and ``positive`` are computed at construction against
    ``tol``; negative entries are allowed but flagged.
    """

    entries: np.ndarray
    tol: Tolerances = field(default=DEFAULT_TOLERANCES, repr=False, compare=False)

    def __post_init__(self):
        e = _frozen(self.entries)
        if e.ndim != 1:
            raise ValueError("ProbVector entries must be one-dimensional")
        _check_dim(e.size)
        object.__setattr__(self, "entries", e)

    @property
    def d(self) -> int:
        return self.entries.size

    @property
    def normalized(self) -> bool:
        return abs(self.entries.sum() - 1.0) <= self.tol.sum

    @property
    def positive(self) -> bool:
        return bool(np.all(self.entries >= -self.tol.pos))

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __len__(self):
        return self.d

    def to_json(self) -> str:
        return json.dumps(vector_to_dict(self.entries))

    @classmethod
    def from_json(cls, text: str) -> "ProbVector":
        return cls(vector_from_dict(json.loads(text)))


def as_vector(p) -> np.ndarray:
    return np.asarray(p, dtype=float)


def permutation_matrix(perm) -> np.ndarray:
    """Matrix sending basis vector ``e_j`` to ``e_{perm[j]}``."""
    perm = list(perm)
    d = len(perm)
    if sorted(perm) != list(range(d)):
        raise ValueError(f"{perm} is not a permutation of 0..{d - 1}")
    m = np.zeros((d, d))
    m[perm, range(d)] = 1.0
    m.setflags(write=False)
    return m


PI3 = permutation_matrix([1, 2, 0])
R3 = permutation_matrix([0, 2, 1])


def apply(S, p, tol: Tolerances = DEFAULT_TOLERANCES) -> ProbVector:
    S = np.asarray(S, dtype=float)
    v = as_vector(p)
    if S.ndim != 2 or S.shape != (v.size, v.size):
        raise ValueError(f"matrix shape {S.shape} does not match vector length {v.size}")
    return ProbVector(S @ v, tol=tol)


def bistochastic_residual(M) -> float:
    M = np.asarray(M, dtype=float)
    return float(max(np.abs(M.sum(axis=0) - 1).max(), np.abs(M.sum(axis=1) - 1).max()))


def orthogonality_residual(M) -> float:
    M = np.asarray(M, dtype=float)
    return float(np.abs(M @ M.T - np.eye(M.shape[0])).max())


def _square(M) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    return M


def is_quasi_bistochastic(M, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    return bistochastic_residual(_square(M)) <= tol.sum


def is_orthogonal(M, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    return orthogonality_residual(_square(M)) <= tol.orth


def vector_to_dict(v) -> dict:
    v = as_vector(v)
    return {"d": int(v.size), "entries": [float(x) for x in v]}


def vector_from_dict(obj: dict) -> np.ndarray:
    v = np.array(obj["entries"], dtype=float)
    if v.size != obj["d"]:
        raise ValueError("entry count does not match d")
    return v


def matrix_to_dict(M) -> dict:
    M = _square(M)
    return {"d": int(M.shape[0]), "entries": [float(x) for x in M.ravel()]}


def matrix_from_dict(obj: dict) -> np.ndarray:
    d = obj["d"]
    flat = np.array(obj["entries"], dtype=float)
    if flat.size != d * d:
        raise ValueError("entry count does not match d*d")
    return flat.reshape(d, d)
