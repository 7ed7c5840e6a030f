"""Renyi entropies and the entropy-conservation check for a dynamics."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import logsumexp

from entroqubit.core import DEFAULT_TOLERANCES, Tolerances, as_vector


def renyi_entropy(p, alpha: float, base: float | None = None,
                  tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Renyi-alpha entropy of a probability vector.

    Natural log unless ``base`` is given.  ``alpha == 1`` is the Shannon
    limit and ``alpha == 0`` the log of the support size.  Entries in
    ``(-tol.pos, 0)`` are clamped to zero; anything more negative, or an
    unnormalized vector, raises ``ValueError``.
    """
    if alpha < 0:
        raise ValueError(f"Renyi order must be >= 0, got {alpha}")
    p = as_vector(p)
    if np.any(p < -tol.pos):
        raise ValueError("entropy of a quasi-distribution is undefined")
    if abs(p.sum() - 1.0) > tol.sum:
        raise ValueError("vector is not normalized")
    p = np.clip(p, 0.0, None)
    nz = p[p > 0]
    if alpha == 0:
        h = np.log(nz.size)
    elif alpha == 1:
        h = -np.sum(nz * np.log(nz))
    elif abs(alpha - 1.0) < 0.5:
        # sum p^a - 1 = sum p (p^(a-1) - 1); stays accurate as a -> 1
        excess = np.sum(nz * np.expm1((alpha - 1.0) * np.log(nz)))
        h = np.log1p(excess) / (1.0 - alpha)
    else:
        h = logsumexp(alpha * np.log(nz)) / (1.0 - alpha)
    if base is not None:
        h /= np.log(base)
    return float(h)


def collision_norm(p) -> float:
    """Squared Euclidean length; defined for any real vector."""
    p = as_vector(p)
    return float(p @ p)


@dataclass(frozen=True)
class ConservationResult:
    passed: bool
    max_deviation: float
    n_samples: int
    domain_violations: int

    def __bool__(self):
        return self.passed


def conserves_renyi(S, alpha: float, sampler: Callable[[], np.ndarray], n_samples: int,
                    tol: Tolerances = DEFAULT_TOLERANCES) -> ConservationResult:
    """Check ``H_alpha(S p) == H_alpha(p)`` over states drawn from ``sampler``.

    States whose image has an entry below ``-tol.pos`` are counted as domain
    violations and excluded from the deviation; any violation fails the check.
    """
    S = np.asarray(S, dtype=float)
    worst = 0.0
    violations = 0
    for _ in range(n_samples):
        p = as_vector(sampler())
        sp = S @ p
        if np.any(sp < -tol.pos):
            violations += 1
            continue
        dev = abs(renyi_entropy(sp, alpha, tol=tol) - renyi_entropy(p, alpha, tol=tol))
        worst = max(worst, dev)
    return ConservationResult(
        passed=violations == 0 and worst <= tol.ent,
        max_deviation=worst,
        n_samples=n_samples,
        domain_violations=violations,
    )


def simplex_sampler(d: int, rng: np.random.Generator) -> Callable[[], np.ndarray]:
    """Uniform draws from the probability simplex."""
    return lambda: rng.dirichlet(np.ones(d))
