"""Two-outcome measurements on lattice states.

The effect for direction ``m`` and outcome ``+/-`` is ``e = (1 +/- v) / 2``
with ``v_k = (d - 1) m . f_k``.  The factor ``d - 1`` turns the frame into
its dual, so that ``e . p = (1 +/- m . s) / 2`` with ``s`` the Bloch point
of ``p``.  Such effects can have negative entries and still give
probabilities in [0, 1] on every admissible state.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass

import numpy as np

from entroqubit.core import as_vector
from entroqubit.states import Frame, default_frame, domain_membership, Membership

UNIT_TOL = 1e-12
VALID_TOL = 1e-12


class OutOfDomainWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Effect:
    m_hat: np.ndarray
    outcome: str
    e: np.ndarray

    @property
    def d(self) -> int:
        return self.e.size

    def to_json(self) -> str:
        return json.dumps({
            "d": self.d,
            "m_hat": [float(x) for x in self.m_hat],
            "outcome": self.outcome,
            "e": [float(x) for x in self.e],
        })

    @classmethod
    def from_json(cls, text: str) -> "Effect":
        obj = json.loads(text)
        e = np.array(obj["e"], dtype=float)
        if e.size != obj["d"]:
            raise ValueError("effect length does not match d")
        return cls(np.array(obj["m_hat"], dtype=float), obj["outcome"], e)


def make_effect(m_hat, outcome: str, frame: Frame) -> Effect:
    m = as_vector(m_hat)
    if m.size != frame.d - 1:
        raise ValueError(f"direction has {m.size} components, frame needs {frame.d - 1}")
    if abs(np.linalg.norm(m) - 1) > UNIT_TOL:
        raise ValueError(f"measurement direction must be a unit vector, |m| = {np.linalg.norm(m)}")
    if outcome not in ("+", "-"):
        raise ValueError(f"outcome must be '+' or '-', got {outcome!r}")
    v = (frame.d - 1) * (frame.vectors @ m)
    sign = 1.0 if outcome == "+" else -1.0
    return Effect(m, outcome, 0.5 * (1 + sign * v))


def probability(effect: Effect, p) -> float:
    """``e . p``.  Warns with ``OutOfDomainWarning`` if ``p`` is not an admissible state."""
    p = as_vector(p)
    if domain_membership(p) in (Membership.OUTSIDE_BALL, Membership.OUTSIDE_SIMPLEX):
        warnings.warn("probability evaluated on a state outside the domain", OutOfDomainWarning,
                      stacklevel=2)
    return float(effect.e @ p)


def effect_range(m, frame: Frame) -> tuple[float, float]:
    """Exact min and max of ``m . p`` over the admissible states.

    ``m . p = (sum(m) + (F m) . b) / d`` is affine in the Bloch point, so over
    the unit ball the extremes are ``(sum(m) -/+ |F m|) / d``.
    """
    m = as_vector(m)
    centre = m.sum()
    reach = np.linalg.norm(frame.matrix @ m)
    return float((centre - reach) / frame.d), float((centre + reach) / frame.d)


def is_valid_effect(m, d: int | None = None, frame: Frame | None = None) -> bool:
    m = as_vector(m)
    frame = frame or default_frame(d or m.size)
    if m.size != frame.d:
        raise ValueError("effect length does not match frame")
    lo, hi = effect_range(m, frame)
    return lo >= -VALID_TOL and hi <= 1 + VALID_TOL
