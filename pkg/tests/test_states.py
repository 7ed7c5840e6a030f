import json

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose

from entroqubit.dynamics3 import make_sminus, make_splus
from entroqubit.dynamics4 import make_composed
from entroqubit.states import (
    ROTATION_SIGN,
    BlochPoint,
    Frame,
    Membership,
    bloch_to_state,
    default_frame,
    domain_bound_search,
    domain_membership,
    planar_rotation,
    rotation_correspondence_check,
    state_to_bloch,
)

TRINE = default_frame(3)
TETRA = default_frame(4)


@st.composite
def disc_points(draw):
    r = draw(st.floats(0, 1))
    th = draw(st.floats(0, 2 * np.pi))
    return np.array([r * np.sin(th), r * np.cos(th)])


@st.composite
def ball_points(draw):
    v = np.array([draw(st.floats(-1, 1)) for _ in range(3)])
    n = np.linalg.norm(v)
    return v / n * draw(st.floats(0, 1)) if n > 1e-6 else np.zeros(3)


def test_default_frames_are_the_listed_vectors():
    h = np.sqrt(3) / 2
    assert_allclose(TRINE.vectors, [[0, 1], [h, -0.5], [-h, -0.5]])
    assert_allclose(TETRA.vectors[1], [np.sqrt(8 / 9), 0, -1 / 3])
    assert_allclose(TETRA.vectors[3], [-np.sqrt(2 / 9), -np.sqrt(2 / 3), -1 / 3])


@pytest.mark.parametrize("frame,dot", [(TRINE, -1 / 2), (TETRA, -1 / 3)])
def test_frame_pairwise_dots_and_identities(frame, dot):
    g = frame.vectors @ frame.vectors.T
    off = g[~np.eye(frame.d, dtype=bool)]
    assert_allclose(off, dot, atol=1e-12)
    assert np.abs(frame.vectors.sum(0)).max() <= 1e-12
    k = frame.d / (frame.d - 1)
    assert np.abs(frame.vectors.T @ frame.vectors - k * np.eye(frame.d - 1)).max() <= 1e-12


def test_default_frame_rejects_other_dims():
    with pytest.raises(ValueError):
        default_frame(5)


def test_custom_frame_must_satisfy_invariants():
    th = 0.3
    rot = planar_rotation(th)
    Frame(TRINE.vectors @ rot.T)  # rotated trine is fine
    with pytest.raises(ValueError):
        Frame(np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]]))


def test_bloch_to_state_examples():
    assert_allclose(bloch_to_state([0, 0], TRINE).entries, np.full(3, 1 / 3))
    p = bloch_to_state(BlochPoint(0, 1), TRINE)
    assert_allclose(p.entries, [2 / 3, 1 / 6, 1 / 6], atol=1e-15)
    assert_allclose(p.entries @ p.entries, 0.5)
    q = bloch_to_state(BlochPoint(0, 0, 1), TETRA)
    assert_allclose(q.entries, [1 / 2, 1 / 6, 1 / 6, 1 / 6], atol=1e-15)
    assert_allclose(q.entries @ q.entries, 1 / 3)


def test_bloch_to_state_rejects_outside_ball():
    with pytest.raises(ValueError):
        bloch_to_state([0.8, 0.8], TRINE)
    with pytest.raises(ValueError):
        bloch_to_state([0, 0, 0.5], TRINE)


def test_state_to_bloch_examples():
    assert_allclose(state_to_bloch(np.full(3, 1 / 3), TRINE).vector, 0, atol=1e-15)
    assert_allclose(state_to_bloch([2 / 3, 1 / 6, 1 / 6], TRINE).vector, [0, 1, 0], atol=1e-15)
    # simplex vertex: (1 + b_k . b)/4 = delta_k0 forces b = 3 b_0
    b = state_to_bloch([1, 0, 0, 0], TETRA)
    assert_allclose(b.vector, [0, 0, 3], atol=1e-15)
    assert not b.in_ball
    assert_allclose(state_to_bloch([1, 0, 0], TRINE).norm, 2)


@given(disc_points())
def test_trine_round_trip_and_norm_identity(b):
    p = bloch_to_state(b, TRINE)
    assert p.positive and p.normalized
    assert_allclose(state_to_bloch(p, TRINE).vector[:2], b, atol=1e-12)
    assert abs(p.entries @ p.entries - (1 / 3 + (b @ b) / 6)) <= 1e-12


@given(ball_points())
def test_tetra_round_trip_and_norm_identity(b):
    p = bloch_to_state(b, TETRA)
    assert p.positive and p.normalized
    assert_allclose(state_to_bloch(p, TETRA).vector, b, atol=1e-12)
    assert abs(p.entries @ p.entries - (1 / 4 + (b @ b) / 12)) <= 1e-12


@given(disc_points(), st.floats(0, 2 * np.pi))
def test_domain_closed_under_both_families(b, phi):
    p = bloch_to_state(b, TRINE).entries
    for S in (make_splus(phi), make_sminus(phi)):
        out = S @ p
        assert out.min() >= -1e-12
        assert state_to_bloch(out, TRINE).norm <= 1 + 1e-12


@given(ball_points(), st.lists(st.floats(0, 2 * np.pi), min_size=4, max_size=4))
def test_tetra_dynamics_is_bloch_isometry(b, angles):
    p = bloch_to_state(b, TETRA).entries
    out = make_composed(angles) @ p
    assert out.min() >= -1e-12
    assert abs(state_to_bloch(out, TETRA).norm - np.linalg.norm(b)) <= 1e-12


def test_domain_membership_examples():
    assert domain_membership(np.full(3, 1 / 3)) is Membership.INTERIOR
    assert domain_membership([2 / 3, 1 / 6, 1 / 6]) is Membership.EXTREMAL
    assert domain_membership([1, 0, 0]) is Membership.OUTSIDE_BALL
    assert domain_membership([1.2, -0.1, -0.1]) is Membership.OUTSIDE_SIMPLEX
    assert domain_membership([0.5, 1 / 6, 1 / 6, 1 / 6]) is Membership.EXTREMAL


def test_domain_bound_d3():
    r = domain_bound_search(3, n_directions=200)
    assert abs(r.lambda_max - 0.5) <= 1e-6
    assert abs(r.K - 0.5) <= 1e-6
    # norm of the ray state at lambda: (1 + 2 lambda^2)/3
    assert abs(r.K - (1 + 2 * r.lambda_max ** 2) / 3) <= 1e-12
    assert r.K_random_max - r.K_random_min <= 1e-6


def test_domain_bound_d3_permutations_only():
    r = domain_bound_search(3, family="permutations", n_directions=0)
    assert r.lambda_max == 1.0


def test_domain_bound_d4():
    r = domain_bound_search(4, n_dynamics=2000, n_directions=50)
    assert abs(r.K - 1 / 3) <= 1e-6


def test_rotation_sign_single_point():
    # phi = 2 pi/3 gives PI^2: mass on site 0 moves to site 2,
    # i.e. the Bloch point (0, 1) moves to a_2 = (-sqrt3/2, -1/2),
    # a counterclockwise turn by 2 pi/3
    left = make_splus(2 * np.pi / 3) @ bloch_to_state([0, 1], TRINE).entries
    right = bloch_to_state(planar_rotation(2 * np.pi / 3) @ [0, 1], TRINE).entries
    assert_allclose(left, right, atol=1e-15)
    assert ROTATION_SIGN == 1


def test_rotation_correspondence_grid():
    rep = rotation_correspondence_check(
        np.linspace(0, 2 * np.pi, 100), np.linspace(0, 2 * np.pi, 100), np.linspace(0, 1, 10))
    assert rep.sigma == ROTATION_SIGN
    assert rep.max_deviation <= 1e-12
    assert rep.n_points == 100 * 100 * 10


def test_json_round_trips():
    b = BlochPoint(0.1, -0.2, 0.3)
    assert json.loads(b.to_json()) == {"x": 0.1, "y": -0.2, "z": 0.3}
    assert BlochPoint.from_json(b.to_json()) == b
    f = Frame.from_json(TETRA.to_json())
    assert np.array_equal(f.vectors, TETRA.vectors)
