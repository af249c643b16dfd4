"""Stokes channels: named families, validity, distances and estimators."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from concatcode import (
    DiagonalChannel,
    StokesChannel,
    dephasing,
    depolarizing,
    diamond_distance_estimate,
    from_pauli_probs,
    is_valid_channel,
    max_entry_distance,
    parse_channel_literal,
    random_cptp,
    two_copy_diamond_estimate,
)
from concatcode.linalg import PAULI_MATS, stokes_from_kraus


def test_named_families():
    assert depolarizing(1.0).as_tuple() == (0.0, 0.0, 0.0)
    assert dephasing(0.0).as_tuple() == (1.0, 1.0, 1.0)
    assert depolarizing(0.18).as_tuple() == pytest.approx((0.82, 0.82, 0.82))
    assert dephasing(0.4).as_tuple() == (1.0, pytest.approx(0.6), pytest.approx(0.6))


def test_strength_range_enforced():
    with pytest.raises(ValueError):
        depolarizing(1.5)
    with pytest.raises(ValueError):
        dephasing(-0.1)
    assert depolarizing(1.2, allow_nonphysical=True).x == pytest.approx(-0.2)


def test_from_pauli_probs():
    assert from_pauli_probs(0, 0, 0).as_tuple() == (1.0, 1.0, 1.0)
    t = from_pauli_probs(0.2, 0, 0)
    assert t.as_tuple() == (1.0, pytest.approx(0.6), pytest.approx(0.6))
    assert from_pauli_probs(0.25, 0.25, 0.25).as_tuple() == (0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        from_pauli_probs(0.6, 0.6, 0.0)
    with pytest.raises(ValueError):
        from_pauli_probs(-0.1, 0.0, 0.0)


def test_validity():
    assert is_valid_channel(StokesChannel.identity())
    assert not is_valid_channel(DiagonalChannel(1.0, 1.0, -1.0))
    assert is_valid_channel(depolarizing(0.5))
    not_tp = np.eye(4)
    not_tp[0, 1] = 0.3
    assert not is_valid_channel(StokesChannel(not_tp))


def test_tetrahedron_examples():
    assert DiagonalChannel(1, 1, 1).in_tetrahedron()
    assert not DiagonalChannel(1, 1, -1).in_tetrahedron()
    assert DiagonalChannel(-1, 1, -1).in_tetrahedron(tol=1e-12)


probs = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@given(probs, probs, probs)
def test_pauli_probs_image_in_tetrahedron(a, b, c):
    total = a + b + c
    if total > 1.0:
        a, b, c = a / total, b / total, c / total
    t = from_pauli_probs(a, b, c)
    assert t.in_tetrahedron(tol=1e-12)
    recovered = t.pauli_probs()
    np.testing.assert_allclose(recovered[1:], (a, b, c), atol=1e-12)


coords = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)


_CORNERS = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)


@given(coords, coords, coords)
@settings(max_examples=200)
def test_tetrahedron_membership_iff_nonnegative_probs(x, y, z):
    # independent geometric route: barycentric coordinates over the corners
    system = np.vstack([_CORNERS.T, np.ones(4)])
    weights = np.linalg.solve(system, np.array([x, y, z, 1.0]))
    inside = bool(np.all(weights >= -1e-9))
    t = DiagonalChannel(x, y, z)
    assert t.in_tetrahedron(tol=1e-9) == inside
    np.testing.assert_allclose(t.pauli_probs(), weights, atol=1e-9)


def test_max_entry_distance():
    assert max_entry_distance(StokesChannel.identity()) == 0.0
    assert max_entry_distance(depolarizing(0.3)) == pytest.approx(0.3)
    assert max_entry_distance(dephasing(0.25)) == pytest.approx(0.25)


def test_kraus_choi_roundtrip():
    rng = np.random.default_rng(11)
    for _ in range(5):
        t = random_cptp(rng)
        rebuilt = stokes_from_kraus(t.kraus_operators())
        np.testing.assert_allclose(rebuilt, t.matrix, atol=1e-12)


def test_kraus_rejects_non_cp():
    transpose_map = StokesChannel(np.diag([1.0, 1.0, -1.0, 1.0]))
    with pytest.raises(ValueError):
        transpose_map.kraus_operators()


def test_composition_matches_kraus_composition():
    rng = np.random.default_rng(23)
    for _ in range(5):
        s = random_cptp(rng)
        t = random_cptp(rng)
        composed_kraus = [a @ b for a in s.kraus_operators() for b in t.kraus_operators()]
        expected = stokes_from_kraus(composed_kraus)
        np.testing.assert_allclose((s @ t).matrix, expected, atol=1e-12)


def test_apply_matches_matrix_action():
    rng = np.random.default_rng(5)
    t = random_cptp(rng)
    rho = np.array([[0.7, 0.2 + 0.1j], [0.2 - 0.1j, 0.3]])
    image = t.apply(rho)
    for s in range(4):
        coeff = np.trace(PAULI_MATS[s] @ image).real
        expected = sum(
            t.matrix[s, u] * np.trace(PAULI_MATS[u] @ rho).real for u in range(4)
        )
        assert coeff == pytest.approx(expected, abs=1e-12)


# -- diamond estimator ------------------------------------------------------------


def test_estimate_identity_zero():
    assert diamond_distance_estimate(StokesChannel.identity(), seed=0, restarts=10) <= 1e-9
    assert two_copy_diamond_estimate(StokesChannel.identity(), seed=0, restarts=5) <= 1e-9


def test_estimate_depolarizing_value():
    for eps in (0.1, 0.3):
        est = diamond_distance_estimate(depolarizing(eps), seed=0, restarts=60)
        assert est == pytest.approx(1.5 * eps, abs=1e-6)
        assert est >= eps - 1e-6  # entrywise lower bound from the sandwich


def test_estimate_full_dephasing():
    est = diamond_distance_estimate(dephasing(1.0), seed=0, restarts=60)
    assert 1.0 - 1e-9 <= est <= 2.0 + 1e-9


def test_estimate_deterministic():
    rng = np.random.default_rng(1)
    t = random_cptp(rng)
    a = diamond_distance_estimate(t, seed=3, restarts=25)
    b = diamond_distance_estimate(t, seed=3, restarts=25)
    assert a == b


@pytest.mark.parametrize("seed", range(6))
def test_sandwich_entry_below_estimate(seed):
    rng = np.random.default_rng(seed)
    t = random_cptp(rng)
    est = diamond_distance_estimate(t, seed=0, restarts=60)
    assert max_entry_distance(t) <= est + 1e-6


@pytest.mark.parametrize("seed", range(3))
def test_two_copy_subadditivity(seed):
    rng = np.random.default_rng(100 + seed)
    t = random_cptp(rng)
    single = diamond_distance_estimate(t, seed=0, restarts=60)
    double = two_copy_diamond_estimate(t, seed=0, restarts=30)
    assert double <= 2.0 * single + 1e-6


# -- literals ----------------------------------------------------------------------


def test_parse_literals():
    assert parse_channel_literal("depol:0.18").as_tuple() == pytest.approx((0.82, 0.82, 0.82))
    assert parse_channel_literal("deph:0.4").as_tuple() == (
        1.0,
        pytest.approx(0.6),
        pytest.approx(0.6),
    )
    assert parse_channel_literal("pauli:0.2,0,0").as_tuple() == (
        1.0,
        pytest.approx(0.6),
        pytest.approx(0.6),
    )
    assert parse_channel_literal("diag:0.9,0.8,0.7").as_tuple() == (0.9, 0.8, 0.7)
    stokes = parse_channel_literal("stokes:" + ",".join(str(v) for v in np.eye(4).ravel()))
    assert isinstance(stokes, StokesChannel)
    np.testing.assert_array_equal(stokes.matrix, np.eye(4))


@pytest.mark.parametrize(
    "bad",
    ["depol", "depol:0.1,0.2", "pauli:0.1", "stokes:1,2,3", "wat:1", "diag:a,b,c"],
)
def test_parse_literal_errors(bad):
    with pytest.raises(ValueError):
        parse_channel_literal(bad)
