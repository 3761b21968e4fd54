import numpy as np
import pytest

from cantorwalk import (
    CoinLayout,
    ValidationError,
    build_cantor,
    build_homogeneous,
    coin_matrix,
    evolve,
    initial_state,
    probability_distribution,
    step,
    step_adjoint,
)
from oracles import apply_dense_step, dense_step_matrix, random_state

SQ2 = np.sqrt(2.0)


def test_initial_state_values():
    st = initial_state(3)
    assert st.t == 0
    assert st.psi_r[3] == pytest.approx(1 / SQ2)
    assert st.psi_l[3] == pytest.approx(1j / SQ2)
    assert st.total_probability() == pytest.approx(1.0, abs=1e-15)
    assert np.count_nonzero(st.psi_r) == 1
    assert np.count_nonzero(st.psi_l) == 1


@pytest.mark.parametrize("theta", [0.0, 0.3, np.pi / 4, 2.0, -1.1])
def test_coin_matrix_properties(theta):
    m = coin_matrix(theta)
    assert np.allclose(m @ m.T, np.eye(2), atol=1e-15)
    assert np.allclose(m, m.T)
    assert np.linalg.det(m) == pytest.approx(-1.0)
    assert np.allclose(m @ m, np.eye(2), atol=1e-15)  # self-inverse


def test_coin_matrix_hadamard():
    assert np.allclose(coin_matrix(np.pi / 4), np.array([[1, 1], [1, -1]]) / SQ2)


def test_coin_matrix_rejects_nonfinite():
    with pytest.raises(ValidationError):
        coin_matrix(float("nan"))


def test_one_hadamard_step_amplitudes():
    layout = build_homogeneous(3, np.pi / 4)
    st = step(initial_state(3), layout)
    assert st.t == 1
    assert st.psi_r[4] == pytest.approx((1 + 1j) / 2)
    assert st.psi_l[2] == pytest.approx((1 - 1j) / 2)
    p = probability_distribution(st)
    assert p[4] == pytest.approx(0.5)
    assert p[2] == pytest.approx(0.5)


def test_two_hadamard_steps_distribution():
    layout = build_homogeneous(3, np.pi / 4)
    st = initial_state(3)
    evolve(st, layout, 2)
    p = probability_distribution(st)
    # x = -2, 0, +2 carry 1/4, 1/2, 1/4
    assert p[1] == pytest.approx(0.25)
    assert p[3] == pytest.approx(0.5)
    assert p[5] == pytest.approx(0.25)


def test_theta_zero_step_moves_without_mixing():
    layout = build_homogeneous(3, 0.0)
    st = step(initial_state(3), layout)
    assert st.psi_r[4] == pytest.approx(1 / SQ2)
    assert st.psi_l[2] == pytest.approx(-1j / SQ2)


def test_step_matches_dense_operator():
    rng = np.random.default_rng(11)
    for L in (2, 4, 6):
        labels = rng.integers(1, 3, size=2 * L + 1).astype(np.uint8)
        layout = CoinLayout(labels, float(rng.uniform(0, np.pi)), float(rng.uniform(0, np.pi)))
        w = dense_step_matrix(layout)
        for _ in range(5):
            st = random_state(rng, L)
            want_r, want_l = apply_dense_step(w, st)
            step(st, layout)
            assert np.max(np.abs(st.psi_r - want_r)) < 1e-13
            assert np.max(np.abs(st.psi_l - want_l)) < 1e-13


def test_step_adjoint_roundtrip():
    rng = np.random.default_rng(5)
    layout = build_cantor(3, 0.4, 1.1)
    st = random_state(rng, layout.L, t=1)
    before_r, before_l = st.psi_r.copy(), st.psi_l.copy()
    step(st, layout)
    step_adjoint(st, layout)
    assert st.t == 1
    assert np.max(np.abs(st.psi_r - before_r)) < 1e-13
    assert np.max(np.abs(st.psi_l - before_l)) < 1e-13


def test_step_adjoint_refuses_t_zero():
    layout = build_homogeneous(2, 0.5)
    with pytest.raises(ValidationError):
        step_adjoint(initial_state(2), layout)


def test_norm_conserved_over_run():
    layout = build_cantor(4, np.pi / 8, np.pi / 4)
    st = evolve(initial_state(layout.L), layout, layout.L)
    assert abs(st.total_probability() - 1.0) < 1e-12


def test_step_refuses_past_edge():
    layout = build_homogeneous(5, 0.7)
    st = evolve(initial_state(5), layout, 5)
    with pytest.raises(ValidationError):
        step(st, layout)
    with pytest.raises(ValidationError):
        evolve(initial_state(5), layout, 6)


def test_evolve_rejects_bad_steps():
    layout = build_homogeneous(5, 0.7)
    with pytest.raises(ValidationError):
        evolve(initial_state(5), layout, -1)
    with pytest.raises(ValidationError):
        evolve(initial_state(5), layout, 2.5)


def test_evolve_calls_recorder_each_step():
    layout = build_homogeneous(6, 0.7)
    seen = []
    evolve(initial_state(6), layout, 4, lambda s: seen.append(s.t))
    assert seen == [1, 2, 3, 4]


def test_support_and_parity():
    layout = build_cantor(3, 0.4, 0.9)
    st = initial_state(layout.L)
    x = np.arange(-layout.L, layout.L + 1)
    for t in range(1, layout.L + 1):
        step(st, layout)
        p = probability_distribution(st)
        assert np.all(p[np.abs(x) > t] == 0.0)
        assert np.all(p[(x + t) % 2 == 1] == 0.0)


def test_state_layout_size_mismatch():
    with pytest.raises(ValidationError):
        step(initial_state(3), build_homogeneous(4, 0.5))


def test_state_copy_is_independent():
    layout = build_homogeneous(4, 0.6)
    st = initial_state(4)
    cp = st.copy()
    step(st, layout)
    assert cp.t == 0
    assert cp.psi_r[4] == pytest.approx(1 / SQ2)
