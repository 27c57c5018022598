import numpy as np
import pytest

from qtlink.gaussian import (
    GaussianState,
    HomodynePattern,
    beam_splitter,
    homodyne_variance,
    independent_vacuum,
    min_physicality_eigenvalue,
    pure_loss,
    shared_vacuum,
    squeeze_single,
    symplectic_form,
    vacuum,
)

R_5DB = 5.0 * np.log(10.0) / 20.0
SUM_X = HomodynePattern([1.0, 1.0], 0.0)


def tmsv(r):
    """Entangled pair from two orthogonally squeezed vacua on a 50:50 splitter."""
    st = vacuum(2)
    st = squeeze_single(st, 0, r, 0.0)
    st = squeeze_single(st, 1, r, np.pi / 2.0)
    return beam_splitter(st, 0, 1, 0.5)


def test_vacuum_single_mode():
    st = vacuum(1)
    assert np.array_equal(st.mean, np.zeros(2))
    assert np.array_equal(st.cov, np.eye(2))


def test_vacuum_two_modes():
    assert np.array_equal(vacuum(2).cov, np.eye(4))


def test_vacuum_homodyne_variance_is_one():
    assert homodyne_variance(vacuum(1), HomodynePattern([1.0], 0.0)) == pytest.approx(1.0)


def test_vacuum_rejects_nonpositive_mode_count():
    with pytest.raises(ValueError):
        vacuum(0)
    with pytest.raises(ValueError):
        vacuum(-3)


def test_squeeze_zero_is_identity():
    st = squeeze_single(vacuum(1), 0, 0.0, 0.0)
    assert np.allclose(st.cov, np.eye(2))


@pytest.mark.parametrize(
    "r_db, var_x",
    [(5.0, 0.31622776601683794), (3.0, 0.5011872336272722)],
)
def test_squeeze_variances_in_db(r_db, var_x):
    r = r_db * np.log(10.0) / 20.0
    st = squeeze_single(vacuum(1), 0, r, 0.0)
    assert st.cov[0, 0] == pytest.approx(var_x, rel=1e-12)
    assert st.cov[1, 1] == pytest.approx(1.0 / var_x, rel=1e-12)


def test_squeeze_angle_rotates_squeezed_quadrature():
    st = squeeze_single(vacuum(1), 0, R_5DB, np.pi / 2.0)
    assert st.cov[1, 1] == pytest.approx(np.exp(-2 * R_5DB), rel=1e-12)
    assert st.cov[0, 0] == pytest.approx(np.exp(2 * R_5DB), rel=1e-12)


def test_squeeze_preserves_pure_state_determinant():
    st = squeeze_single(vacuum(1), 0, 1.3, 0.7)
    assert np.linalg.det(st.cov) == pytest.approx(1.0, rel=1e-9)


def test_squeeze_rejects_negative_r():
    with pytest.raises(ValueError):
        squeeze_single(vacuum(1), 0, -0.1, 0.0)


def test_beam_splitter_eta_one_is_identity():
    st = squeeze_single(vacuum(2), 0, 0.8, 0.3)
    out = beam_splitter(st, 0, 1, 1.0)
    assert np.allclose(out.cov, st.cov, atol=1e-14)


def test_beam_splitter_eta_zero_swaps_modes():
    st = squeeze_single(vacuum(2), 0, 0.8, 0.0)
    out = beam_splitter(st, 0, 1, 0.0)
    # squeezed block moves to mode 1; sign flip is irrelevant for covariances
    assert np.allclose(out.mode_block(1), st.mode_block(0), atol=1e-14)
    assert np.allclose(out.mode_block(0), np.eye(2), atol=1e-14)


def test_balanced_splitter_builds_entangled_pair():
    st = tmsv(R_5DB)
    ch2r, sh2r = np.cosh(2 * R_5DB), np.sinh(2 * R_5DB)
    assert st.cov[0, 0] == pytest.approx(ch2r, rel=1e-12)
    assert st.cov[2, 2] == pytest.approx(ch2r, rel=1e-12)
    # orientation pinned so that the summed X pattern is the squeezed one
    assert st.cov[0, 2] == pytest.approx(-sh2r, rel=1e-12)
    assert homodyne_variance(st, SUM_X) == pytest.approx(
        2 * np.exp(-2 * R_5DB), rel=1e-12
    )


def test_beam_splitter_preserves_symplectic_form():
    st = tmsv(0.9)
    omega = symplectic_form(2)
    # pure-state check: cov of a symplectically evolved vacuum obeys S Omega S^T = Omega,
    # equivalently det(cov) = 1 and physicality is tight
    assert np.linalg.det(st.cov) == pytest.approx(1.0, rel=1e-9)
    assert min_physicality_eigenvalue(st) >= -1e-9
    assert np.allclose(omega, -omega.T)


def test_beam_splitter_validation():
    st = vacuum(2)
    with pytest.raises(ValueError):
        beam_splitter(st, 0, 0, 0.5)
    with pytest.raises(ValueError):
        beam_splitter(st, 0, 1, 1.2)
    with pytest.raises(ValueError):
        beam_splitter(st, 0, 3, 0.5)


def test_pure_loss_eta_one_unchanged():
    st = squeeze_single(vacuum(1), 0, R_5DB, 0.0)
    out = pure_loss(st, 0, 1.0)
    assert out.n_modes == 1
    assert np.allclose(out.cov, st.cov)


def test_pure_loss_mixes_in_vacuum():
    st = squeeze_single(vacuum(1), 0, R_5DB, 0.0)
    out = pure_loss(st, 0, 0.5, independent_vacuum())
    assert out.cov[0, 0] == pytest.approx(0.658113883008419, rel=1e-12)
    assert out.n_modes == 2  # ancilla retained


def test_pure_loss_variance_rule_any_policy():
    st = squeeze_single(vacuum(1), 0, 0.7, 0.0)
    for policy in (independent_vacuum(), shared_vacuum("t")):
        out = pure_loss(st, 0, 0.3, policy)
        assert out.cov[0, 0] == pytest.approx(
            0.3 * np.exp(-1.4) + 0.7, rel=1e-12
        )


def test_shared_policy_reproduces_summed_variance_closed_form():
    # the key cross-check: summed-X variance after shared-port losses
    r, eta1, eta2 = R_5DB, 0.7, 0.4
    st = tmsv(r)
    policy = shared_vacuum("link")
    st = pure_loss(st, 0, eta1, policy)
    st = pure_loss(st, 1, eta2, policy)
    q = (
        (eta1 + eta2) * np.sinh(r) ** 2
        + 1.0
        + np.sqrt((1 - eta1) * (1 - eta2))
        - np.sqrt(eta1 * eta2) * np.sinh(2 * r)
    )
    assert homodyne_variance(st, SUM_X) == pytest.approx(2 * q, rel=1e-12)
    assert st.n_modes == 3  # one common ancilla for both channels


def test_independent_policy_drops_cross_term():
    r, eta1, eta2 = R_5DB, 0.7, 0.4
    st = tmsv(r)
    st = pure_loss(st, 0, eta1, independent_vacuum())
    st = pure_loss(st, 1, eta2, independent_vacuum())
    q_indep = (
        (eta1 + eta2) * np.sinh(r) ** 2 + 1.0 - np.sqrt(eta1 * eta2) * np.sinh(2 * r)
    )
    assert homodyne_variance(st, SUM_X) == pytest.approx(2 * q_indep, rel=1e-12)
    assert st.n_modes == 4  # two separate ancillas


@pytest.mark.parametrize("r_db", [0.0, 3.0, 5.0, 15.0])
@pytest.mark.parametrize("eta1", [0.1, 0.5, 0.9, 1.0])
@pytest.mark.parametrize("eta2", [0.3, 0.7, 1.0])
def test_oracle_formula_equivalence_grid(r_db, eta1, eta2):
    r = r_db * np.log(10.0) / 20.0
    st = tmsv(r)
    policy = shared_vacuum("link")
    st = pure_loss(st, 0, eta1, policy)
    st = pure_loss(st, 1, eta2, policy)
    q = (
        (eta1 + eta2) * np.sinh(r) ** 2
        + 1.0
        + np.sqrt((1 - eta1) * (1 - eta2))
        - np.sqrt(eta1 * eta2) * np.sinh(2 * r)
    )
    assert homodyne_variance(st, SUM_X) == pytest.approx(2 * q, rel=1e-9)


def test_lossless_chain_reproduces_ideal_variance():
    st = tmsv(R_5DB)
    policy = shared_vacuum("link")
    st = pure_loss(st, 0, 1.0, policy)
    st = pure_loss(st, 1, 1.0, policy)
    assert homodyne_variance(st, SUM_X) == pytest.approx(
        2 * np.exp(-2 * R_5DB), rel=1e-12
    )


def test_homodyne_vacuum_sum():
    assert homodyne_variance(vacuum(2), SUM_X) == pytest.approx(2.0)


def test_homodyne_orthogonal_phase_antisqueezed():
    st = tmsv(R_5DB)
    assert homodyne_variance(st, HomodynePattern([1.0, 1.0], np.pi / 2.0)) == (
        pytest.approx(2 * np.exp(2 * R_5DB), rel=1e-12)
    )


def test_homodyne_pattern_validation():
    with pytest.raises(ValueError):
        HomodynePattern([0.0, 0.0], 0.0)
    with pytest.raises(ValueError):
        homodyne_variance(vacuum(1), HomodynePattern([1.0, 1.0], 0.0))


def test_state_validation_rejects_asymmetric_cov():
    cov = np.eye(2)
    cov[0, 1] = 0.5
    with pytest.raises(ValueError):
        GaussianState(1, np.zeros(2), cov)


def test_physicality_under_random_unitaries_and_independent_loss():
    rng = np.random.default_rng(42)
    for _ in range(25):
        st = vacuum(2)
        for _ in range(rng.integers(1, 6)):
            op = rng.integers(0, 3)
            if op == 0:
                st = squeeze_single(
                    st, int(rng.integers(0, st.n_modes)), rng.uniform(0, 1.5),
                    rng.uniform(0, np.pi),
                )
            elif op == 1 and st.n_modes >= 2:
                m1, m2 = rng.choice(st.n_modes, size=2, replace=False)
                st = beam_splitter(st, int(m1), int(m2), rng.uniform(0, 1))
            else:
                st = pure_loss(
                    st, int(rng.integers(0, st.n_modes)), rng.uniform(0, 1),
                    independent_vacuum(),
                )
        assert min_physicality_eigenvalue(st) >= -1e-9


def test_shared_policy_is_not_a_physical_map():
    # both channels reading one vacuum port is exactly the idealization the
    # closed forms assume; the resulting joint state can violate cov + i*Omega >= 0
    st = tmsv(0.0)
    policy = shared_vacuum("link")
    st = pure_loss(st, 0, 0.5, policy)
    st = pure_loss(st, 1, 0.5, policy)
    assert min_physicality_eigenvalue(st) < -1e-6


def test_shared_tag_isolated_per_tag():
    st = tmsv(R_5DB)
    st = pure_loss(st, 0, 0.5, shared_vacuum("a"))
    st = pure_loss(st, 1, 0.5, shared_vacuum("b"))
    # distinct tags behave like independent ports
    q_indep = 2 * (2 * 0.5 * np.sinh(R_5DB) ** 2 + 1.0 - 0.5 * np.sinh(2 * R_5DB))
    assert homodyne_variance(st, SUM_X) == pytest.approx(q_indep, rel=1e-12)
    assert st.n_modes == 4
