import numpy as np
import pytest

from mub6 import (
    DEFAULT_TOL,
    FamilyParams,
    ParameterRangeError,
    clock_matrix,
    hw_eigenbasis,
    is_mu_pair,
    is_unitary,
    make_family_pair,
    make_Ftilde,
    make_Itilde,
    make_R,
    make_r,
    make_S,
    product_basis,
    same_basis_up_to_phase,
    state_label_form,
    validate_family_params,
)

RNG = np.random.default_rng(42)


def sample_params(family, rng):
    if family == "P1":
        while True:
            xi, eta = rng.uniform(0, 2 * np.pi, 2)
            if (xi, eta) != (0.0, 0.0):
                return FamilyParams(xi=xi, eta=eta)
    if family == "P3":
        zeta, chi = rng.uniform(0, 2 * np.pi, 2)
        sigma, tau = rng.uniform(1e-6, np.pi - 1e-6, 2)
        return FamilyParams(zeta=zeta, chi=chi, sigma=sigma, tau=tau)
    return None


def test_make_R():
    assert np.array_equal(make_R(0.0, 0.0), np.eye(3))
    assert np.abs(make_R(np.pi, 0.0) - np.diag([1, -1, 1])).max() < 1e-15
    r = make_R(1.3, 5.0)
    assert is_unitary(r)
    z = clock_matrix(3)
    assert np.abs(r @ z - z @ r).max() < 1e-15  # diagonal, commutes with the clock


def test_make_S_identity_and_diagonality():
    assert np.abs(make_S(0.0, 0.0) - np.eye(3)).max() < 1e-15
    f3 = hw_eigenbasis(3, "x").matrix
    rng = np.random.default_rng(1)
    for _ in range(25):
        zeta, chi = rng.uniform(0, 2 * np.pi, 2)
        s = make_S(zeta, chi)
        assert is_unitary(s)
        diag = f3.conj().T @ s @ f3
        expected = np.diag([1.0, np.exp(1j * zeta), np.exp(1j * chi)])
        assert np.abs(diag - expected).max() <= DEFAULT_TOL.eq_tol


def test_make_S_circulant_coefficient_relations():
    rng = np.random.default_rng(2)
    for _ in range(25):
        zeta, chi = rng.uniform(0, 2 * np.pi, 2)
        s = make_S(zeta, chi)
        a, b, c = s[0, 0], s[0, 1], s[0, 2]
        # Circulant structure.
        assert np.abs(s - np.array([[a, b, c], [c, a, b], [b, c, a]])).max() < 1e-15
        # Unitarity of a circulant in terms of its coefficients.
        assert abs(abs(a) ** 2 + abs(b) ** 2 + abs(c) ** 2 - 1.0) <= DEFAULT_TOL.eq_tol
        assert abs(a * b.conjugate() + b * c.conjugate() + c * a.conjugate()) <= DEFAULT_TOL.eq_tol


def test_make_S_at_p2_point_matches_phased_y_basis():
    s = make_S(4 * np.pi / 3, 4 * np.pi / 3)
    hy = hw_eigenbasis(3, "y").matrix
    assert same_basis_up_to_phase(s, -1j * hy) is not None


def test_make_r():
    r = make_r(np.pi / 2)
    x0 = hw_eigenbasis(2, "x").matrix[:, 0]
    image = r @ x0
    assert np.abs(image - np.array([1, 1j]) / np.sqrt(2)).max() < 1e-15
    rng = np.random.default_rng(3)
    for _ in range(10):
        sigma = rng.uniform(1e-3, np.pi - 1e-3)
        r = make_r(sigma)
        cols = r @ hw_eigenbasis(2, "x").matrix
        assert np.abs(np.abs(cols) - 1 / np.sqrt(2)).max() <= DEFAULT_TOL.eq_tol
        assert is_unitary(cols)
        assert is_mu_pair(np.eye(2), cols).ok
    with pytest.raises(ParameterRangeError):
        make_r(0.0)
    with pytest.raises(ParameterRangeError):
        make_r(np.pi)
    with pytest.raises(ParameterRangeError):
        make_r(1.0, sign=2)


def test_make_Ftilde_structure():
    ft = make_Ftilde(0.0, 0.0)
    inv_sqrt6 = 1 / np.sqrt(6)
    assert abs(ft[0, 0] - inv_sqrt6) < 1e-15
    assert np.abs(np.abs(ft) - inv_sqrt6).max() < 1e-15
    f3 = hw_eigenbasis(3, "x").matrix
    s2 = np.sqrt(2.0)
    assert np.abs(ft[3:, :3] - f3 / s2).max() < 1e-15   # lower-left block +F3
    assert np.abs(ft[3:, 3:] + f3 / s2).max() < 1e-15   # lower-right block -F3
    rng = np.random.default_rng(4)
    for _ in range(25):
        xi, eta = rng.uniform(0, 2 * np.pi, 2)
        m = make_Ftilde(xi, eta)
        assert np.abs(np.abs(m) - inv_sqrt6).max() <= DEFAULT_TOL.eq_tol  # Hadamard
        assert is_mu_pair(np.eye(6), m).ok


def test_make_Itilde():
    assert np.abs(make_Itilde(0.0, 0.0) - np.eye(6)).max() < 1e-15
    rng = np.random.default_rng(5)
    for _ in range(10):
        zeta, chi = rng.uniform(0, 2 * np.pi, 2)
        m = make_Itilde(zeta, chi)
        assert is_unitary(m)
        assert np.array_equal(m[:3, :3], np.eye(3))
        assert np.abs(m[:3, 3:]).max() == 0.0
        assert np.abs(m[3:, :3]).max() == 0.0
    angle = 4 * np.pi / 3
    p2_first = make_family_pair("P2").first
    assert same_basis_up_to_phase(make_Itilde(angle, angle), p2_first) is not None


def test_param_validation():
    with pytest.raises(ParameterRangeError):
        validate_family_params("P1", FamilyParams(xi=0.0, eta=0.0))
    with pytest.raises(ParameterRangeError):
        validate_family_params("P1", FamilyParams(xi=1.0))
    with pytest.raises(ParameterRangeError):
        validate_family_params("P1", FamilyParams(xi=7.0, eta=1.0))
    with pytest.raises(ParameterRangeError):
        validate_family_params("P0", FamilyParams(xi=1.0, eta=1.0))
    with pytest.raises(ParameterRangeError):
        validate_family_params("P3", FamilyParams(zeta=0.1, chi=0.2, sigma=0.0, tau=1.0))
    with pytest.raises(ParameterRangeError):
        validate_family_params("P3", FamilyParams(zeta=0.1, chi=0.2, sigma=np.pi, tau=1.0))
    with pytest.raises(ParameterRangeError):
        validate_family_params("P9", None)
    validate_family_params("P2", None)
    validate_family_params("P3", FamilyParams(zeta=0.0, chi=0.0, sigma=0.5, tau=0.5))


def test_family_pairs_are_mu():
    rng = np.random.default_rng(6)
    for family in ("P0", "P1", "P2", "P3"):
        for _ in range(20):
            pair = make_family_pair(family, sample_params(family, rng))
            check = is_mu_pair(pair.first, pair.second)
            assert check.ok, f"{family}: worst deviation {check.worst_deviation}"
            assert pair.family == family


def test_family_pair_examples():
    p0 = make_family_pair("P0")
    assert np.array_equal(p0.first.matrix, np.eye(6))
    assert np.abs(p0.second.matrix - make_Ftilde(0.0, 0.0)).max() < 1e-15

    with pytest.raises(ParameterRangeError):
        make_family_pair("P1", FamilyParams(xi=0.0, eta=0.0))

    p3 = make_family_pair("P3", FamilyParams(zeta=0.0, chi=0.0, sigma=np.pi / 2, tau=np.pi / 2))
    assert np.abs(p3.first.matrix - np.eye(6)).max() < 1e-15
    assert np.abs(p3.second.matrix - make_Ftilde(np.pi / 2, np.pi / 2)).max() < 1e-15


def test_p1_second_member_is_transposed_ftilde():
    rng = np.random.default_rng(7)
    for _ in range(5):
        params = sample_params("P1", rng)
        pair = make_family_pair("P1", params)
        assert np.array_equal(
            pair.second.matrix, make_Ftilde(params.xi, params.eta).T
        )


def test_p2_second_member_blocks():
    pair = make_family_pair("P2")
    f3 = hw_eigenbasis(3, "x").matrix
    hw = hw_eigenbasis(3, "w").matrix
    s2 = np.sqrt(2.0)
    m = pair.second.matrix
    assert np.abs(m[:3, :3] - f3 / s2).max() < 1e-14
    assert np.abs(m[:3, 3:] - hw / s2).max() < 1e-14
    assert np.abs(m[3:, :3] - f3 / s2).max() < 1e-14
    assert np.abs(m[3:, 3:] + hw / s2).max() < 1e-14


def test_state_label_form_agrees_with_matrix_form():
    rng = np.random.default_rng(8)
    for family in ("P0", "P1", "P2", "P3"):
        for _ in range(5):
            params = sample_params(family, rng)
            pair = make_family_pair(family, params)
            first_labels, second_labels = state_label_form(family, params)
            assert same_basis_up_to_phase(product_basis(first_labels), pair.first) is not None
            assert same_basis_up_to_phase(product_basis(second_labels), pair.second) is not None


def test_state_label_names():
    first, second = state_label_form("P0")
    assert [l.name for l in first[:3]] == ["|0_z,0_z>", "|0_z,1_z>", "|0_z,2_z>"]
    assert all("_x>" in l.name for l in second)
    _, second_p2 = state_label_form("P2")
    assert [l.name for l in second_p2[3:]] == ["|1_x,0_w>", "|1_x,1_w>", "|1_x,2_w>"]
    hw = hw_eigenbasis(3, "w").matrix
    for J, label in enumerate(second_p2[3:]):
        assert np.abs(label.factor3 - hw[:, J]).max() < 1e-15


def test_pair_labels_reproduce_columns():
    rng = np.random.default_rng(9)
    for family in ("P0", "P1", "P2", "P3"):
        pair = make_family_pair(family, sample_params(family, rng))
        for member in (pair.first, pair.second):
            assert member.labels is not None
            for k, label in enumerate(member.labels):
                assert np.abs(label.vector() - member.matrix[:, k]).max() <= DEFAULT_TOL.eq_tol
