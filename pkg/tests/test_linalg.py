import numpy as np
import pytest

from mub6 import (
    DEFAULT_TOL,
    OMEGA,
    DimensionError,
    Tolerance,
    adjoint,
    conjugate,
    format_matrix,
    hw_eigenbasis,
    is_unitary,
    make_Ftilde,
    overlap_sq,
    parse_matrix,
    tensor_product,
    transpose,
)

RNG = np.random.default_rng(7)


def random_unit(dim, rng=RNG):
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def test_tolerance_defaults():
    assert DEFAULT_TOL.eq_tol == 1e-10
    assert DEFAULT_TOL.mu_tol == 1e-9
    assert DEFAULT_TOL.ortho_tol == 1e-7


@pytest.mark.parametrize("field", ["eq_tol", "mu_tol", "ortho_tol"])
def test_tolerance_rejects_nonpositive(field):
    with pytest.raises(ValueError):
        Tolerance(**{field: 0.0})
    with pytest.raises(ValueError):
        Tolerance(**{field: -1e-9})


def test_tensor_product_standard_cases():
    assert np.allclose(
        tensor_product([1, 0], [1, 0, 0]), [1, 0, 0, 0, 0, 0]
    )
    s = 1 / np.sqrt(2)
    assert np.allclose(
        tensor_product([s, s], [1, 0, 0]), [s, 0, 0, s, 0, 0]
    )
    assert np.allclose(
        tensor_product([0, 1], [0, 0, 1]), [0, 0, 0, 0, 0, 1]
    )


def test_tensor_product_rejects_bad_dims():
    with pytest.raises(DimensionError):
        tensor_product([1, 0, 0, 0], [1, 0])
    with pytest.raises(DimensionError):
        tensor_product([1], [1, 0])


def test_tensor_product_preserves_inner_products():
    for _ in range(50):
        u, u2 = random_unit(2), random_unit(2)
        v, v2 = random_unit(3), random_unit(3)
        lhs = np.vdot(tensor_product(u, v), tensor_product(u2, v2))
        rhs = np.vdot(u, u2) * np.vdot(v, v2)
        assert abs(lhs - rhs) <= DEFAULT_TOL.eq_tol


def test_overlap_sq_examples():
    v = random_unit(6)
    assert abs(overlap_sq(v, v) - 1.0) <= DEFAULT_TOL.eq_tol
    assert overlap_sq([1, 0], [0, 1]) == 0.0
    f3 = hw_eigenbasis(3, "x").matrix
    assert abs(overlap_sq([1, 0, 0], f3[:, 0]) - 1 / 3) <= DEFAULT_TOL.eq_tol


def test_overlap_sq_range():
    for _ in range(50):
        u, v = random_unit(6), random_unit(6)
        val = overlap_sq(u, v)
        assert -DEFAULT_TOL.eq_tol <= val <= 1.0 + DEFAULT_TOL.eq_tol


def test_overlap_dimension_mismatch():
    with pytest.raises(DimensionError):
        overlap_sq([1, 0], [1, 0, 0])


def test_is_unitary():
    assert is_unitary(np.eye(4))
    f3 = hw_eigenbasis(3, "x").matrix
    assert is_unitary(f3)
    broken = f3.copy()
    broken[0, 0] = 0.0
    assert not is_unitary(broken)
    with pytest.raises(DimensionError):
        is_unitary(np.ones((2, 3)))


def test_is_unitary_invariant_under_moves():
    rng = np.random.default_rng(11)
    m = make_Ftilde(1.2, 4.0)
    for _ in range(20):
        perm = rng.permutation(6)
        phases = np.exp(1j * rng.uniform(0, 2 * np.pi, 6))
        assert is_unitary(np.diag(phases) @ m[perm, :])
        assert is_unitary(m[:, perm] @ np.diag(phases))


def test_adjoint_transpose_conjugate():
    assert np.array_equal(adjoint(np.eye(3)), np.eye(3))
    f3 = hw_eigenbasis(3, "x").matrix
    assert np.array_equal(transpose(f3), f3)  # symmetric
    m = np.array([[1 + 2j, 3], [0, -1j]])
    assert np.array_equal(adjoint(adjoint(m)), m)
    assert np.array_equal(transpose(conjugate(m)), adjoint(m))
    ft = make_Ftilde(0.0, 0.0)
    assert np.abs(adjoint(ft) @ ft - np.eye(6)).max() <= DEFAULT_TOL.eq_tol


def test_matrix_text_round_trip():
    rng = np.random.default_rng(3)
    for shape in [(3, 3), (6, 6), (2, 5)]:
        m = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        back = parse_matrix(format_matrix(m))
        assert np.array_equal(back, m)  # 17 significant digits round-trip exactly


def test_matrix_text_format_shape():
    text = format_matrix(np.eye(2))
    lines = text.strip().splitlines()
    assert lines[0] == "2 2"
    assert lines[1].split() == ["1+0j", "0+0j"]


def test_parse_matrix_errors():
    from mub6 import FormatError

    with pytest.raises(FormatError):
        parse_matrix("")
    with pytest.raises(FormatError):
        parse_matrix("2 2\n1+0j 0+0j\n")
    with pytest.raises(FormatError):
        parse_matrix("1 1\nnot-a-number\n")


def test_omega_is_exact_cube_root():
    assert abs(OMEGA**3 - 1.0) < 1e-15
    assert abs(1 + OMEGA + OMEGA**2) < 1e-15
