"""Clock/shift eigenbases in dimensions 2 and 3, product bases of C^2 x C^3,
and the orthonormality / mutual-unbiasedness predicates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import DimensionError, NotABasisError, NotMUPairError
from .linalg import (
    DEFAULT_TOL,
    OMEGA,
    OMEGA2,
    TAU,
    Tolerance,
    _freeze,
    as_matrix,
    as_vector,
    tensor_product,
)

if TYPE_CHECKING:
    from .families import FamilyParams


def clock_matrix(dim: int) -> np.ndarray:
    """Clock operator Z = diag(1, w, w^2, ...) with w = exp(2 pi i / dim)."""
    if dim not in (2, 3):
        raise DimensionError(f"clock operator supported for dim 2 or 3, got {dim}")
    return np.diag(np.exp(1j * TAU * np.arange(dim) / dim))


def shift_matrix(dim: int) -> np.ndarray:
    """Cyclic shift X with X|j> = |j+1 mod dim|; satisfies Z X = w X Z."""
    if dim not in (2, 3):
        raise DimensionError(f"shift operator supported for dim 2 or 3, got {dim}")
    return np.roll(np.eye(dim, dtype=np.complex128), 1, axis=0)


# Eigenbasis matrices, columns = basis vectors. Column order and phases are
# pinned so that downstream reduction scripts reproduce fixed row/column
# indices; tests rely on these exact entries.
_F3 = np.array(
    [[1, 1, 1], [1, OMEGA, OMEGA2], [1, OMEGA2, OMEGA]], dtype=np.complex128
) / np.sqrt(3.0)
_HY = np.array(
    [[1, 1, 1], [OMEGA, OMEGA2, 1], [OMEGA, 1, OMEGA2]], dtype=np.complex128
) / np.sqrt(3.0)
_HW = np.array(
    [[1, 1, 1], [OMEGA2, 1, OMEGA], [OMEGA2, OMEGA, 1]], dtype=np.complex128
) / np.sqrt(3.0)
_H2 = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2.0)
# Convention for the qubit y basis: columns (1, i)/sqrt2 and (1, -i)/sqrt2,
# the eigenvectors of X Z.
_Y2 = np.array([[1, 1], [1j, -1j]], dtype=np.complex128) / np.sqrt(2.0)

_EIGENBASES = {
    (2, "z"): np.eye(2, dtype=np.complex128),
    (2, "x"): _H2,
    (2, "y"): _Y2,
    (3, "z"): np.eye(3, dtype=np.complex128),
    (3, "x"): _F3,
    (3, "y"): _HY,
    (3, "w"): _HW,
}


@dataclass(frozen=True)
class ProductLabel:
    """Provenance of one product vector: its C^2 and C^3 tensor factors.

    The stored factors are exact states; tensor_product(factor2, factor3)
    reproduces the labelled basis column. The name is informational.
    """

    factor2: np.ndarray
    factor3: np.ndarray
    name: str = ""

    def __post_init__(self) -> None:
        f2 = as_vector(self.factor2, dim=2)
        f3 = as_vector(self.factor3, dim=3)
        for f in (f2, f3):
            if abs(np.linalg.norm(f) - 1.0) > DEFAULT_TOL.eq_tol:
                raise NotABasisError(f"label factor is not a unit vector in {self.name!r}")
        object.__setattr__(self, "factor2", _freeze(f2))
        object.__setattr__(self, "factor3", _freeze(f3))

    def vector(self) -> np.ndarray:
        return tensor_product(self.factor2, self.factor3)


@dataclass(frozen=True)
class Basis:
    """Ordered orthonormal basis, stored as the unitary matrix of columns."""

    matrix: np.ndarray
    labels: tuple[ProductLabel, ...] | None = None

    def __post_init__(self) -> None:
        m = as_matrix(self.matrix)
        if m.shape[0] != m.shape[1]:
            raise NotABasisError(f"basis matrix must be square, got {m.shape}")
        gram_dev = np.abs(m.conj().T @ m - np.eye(m.shape[0]))
        if float(gram_dev.max()) > DEFAULT_TOL.eq_tol:
            i, j = np.unravel_index(int(gram_dev.argmax()), gram_dev.shape)
            raise NotABasisError(
                f"columns are not orthonormal: Gram deviation {gram_dev[i, j]:.3e} "
                f"at vector pair ({i}, {j})"
            )
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != m.shape[0]:
                raise NotABasisError(
                    f"{len(labels)} labels for a basis of dimension {m.shape[0]}"
                )
            for k, label in enumerate(labels):
                if np.abs(label.vector() - m[:, k]).max() > DEFAULT_TOL.eq_tol:
                    raise NotABasisError(
                        f"label {label.name!r} does not reproduce basis vector {k}"
                    )
            object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "matrix", _freeze(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def vector(self, k: int) -> np.ndarray:
        return self.matrix[:, k].copy()

    def vectors(self) -> tuple[np.ndarray, ...]:
        return tuple(self.matrix[:, k].copy() for k in range(self.dim))


@dataclass(frozen=True)
class MUCheck:
    """Result of a mutual-unbiasedness check with its worst offender."""

    ok: bool
    worst_deviation: float
    worst_index: tuple[int, int]

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class MUPair:
    """Two mutually unbiased bases of equal dimension, with optional family
    provenance. Construction validates the MU condition at default tolerance."""

    first: Basis
    second: Basis
    family: str | None = None
    params: "FamilyParams | None" = None

    def __post_init__(self) -> None:
        if self.first.dim != self.second.dim:
            raise DimensionError(
                f"pair members have different dimensions: {self.first.dim} vs {self.second.dim}"
            )
        check = is_mu_pair(self.first, self.second, DEFAULT_TOL)
        if not check.ok:
            raise NotMUPairError(
                f"bases are not mutually unbiased: worst |<a|b>|^2 deviation "
                f"{check.worst_deviation:.3e} at index {check.worst_index}"
            )

    @property
    def dim(self) -> int:
        return self.first.dim

    def basis_vectors(self) -> np.ndarray:
        """All 2d basis vectors as columns: first member's, then second's."""
        return np.hstack([self.first.matrix, self.second.matrix])


@dataclass(frozen=True)
class PhaseWitness:
    """Witness that A equals B up to column order and column phases:
    A[:, k] = exp(1j * phases[k]) * B[:, permutation[k]] for every k."""

    permutation: tuple[int, ...]
    phases: tuple[float, ...]


def _coerce(basis_or_matrix) -> np.ndarray:
    if isinstance(basis_or_matrix, Basis):
        return basis_or_matrix.matrix
    return as_matrix(basis_or_matrix)


def hw_eigenbasis(dim: int, label: str) -> Basis:
    """Eigenbasis of the clock/shift operators Z, X, XZ (and X^2 Z for dim 3).

    Valid labels are z, x, y for dim 2 and z, x, y, w for dim 3. Column order
    and phases are fixed once and for all; see the module tests for the
    eigenvector contracts.
    """
    key = (dim, label)
    if key not in _EIGENBASES:
        raise DimensionError(f"no eigenbasis for dim {dim} with label {label!r}")
    return Basis(_EIGENBASES[key])


def product_basis(labels) -> Basis:
    """Assemble a dim-6 basis from product labels, one column per label."""
    labels = tuple(labels)
    if len(labels) != 6:
        raise NotABasisError(f"a product basis needs 6 labels, got {len(labels)}")
    columns = [label.vector() for label in labels]
    m = np.column_stack(columns)
    gram = m.conj().T @ m
    off = np.abs(gram - np.eye(6))
    if float(off.max()) > DEFAULT_TOL.eq_tol:
        i, j = np.unravel_index(int(off.argmax()), off.shape)
        raise NotABasisError(
            f"tensor products {labels[i].name!r} and {labels[j].name!r} are not "
            f"orthogonal: |<i|j>| = {abs(gram[i, j]):.3e}"
        )
    return Basis(m, labels=labels)


def is_orthonormal(basis_or_matrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff the Gram matrix is within eq_tol of the identity."""
    m = _coerce(basis_or_matrix)
    if m.shape[0] != m.shape[1]:
        return False
    dev = np.abs(m.conj().T @ m - np.eye(m.shape[0]))
    return float(dev.max()) <= tol.eq_tol


def is_mu_pair(first, second, tol: Tolerance = DEFAULT_TOL) -> MUCheck:
    """Check |<a_i|b_j>|^2 = 1/d for all cross overlaps.

    Returns the verdict together with the worst deviation and the index pair
    (i, j) where it occurs.
    """
    a = _coerce(first)
    b = _coerce(second)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    d = a.shape[0]
    cross = np.abs(a.conj().T @ b) ** 2
    dev = np.abs(cross - 1.0 / d)
    flat = int(dev.argmax())
    i, j = np.unravel_index(flat, dev.shape)
    worst = float(dev[i, j])
    return MUCheck(worst <= tol.mu_tol, worst, (int(i), int(j)))


def same_basis_up_to_phase(first, second, tol: Tolerance = DEFAULT_TOL) -> PhaseWitness | None:
    """Find a column permutation and per-column phases identifying two bases.

    Returns a PhaseWitness with A[:, k] = exp(1j phases[k]) B[:, perm[k]]
    within eq_tol, or None if no such identification exists. The search is
    deterministic: candidate matches are tried in increasing column order.
    """
    a = _coerce(first)
    b = _coerce(second)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        return None
    d = a.shape[0]

    candidates: list[list[tuple[int, float]]] = []
    for k in range(d):
        row: list[tuple[int, float]] = []
        for j in range(d):
            ip = np.vdot(b[:, j], a[:, k])
            if abs(ip) < 1e-12:
                continue
            phase = ip / abs(ip)
            if np.abs(a[:, k] - phase * b[:, j]).max() <= tol.eq_tol:
                row.append((j, float(np.angle(phase))))
        if not row:
            return None
        candidates.append(row)

    perm = [-1] * d
    phases = [0.0] * d
    used = [False] * d

    def assign(k: int) -> bool:
        if k == d:
            return True
        for j, theta in candidates[k]:
            if used[j]:
                continue
            used[j] = True
            perm[k] = j
            phases[k] = theta
            if assign(k + 1):
                return True
            used[j] = False
        return False

    if not assign(0):
        return None
    return PhaseWitness(tuple(perm), tuple(phases))
