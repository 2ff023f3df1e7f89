"""Small dense complex linear algebra with an explicit tolerance policy.

Everything operates on plain numpy complex arrays of dimension 2, 3 or 6.
Inputs are never mutated; every operation returns a fresh array, so values can
be shared freely between threads and replayed deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, FormatError

TAU = 2.0 * np.pi

# Cube roots of unity come from the exact angle constants 2pi/3 and 4pi/3
# rather than chained multiplications, so repeated use accumulates no drift.
OMEGA = np.exp(1j * TAU / 3.0)
OMEGA2 = np.exp(2j * TAU / 3.0)


@dataclass(frozen=True)
class Tolerance:
    """Comparison thresholds shared across the package.

    eq_tol bounds entrywise absolute deviations, mu_tol bounds deviations of
    squared overlaps from 1/d, and ortho_tol is the largest |<u|v>| still
    treated as zero when building orthogonality graphs.
    """

    eq_tol: float = 1e-10
    mu_tol: float = 1e-9
    ortho_tol: float = 1e-7

    def __post_init__(self) -> None:
        for name in ("eq_tol", "mu_tol", "ortho_tol"):
            value = float(getattr(self, name))
            if not (value > 0.0 and np.isfinite(value)):
                raise ValueError(f"{name} must be strictly positive and finite")


DEFAULT_TOL = Tolerance()


def _freeze(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


def as_vector(v, dim: int | None = None) -> np.ndarray:
    """Coerce to a 1-D complex128 array, rejecting non-finite entries."""
    a = np.asarray(v, dtype=np.complex128)
    if a.ndim != 1:
        raise DimensionError(f"expected a 1-D vector, got shape {a.shape}")
    if dim is not None and a.shape[0] != dim:
        raise DimensionError(f"expected a vector of dimension {dim}, got {a.shape[0]}")
    if not np.all(np.isfinite(a)):
        raise FormatError("vector contains non-finite entries")
    return a


def as_matrix(m) -> np.ndarray:
    """Coerce to a 2-D complex128 array, rejecting non-finite entries."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise FormatError("matrix contains non-finite entries")
    return a


def tensor_product(u, v) -> np.ndarray:
    """Tensor product of a C^2/C^3 vector with a C^2/C^3 vector.

    Component i*n + j of the result equals u[i] * v[j].
    """
    a = as_vector(u)
    b = as_vector(v)
    if a.shape[0] not in (2, 3) or b.shape[0] not in (2, 3):
        raise DimensionError(
            f"tensor factors must have dimension 2 or 3, got {a.shape[0]} and {b.shape[0]}"
        )
    return np.kron(a, b)


def overlap(u, v) -> complex:
    """Inner product <u|v>, antilinear in the first argument."""
    a = as_vector(u)
    b = as_vector(v)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return complex(np.vdot(a, b))


def overlap_sq(u, v) -> float:
    """Squared overlap |<u|v>|^2."""
    return abs(overlap(u, v)) ** 2


def adjoint(m) -> np.ndarray:
    return as_matrix(m).conj().T.copy()


def transpose(m) -> np.ndarray:
    return as_matrix(m).T.copy()


def conjugate(m) -> np.ndarray:
    return as_matrix(m).conj().copy()


def is_unitary(m, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff max entry of |M^dagger M - I| is at most eq_tol."""
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"unitarity is defined for square matrices, got {a.shape}")
    gram = a.conj().T @ a
    dev = np.abs(gram - np.eye(a.shape[0]))
    return float(dev.max()) <= tol.eq_tol


def _format_entry(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


def format_matrix(m) -> str:
    """Render a matrix in the shared text format.

    First line is "n_rows n_cols"; each following line holds one row with
    entries written as re{sign}imj (e.g. "0.5-0.28867513459481287j"),
    separated by single spaces. 17 significant digits guarantee an exact
    double round trip.
    """
    a = as_matrix(m)
    lines = [f"{a.shape[0]} {a.shape[1]}"]
    for row in a:
        lines.append(" ".join(_format_entry(z) for z in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    """Parse the text format produced by format_matrix."""
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty matrix text")
    header = lines[0].split()
    if len(header) != 2:
        raise FormatError(f"bad matrix header {lines[0]!r}, expected 'n_rows n_cols'")
    try:
        nrows, ncols = int(header[0]), int(header[1])
    except ValueError as exc:
        raise FormatError(f"bad matrix header {lines[0]!r}") from exc
    if nrows <= 0 or ncols <= 0:
        raise FormatError("matrix dimensions must be positive")
    if len(lines) - 1 != nrows:
        raise FormatError(f"expected {nrows} rows, got {len(lines) - 1}")
    out = np.empty((nrows, ncols), dtype=np.complex128)
    for i, line in enumerate(lines[1:]):
        tokens = line.split()
        if len(tokens) != ncols:
            raise FormatError(f"row {i} has {len(tokens)} entries, expected {ncols}")
        for j, token in enumerate(tokens):
            try:
                out[i, j] = complex(token)
            except ValueError as exc:
                raise FormatError(f"bad matrix entry {token!r} at ({i}, {j})") from exc
    if not np.all(np.isfinite(out)):
        raise FormatError("matrix contains non-finite entries")
    return out
