"""Numerical search for unit vectors mutually unbiased to both members of a
pair, clustering up to global phase, orthogonality graphs, and clique search
for extension bases."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bases import Basis, MUPair
from .errors import DimensionError
from .linalg import DEFAULT_TOL, Tolerance, as_vector

# Descent leaves off and Gauss-Newton polishing takes over below this
# objective value; polishing is only attempted below _POLISH_CUT.
_SWITCH = 1e-13
_POLISH_CUT = 1e-10
_STEP_FLOOR = 1e-17


@dataclass(frozen=True)
class SearchConfig:
    """Restart budget, seeding and acceptance thresholds for the search.

    Restart k draws its start vector from a substream keyed by
    (master_seed, k), so results do not depend on how restarts are batched
    or scheduled.
    """

    restarts: int = 20000
    master_seed: int = 0
    max_iters: int = 2000
    residual_tol: float = 1e-20
    cluster_tol: float = 1e-6

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if not (self.residual_tol > 0.0 and self.cluster_tol > 0.0):
            raise ValueError("tolerances must be strictly positive")


@dataclass(frozen=True)
class MUVectorSet:
    """Deduplicated unit vectors MU to both members of a pair.

    Vectors are gauge-fixed representatives (largest-modulus component real
    positive), each with the best residual seen in its cluster and the number
    of restarts that converged into the cluster.
    """

    pair: MUPair
    vectors: tuple[np.ndarray, ...]
    residuals: tuple[float, ...]
    hits: tuple[int, ...]
    manifold_warning: bool = False

    def __len__(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class OrthoGraph:
    """Orthogonality graph on MU vectors: an edge where |<u|v>| <= ortho_tol."""

    num_vectors: int
    edges: tuple[tuple[int, int], ...]
    min_abs_overlap: float | None
    max_abs_overlap: float | None


@dataclass(frozen=True)
class ExtensionResult:
    """Outcome of an extension-basis search over the orthogonality graph."""

    basis: Basis | None
    max_clique_size: int
    vectors: MUVectorSet
    graph: OrthoGraph


def mu_residual(v, pair: MUPair) -> float:
    """Sum over all 2d basis vectors b of (|<v|b>|^2 - 1/d)^2.

    Zero exactly when v is mutually unbiased to both members.
    """
    vec = as_vector(v)
    if vec.shape[0] != pair.dim:
        raise DimensionError(f"vector has dimension {vec.shape[0]}, pair has {pair.dim}")
    basis = pair.basis_vectors()
    target = 1.0 / pair.dim
    devs = np.abs(basis.conj().T @ vec) ** 2 - target
    return float(np.sum(devs * devs))


def _mu_residual_reversed(vec: np.ndarray, basis: np.ndarray, target: float) -> float:
    """Independent accumulation of the residual: per-term math.fsum over the
    basis vectors in reverse order."""
    terms = []
    for b in range(basis.shape[1] - 1, -1, -1):
        ip = complex(np.vdot(basis[:, b], vec))
        terms.append((abs(ip) ** 2 - target) ** 2)
    return math.fsum(terms)


def _overlaps(v: np.ndarray, basis_conj: np.ndarray) -> np.ndarray:
    """Overlaps <b|v> for a batch of rows v, accumulated in a fixed order over
    the d components so results do not depend on the batch size."""
    out = v[:, 0, None] * basis_conj[0]
    for i in range(1, basis_conj.shape[0]):
        out = out + v[:, i, None] * basis_conj[i]
    return out


def _objective(overlaps: np.ndarray, target: float) -> tuple[np.ndarray, np.ndarray]:
    devs = np.abs(overlaps) ** 2 - target
    return np.sum(devs * devs, axis=1), devs


def _gradient(v: np.ndarray, overlaps: np.ndarray, devs: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Wirtinger gradient d residual / d conj(v), one row per batch row."""
    weights = devs * overlaps
    grad = np.zeros_like(v)
    for b in range(basis.shape[1]):
        grad = grad + weights[:, b, None] * basis[None, :, b]
    return 2.0 * grad


def _normalize_rows(v: np.ndarray) -> np.ndarray:
    norms = np.sqrt(np.sum(np.abs(v) ** 2, axis=1))
    return v / norms[:, None]


def _descend(starts: np.ndarray, basis: np.ndarray, max_iters: int) -> tuple[np.ndarray, np.ndarray]:
    """Projected descent with step halving on non-decrease, batched over rows.

    All per-row updates are independent, so trajectories are identical no
    matter how the restarts are chunked.
    """
    basis_conj = basis.conj()
    target = 1.0 / basis.shape[0]
    v = _normalize_rows(starts.copy())
    overlaps = _overlaps(v, basis_conj)
    f, devs = _objective(overlaps, target)
    step = np.full(v.shape[0], 0.25)
    active = np.nonzero((f > _SWITCH) & (step > _STEP_FLOOR))[0]
    for _ in range(max_iters):
        if active.size == 0:
            break
        grad = _gradient(v[active], overlaps[active], devs[active], basis)
        trial = _normalize_rows(v[active] - step[active, None] * grad)
        t_overlaps = _overlaps(trial, basis_conj)
        t_f, t_devs = _objective(t_overlaps, target)
        better = t_f < f[active]
        took = active[better]
        v[took] = trial[better]
        overlaps[took] = t_overlaps[better]
        devs[took] = t_devs[better]
        f[took] = t_f[better]
        step[took] = np.minimum(step[took] * 1.5, 1.0)
        stalled = active[~better]
        step[stalled] = step[stalled] * 0.5
        active = active[(f[active] > _SWITCH) & (step[active] > _STEP_FLOOR)]
    return v, f


def _polish(v: np.ndarray, basis: np.ndarray, iters: int = 4) -> tuple[np.ndarray, np.ndarray]:
    """Damped Gauss-Newton refinement of near-solutions, batched.

    Works on the 2d real coordinates of each vector with renormalization
    after every step; the damping absorbs the global-phase null direction.
    """
    basis_conj = basis.conj()
    d = basis.shape[0]
    m = basis.shape[1]
    target = 1.0 / d
    v = v.copy()
    for _ in range(iters):
        overlaps = _overlaps(v, basis_conj)
        r = np.abs(overlaps) ** 2 - target
        c = overlaps.conj()[:, :, None] * basis_conj.T[None, :, :]
        jac = np.concatenate([2.0 * c.real, -2.0 * c.imag], axis=2)
        jtj = np.einsum("nbk,nbl->nkl", jac, jac)
        jtj += 1e-12 * np.eye(2 * d)[None, :, :]
        rhs = np.einsum("nbk,nb->nk", jac, r)
        delta = np.linalg.solve(jtj, rhs[:, :, None])[:, :, 0]
        v = v - (delta[:, :d] + 1j * delta[:, d:])
        v = _normalize_rows(v)
    overlaps = _overlaps(v, basis_conj)
    f, _ = _objective(overlaps, target)
    return v, f


def _gauge_fix(vec: np.ndarray) -> np.ndarray:
    """Make the first component of largest modulus real positive.

    Moduli are rounded before the argmax so that near-ties (exact for MU
    vectors against the standard basis) resolve to the same index for every
    member of a cluster.
    """
    moduli = np.round(np.abs(vec), 6)
    idx = int(np.argmax(moduli))
    phase = vec[idx] / abs(vec[idx])
    return vec * phase.conjugate()


def _start_vector(master_seed: int, index: int, dim: int) -> np.ndarray:
    rng = np.random.default_rng([master_seed, index])
    z = rng.standard_normal(2 * dim)
    return z[:dim] + 1j * z[dim:]


def find_mu_vectors(pair: MUPair, cfg: SearchConfig, _chunk: int = 4096) -> MUVectorSet:
    """Collect, gauge-fix and cluster all vectors found MU to a pair.

    Runs cfg.restarts independent seeded local minimizations of mu_residual
    over the unit sphere, keeps solutions with residual <= cfg.residual_tol
    that also pass an independently accumulated re-check, and greedily
    clusters the survivors in canonical sorted order. Deterministic for a
    given (pair, cfg); _chunk only controls batching and never the result.
    """
    d = pair.dim
    basis = pair.basis_vectors()
    target = 1.0 / d

    solutions: list[np.ndarray] = []
    residuals: list[float] = []
    for lo in range(0, cfg.restarts, _chunk):
        hi = min(lo + _chunk, cfg.restarts)
        starts = np.stack([_start_vector(cfg.master_seed, k, d) for k in range(lo, hi)])
        v, f = _descend(starts, basis, cfg.max_iters)
        near = np.nonzero(f <= _POLISH_CUT)[0]
        if near.size:
            polished, pf = _polish(v[near], basis)
            v[near] = polished
            f[near] = pf
        keep = np.nonzero(f <= cfg.residual_tol)[0]
        for idx in keep:
            vec = v[idx]
            recheck = _mu_residual_reversed(vec, basis, target)
            if recheck <= 10.0 * cfg.residual_tol:
                solutions.append(_gauge_fix(vec))
                residuals.append(float(f[idx]))

    if not solutions:
        return MUVectorSet(pair, (), (), (), False)

    # Canonical merge order: sort by rounded components so clustering is
    # independent of restart and batch order.
    def sort_key(item: tuple[np.ndarray, float]) -> tuple:
        vec = item[0]
        return tuple(np.round(np.concatenate([vec.real, vec.imag]), 9))

    ordered = sorted(zip(solutions, residuals), key=sort_key)

    reps: list[np.ndarray] = []
    best_res: list[float] = []
    hits: list[int] = []
    rep_matrix = np.zeros((0, d), dtype=np.complex128)
    for vec, res in ordered:
        if reps:
            dists = np.sqrt(np.sum(np.abs(rep_matrix - vec[None, :]) ** 2, axis=1))
            j = int(np.argmin(dists))
            if float(dists[j]) < cfg.cluster_tol:
                hits[j] += 1
                if res < best_res[j]:
                    best_res[j] = res
                    reps[j] = vec
                continue
        reps.append(vec)
        best_res.append(res)
        hits.append(1)
        rep_matrix = np.vstack([rep_matrix, vec[None, :]])

    # A continuum of solutions shows up as representatives packed close to
    # the clustering scale; flag it rather than trying to parameterize it.
    manifold = False
    if len(reps) > 1:
        gram = np.abs(rep_matrix @ rep_matrix.conj().T)
        dists_sq = np.maximum(2.0 - 2.0 * gram, 0.0)
        np.fill_diagonal(dists_sq, np.inf)
        manifold = bool(np.sqrt(dists_sq.min()) < 100.0 * cfg.cluster_tol)

    frozen = []
    for vec in reps:
        out = vec.copy()
        out.setflags(write=False)
        frozen.append(out)
    return MUVectorSet(pair, tuple(frozen), tuple(best_res), tuple(hits), manifold)


def orthogonality_graph(vectors, tol: Tolerance = DEFAULT_TOL) -> OrthoGraph:
    """Build the graph with edges exactly where |<u|v>| <= ortho_tol."""
    if isinstance(vectors, MUVectorSet):
        vecs = vectors.vectors
    else:
        vecs = tuple(as_vector(v) for v in vectors)
    n = len(vecs)
    if n < 2:
        return OrthoGraph(n, (), None, None)
    stack = np.stack(vecs)
    gram = np.abs(stack.conj() @ stack.T)
    iu = np.triu_indices(n, k=1)
    offdiag = gram[iu]
    edges = tuple(
        (int(i), int(j))
        for i, j in zip(*iu)
        if gram[i, j] <= tol.ortho_tol
    )
    return OrthoGraph(n, edges, float(offdiag.min()), float(offdiag.max()))


def _max_clique(n: int, edges: tuple[tuple[int, int], ...], stop_at: int) -> list[int]:
    """Exact branch-and-bound maximum clique, stopping early at stop_at."""
    neighbors = [set() for _ in range(n)]
    for i, j in edges:
        neighbors[i].add(j)
        neighbors[j].add(i)
    best: list[int] = []

    def extend(current: list[int], candidates: list[int]) -> bool:
        nonlocal best
        if len(current) > len(best):
            best = list(current)
            if len(best) >= stop_at:
                return True
        for pos, node in enumerate(candidates):
            if len(current) + len(candidates) - pos <= len(best):
                return False
            rest = [c for c in candidates[pos + 1 :] if c in neighbors[node]]
            current.append(node)
            if extend(current, rest):
                return True
            current.pop()
        return False

    extend([], list(range(n)))
    return best


def find_extension_basis(
    pair: MUPair, cfg: SearchConfig, tol: Tolerance = DEFAULT_TOL
) -> ExtensionResult:
    """Search for a third basis MU to both members of a pair.

    Finds the MU vectors, builds their orthogonality graph, and runs an exact
    clique search; a clique of size d is returned as a Basis (none otherwise,
    along with the largest clique size found).
    """
    vecset = find_mu_vectors(pair, cfg)
    graph = orthogonality_graph(vecset, tol)
    d = pair.dim
    clique = _max_clique(len(vecset), graph.edges, stop_at=d)
    size = max(len(clique), 1 if len(vecset) else 0)
    basis = None
    if len(clique) >= d:
        basis = Basis(np.column_stack([vecset.vectors[i] for i in clique[:d]]))
    return ExtensionResult(basis, size, vecset, graph)
