"""Sector diagonalization, the full tensor-space oracle, and coupling sweeps.

Ground-state pairs come from LAPACK for small sectors and from ARPACK with a
fixed start vector for large ones, so repeated runs are reproducible.  Sweeps
reuse the coupling-independent operator matrices and report the fidelity
susceptibility chi(lam) = 2 (1 - F)/(dlam)^2 together with level-population
densities, the standard finite-size precursors of the critical points.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .basis import IrrepShape, dimension, enumerate_shapes, multiplicity
from .model import ModelParams, SectorHamiltonian, build_h3, h3_parts
from .operators import all_ops

DENSE_EIG_CUTOFF = 500  # below this, full dense diagonalization is cheapest
DEGENERACY_GAP = 1e-10


@dataclass(frozen=True)
class SpectrumResult:
    shape: IrrepShape
    lam: float
    eigenvalues: np.ndarray  # ascending
    ground_vector: np.ndarray
    residual: float

    @property
    def gap(self) -> float:
        if len(self.eigenvalues) < 2:
            return np.inf
        return float(self.eigenvalues[1] - self.eigenvalues[0])

    @property
    def degenerate(self) -> bool:
        return self.gap < DEGENERACY_GAP


def _fix_sign(v: np.ndarray) -> np.ndarray:
    i = int(np.argmax(np.abs(v)))
    return -v if v[i] < 0 else v


def diagonalize(h: SectorHamiltonian, k: int | None = None) -> SpectrumResult:
    """Lowest-k eigenpairs of a symmetric sector Hamiltonian (full if k is None).

    The ground vector is normalized with its largest-magnitude component made
    positive; the stored residual is ||H v - E v||.
    """
    H = h.matrix
    dim = H.shape[0]
    if k is not None and k < 1:
        raise ValueError("k must be at least 1")
    asym = abs(H - H.T).max()
    scale = abs(H).max() if H.nnz else 0.0
    if asym > 1e-10 * (1.0 + scale):
        raise ValueError(f"Hamiltonian is not symmetric (asymmetry {asym:.3e})")
    if k is None or k >= dim or dim <= DENSE_EIG_CUTOFF:
        w, V = np.linalg.eigh(H.toarray())
        if k is not None:
            w, V = w[:k], V[:, :k]
    else:
        v0 = np.full(dim, 1.0 / np.sqrt(dim))
        w, V = spla.eigsh(H, k=max(k, 2), which="SA", v0=v0)
        order = np.argsort(w)
        w, V = w[order][:k], V[:, order][:, :k]
    ground = _fix_sign(V[:, 0] / np.linalg.norm(V[:, 0]))
    residual = float(np.linalg.norm(H @ ground - w[0] * ground))
    return SpectrumResult(h.shape, getattr(h.params, "lam", 0.0), np.asarray(w), ground, residual)


# ---------------------------------------------------------------------------
# Full tensor-space oracle
# ---------------------------------------------------------------------------

def full_tensor_operators(N: int) -> dict[tuple[int, int], np.ndarray]:
    """Collective S_ij on the full 3^N product space, as dense arrays.

    Each generator is the sum over atoms of the single-atom transition matrix
    (entry 1 in row i, column j) embedded at that tensor slot.  Intended as a
    brute-force reference for small N.
    """
    if N > 4:
        raise ValueError("full tensor construction is guarded to N <= 4")
    if N < 1:
        raise ValueError("need at least one atom")
    dim = 3**N
    ops = {}
    for i in range(1, 4):
        for j in range(1, 4):
            e = np.zeros((3, 3))
            e[i - 1, j - 1] = 1.0
            total = np.zeros((dim, dim))
            for mu in range(N):
                m = np.ones((1, 1))
                for slot in range(N):
                    m = np.kron(m, e if slot == mu else np.eye(3))
                total += m
            ops[(i, j)] = total
    return ops


def full_tensor_spectrum(N: int, params: ModelParams) -> np.ndarray:
    """Sorted spectrum of the Hamiltonian density on the whole 3^N space.

    A single atom has no pairs, so the interaction is dropped there and the
    spectrum is (-eps, 0, +eps) regardless of the coupling.
    """
    ops = full_tensor_operators(N)
    H = (params.epsilon / N) * (ops[(3, 3)] - ops[(1, 1)])
    if N > 1:
        pair = sum(ops[(i, j)] @ ops[(i, j)] for i in range(1, 4) for j in range(1, 4) if i != j)
        H = H - (params.lam / (N * (N - 1))) * pair
    return np.sort(np.linalg.eigvalsh(H))


def sector_union_spectrum(N: int, params: ModelParams) -> np.ndarray:
    """Multiplicity-weighted union of all sector spectra, sorted."""
    vals = []
    for shape in enumerate_shapes(N, L=3):
        if N == 1:
            w = np.array([-params.epsilon, 0.0, params.epsilon])
        else:
            w = np.linalg.eigvalsh(build_h3(shape, params).toarray())
        vals.extend([w] * multiplicity(shape))
    return np.sort(np.concatenate(vals))


def tensor_hw_vectors(N: int, shape: IrrepShape) -> np.ndarray:
    """Orthonormal highest-weight vectors of the sector inside the 3^N space.

    Columns span the joint kernel of the raising operators restricted to the
    weight-(h1, h2, h3) subspace; there are multiplicity(shape) of them.
    """
    ops = full_tensor_operators(N)
    dim = 3**N
    levels = np.array([[(s // 3**mu) % 3 for mu in range(N)] for s in range(dim)])
    w = np.stack([(levels == k).sum(axis=1) for k in range(3)], axis=1)
    sel = np.where((w == np.array(shape.rows)).all(axis=1))[0]
    A = np.vstack([ops[(1, 2)][:, sel], ops[(2, 3)][:, sel]])
    _, s, Vh = np.linalg.svd(A)
    ns = Vh[np.concatenate([s, np.zeros(Vh.shape[0] - len(s))]) < 1e-10].conj().T
    out = np.zeros((dim, ns.shape[1]))
    out[sel, :] = ns.real
    return out


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

@dataclass
class SweepResult:
    """Per-coupling ground-state observables of one sector."""

    shape: IrrepShape
    lambdas: np.ndarray
    dlambda: float
    energies: np.ndarray
    chi: np.ndarray  # NaN when not requested
    populations: np.ndarray  # (npoints, 3)
    degenerate: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=bool))

    def to_csv(self) -> str:
        lines = ["lambda,E0,chi,p1,p2,p3,degeneracy_flag"]
        for i, lam in enumerate(self.lambdas):
            p = self.populations[i]
            lines.append(
                f"{lam:.12g},{self.energies[i]:.12g},{self.chi[i]:.12g},"
                f"{p[0]:.12g},{p[1]:.12g},{p[2]:.12g},{int(self.degenerate[i])}"
            )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "shape": list(self.shape.rows),
                "dlambda": self.dlambda,
                "rows": [
                    {
                        "lambda": float(self.lambdas[i]),
                        "E0": float(self.energies[i]),
                        "chi": float(self.chi[i]),
                        "p1": float(self.populations[i][0]),
                        "p2": float(self.populations[i][1]),
                        "p3": float(self.populations[i][2]),
                        "degeneracy_flag": int(self.degenerate[i]),
                    }
                    for i in range(len(self.lambdas))
                ],
            },
            indent=1,
        )


class _SectorSolver:
    """Caches ground-state solves of one sector across coupling values."""

    def __init__(self, shape: IrrepShape, epsilon: float = 1.0):
        self.shape = shape
        self.epsilon = epsilon
        self.free, self.pair = h3_parts(shape)
        ops = all_ops(shape)
        self.weights = np.stack(
            [ops[(k, k)].matrix.diagonal() for k in (1, 2, 3)], axis=1
        )
        self.dim = dimension(shape)
        self._cache: dict[float, tuple[float, float, np.ndarray]] = {}

    def hamiltonian(self, lam: float) -> sp.csr_matrix:
        return (self.epsilon * self.free + lam * self.pair).tocsr()

    def solve(self, lam: float) -> tuple[float, float, np.ndarray]:
        """(E0, gap, ground vector) at one coupling, memoized.

        The coupling is canonicalized to 12 decimals before use so that cache
        keys and matrix entries agree bit-for-bit however the value reached us
        (serial loop, worker pool, or grid arithmetic).
        """
        key = round(float(lam), 12)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        H = self.hamiltonian(key)
        if self.dim <= DENSE_EIG_CUTOFF:
            w, V = np.linalg.eigh(H.toarray())
            w = w[:2] if self.dim > 1 else np.array([w[0], np.inf])
            v = V[:, 0]
        else:
            v0 = np.full(self.dim, 1.0 / np.sqrt(self.dim))
            try:
                w, V = spla.eigsh(H, k=2, which="SA", v0=v0)
            except spla.ArpackNoConvergence:
                wd, Vd = np.linalg.eigh(H.toarray())
                w, V = wd[:2], Vd[:, :2]
            order = np.argsort(w)
            w, V = w[order], V[:, order]
            v = V[:, 0]
        v = _fix_sign(v / np.linalg.norm(v))
        gap = float(w[1] - w[0]) if np.isfinite(w[1]) else np.inf
        res = (float(w[0]), gap, v)
        self._cache[key] = res
        return res

    def populations(self, v: np.ndarray) -> np.ndarray:
        return (v * v) @ self.weights / self.shape.N


def _run_sweep(shape, lambda_grid, dlambda, epsilon, want_chi, threads):
    grid = np.asarray(lambda_grid, dtype=float)
    if grid.size == 0:
        raise ValueError("empty coupling grid")
    if np.any(np.diff(grid) < 0):
        raise ValueError("coupling grid must be sorted ascending")
    if want_chi and not dlambda > 0:
        raise ValueError("dlambda must be positive")
    solver = _SectorSolver(shape, epsilon)
    needed = list(grid) + ([lam + dlambda for lam in grid] if want_chi else [])
    needed = sorted({round(float(x), 12) for x in needed})
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(solver.solve, needed))
    n = grid.size
    energies = np.empty(n)
    chi = np.full(n, np.nan)
    pops = np.empty((n, 3))
    degen = np.zeros(n, dtype=bool)
    for i, lam in enumerate(grid):
        e0, gap, v = solver.solve(lam)
        energies[i] = e0
        pops[i] = solver.populations(v)
        degen[i] = gap < DEGENERACY_GAP
        if want_chi:
            _, gap2, v2 = solver.solve(lam + dlambda)
            fid = float(np.dot(v, v2)) ** 2
            chi[i] = 2.0 * (1.0 - fid) / dlambda**2
            degen[i] |= gap2 < DEGENERACY_GAP
    return SweepResult(shape, grid, dlambda, energies, chi, pops, degen)


def susceptibility_sweep(
    shape: IrrepShape,
    lambda_grid,
    dlambda: float = 0.01,
    epsilon: float = 1.0,
    threads: int = 1,
) -> SweepResult:
    """Fidelity susceptibility and populations of the sector ground state.

    chi(lam) compares the ground vectors at lam and lam + dlambda.  Points
    where the lowest level is numerically degenerate (gap < 1e-10) carry a
    flag: the fidelity is ill-defined there and the value is kept only as a
    diagnostic.
    """
    return _run_sweep(shape, lambda_grid, dlambda, epsilon, True, threads)


def population_sweep(
    shape: IrrepShape,
    lambda_grid,
    epsilon: float = 1.0,
    threads: int = 1,
) -> SweepResult:
    """Level-population densities of the sector ground state (no chi column)."""
    return _run_sweep(shape, lambda_grid, 0.0, epsilon, False, threads)


def first_peak(sweep: SweepResult) -> tuple[float, float] | None:
    """Location and height of the first interior local maximum of chi.

    Flagged (degenerate) grid points are skipped.  Returns None when the curve
    is monotone over the grid.
    """
    lam, chi, bad = sweep.lambdas, sweep.chi, sweep.degenerate
    for i in range(1, len(lam) - 1):
        if bad[i - 1] or bad[i] or bad[i + 1]:
            continue
        if chi[i] >= chi[i - 1] and chi[i] > chi[i + 1]:
            return float(lam[i]), float(chi[i])
    return None
