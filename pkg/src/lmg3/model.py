"""LMG Hamiltonian densities on symmetry sectors, plus parity structure.

The three-level Hamiltonian density is

    H = (eps/N) (S_33 - S_11) - lam/(N(N-1)) * sum_{i != j} S_ij^2,

an intensive quantity suitable for the large-N limit.  The interaction only
scatters pairs, so the level-population parities (-1)^{S_ii} are conserved;
energies are reported in units of the level splitting eps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .basis import GtPattern, IrrepShape, enumerate_basis, weight_of
from .operators import all_ops

DENSE_CUTOFF = 6000  # sectors up to this dimension are materialized densely


@dataclass(frozen=True)
class ModelParams:
    """Couplings of the three-level model: level splitting, pair coupling, atoms."""

    epsilon: float = 1.0
    lam: float = 0.0
    N: int | None = None

    def __post_init__(self):
        if self.epsilon == 0:
            raise ValueError("level splitting must be nonzero")
        if self.N is not None and self.N < 1:
            raise ValueError("need at least one atom")


@dataclass(frozen=True)
class TwoLevelParams:
    """Couplings of the two-level model: splitting, pair creation, pair exchange."""

    epsilon: float = 1.0
    lam1: float = 0.0
    lam2: float = 0.0


@dataclass(frozen=True)
class SectorHamiltonian:
    shape: IrrepShape
    params: "ModelParams | TwoLevelParams"
    matrix: sp.csr_matrix

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()


@lru_cache(maxsize=32)
def h3_parts(shape: IrrepShape) -> tuple[sp.csr_matrix, sp.csr_matrix]:
    """Coupling-independent pieces (free part at eps=1, scaled pair term).

    ``H = eps * free + lam * pair`` with ``pair`` already carrying the
    -1/(N(N-1)) prefactor, so sweeps over lam reuse both matrices.
    """
    if shape.L != 3:
        raise ValueError("three-level Hamiltonian needs a three-row shape")
    N = shape.N
    if N < 2:
        raise ValueError("pair interaction undefined for a single atom")
    ops = all_ops(shape)
    free = (ops[(3, 3)].matrix - ops[(1, 1)].matrix) / N
    pair = sp.csr_matrix(free.shape, dtype=float)
    for (i, j), op in ops.items():
        if i != j:
            pair = pair + op.matrix @ op.matrix
    pair = (-1.0 / (N * (N - 1))) * pair
    return free.tocsr(), pair.tocsr()


def build_h3(shape: IrrepShape, params: ModelParams) -> SectorHamiltonian:
    """Assemble the three-level Hamiltonian density on one sector."""
    if params.N is not None and params.N != shape.N:
        raise ValueError(f"params.N={params.N} does not match shape {shape} (N={shape.N})")
    free, pair = h3_parts(shape)
    H = (params.epsilon * free + params.lam * pair).tocsr()
    return SectorHamiltonian(shape, params, H)


def angular_momentum_ops(j: Fraction | float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(J_z, J_+, J_-) in the basis |j, m>, m = -j..j ascending."""
    twoj = int(round(2 * float(j)))
    if twoj < 0 or abs(2 * float(j) - twoj) > 1e-12:
        raise ValueError(f"j must be a nonnegative half-integer, got {j}")
    dim = twoj + 1
    m = np.arange(dim) - twoj / 2.0
    jz = np.diag(m)
    jp = np.zeros((dim, dim))
    jj = twoj / 2.0
    for i in range(dim - 1):
        jp[i + 1, i] = np.sqrt((jj - m[i]) * (jj + m[i] + 1.0))
    return jz, jp, jp.T.copy()


def build_h2(j, params: TwoLevelParams = TwoLevelParams()) -> SectorHamiltonian:
    """Two-level Hamiltonian eps J_z + lam1/2 (J_+^2 + J_-^2) + lam2/2 {J_+, J_-}."""
    jz, jp, jm = angular_momentum_ops(j)
    H = (
        params.epsilon * jz
        + 0.5 * params.lam1 * (jp @ jp + jm @ jm)
        + 0.5 * params.lam2 * (jp @ jm + jm @ jp)
    )
    twoj = int(round(2 * float(j)))
    shape = IrrepShape(twoj, 0, 0, L=2)
    return SectorHamiltonian(shape, params, sp.csr_matrix(H))


def free_energy_of_pattern(p: GtPattern, params: ModelParams) -> float:
    """Noninteracting energy density of a GT basis state.

    Every pattern is an eigenstate of the free part, with energy determined by
    the sum of its free entries: (eps/N)(N - m11 - m12 - m22).
    """
    N = p.N
    return params.epsilon * (N - p.m11 - p.m12 - p.m22) / N


def parity_ops(shape: IrrepShape) -> list[np.ndarray]:
    """Diagonals of the population parity operators, entries (-1)^{w_i}."""
    ws = np.array([weight_of(p).astuple() for p in enumerate_basis(shape)])
    return [np.where(ws[:, k] % 2 == 0, 1.0, -1.0) for k in range(shape.L)]


def normalized_parity_ops(shape: IrrepShape) -> list[np.ndarray]:
    """Parity diagonals rescaled by (-1)^{h_i}; their product is the identity."""
    hs = shape.rows
    return [(-1.0) ** (h % 2) * d for h, d in zip(hs, parity_ops(shape))]


def parity_label(p: GtPattern, L: int = 3) -> tuple[int, ...]:
    w = weight_of(p).astuple()[:L]
    return tuple(1 if wi % 2 == 0 else -1 for wi in w)


def parity_sector_sizes(shape: IrrepShape) -> dict[tuple[int, ...], int]:
    """Basis-state counts per parity label (+/-1 per level)."""
    sizes: dict[tuple[int, ...], int] = {}
    for p in enumerate_basis(shape):
        lab = parity_label(p, shape.L)
        sizes[lab] = sizes.get(lab, 0) + 1
    return sizes
