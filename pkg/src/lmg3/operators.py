"""Collective quasispin operators S_ij restricted to one symmetry sector.

The nine generators act on the GT basis of an irrep: diagonal operators read
off level populations, the elementary step operators S_21/S_12 and S_32/S_23
change one mid- or bottom-row pattern entry with square-root coefficients
built from exact integer products, and the length-two operators follow from
commutators (S_31 = [S_32, S_21], S_13 = [S_12, S_23]).  All matrices are
real and sparse; S_ji is the transpose of S_ij.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .basis import (
    GtPattern,
    IrrepShape,
    basis_index,
    dimension,
    enumerate_basis,
    weight_of,
)


@dataclass(frozen=True)
class SectorOperator:
    """A collective generator restricted to one irrep, in the GT basis."""

    shape: IrrepShape
    matrix: sp.csr_matrix

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def entries(self):
        """Iterate (row, col, value) over stored nonzeros."""
        coo = self.matrix.tocoo()
        yield from zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist())

    def dump_coo(self, path) -> None:
        """Write a plain coordinate list ``row col value`` for inspection."""
        with open(path, "w") as fh:
            for r, c, v in self.entries():
                fh.write(f"{r} {c} {v:.17g}\n")


class AlgebraError(Exception):
    """Commutation-relation check failed beyond tolerance."""


def _pattern_rows(p: GtPattern, L: int) -> list[tuple[int, ...]]:
    rows = [(p.m11,), (p.m12, p.m22)]
    if L == 3:
        rows.append((p.m13, p.m23, p.m33))
    return rows


def _gt_coeff(rows: list[tuple[int, ...]], k: int, j: int, lower: bool) -> float:
    """Ladder coefficient for moving entry j of row k-1 down (lower) or up.

    Uses shifted entries m'_{i,r} = m_{i,r} - i.  Any indeterminate quotient
    or negative radicand (an out-of-lattice target) gives exactly zero before
    any floating-point work.
    """
    rowk = rows[k - 1]
    rowk1 = rows[k - 2]
    rowk2 = rows[k - 3] if k >= 3 else ()
    x = rowk1[j - 1] - j
    num = 1
    for i, m in enumerate(rowk, start=1):
        num *= (m - i) - x + (1 if lower else 0)
    for i, m in enumerate(rowk2, start=1):
        num *= (m - i) - x - (0 if lower else 1)
    den = 1
    for i, m in enumerate(rowk1, start=1):
        if i == j:
            continue
        y = m - i
        den *= (y - x) * (y - x + (1 if lower else -1))
    if den == 0:
        return 0.0
    rad = Fraction(-num, den)
    if rad <= 0:
        return 0.0
    return math.sqrt(rad)


def _valid_key(shape: IrrepShape, m12: int, m22: int, m11: int) -> bool:
    return (
        shape.h1 >= m12 >= shape.h2 >= m22 >= shape.h3
        and m12 >= m11 >= m22
    )


def diagonal_op(shape: IrrepShape, k: int) -> SectorOperator:
    """S_kk: diagonal matrix of level-k populations."""
    if k not in range(1, shape.L + 1):
        raise ValueError(f"level index {k} out of range for L={shape.L}")
    w = np.array([weight_of(p).astuple()[k - 1] for p in enumerate_basis(shape)], dtype=float)
    return SectorOperator(shape, sp.diags(w, format="csr"))


def step_op(shape: IrrepShape, k: int, direction: str) -> SectorOperator:
    """Elementary step operator: S_{k,k-1} (``lower``) or S_{k-1,k} (``raise``).

    Lowering subtracts one unit from an entry of pattern row k-1; raising adds
    one.  Coefficients for targets outside the pattern lattice vanish.
    """
    if k not in range(2, shape.L + 1):
        raise ValueError(f"step index {k} must be in 2..{shape.L}")
    if direction not in ("raise", "lower"):
        raise ValueError(f"direction must be 'raise' or 'lower', got {direction!r}")
    lower = direction == "lower"
    pats = enumerate_basis(shape)
    index = basis_index(shape)
    dim = len(pats)
    rows, cols, vals = [], [], []
    step = -1 if lower else 1
    for col, p in enumerate(pats):
        prow = _pattern_rows(p, shape.L)
        for j in range(1, k):
            m12, m22, m11 = p.m12, p.m22, p.m11
            if k == 2:
                m11 += step
            elif j == 1:
                m12 += step
            else:
                m22 += step
            if not _valid_key(shape, m12, m22, m11):
                continue
            c = _gt_coeff(prow, k, j, lower)
            if c != 0.0:
                rows.append(index[(m12, m22, m11)])
                cols.append(col)
                vals.append(c)
    mat = sp.coo_matrix((vals, (rows, cols)), shape=(dim, dim)).tocsr()
    return SectorOperator(shape, mat)


def long_op(shape: IrrepShape, i: int, j: int) -> SectorOperator:
    """Length-two generator from the commutator recursion (|i - j| = 2)."""
    if {i, j} != {1, 3}:
        raise ValueError("long operators connect levels 1 and 3 only")
    if i > j:  # S_31 = [S_32, S_21]
        a = step_op(shape, 3, "lower").matrix
        b = step_op(shape, 2, "lower").matrix
    else:  # S_13 = [S_12, S_23]
        a = step_op(shape, 2, "raise").matrix
        b = step_op(shape, 3, "raise").matrix
    return SectorOperator(shape, (a @ b - b @ a).tocsr())


@lru_cache(maxsize=64)
def all_ops(shape: IrrepShape) -> dict[tuple[int, int], SectorOperator]:
    """All L^2 generators of the sector, keyed by (i, j).  Cached per shape."""
    ops = {(k, k): diagonal_op(shape, k) for k in range(1, shape.L + 1)}
    ops[(2, 1)] = step_op(shape, 2, "lower")
    ops[(1, 2)] = step_op(shape, 2, "raise")
    if shape.L == 3:
        ops[(3, 2)] = step_op(shape, 3, "lower")
        ops[(2, 3)] = step_op(shape, 3, "raise")
        ops[(3, 1)] = long_op(shape, 3, 1)
        ops[(1, 3)] = long_op(shape, 1, 3)
    return ops


@dataclass(frozen=True)
class AlgebraReport:
    shape: IrrepShape
    max_violation: float
    worst_pair: tuple[tuple[int, int], tuple[int, int]]
    hermiticity_error: float
    casimir_error: float


def check_algebra(shape: IrrepShape, tol: float | None = None) -> AlgebraReport:
    """Verify [S_ij, S_kl] = d_jk S_il - d_il S_kj entrywise over all pairs.

    Also reports the worst transpose mismatch S_ij vs S_ji^T and the deviation
    of sum_k S_kk from N times the identity.  With ``tol`` set, a violation
    above it raises :class:`AlgebraError` naming the offending pair.
    """
    ops = all_ops(shape)
    L = shape.L
    idx = [(i, j) for i in range(1, L + 1) for j in range(1, L + 1)]
    dense = {key: op.toarray() for key, op in ops.items()}
    zero = np.zeros_like(dense[(1, 1)])
    worst = 0.0
    worst_pair = ((1, 1), (1, 1))
    for (i, j) in idx:
        for (k, l) in idx:
            comm = dense[(i, j)] @ dense[(k, l)] - dense[(k, l)] @ dense[(i, j)]
            expect = zero.copy()
            if j == k:
                expect += dense[(i, l)]
            if i == l:
                expect -= dense[(k, j)]
            v = float(np.max(np.abs(comm - expect)))
            if v > worst:
                worst, worst_pair = v, ((i, j), (k, l))
    herm = max(
        float(np.max(np.abs(dense[(i, j)] - dense[(j, i)].T)))
        for (i, j) in idx
    )
    casimir = sum(dense[(k, k)] for k in range(1, L + 1))
    cas_err = float(np.max(np.abs(casimir - shape.N * np.eye(dense[(1, 1)].shape[0]))))
    report = AlgebraReport(shape, worst, worst_pair, herm, cas_err)
    if tol is not None and max(worst, herm, cas_err) > tol:
        raise AlgebraError(
            f"sector {shape}: commutator violation {worst:.3e} at pair "
            f"{worst_pair}, hermiticity {herm:.3e}, casimir {cas_err:.3e}"
        )
    return report
