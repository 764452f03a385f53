"""Irreducible representations of U(2) and U(3) for collections of identical atoms.

An irrep is labeled by a Young frame ``h = [h1, h2, h3]`` (``h3 = 0`` for two
levels).  Its basis states are triangular Gelfand-Tsetlin (GT) patterns whose
rows interlace; the pattern content encodes the level populations (weights).
This module enumerates frames, GT bases, dimensions, tensor-product
multiplicities and weights.  Everything here is exact integer combinatorics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator


@dataclass(frozen=True, order=True)
class IrrepShape:
    """Young-frame label of a U(L) irrep: row lengths h1 >= h2 >= h3 >= 0.

    For ``L == 2`` the third row must be empty (``h3 == 0``); shapes are kept
    as explicit 3-tuples so both level counts share one code path.
    """

    h1: int
    h2: int
    h3: int = 0
    L: int = 3

    def __post_init__(self):
        for h in (self.h1, self.h2, self.h3):
            if not isinstance(h, int) or h < 0:
                raise ValueError(f"row lengths must be nonnegative integers, got {self}")
        if not (self.h1 >= self.h2 >= self.h3):
            raise ValueError(f"row lengths must be weakly decreasing, got {self}")
        if self.L not in (2, 3):
            raise ValueError(f"only 2- and 3-level systems supported, got L={self.L}")
        if self.L == 2 and self.h3 != 0:
            raise ValueError("two-level shapes must have h3 = 0")

    @property
    def N(self) -> int:
        """Total number of atoms (boxes)."""
        return self.h1 + self.h2 + self.h3

    @property
    def rows(self) -> tuple[int, ...]:
        return (self.h1, self.h2, self.h3)[: self.L]

    def __str__(self):
        return "[" + ",".join(str(h) for h in self.rows) + "]"


@dataclass(frozen=True, order=True)
class GtPattern:
    """Triangular GT pattern; rows (top to bottom): (m13,m23,m33), (m12,m22), (m11).

    The top row equals the owning shape and consecutive rows interlace:
    ``m13 >= m12 >= m23 >= m22 >= m33`` and ``m12 >= m11 >= m22``.
    Two-level patterns are stored with the frozen middle row
    ``(m12, m22) = (m13, m23)`` and ``m33 = 0``, i.e. the top U(2) slice.
    """

    m13: int
    m23: int
    m33: int
    m12: int
    m22: int
    m11: int

    def __post_init__(self):
        ok = (
            self.m13 >= self.m12 >= self.m23 >= self.m22 >= self.m33 >= 0
            and self.m12 >= self.m11 >= self.m22
        )
        if not ok:
            raise ValueError(f"pattern rows do not interlace: {self}")

    @property
    def N(self) -> int:
        return self.m13 + self.m23 + self.m33

    def shape(self, L: int = 3) -> IrrepShape:
        return IrrepShape(self.m13, self.m23, self.m33, L=L)

    def key(self) -> tuple[int, int, int]:
        """Free entries (m12, m22, m11) used for indexing within a sector."""
        return (self.m12, self.m22, self.m11)

    def row_sums(self) -> tuple[int, int, int]:
        return (self.m11, self.m12 + self.m22, self.m13 + self.m23 + self.m33)


@dataclass(frozen=True)
class Weight:
    """Level populations (w1, w2, w3); they always sum to the atom number."""

    w1: int
    w2: int
    w3: int

    def astuple(self) -> tuple[int, int, int]:
        return (self.w1, self.w2, self.w3)

    @property
    def N(self) -> int:
        return self.w1 + self.w2 + self.w3


def weight_of(p: GtPattern) -> Weight:
    """Populations from differences of consecutive GT row sums."""
    r1, r2, r3 = p.row_sums()
    return Weight(r1, r2 - r1, r3 - r2)


def dominates(w: Weight, wp: Weight) -> bool:
    """Lexicographic order on weights: the first nonzero difference is positive."""
    for a, b in zip(w.astuple(), wp.astuple()):
        if a != b:
            return a > b
    return False


def dimension(shape: IrrepShape) -> int:
    """Number of GT patterns (basis states) carried by the irrep."""
    if shape.L == 2:
        return shape.h1 - shape.h2 + 1
    h1, h2, h3 = shape.h1, shape.h2, shape.h3
    return (1 + h1 - h2) * (2 + h1 - h3) * (1 + h2 - h3) // 2


def enumerate_basis(shape: IrrepShape) -> list[GtPattern]:
    """All GT patterns of the shape, lexicographically descending on (m12, m22, m11).

    The first pattern is the highest-weight state and the last the
    lowest-weight one.
    """
    if shape.L == 2:
        return [
            GtPattern(shape.h1, shape.h2, 0, shape.h1, shape.h2, m11)
            for m11 in range(shape.h1, shape.h2 - 1, -1)
        ]
    pats = []
    for m12 in range(shape.h1, shape.h2 - 1, -1):
        for m22 in range(shape.h2, shape.h3 - 1, -1):
            for m11 in range(m12, m22 - 1, -1):
                pats.append(GtPattern(shape.h1, shape.h2, shape.h3, m12, m22, m11))
    return pats


@lru_cache(maxsize=None)
def basis_index(shape: IrrepShape) -> dict[tuple[int, int, int], int]:
    """Map (m12, m22, m11) -> position in ``enumerate_basis(shape)``."""
    return {p.key(): i for i, p in enumerate(enumerate_basis(shape))}


def hw_pattern(shape: IrrepShape) -> GtPattern:
    """Highest-weight pattern: every row left-saturated; weight (h1, h2, h3)."""
    if shape.L == 2:
        return GtPattern(shape.h1, shape.h2, 0, shape.h1, shape.h2, shape.h1)
    return GtPattern(shape.h1, shape.h2, shape.h3, shape.h1, shape.h2, shape.h1)


def lw_pattern(shape: IrrepShape) -> GtPattern:
    """Lowest-weight pattern; weight (h3, h2, h1)."""
    if shape.L == 2:
        return GtPattern(shape.h1, shape.h2, 0, shape.h1, shape.h2, shape.h2)
    return GtPattern(shape.h1, shape.h2, shape.h3, shape.h2, shape.h3, shape.h3)


def enumerate_shapes(N: int, L: int = 3) -> list[IrrepShape]:
    """Young frames with N boxes and at most L rows, descending lexicographically."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    shapes = []
    if L == 2:
        for h2 in range(N // 2 + 1):
            shapes.append(IrrepShape(N - h2, h2, 0, L=2))
        return shapes
    for h1 in range(N, -1, -1):
        for h2 in range(min(h1, N - h1), -1, -1):
            h3 = N - h1 - h2
            if 0 <= h3 <= h2:
                shapes.append(IrrepShape(h1, h2, h3))
    return shapes


def multiplicity(shape: IrrepShape) -> int:
    """Number of copies of the irrep in the N-fold tensor power of the fundamental.

    Equals the number of standard Young tableaux of the frame, computed with
    the hook-length formula.  The fully symmetric frame always has
    multiplicity 1.
    """
    rows = [h for h in shape.rows if h > 0]
    n = sum(rows)
    if n == 0:
        return 1
    hooks = 1
    for i, hi in enumerate(rows):
        for j in range(hi):
            arm = hi - j - 1
            leg = sum(1 for k in range(i + 1, len(rows)) if rows[k] > j)
            hooks *= arm + leg + 1
    return math.factorial(n) // hooks


def catalan_series(N: int) -> list[tuple[Fraction, int]]:
    """Two-level decomposition series: pairs (j_k, M_k) with j_k = N/2 - k.

    ``M_k = (N+1-2k)/(N+1) * C(N+1, k)`` (Catalan's triangle); the dimensions
    satisfy ``sum_k M_k (2 j_k + 1) = 2**N``.
    """
    if N < 1:
        raise ValueError("need at least one atom")
    out = []
    for k in range(N // 2 + 1):
        mk = (N + 1 - 2 * k) * math.comb(N + 1, k) // (N + 1)
        out.append((Fraction(N, 2) - k, mk))
    return out


@dataclass(frozen=True)
class SectorProportions:
    """Macroscopic frame label (mu, nu): mu = h1/((1-nu) N), nu = h3/N."""

    mu: float
    nu: float

    def __post_init__(self):
        mu, nu = self.mu, self.nu
        if not (0.0 <= nu <= 1.0 / 3.0 + 1e-12):
            raise ValueError(f"nu must lie in [0, 1/3], got {nu}")
        hi = (1.0 - 2.0 * nu) / (1.0 - nu)
        if not (0.5 - 1e-12 <= mu <= hi + 1e-12):
            raise ValueError(f"mu must lie in [1/2, {hi:.6f}] for nu={nu}, got {mu}")

    @classmethod
    def from_shape(cls, shape: IrrepShape) -> "SectorProportions":
        if shape.N == 0:
            raise ValueError("proportions undefined for the empty frame")
        nu = shape.h3 / shape.N
        return cls(shape.h1 / (shape.N - shape.h3), nu)

    def weights(self) -> tuple[float, float, float]:
        """Row fractions (h1, h2, h3)/N of the frame."""
        return (
            self.mu * (1.0 - self.nu),
            (1.0 - self.mu) * (1.0 - self.nu),
            self.nu,
        )


def shape_for_proportions(mu: float, nu: float, N: int) -> IrrepShape:
    """Closest integer frame with N boxes realizing the proportions (mu, nu)."""
    SectorProportions(mu, nu)
    h3 = round(nu * N)
    h1 = round(mu * (N - h3))
    h2 = N - h1 - h3
    return IrrepShape(h1, h2, h3)


def iter_weights(shape: IrrepShape) -> Iterator[Weight]:
    for p in enumerate_basis(shape):
        yield weight_of(p)
