"""Coherent (quasi-classical) states of U(3) sectors and their symbols.

A group element is parametrized by three complex coordinates (alpha, beta,
gamma) plus diagonal phases; the associated state is the exponential of
lowering operators acting on the highest-weight vector,

    |h; a, b, g} = exp(b S_31) exp(a S_21) exp(g S_32) |hw>.

Generator expectation values ("symbols") are available through three
independent routes: closed-form expressions, logarithmic derivatives of the
overlap kernel, and literal matrix expectations in the GT basis.  The routes
agreeing to machine precision pins every sign and conjugation convention.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .basis import IrrepShape, dimension, hw_pattern, basis_index
from .model import normalized_parity_ops, parity_ops
from .operators import all_ops


@dataclass(frozen=True)
class CoherentPoint:
    """Coordinates (alpha, beta, gamma) and unit diagonal phases (u1, u2, u3)."""

    alpha: complex = 0j
    beta: complex = 0j
    gamma: complex = 0j
    u1: complex = 1.0 + 0j
    u2: complex = 1.0 + 0j
    u3: complex = 1.0 + 0j

    def __post_init__(self):
        for u in (self.u1, self.u2, self.u3):
            if abs(abs(u) - 1.0) > 1e-12:
                raise ValueError("diagonal phases must have unit modulus")

    @property
    def ell1(self) -> float:
        return 1.0 + abs(self.alpha) ** 2 + abs(self.beta) ** 2

    @property
    def ell2(self) -> float:
        return 1.0 + abs(self.gamma) ** 2 + abs(self.beta - self.alpha * self.gamma) ** 2

    def coords(self) -> tuple[complex, complex, complex]:
        return (complex(self.alpha), complex(self.beta), complex(self.gamma))

    @classmethod
    def random(cls, rng: np.random.Generator, scale: float = 0.8) -> "CoherentPoint":
        a, b, g = (rng.standard_normal(3) + 1j * rng.standard_normal(3)) * scale / np.sqrt(2)
        return cls(a, b, g)


@dataclass(frozen=True)
class SymbolTable:
    """Expectation values of the nine generators; s[i-1, j-1] is <S_ij>."""

    values: np.ndarray

    def s(self, i: int, j: int) -> complex:
        return complex(self.values[i - 1, j - 1])

    @property
    def trace(self) -> float:
        return float(np.trace(self.values).real)

    def populations(self) -> tuple[float, float, float]:
        d = np.real(np.diag(self.values))
        return (float(d[0]), float(d[1]), float(d[2]))


def triangular_matrix(p: CoherentPoint) -> np.ndarray:
    return np.array(
        [[1, 0, 0], [p.alpha, 1, 0], [p.beta, p.gamma, 1]], dtype=complex
    )


def unitary_from_point(p: CoherentPoint) -> np.ndarray:
    """Gram-Schmidt of the triangular columns, times diag(u1, u2, u3).

    The first column is (1, alpha, beta)/sqrt(ell1) by construction.
    """
    T = triangular_matrix(p)
    Q = np.zeros((3, 3), dtype=complex)
    for c in range(3):
        v = T[:, c].copy()
        for b in range(c):
            v -= np.vdot(Q[:, b], T[:, c]) * Q[:, b]
        Q[:, c] = v / np.linalg.norm(v)
    return Q @ np.diag([p.u1, p.u2, p.u3])


def kernel_raw(shape: IrrepShape, abar, bbar, gbar, al, be, ga) -> complex:
    """Overlap kernel with the anti-holomorphic slots as free variables."""
    p = shape.h1 - shape.h2
    q = shape.h2 - shape.h3
    P = 1.0 + al * abar + be * bbar
    Q = 1.0 + ga * gbar + (be - al * ga) * (bbar - abar * gbar)
    return P**p * Q**q


def bergman_kernel(shape: IrrepShape, pprime: CoherentPoint, p: CoherentPoint) -> complex:
    """Overlap {h; p'| h; p} of two unnormalized coherent states."""
    a2, b2, g2 = pprime.coords()
    a1, b1, g1 = p.coords()
    return kernel_raw(shape, np.conj(a2), np.conj(b2), np.conj(g2), a1, b1, g1)


def normalization_constant(shape: IrrepShape, p: CoherentPoint) -> complex:
    """K_h: product of leading minors of the unitary; |K_h|^2 B_h(diag) = 1."""
    num = p.u1**shape.h1 * p.u2**shape.h2 * p.u3**shape.h3
    return num / (
        p.ell1 ** ((shape.h1 - shape.h2) / 2.0) * p.ell2 ** ((shape.h2 - shape.h3) / 2.0)
    )


def _symbols_from_rows(h1, h2, h3, al: complex, be: complex, ga: complex) -> np.ndarray:
    """Closed-form symbol table; row lengths may be real (used per-particle)."""
    l1 = 1.0 + abs(al) ** 2 + abs(be) ** 2
    bp = be - al * ga
    l2 = 1.0 + abs(ga) ** 2 + abs(bp) ** 2
    p = h1 - h2
    q = h2 - h3
    s = np.zeros((3, 3), dtype=complex)
    s[0, 0] = h1 / l1 + h2 * abs(al + be * np.conj(ga)) ** 2 / (l1 * l2) + h3 * abs(bp) ** 2 / l2
    s[1, 1] = (
        h1 * abs(al) ** 2 / l1
        + h2 * abs(1.0 - al * np.conj(be) * ga + be * np.conj(be)) ** 2 / (l1 * l2)
        + h3 * abs(ga) ** 2 / l2
    )
    s[2, 2] = (h1 * abs(be) ** 2 + h2 * (1.0 + abs(al) ** 2)) / l1 + (h3 - h2) / l2
    s[0, 1] = p * al / l1 - q * np.conj(ga) * bp / l2
    s[0, 2] = p * be / l1 + q * bp / l2
    s[1, 2] = p * np.conj(al) * be / l1 + q * ga / l2
    s[1, 0] = np.conj(s[0, 1])
    s[2, 0] = np.conj(s[0, 2])
    s[2, 1] = np.conj(s[1, 2])
    return s


def symbols_closed_form(shape: IrrepShape, p: CoherentPoint) -> SymbolTable:
    """The nine generator expectations in closed form; trace equals N."""
    al, be, ga = p.coords()
    return SymbolTable(_symbols_from_rows(shape.h1, shape.h2, shape.h3, al, be, ga))


def _diff_op_coefficients(shape: IrrepShape, ac, bc, gc) -> dict:
    """First-order differential realization of each generator.

    Entry (i, j) holds (c0, cA, cB, cG) meaning
    S_ij = c0 + cA d/d(abar) + cB d/d(bbar) + cG d/d(gbar) acting on
    anti-holomorphic functions; coefficients are polynomials in the
    conjugated coordinates.
    """
    h1, h2, h3 = shape.h1, shape.h2, shape.h3
    return {
        (2, 1): (ac * (h1 - h2), -ac * ac, -ac * bc, -(bc - ac * gc)),
        (1, 2): (0.0, 1.0, 0.0, 0.0),
        (3, 1): (
            (h1 - h3) * bc + (h3 - h2) * ac * gc,
            -bc * ac,
            -bc * bc,
            -gc * (bc - ac * gc),
        ),
        (1, 3): (0.0, 0.0, 1.0, 0.0),
        (3, 2): ((h2 - h3) * gc, bc, 0.0, -gc * gc),
        (2, 3): (0.0, 0.0, ac, 1.0),
        (1, 1): (h1, -ac, -bc, 0.0),
        (2, 2): (h2, ac, 0.0, -gc),
        (3, 3): (h3, 0.0, bc, gc),
    }


def _kernel_log_derivatives(shape, al, be, ga, numeric=False):
    """(dB/dabar, dB/dbbar, dB/dgbar)/B at the diagonal point.

    Analytic by default; ``numeric=True`` differentiates the kernel by
    Richardson-extrapolated central differences in each anti-holomorphic slot
    (cross-check path).
    """
    ac, bc, gc = np.conj(al), np.conj(be), np.conj(ga)
    if not numeric:
        p = shape.h1 - shape.h2
        q = shape.h2 - shape.h3
        bp = be - al * ga
        P = 1.0 + al * ac + be * bc
        Q = 1.0 + ga * gc + bp * (bc - ac * gc)
        la = p * al / P + q * (-gc * bp) / Q
        lb = p * be / P + q * bp / Q
        lg = q * (ga - ac * bp) / Q
        return la, lb, lg

    def d(slot):
        def f(z):
            args = [ac, bc, gc]
            args[slot] = z
            return kernel_raw(shape, *args, al, be, ga)

        z0 = (ac, bc, gc)[slot]
        out = []
        for h in (1e-5, 5e-6):
            out.append((f(z0 + h) - f(z0 - h)) / (2.0 * h))
        return (4.0 * out[1] - out[0]) / 3.0

    B = kernel_raw(shape, ac, bc, gc, al, be, ga)
    return d(0) / B, d(1) / B, d(2) / B


def symbols_via_kernel(shape: IrrepShape, p: CoherentPoint, numeric: bool = False) -> SymbolTable:
    """Symbols from the differential operators applied to the overlap kernel.

    Each generator expectation is (c0 B + cA dB/dabar + cB dB/dbbar +
    cG dB/dgbar)/B evaluated at the diagonal.
    """
    al, be, ga = p.coords()
    ac, bc, gc = np.conj(al), np.conj(be), np.conj(ga)
    la, lb, lg = _kernel_log_derivatives(shape, al, be, ga, numeric=numeric)
    coeffs = _diff_op_coefficients(shape, ac, bc, gc)
    s = np.zeros((3, 3), dtype=complex)
    for (i, j), (c0, cA, cB, cG) in coeffs.items():
        s[i - 1, j - 1] = c0 + cA * la + cB * lb + cG * lg
    return SymbolTable(s)


def _apply_exp(mat, z: complex, v: np.ndarray, maxit: int) -> np.ndarray:
    """exp(z * mat) v by a terminating power series (mat nilpotent here)."""
    out = v.copy()
    term = v.copy()
    for n in range(1, maxit + 1):
        term = (z / n) * (mat @ term)
        if not np.any(term):
            return out
        out = out + term
    return out


def coherent_vector(shape: IrrepShape, p: CoherentPoint, normalized: bool = True) -> np.ndarray:
    """Coherent state in the GT basis of the sector.

    The lowering exponentials terminate after at most dim(shape) terms.  With
    ``normalized=False`` the raw vector is returned, whose squared norm equals
    the diagonal overlap kernel.
    """
    ops = all_ops(shape)
    dim = dimension(shape)
    v = np.zeros(dim, dtype=complex)
    v[basis_index(shape)[hw_pattern(shape).key()]] = 1.0
    al, be, ga = p.coords()
    v = _apply_exp(ops[(3, 2)].matrix, ga, v, dim + 1)
    v = _apply_exp(ops[(2, 1)].matrix, al, v, dim + 1)
    v = _apply_exp(ops[(3, 1)].matrix, be, v, dim + 1)
    if normalized:
        v = v / np.linalg.norm(v)
    return v


def expectation_table(shape: IrrepShape, p: CoherentPoint) -> SymbolTable:
    """Matrix-route symbols: literal GT-basis expectations <v|S_ij|v>."""
    v = coherent_vector(shape, p)
    ops = all_ops(shape)
    s = np.zeros((3, 3), dtype=complex)
    for (i, j), op in ops.items():
        s[i - 1, j - 1] = np.vdot(v, op.matrix @ v)
    return SymbolTable(s)


def quadratic_expectation(shape: IrrepShape, p: CoherentPoint, ij, kl) -> complex:
    """<v| S_ij S_kl |v> on the normalized coherent state."""
    v = coherent_vector(shape, p)
    ops = all_ops(shape)
    return complex(np.vdot(v, ops[ij].matrix @ (ops[kl].matrix @ v)))


def parity_map(shape: IrrepShape, p: CoherentPoint, i: int) -> tuple[CoherentPoint, float]:
    """Action of the level-i parity on coordinates, with its scalar phase.

    Pi_1: (a, b, g) -> (-a, -b, g), Pi_2 -> (-a, b, -g), Pi_3 -> (a, -b, -g);
    the phase is (-1)**h_i.  The normalized parity drops the phase.
    """
    if i not in (1, 2, 3):
        raise ValueError("level index must be 1, 2 or 3")
    a, b, g = p.coords()
    if i == 1:
        mapped = replace(p, alpha=-a, beta=-b, gamma=g)
    elif i == 2:
        mapped = replace(p, alpha=-a, beta=b, gamma=-g)
    else:
        mapped = replace(p, alpha=a, beta=-b, gamma=-g)
    phase = (-1.0) ** (shape.rows[i - 1] % 2)
    return mapped, phase


def cat_state(shape: IrrepShape, p: CoherentPoint) -> np.ndarray:
    """Parity-even superposition (1 + P1 + P2 + P3) v with normalized parities.

    The result is a +1 eigenvector of every normalized parity operator.  A
    numerically vanishing projection (parity-odd input) raises ValueError.
    """
    v = coherent_vector(shape, p)
    cat = v.copy()
    for diag in normalized_parity_ops(shape):
        cat = cat + diag * v
    if np.linalg.norm(cat) <= 1e-10 * np.linalg.norm(v):
        raise ValueError("parity projection annihilated the coherent state")
    return cat


def parity_matrix_diagonals(shape: IrrepShape) -> list[np.ndarray]:
    """Plain parity diagonals (-1)^{w_i}, re-exported for convenience."""
    return parity_ops(shape)
