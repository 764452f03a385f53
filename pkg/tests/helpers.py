"""Shared test utilities: brute-force oracles independent of the library paths."""

from itertools import product

import numpy as np

from lmg3 import IrrepShape, all_ops, dimension, hw_pattern
from lmg3.basis import basis_index
from lmg3.spectral import full_tensor_operators, tensor_hw_vectors


def count_patterns_brute(h1, h2, h3):
    """Triple-loop pattern count, the independent dimension oracle."""
    n = 0
    for m12 in range(h2, h1 + 1):
        for m22 in range(h3, h2 + 1):
            n += m12 - m22 + 1
    return n


def oracle_sector_blocks(N, rows):
    """Generators of one sector extracted from the full tensor representation.

    Builds the intertwiner that maps the GT basis onto the invariant subspace
    generated from a tensor-space highest-weight vector by lowering words.
    Returns (isometry_deviation, dict of blocks in the GT basis).
    """
    shape = IrrepShape(*rows)
    dim = dimension(shape)
    A = {k: op.toarray() for k, op in all_ops(shape).items()}
    B = full_tensor_operators(N)
    v_hw = tensor_hw_vectors(N, shape)[:, 0]
    e_hw = np.zeros(dim)
    e_hw[basis_index(shape)[hw_pattern(shape).key()]] = 1.0
    U_cols, T_cols = [], []
    for a, b, c in product(range(2 * N + 1), repeat=3):
        u, t = e_hw.copy(), v_hw.copy()
        for _ in range(c):
            u, t = A[(3, 2)] @ u, B[(3, 2)] @ t
        for _ in range(b):
            u, t = A[(3, 1)] @ u, B[(3, 1)] @ t
        for _ in range(a):
            u, t = A[(2, 1)] @ u, B[(2, 1)] @ t
        if np.linalg.norm(u) < 1e-12:
            continue
        if np.linalg.matrix_rank(np.array(U_cols + [u]).T) > len(U_cols):
            U_cols.append(u)
            T_cols.append(t)
        if len(U_cols) == dim:
            break
    U = np.array(U_cols).T
    T = np.array(T_cols).T
    Phi = T @ np.linalg.inv(U)
    G = Phi.T @ Phi
    scale = G[0, 0]
    iso_dev = float(np.max(np.abs(G - scale * np.eye(dim))) / abs(scale))
    blocks = {key: (Phi.T @ B[key] @ Phi) / scale for key in A}
    return iso_dev, blocks
