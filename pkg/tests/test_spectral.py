import numpy as np
import pytest
import scipy.sparse as sp

from lmg3 import (
    IrrepShape,
    ModelParams,
    build_h3,
    diagonalize,
    first_peak,
    full_tensor_spectrum,
    population_sweep,
    sector_union_spectrum,
    susceptibility_sweep,
)
from lmg3.model import SectorHamiltonian
from lmg3.spectral import SweepResult, full_tensor_operators


def test_diagonalize_free_symmetric_sector():
    res = diagonalize(build_h3(IrrepShape(8, 0, 0), ModelParams(lam=0.0)))
    assert res.eigenvalues[0] == pytest.approx(-1.0, abs=1e-12)
    assert np.all(np.diff(res.eigenvalues) >= -1e-12)
    assert res.residual <= 1e-9


def test_diagonalize_singlet():
    res = diagonalize(build_h3(IrrepShape(1, 1, 1), ModelParams(lam=2.0)))
    assert res.eigenvalues.shape == (1,)
    assert res.eigenvalues[0] == pytest.approx(0.0, abs=1e-14)


def test_diagonalize_rejects_nonsymmetric():
    bad = sp.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
    h = SectorHamiltonian(IrrepShape(1, 1, 0), ModelParams(), bad)
    with pytest.raises(ValueError):
        diagonalize(h)


def test_sparse_and_dense_paths_agree():
    shape = IrrepShape(20, 8, 0)  # dimension 1287, above the dense cutoff
    h = build_h3(shape, ModelParams(lam=0.9))
    res_sparse = diagonalize(h, k=2)
    w_dense = np.linalg.eigvalsh(h.toarray())
    assert res_sparse.eigenvalues[0] == pytest.approx(w_dense[0], abs=1e-9)
    assert res_sparse.eigenvalues[1] == pytest.approx(w_dense[1], abs=1e-9)
    assert res_sparse.residual <= 1e-9 * (1 + abs(h.matrix).max())


def test_full_tensor_guard_and_single_atom():
    with pytest.raises(ValueError):
        full_tensor_spectrum(5, ModelParams(lam=0.0))
    for lam in (0.0, 1.3):
        w = full_tensor_spectrum(1, ModelParams(lam=lam))
        assert np.allclose(w, [-1.0, 0.0, 1.0], atol=1e-12)


def test_full_tensor_operators_are_collective():
    ops = full_tensor_operators(2)
    # diagonal generators count level occupations; trace of S_ii is N*3^(N-1)
    assert ops[(1, 1)].trace() == pytest.approx(2 * 3)
    comm = ops[(1, 2)] @ ops[(2, 1)] - ops[(2, 1)] @ ops[(1, 2)]
    assert np.max(np.abs(comm - (ops[(1, 1)] - ops[(2, 2)]))) < 1e-12


@pytest.mark.parametrize("N", [2, 3])
def test_oracle_union_small(N):
    for lam in (0.0, 0.7):
        params = ModelParams(lam=lam)
        full = full_tensor_spectrum(N, params)
        union = sector_union_spectrum(N, params)
        assert np.max(np.abs(full - union)) < 1e-9


def test_population_sweep_basics():
    shape = IrrepShape(6, 0, 0)
    grid = [0.0, 0.5, 1.0]
    res = population_sweep(shape, grid)
    assert np.allclose(res.populations.sum(axis=1), 1.0, atol=1e-10)
    assert np.allclose(res.populations[0], [1.0, 0.0, 0.0], atol=1e-12)
    assert np.all(np.isnan(res.chi))


def test_susceptibility_sweep_properties():
    shape = IrrepShape(30, 0, 0)
    grid = np.arange(0.05, 1.01, 0.05)
    res = susceptibility_sweep(shape, grid, dlambda=0.01)
    assert np.all(res.chi >= 0.0)
    fid = 1.0 - res.chi * 0.01**2 / 2.0
    assert np.all((fid >= 0.0) & (fid <= 1.0 + 1e-12))
    # far from the critical region the fidelity stays essentially 1
    assert fid[0] > 0.9999
    assert res.chi[0] < 0.05 * res.chi.max()


def test_sweep_single_point_and_validation():
    shape = IrrepShape(4, 0, 0)
    res = susceptibility_sweep(shape, [0.3], dlambda=0.01)
    assert len(res.lambdas) == 1 and np.isfinite(res.chi[0])
    with pytest.raises(ValueError):
        susceptibility_sweep(shape, [0.3, 0.2], dlambda=0.01)
    with pytest.raises(ValueError):
        susceptibility_sweep(shape, [0.1, 0.2], dlambda=0.0)
    with pytest.raises(ValueError):
        susceptibility_sweep(shape, [], dlambda=0.01)


def test_sweep_threads_are_byte_identical():
    shape = IrrepShape(8, 0, 0)
    grid = np.arange(0.1, 0.9, 0.1)
    one = susceptibility_sweep(shape, grid, dlambda=0.01, threads=1).to_csv()
    many = susceptibility_sweep(shape, grid, dlambda=0.01, threads=3).to_csv()
    assert one == many


def test_sweep_csv_and_json_round():
    import json

    res = susceptibility_sweep(IrrepShape(4, 0, 0), [0.2, 0.4], dlambda=0.01)
    csv = res.to_csv()
    header, *rows = csv.strip().splitlines()
    assert header == "lambda,E0,chi,p1,p2,p3,degeneracy_flag"
    assert len(rows) == 2
    payload = json.loads(res.to_json())
    assert payload["shape"] == [4, 0, 0]
    assert payload["rows"][0]["lambda"] == pytest.approx(0.2)
    assert payload["rows"][0]["E0"] == pytest.approx(float(rows[0].split(",")[1]))


def test_first_peak_detection():
    shape = IrrepShape(2, 0, 0)
    lam = np.array([0.0, 0.1, 0.2, 0.3, 0.4])
    chi = np.array([0.0, 1.0, 3.0, 1.5, 2.0])
    res = SweepResult(shape, lam, 0.01, np.zeros(5), chi, np.zeros((5, 3)), np.zeros(5, bool))
    assert first_peak(res) == (pytest.approx(0.2), pytest.approx(3.0))
    res.degenerate[2] = True  # flagged points invalidate adjacent triples
    assert first_peak(res) is None


def test_ground_vector_sign_convention():
    res = diagonalize(build_h3(IrrepShape(5, 0, 0), ModelParams(lam=0.4)), k=1)
    v = res.ground_vector
    assert v[np.argmax(np.abs(v))] > 0
