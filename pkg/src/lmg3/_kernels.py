"""Hot numeric kernels, JIT-compiled when numba is available.

The mean-field machinery evaluates the coherent-state energy surface millions
of times inside derivative-free minimizations and finite-difference scans, so
the scalar kernels here are compiled with ``numba.njit``.  Setting the
environment variable ``LMG3_NUMBA=0`` (or ``false``/``off``) before import
selects the pure-Python/NumPy fallback; both paths run the identical source.
``benchmarks/bench_kernels.py`` compares the two.
"""

from __future__ import annotations

import os


def _numba_requested() -> bool:
    flag = os.environ.get("LMG3_NUMBA", "").strip().lower()
    return flag not in ("0", "false", "off", "no")


def _surface_energy_impl(x, a1, a2, a3, lam):
    """Mean-field energy density at coherent coordinates.

    ``x`` packs (Re a, Im a, Re b, Im b, Re g, Im g); (a1, a2, a3) are the row
    fractions h_i/N of the sector, lam the pair coupling in splitting units.
    """
    al = x[0] + 1j * x[1]
    be = x[2] + 1j * x[3]
    ga = x[4] + 1j * x[5]
    alc = al.conjugate()
    bec = be.conjugate()
    gac = ga.conjugate()
    l1 = 1.0 + (al * alc).real + (be * bec).real
    bp = be - al * ga
    bpc = bp.conjugate()
    l2 = 1.0 + (ga * gac).real + (bp * bpc).real
    p = a1 - a2
    q = a2 - a3
    t = al + be * gac
    s11 = a1 / l1 + a2 * (t * t.conjugate()).real / (l1 * l2) + a3 * (bp * bpc).real / l2
    s33 = (a1 * (be * bec).real + a2 * (1.0 + (al * alc).real)) / l1 + (a3 - a2) / l2
    s12 = p * al / l1 - q * gac * bp / l2
    s13 = p * be / l1 + q * bp / l2
    s23 = p * alc * be / l1 + q * ga / l2
    off = 2.0 * (s12 * s12 + s13 * s13 + s23 * s23).real
    return (s33 - s11) - lam * off


def _closed_form_energy_impl(mu, lam):
    """Piecewise lowest energy density of the sector mu (nu = 0, eps = 1)."""
    if mu < 2.0 / 3.0:
        lc1 = 1.0 / (2.0 * (1.0 - mu))
        lc2 = 3.0 / (6.0 * mu - 2.0)
        if lam <= lc1:
            return -mu
        if lam <= lc2:
            return -0.5 * (lam * (1.0 - mu) ** 2 + 1.0 / (4.0 * lam) + (3.0 * mu - 1.0))
        return -(2.0 / 3.0) * lam * (1.0 - 3.0 * (1.0 - mu) * mu) - 1.0 / (2.0 * lam)
    lc1 = 1.0 / (4.0 * mu - 2.0)
    if lam <= lc1:
        return -mu
    if lam <= 1.5:
        return 2.0 * lam * mu * (1.0 - mu) - (2.0 * lam + 1.0) ** 2 / (8.0 * lam)
    return -(2.0 / 3.0) * lam * (1.0 - 3.0 * (1.0 - mu) * mu) - 1.0 / (2.0 * lam)


NUMBA_ACTIVE = False
if _numba_requested():
    try:
        from numba import njit

        surface_energy = njit(cache=True)(_surface_energy_impl)
        closed_form_energy_scalar = njit(cache=True)(_closed_form_energy_impl)
        NUMBA_ACTIVE = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        surface_energy = _surface_energy_impl
        closed_form_energy_scalar = _closed_form_energy_impl
else:
    surface_energy = _surface_energy_impl
    closed_form_energy_scalar = _closed_form_energy_impl
