"""Three-level LMG toolkit: U(3) symmetry sectors, spectra, and mean field."""

__version__ = "0.1.0"

from .basis import (
    GtPattern,
    IrrepShape,
    SectorProportions,
    Weight,
    catalan_series,
    dimension,
    enumerate_basis,
    enumerate_shapes,
    hw_pattern,
    lw_pattern,
    multiplicity,
    weight_of,
)
from .operators import SectorOperator, all_ops, check_algebra, diagonal_op, long_op, step_op
from .model import (
    ModelParams,
    SectorHamiltonian,
    TwoLevelParams,
    build_h2,
    build_h3,
    free_energy_of_pattern,
    normalized_parity_ops,
    parity_ops,
    parity_sector_sizes,
)
from .spectral import (
    SpectrumResult,
    SweepResult,
    diagonalize,
    first_peak,
    full_tensor_operators,
    full_tensor_spectrum,
    population_sweep,
    sector_union_spectrum,
    susceptibility_sweep,
)
from .coherent import (
    CoherentPoint,
    SymbolTable,
    bergman_kernel,
    cat_state,
    coherent_vector,
    expectation_table,
    parity_map,
    symbols_closed_form,
    symbols_via_kernel,
    unitary_from_point,
)
from .thermo import (
    PhaseResult,
    QUADRUPLE_POINT,
    classify_phase,
    closed_form_energy,
    critical_coordinates,
    critical_curves,
    derivative_scan,
    minimize_surface,
    minimizer_points,
    reduce_nu,
    surface_value,
    thermo_populations,
)
