"""Corona graph generation, structural analytics, closed-form spectra, and
the numeric oracle that cross-checks them."""

from .distributions import (
    DistributionSeries,
    PowerLawFit,
    cumulative_series,
    fit_exponential,
    fit_power_law,
)
from .graph import (
    CapExceededError,
    CoronaPlan,
    CountOverflowError,
    EdgeListError,
    Graph,
    SeedDescriptor,
    build_seed,
    complete_graph,
    corona_iterate,
    corona_product,
    cycle_graph,
    edge_count_formula,
    node_count_formula,
    path_graph,
    read_edge_list,
    star_graph,
    write_edge_list,
)
from .oracle import (
    MatchReport,
    brute_betweenness,
    brute_diameter,
    build_matrix,
    compare_spectra,
    sym_eigenvalues,
    sym_eigensystem,
)
from .spectral import (
    CubicDiscrepancy,
    EigenPair,
    Spectrum,
    SpectralStepParams,
    adjacency_spectrum_regular,
    adjacency_step_regular,
    algebraic_connectivity,
    build_one_step_eigenpairs,
    closed_form_spectrum,
    laplacian_spectrum,
    laplacian_step,
    signless_spectrum_regular,
    signless_step_regular,
    spectral_radius,
    star_adjacency_spectrum,
    star_cubic_roots,
    star_signless_spectrum,
)
from .structural import (
    average_degree,
    average_degree_limit,
    betweenness_clique_pathcount,
    betweenness_exact,
    betweenness_step_approx,
    cumulative_degree_formula_regular,
    degree_distribution_formula,
    degree_histogram,
    density,
    diameter_formula,
    diameter_measured,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
