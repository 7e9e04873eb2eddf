"""bggkit: exact-arithmetic computations with linear complexes over exterior
algebras, Chern/Schur/Segre series, and Hodge-number inequalities."""

from .bggcore import (
    ExactnessReport,
    ExteriorModule,
    LinearComplex,
    ModuleAxiomError,
    betti_linear,
    bgg_complex,
    degree_slice,
    direct_sum,
    exactness_profile,
    regularity,
    validate_module,
)
from .chern import (
    ChernData,
    HodgeProfile,
    Partition,
    bott_dimension,
    euler_char,
    gamma_series,
    hilbert_poly_F,
    schur_number,
    segre_number,
)
from .examples import (
    ExampleCase,
    abelian_profile,
    builtin_cases,
    koszul_module,
    product_module,
    theta_profile,
    wedge_module,
)
from .inequality import (
    GVData,
    InequalityReport,
    check_theorem_C,
    exorbitance_verdict,
    gv_check,
    solved_bounds,
    surface_h11_bound,
)
from .linforms import (
    LinFormMatrix,
    bilinear_equations,
    eval_at,
    flip,
    generic_rank,
    rank_profile,
)
from .ringkit import MatrixQ, Rational, TruncSeries, binom_power, rank, series_inv, series_mul

__version__ = "0.1.0"
