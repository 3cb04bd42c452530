"""gaplab: a laboratory for the statistics of gaps between consecutive primes.

Exact censuses of prime gaps at power-of-two checkpoints, exact gap moments,
analytic moment predictors, asymptotic expansions with rational coefficients,
and error-term fits. The CLI lives in gaplab.cli, the HTTP service in
gaplab.service.app.
"""

from .analysis import (
    DESK_MAX_EXPONENT,
    DknFit,
    ErrorFit,
    RatioTable,
    expansion_coefficients,
    fit_dkn,
    fit_error_term,
    fit_power_law,
    ratio_table,
)
from .census import (
    CensusSeries,
    GapCensus,
    build_census,
    export_census,
    import_census,
    load_series,
)
from .errors import (
    CensusParseError,
    CensusValidationError,
    FitDomainError,
    ModelDomainError,
)
from .moments import (
    MomentReport,
    exact_moment,
    moment_report,
    predict,
    predict_closed,
    predict_eulerian,
    predict_gamma,
    predict_hb,
    predict_pnt,
)
from .sieve import SieveConfig, enumerate_primes, iter_prime_blocks, iter_primes, prime_count
from .singular import (
    TWIN_CONSTANT,
    bd_partial_sum,
    singular_factor,
    tau_model,
    twin_prime_constant,
)
from .specfn import (
    InverseLogSeries,
    LiValue,
    eulerian_row,
    gamma_real,
    geom_power_sum,
    li_asymptotic,
    li_quadrature,
    li_series,
)

__version__ = "0.1.0"
