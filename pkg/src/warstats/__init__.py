"""Statistical toolkit for violent-conflict catalogs.

Builds time series from a war catalog (per-year and per-war fatality counts,
optionally normalized by world population), estimates empirical survival
curves P(X >= x), fits power-law and log-Gaussian models with goodness-of-fit
metrics, and checks the series for randomness via autocorrelation bands and
an FFT periodogram.
"""

__version__ = "0.1.0"

from .catalog import (
    ConflictCatalog,
    ConflictRecord,
    PopulationTable,
    parse_catalog,
    parse_population,
    population_at,
)
from .dist import (
    EmpiricalCcdf,
    FitResult,
    LogGaussianModel,
    PowerLawModel,
    empirical_ccdf,
    fit_log_gaussian,
    fit_power_law,
    fit_tail,
    goodness,
    nls_solve,
)
from .series import (
    AnnualSeries,
    EventSeries,
    fatalities_per_war,
    fatalities_per_year,
    normalize_per_capita,
    wars_per_year,
)
from .timefreq import AcfResult, Spectrum, autocorrelation, autocovariance, periodogram, whiteness_check

__all__ = [
    "AcfResult",
    "AnnualSeries",
    "ConflictCatalog",
    "ConflictRecord",
    "EmpiricalCcdf",
    "EventSeries",
    "FitResult",
    "LogGaussianModel",
    "PopulationTable",
    "PowerLawModel",
    "Spectrum",
    "autocorrelation",
    "autocovariance",
    "empirical_ccdf",
    "fatalities_per_war",
    "fatalities_per_year",
    "fit_log_gaussian",
    "fit_power_law",
    "fit_tail",
    "goodness",
    "nls_solve",
    "normalize_per_capita",
    "parse_catalog",
    "parse_population",
    "periodogram",
    "population_at",
    "wars_per_year",
    "whiteness_check",
]
