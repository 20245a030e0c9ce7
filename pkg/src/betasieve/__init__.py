"""betasieve: threshold-free screening of inconsistent sampling results.

Each observation (N events out of n trials) becomes a Beta posterior for
its event probability; observations whose posteriors sit apart from
everyone else's are removed one at a time, based purely on the overlap
of the density curves -- no similarity threshold to tune.
"""

__version__ = "0.1.0"

from .detection import (
    Checklist,
    DetectionOutcome,
    IterationTrace,
    build_checklist,
    checklist_count,
    detect,
    find_outlier,
    similarity_list,
)
from .errors import (
    BetaSieveError,
    DuplicatePosteriorError,
    InputFormatError,
    NumericsError,
    TooFewObservationsError,
    ValidationError,
)
from .posterior import Observation, ObservationSet, posterior_of, validate_set
from .report import Report, build_report, pooled_posterior, report_schema
from .similarity import (
    DegeneratePairError,
    PairSimilarity,
    crossing_points,
    overlap_exact,
    overlap_grid,
)
from .special_functions import BetaParams, beta_cdf, log_beta_pdf, log_gamma
from .synth import Arm, CampaignSpec, SplitMix64, generate, sample_binomial

__all__ = [
    "__version__",
    "Arm",
    "BetaParams",
    "BetaSieveError",
    "CampaignSpec",
    "Checklist",
    "DegeneratePairError",
    "DetectionOutcome",
    "DuplicatePosteriorError",
    "InputFormatError",
    "IterationTrace",
    "NumericsError",
    "Observation",
    "ObservationSet",
    "PairSimilarity",
    "Report",
    "SplitMix64",
    "TooFewObservationsError",
    "ValidationError",
    "beta_cdf",
    "build_checklist",
    "build_report",
    "checklist_count",
    "crossing_points",
    "detect",
    "find_outlier",
    "generate",
    "log_beta_pdf",
    "log_gamma",
    "overlap_exact",
    "overlap_grid",
    "pooled_posterior",
    "posterior_of",
    "report_schema",
    "sample_binomial",
    "similarity_list",
    "validate_set",
]
