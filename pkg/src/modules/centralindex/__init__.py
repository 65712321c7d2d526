"""
Central Index Package - citation-distribution analytics.

h-index, Hirsch-core decomposition, central area/interval indexes and their
cross-snapshot correlation over author cohorts.
"""

from .facade import CentralIndexAnalyzer
from .config import AnalysisConfig
from .models import (
    CitationDistribution,
    ClaimCheck,
    ClaimStatus,
    Cohort,
    CorrelationMatrix,
    IndexKind,
    IndexProfile,
    ProfileKind,
    ProfileSpec,
    RadiusSeries,
    RegressionFit,
    TailClass,
)
from .core_metrics import (
    central_area_index,
    central_interval_index,
    cumulative_citations,
    decompose,
    h_index,
    radius_series,
)
from .reproduce import ClaimVerifier
from .io_ingest import Report
from .validation import (
    CentralIndexError,
    ParseError,
    ValidationError,
)

__all__ = [
    'CentralIndexAnalyzer',
    'AnalysisConfig',
    'CitationDistribution',
    'ClaimCheck',
    'ClaimStatus',
    'Cohort',
    'CorrelationMatrix',
    'IndexKind',
    'IndexProfile',
    'ProfileKind',
    'ProfileSpec',
    'RadiusSeries',
    'RegressionFit',
    'TailClass',
    'central_area_index',
    'central_interval_index',
    'cumulative_citations',
    'decompose',
    'h_index',
    'radius_series',
    'ClaimVerifier',
    'Report',
    'CentralIndexError',
    'ParseError',
    'ValidationError',
]
