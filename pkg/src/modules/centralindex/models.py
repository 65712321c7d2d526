"""
Data models for the central-index analytics package.
Contains dataclasses for distributions, index profiles, cohorts and analysis results.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from .validation import UnknownEpochError, validate_non_negative_int


class TailClass(str, Enum):
    """Weight of the distribution tails according to N_c / H."""
    LIGHT = "light"
    INTERMEDIATE = "intermediate"
    HEAVY = "heavy"
    UNDEFINED = "undefined"


class IndexKind(str, Enum):
    AREA = "area"
    INTERVAL = "interval"
    H = "h"


class ProfileKind(str, Enum):
    SELECTIVE = "selective"
    PRODUCER = "producer"
    POWER_LAW = "power_law"


class ClaimStatus(str, Enum):
    PASS = "PASS"
    FLAGGED = "FLAGGED"  # fails on the full grid, holds on the reading named in the note
    FAIL = "FAIL"


@dataclass(frozen=True)
class CitationDistribution:
    """Per-paper citation counts of one author snapshot, always sorted non-increasing."""
    counts: Tuple[int, ...] = ()

    def __post_init__(self):
        checked = [validate_non_negative_int(c, "citation count") for c in self.counts]
        object.__setattr__(self, "counts", tuple(sorted(checked, reverse=True)))

    def citations_at(self, rank: int) -> int:
        """c_rank with 1-based ranks; ranks past the end hold 0 citations."""
        if 1 <= rank <= len(self.counts):
            return self.counts[rank - 1]
        return 0

    def __len__(self) -> int:
        return len(self.counts)


@dataclass(frozen=True)
class IndexProfile:
    """Scalar indicators of one distribution (Hirsch-core decomposition)."""
    h: int
    H: int                      # h squared
    U: Optional[int]            # upper tail; None when imported from a summary table
    L: Optional[int]            # lower tail; None when imported from a summary table
    N_p: int                    # cited papers
    N_c: int                    # total citations
    n_c: Optional[Fraction]     # N_c / N_p
    tail_ratio: Optional[Fraction]  # N_c / H
    tail_class: TailClass
    upper_lower_ratio: Optional[Fraction] = None  # U / L


@dataclass(frozen=True)
class RadiusSeries:
    """A_j and I_j for j = 1..h-1 (possibly truncated when imported)."""
    h: int
    area: Dict[int, int] = field(default_factory=dict)
    interval: Dict[int, int] = field(default_factory=dict)

    def radii(self) -> List[int]:
        return sorted(self.area)


@dataclass
class Snapshot:
    """One author at one epoch. Raw snapshots keep their distribution."""
    profile: IndexProfile
    series: RadiusSeries
    distribution: Optional[CitationDistribution] = None

    @property
    def precomputed(self) -> bool:
        return self.distribution is None


@dataclass
class AuthorRecord:
    author_id: str
    snapshots: Dict[str, Snapshot] = field(default_factory=dict)


@dataclass
class Cohort:
    """
    A set of authors with labelled snapshots.

    ``epochs`` is the declared order of snapshot labels; it defines
    "precedes" for correlation matrices and regression.
    """
    authors: Dict[str, AuthorRecord] = field(default_factory=dict)
    epochs: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    source: str = "raw"

    def author_ids(self) -> List[str]:
        return sorted(self.authors)

    def require_epoch(self, epoch: str) -> int:
        """Position of an epoch in the declared order."""
        if epoch not in self.epochs:
            raise UnknownEpochError(
                f"unknown epoch {epoch!r} (declared: {', '.join(self.epochs) or 'none'})"
            )
        return self.epochs.index(epoch)

    def snapshot(self, author_id: str, epoch: str) -> Optional[Snapshot]:
        record = self.authors.get(author_id)
        if record is None:
            return None
        return record.snapshots.get(epoch)

    def add_snapshot(self, author_id: str, epoch: str, snapshot: Snapshot) -> None:
        record = self.authors.setdefault(author_id, AuthorRecord(author_id))
        record.snapshots[epoch] = snapshot
        if epoch not in self.epochs:
            self.epochs.append(epoch)

    def reorder(self, epochs: List[str]) -> None:
        """Put ``epochs`` first, in the given order; undeclared labels are an error."""
        for epoch in epochs:
            self.require_epoch(epoch)
        rest = [e for e in self.epochs if e not in epochs]
        self.epochs = list(dict.fromkeys(epochs)) + rest

    def __len__(self) -> int:
        return len(self.authors)


@dataclass(frozen=True)
class CorrelationCell:
    coefficient: float
    n: int


@dataclass
class CorrelationMatrix:
    """
    Radius x radius grid of Pearson coefficients.

    Row j is the index at ``from_epoch``, column k the index at ``to_epoch``.
    Unavailable cells are stored as None.
    """
    kind: IndexKind
    from_epoch: str
    to_epoch: str
    max_radius: int
    min_n: int
    cells: Dict[Tuple[int, int], Optional[CorrelationCell]] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def radii(self) -> range:
        return range(1, self.max_radius + 1)

    def cell(self, j: int, k: int) -> Optional[CorrelationCell]:
        return self.cells.get((j, k))

    def available(self) -> List[Tuple[Tuple[int, int], CorrelationCell]]:
        return [(pos, c) for pos, c in sorted(self.cells.items()) if c is not None]

    def forecast_cells(self) -> List[Tuple[Tuple[int, int], CorrelationCell]]:
        """Available cells whose later radius k is at least the earlier radius j."""
        return [(pos, c) for pos, c in self.available() if pos[1] >= pos[0]]

    def shape(self) -> Tuple[int, int]:
        return (self.max_radius, self.max_radius)


@dataclass
class DifferenceGrid:
    """Cellwise area-minus-interval correlations; None where either side is unavailable."""
    from_epoch: str
    to_epoch: str
    max_radius: int
    values: Dict[Tuple[int, int], Optional[float]] = field(default_factory=dict)

    def available(self) -> List[Tuple[Tuple[int, int], float]]:
        return [(pos, v) for pos, v in sorted(self.values.items()) if v is not None]


@dataclass
class RegressionFit:
    """Least squares of N_c on N_p; positive residual means selective behaviour."""
    slope: float
    intercept: float
    residuals: Dict[str, float]
    r: float
    r_squared: float
    epoch: str = ""

    def ranked_residuals(self) -> List[Tuple[str, float]]:
        return sorted(self.residuals.items(), key=lambda item: (-item[1], item[0]))


@dataclass
class RadiusChoice:
    radius: int
    score: float
    scores: Dict[int, float]
    aggregator: str
    kind: IndexKind
    from_epoch: str
    to_epoch: str


@dataclass
class EpochSummary:
    """Cohort means at one epoch, as in an 'Average' table row."""
    epoch: str
    n_authors: int
    mean_N_p: float
    mean_N_c: float
    mean_h: float
    mean_H: float


@dataclass
class AuthorComparison:
    """Two authors compared on a central index, checked against later h."""
    first: str
    second: str
    epoch: str
    later_epoch: Optional[str]
    kind: IndexKind
    radius: int
    first_value: int
    second_value: int
    favoured: Optional[str]
    first_later_h: Optional[int] = None
    second_later_h: Optional[int] = None
    agrees: Optional[bool] = None


@dataclass(frozen=True)
class ProfileSpec:
    """Parameters of a synthetic citation profile."""
    kind: ProfileKind
    h_target: int
    amplitude: int = 1
    exponent: float = 1.0
    seed: int = 0


@dataclass(frozen=True)
class RawCitationRecord:
    author: str
    epoch: str
    citations: int


@dataclass
class PrecomputedRow:
    author: str
    epoch: str
    h: int
    N_p: int
    N_c: int
    area: Dict[int, Optional[int]] = field(default_factory=dict)
    interval: Dict[int, Optional[int]] = field(default_factory=dict)


@dataclass
class ClaimCheck:
    """One published claim next to its measured value."""
    name: str
    published: str
    measured: str
    status: ClaimStatus
    note: str = ""
