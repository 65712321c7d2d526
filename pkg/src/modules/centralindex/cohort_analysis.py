"""
Cohort Analysis Module.

Cross-snapshot statistics over a Cohort: Pearson correlation matrices of the
central indexes between two epochs, the optimal radius, area-vs-interval
differences, the production-impact regression and a few author comparisons.

Correlation cells use pairwise-complete deletion: cell (j, k) is computed over the
authors that have index_j at the earlier epoch AND index_k at the later one.
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from joblib import Parallel, delayed
from sklearn.linear_model import LinearRegression

from .config import AGGREGATORS
from .models import (
    AuthorComparison,
    Cohort,
    CorrelationCell,
    CorrelationMatrix,
    DifferenceGrid,
    EpochSummary,
    IndexKind,
    RadiusChoice,
    RegressionFit,
    Snapshot,
)
from .validation import (
    InsufficientDataError,
    RadiusUndefinedError,
    UndefinedCorrelationError,
    UndefinedFitError,
    ValidationError,
    validate_max_radius,
    validate_min_n,
)

logger = logging.getLogger("CentralIndexDebug")

REGIONS = ("full", "forecast")
MIN_REGRESSION_AUTHORS = 3

KindLike = Union[IndexKind, str]


def as_kind(kind: KindLike, allow_h: bool = True) -> IndexKind:
    """Coerce 'area' / 'interval' / 'h' to IndexKind."""
    try:
        resolved = IndexKind(kind)
    except ValueError:
        raise ValidationError(f"unknown index kind {kind!r}") from None
    if resolved == IndexKind.H and not allow_h:
        raise ValidationError("index kind must be area or interval here")
    return resolved


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """
    Pearson product-moment coefficient.

    Raises:
        UndefinedCorrelationError: unequal lengths, fewer than 2 points, or a constant vector
    """
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)

    if xs.shape != ys.shape or xs.ndim != 1:
        raise UndefinedCorrelationError(
            f"undefined correlation: vectors have different lengths ({xs.size} vs {ys.size})"
        )
    if xs.size < 2:
        raise UndefinedCorrelationError(
            f"undefined correlation: need at least 2 points, got {xs.size}"
        )
    if np.ptp(xs) == 0 or np.ptp(ys) == 0:
        raise UndefinedCorrelationError("undefined correlation: zero variance")

    dx = xs - xs.mean()
    dy = ys - ys.mean()
    r = float(np.dot(dx, dy) / np.sqrt(np.dot(dx, dx) * np.dot(dy, dy)))
    return min(1.0, max(-1.0, r))


def index_value(snapshot: Optional[Snapshot], kind: IndexKind,
                radius: Optional[int]) -> Optional[int]:
    """One index of one snapshot; None when the snapshot or the radius is missing."""
    if snapshot is None:
        return None
    if kind == IndexKind.H:
        return snapshot.profile.h
    series = snapshot.series.area if kind == IndexKind.AREA else snapshot.series.interval
    return series.get(radius)


def index_vectors(cohort: Cohort, kind: KindLike, epoch: str,
                  radius: Optional[int] = None) -> Dict[str, Optional[int]]:
    """
    Per-author value of one index at one epoch, authors in sorted order.

    Authors without a snapshot at ``epoch``, or whose h does not admit ``radius``,
    map to None (the "-" of an index table).
    """
    kind = as_kind(kind)
    cohort.require_epoch(epoch)

    if kind == IndexKind.H:
        if radius is not None:
            raise ValidationError("the h index takes no radius")
    else:
        if radius is None:
            raise ValidationError(f"a radius is required for the {kind.value} index")
        validate_max_radius(radius)

    return {
        author: index_value(cohort.snapshot(author, epoch), kind, radius)
        for author in cohort.author_ids()
    }


def _paired(first: Dict[str, Optional[float]],
            second: Dict[str, Optional[float]]) -> Tuple[List[float], List[float]]:
    """Pairwise-complete deletion over the shared authors."""
    xs, ys = [], []
    for author in sorted(first):
        a, b = first[author], second.get(author)
        if a is not None and b is not None:
            xs.append(a)
            ys.append(b)
    return xs, ys


def _cell(first, second, min_n: int) -> Optional[CorrelationCell]:
    xs, ys = _paired(first, second)
    if len(xs) < min_n:
        return None
    try:
        return CorrelationCell(pearson(xs, ys), len(xs))
    except UndefinedCorrelationError:
        return None


def _check_order(cohort: Cohort, from_epoch: str, to_epoch: str) -> None:
    if cohort.require_epoch(from_epoch) >= cohort.require_epoch(to_epoch):
        raise ValidationError(
            f"epoch {from_epoch!r} must precede {to_epoch!r} "
            f"(declared order: {', '.join(cohort.epochs)})"
        )


def correlation_matrix(cohort: Cohort, kind: KindLike, from_epoch: str, to_epoch: str,
                       max_radius: int = 10, min_n: int = 9,
                       n_jobs: int = 1) -> CorrelationMatrix:
    """
    Radius x radius Pearson grid between two epochs.

    Cells with fewer than ``min_n`` paired authors, or a constant side, are None.
    Rows are evaluated on a joblib thread pool and gathered by radius, so the
    result does not depend on ``n_jobs``.
    """
    kind = as_kind(kind, allow_h=False)
    validate_max_radius(max_radius)
    validate_min_n(min_n)
    _check_order(cohort, from_epoch, to_epoch)

    radii = range(1, max_radius + 1)
    before = {j: index_vectors(cohort, kind, from_epoch, j) for j in radii}
    after = {k: index_vectors(cohort, kind, to_epoch, k) for k in radii}

    def row(j: int) -> Dict[Tuple[int, int], Optional[CorrelationCell]]:
        return {(j, k): _cell(before[j], after[k], min_n) for k in radii}

    rows = Parallel(n_jobs=n_jobs, prefer="threads")(delayed(row)(j) for j in radii)

    cells: Dict[Tuple[int, int], Optional[CorrelationCell]] = {}
    for part in rows:
        cells.update(part)

    matrix = CorrelationMatrix(
        kind=kind,
        from_epoch=from_epoch,
        to_epoch=to_epoch,
        max_radius=max_radius,
        min_n=min_n,
        cells=cells,
    )
    matrix.metadata.update({
        "deletion": "pairwise-complete",
        "available": len(matrix.available()),
        "forecast_available": len(matrix.forecast_cells()),
        "forecast_region": "later radius k >= earlier radius j",
    })
    logger.debug(
        f"📐 {kind.value} matrix {from_epoch}->{to_epoch}: "
        f"{matrix.metadata['available']}/{max_radius * max_radius} cells available"
    )
    return matrix


def matrix_difference(a: CorrelationMatrix, b: CorrelationMatrix) -> DifferenceGrid:
    """Cellwise a - b; None wherever either side is unavailable."""
    if a.shape() != b.shape():
        raise ValidationError(f"matrix shapes differ: {a.shape()} vs {b.shape()}")
    if (a.from_epoch, a.to_epoch) != (b.from_epoch, b.to_epoch):
        raise ValidationError(
            f"matrices cover different epochs: {a.from_epoch}->{a.to_epoch} "
            f"vs {b.from_epoch}->{b.to_epoch}"
        )

    values: Dict[Tuple[int, int], Optional[float]] = {}
    for j in a.radii():
        for k in a.radii():
            left, right = a.cell(j, k), b.cell(j, k)
            if left is None or right is None:
                values[(j, k)] = None
            else:
                values[(j, k)] = left.coefficient - right.coefficient

    return DifferenceGrid(a.from_epoch, a.to_epoch, a.max_radius, values)


def count_negative(grid: DifferenceGrid, region: str = "full") -> Tuple[int, int]:
    """(negative cells, available cells) over the full grid or the k >= j region."""
    if region not in REGIONS:
        raise ValidationError(f"region must be one of {', '.join(REGIONS)}, got {region!r}")

    cells = grid.available()
    if region == "forecast":
        cells = [(pos, v) for pos, v in cells if pos[1] >= pos[0]]
    return sum(1 for _, v in cells if v < 0), len(cells)


def select_radius(matrix: CorrelationMatrix, aggregator: str = "forward") -> RadiusChoice:
    """
    Radius whose row best predicts the later-epoch indexes.

    ``forward`` scores row j by the mean of its available cells with k >= j,
    ``row`` by the mean of all its available cells. Ties go to the smaller j.
    """
    if aggregator not in AGGREGATORS:
        raise ValidationError(
            f"aggregator must be one of {', '.join(AGGREGATORS)}, got {aggregator!r}"
        )

    scores: Dict[int, float] = {}
    for j in matrix.radii():
        values = [
            c.coefficient for (row, k), c in matrix.available()
            if row == j and (aggregator == "row" or k >= j)
        ]
        if values:
            scores[j] = float(np.mean(values))

    if not scores:
        raise InsufficientDataError(
            f"insufficient data: no available cell in the {matrix.kind.value} matrix "
            f"{matrix.from_epoch}->{matrix.to_epoch} (min_n={matrix.min_n})"
        )

    best = min(scores)
    for j in sorted(scores):
        if scores[j] > scores[best]:
            best = j

    return RadiusChoice(
        radius=best,
        score=scores[best],
        scores=scores,
        aggregator=aggregator,
        kind=matrix.kind,
        from_epoch=matrix.from_epoch,
        to_epoch=matrix.to_epoch,
    )


def optimal_radius(cohort: Cohort, kind: KindLike, from_epoch: str, to_epoch: str,
                   max_radius: int = 10, min_n: int = 9, aggregator: str = "forward",
                   n_jobs: int = 1) -> RadiusChoice:
    matrix = correlation_matrix(cohort, kind, from_epoch, to_epoch, max_radius, min_n, n_jobs)
    choice = select_radius(matrix, aggregator)
    logger.info(
        f"🎯 Optimal {choice.kind.value} radius {from_epoch}->{to_epoch}: "
        f"j={choice.radius} (score {choice.score:.4f}, {aggregator})"
    )
    return choice


def _authors_at(cohort: Cohort, epoch: str) -> List[Tuple[str, Snapshot]]:
    cohort.require_epoch(epoch)
    pairs = []
    for author in cohort.author_ids():
        snapshot = cohort.snapshot(author, epoch)
        if snapshot is not None:
            pairs.append((author, snapshot))
    return pairs


def half_mean_h_heuristic(cohort: Cohort, epoch: str) -> int:
    """floor(mean h / 2), at least 1."""
    snapshots = _authors_at(cohort, epoch)
    if not snapshots:
        raise ValidationError(f"no authors at epoch {epoch!r}")

    mean_h = float(np.mean([s.profile.h for _, s in snapshots]))
    return max(1, int(mean_h // 2))


def production_impact_regression(cohort: Cohort, epoch: str) -> RegressionFit:
    """
    Least squares of N_c on N_p with intercept.

    A positive residual places the author above the line: more citations than
    their production predicts, i.e. a selective profile.
    """
    snapshots = _authors_at(cohort, epoch)
    if len(snapshots) < MIN_REGRESSION_AUTHORS:
        raise UndefinedFitError(
            f"undefined fit: need at least {MIN_REGRESSION_AUTHORS} authors at {epoch!r}, "
            f"got {len(snapshots)}"
        )

    authors = [a for a, _ in snapshots]
    N_p = np.array([s.profile.N_p for _, s in snapshots], dtype=float)
    N_c = np.array([s.profile.N_c for _, s in snapshots], dtype=float)
    if np.ptp(N_p) == 0:
        raise UndefinedFitError(f"undefined fit: N_p is constant at {epoch!r}")

    model = LinearRegression()
    model.fit(N_p.reshape(-1, 1), N_c)
    slope = float(model.coef_[0])
    intercept = float(model.intercept_)
    residuals = N_c - model.predict(N_p.reshape(-1, 1))

    try:
        r = pearson(N_p, N_c)
    except UndefinedCorrelationError:
        # constant N_c: the fit is flat and explains nothing
        r = 0.0

    fit = RegressionFit(
        slope=slope,
        intercept=intercept,
        residuals={a: float(v) for a, v in zip(authors, residuals)},
        r=r,
        r_squared=r * r,
        epoch=epoch,
    )
    logger.info(f"📈 Regression {epoch}: N_c = {slope:.4f}*N_p + {intercept:.4f} (r={r:.4f})")
    return fit


def h_correlation(cohort: Cohort, first_epoch: str, second_epoch: str) -> float:
    """Pearson of h over the authors present at both epochs."""
    first = index_vectors(cohort, IndexKind.H, first_epoch)
    second = index_vectors(cohort, IndexKind.H, second_epoch)
    xs, ys = _paired(first, second)
    return pearson(xs, ys)


def epoch_summary(cohort: Cohort, epoch: str) -> EpochSummary:
    """Cohort means at one epoch."""
    snapshots = _authors_at(cohort, epoch)
    if not snapshots:
        raise ValidationError(f"no authors at epoch {epoch!r}")

    profiles = [s.profile for _, s in snapshots]
    return EpochSummary(
        epoch=epoch,
        n_authors=len(profiles),
        mean_N_p=float(np.mean([p.N_p for p in profiles])),
        mean_N_c=float(np.mean([p.N_c for p in profiles])),
        mean_h=float(np.mean([p.h for p in profiles])),
        mean_H=float(np.mean([p.H for p in profiles])),
    )


def _require_snapshot(cohort: Cohort, author: str, epoch: str) -> Snapshot:
    cohort.require_epoch(epoch)
    snapshot = cohort.snapshot(author, epoch)
    if snapshot is None:
        raise ValidationError(f"author {author!r} has no snapshot at {epoch!r}")
    return snapshot


def _shared_radii(first: Snapshot, second: Snapshot, kind: IndexKind) -> List[int]:
    def defined(s: Snapshot):
        series = s.series.area if kind == IndexKind.AREA else s.series.interval
        return {j for j, v in series.items() if v is not None}

    return sorted(defined(first) & defined(second))


def compare_authors(cohort: Cohort, first: str, second: str, epoch: str,
                    later_epoch: Optional[str] = None, kind: KindLike = IndexKind.AREA,
                    radius: Optional[int] = None,
                    reference_radius: int = 7) -> AuthorComparison:
    """
    Compare two authors on one central index.

    Without ``radius`` the largest radius defined for both, capped at
    ``reference_radius``, is used. With ``later_epoch`` the comparison also
    records whether the favoured author ends up with the higher h.
    """
    kind = as_kind(kind, allow_h=False)
    a = _require_snapshot(cohort, first, epoch)
    b = _require_snapshot(cohort, second, epoch)

    shared = _shared_radii(a, b, kind)
    if radius is None:
        capped = [j for j in shared if j <= reference_radius]
        if not capped:
            raise RadiusUndefinedError(
                f"{first!r} and {second!r} share no radius up to {reference_radius} at {epoch!r}"
            )
        radius = capped[-1]
    elif radius not in shared:
        raise RadiusUndefinedError(
            f"radius {radius} is not defined for both {first!r} and {second!r} at {epoch!r}"
        )

    first_value = index_value(a, kind, radius)
    second_value = index_value(b, kind, radius)
    favoured = None
    if first_value != second_value:
        favoured = first if first_value > second_value else second

    comparison = AuthorComparison(
        first=first,
        second=second,
        epoch=epoch,
        later_epoch=later_epoch,
        kind=kind,
        radius=radius,
        first_value=first_value,
        second_value=second_value,
        favoured=favoured,
    )

    if later_epoch is not None:
        cohort.require_epoch(later_epoch)
        later_a = cohort.snapshot(first, later_epoch)
        later_b = cohort.snapshot(second, later_epoch)
        comparison.first_later_h = later_a.profile.h if later_a else None
        comparison.second_later_h = later_b.profile.h if later_b else None
        if (favoured is not None and None not in (comparison.first_later_h, comparison.second_later_h)
                and comparison.first_later_h != comparison.second_later_h):
            leader = first if comparison.first_later_h > comparison.second_later_h else second
            comparison.agrees = leader == favoured

    return comparison


def crossover_radius(cohort: Cohort, first: str, second: str, epoch: str,
                     kind: KindLike = IndexKind.AREA) -> Optional[int]:
    """Smallest shared radius where ``second``'s index exceeds ``first``'s; None if never."""
    kind = as_kind(kind, allow_h=False)
    a = _require_snapshot(cohort, first, epoch)
    b = _require_snapshot(cohort, second, epoch)

    for j in _shared_radii(a, b, kind):
        if index_value(b, kind, j) > index_value(a, kind, j):
            return j
    return None
