"""
Central Index Analyzer Facade.

Single entry point for the CLI: loads cohorts and turns every analysis into a
Report, delegating the work to the specialized modules.
"""
import logging
from pathlib import Path
from typing import List, Optional, Sequence, Union

from ..debug_logger import log_errors
from . import cohort_analysis as analysis
from . import io_ingest
from .config import AnalysisConfig
from .core_metrics import build_snapshot, citation_curve_points, radius_profile_points
from .io_ingest import Report
from .models import (
    ClaimCheck,
    Cohort,
    CorrelationMatrix,
    DifferenceGrid,
    IndexKind,
    ProfileKind,
    ProfileSpec,
)
from .reproduce import ClaimVerifier
from .synthetic import generate, generate_cohort, generate_matched_pair
from .validation import ValidationError

logger = logging.getLogger("CentralIndexDebug")

PROFILE_COLUMNS = ["author", "epoch", "h", "H", "U", "L", "N_p", "N_c",
                   "n_c", "tail_ratio", "tail_class", "upper_lower_ratio"]
DEFAULT_EPOCHS = ["t1", "t2", "t3"]


class CentralIndexAnalyzer:
    """
    Slim facade over ingestion, analysis, synthesis and the claim checklist.

    Usage:
        analyzer = CentralIndexAnalyzer()
        cohort = analyzer.load_fixture("indexes")
        report = analyzer.correlation_report(cohort, "1999", "2004")
    """

    def __init__(self, config: Optional[AnalysisConfig] = None):
        self.config = config or AnalysisConfig.from_env()

    # ------------------------------------------------------------------ loading

    @staticmethod
    def detect_format(data: bytes, name: str = "") -> str:
        """'json', 'raw', 'index' or 'summary' from the file name and header row."""
        if name.lower().endswith(".json") or data.lstrip()[:1] in (b"{", b"["):
            return "json"
        header = data.decode("utf-8-sig", errors="replace").splitlines()[:1]
        columns = {c.strip().strip('"') for c in header[0].split(",")} if header else set()
        if "citations" in columns:
            return "raw"
        if "A1" in columns or "I1" in columns:
            return "index"
        if {"h", "Np", "Nc"} <= columns:
            return "summary"
        return "raw"

    def parse(self, data: bytes, name: str = "") -> Cohort:
        fmt = self.detect_format(data, name)
        logger.debug(f"📄 {name or '<bytes>'}: detected {fmt} format")
        if fmt == "json":
            return io_ingest.parse_cohort_json(data, self.config.include_uncited)
        if fmt == "index":
            return io_ingest.parse_index_table_csv(data)
        if fmt == "summary":
            return io_ingest.parse_summary_table_csv(data)
        return io_ingest.parse_raw_csv(data, self.config.include_uncited, self.config.n_jobs)

    @log_errors
    def load(self, path: Union[str, Path], epochs: Optional[Sequence[str]] = None) -> Cohort:
        path = Path(path)
        cohort = self.parse(path.read_bytes(), path.name)
        if epochs:
            cohort.reorder(list(epochs))
        return cohort

    def load_fixture(self, name: str = "indexes", epochs: Optional[Sequence[str]] = None) -> Cohort:
        cohort = io_ingest.load_fixture(name)
        if epochs:
            cohort.reorder(list(epochs))
        return cohort

    # ------------------------------------------------------------------ helpers

    @staticmethod
    def _pair(cohort: Cohort, from_epoch: Optional[str],
              to_epoch: Optional[str]) -> List[str]:
        """Epoch pair, defaulting to the first two declared epochs."""
        if from_epoch is None:
            if not cohort.epochs:
                raise ValidationError("the cohort declares no epochs")
            from_epoch = cohort.epochs[0]
        if to_epoch is None:
            later = cohort.epochs[cohort.require_epoch(from_epoch) + 1:]
            if not later:
                raise ValidationError(f"no epoch follows {from_epoch!r}")
            to_epoch = later[0]
        return [from_epoch, to_epoch]

    def _radius_range(self, max_radius: Optional[int]) -> range:
        return range(1, (max_radius or self.config.max_radius) + 1)

    # ------------------------------------------------------------------ reports

    @log_errors
    def profile_report(self, cohort: Cohort) -> Report:
        rows = []
        for author in cohort.author_ids():
            for epoch in cohort.epochs:
                snapshot = cohort.snapshot(author, epoch)
                if snapshot is None:
                    continue
                p = snapshot.profile
                rows.append({
                    "author": author, "epoch": epoch, "h": p.h, "H": p.H, "U": p.U, "L": p.L,
                    "N_p": p.N_p, "N_c": p.N_c, "n_c": p.n_c, "tail_ratio": p.tail_ratio,
                    "tail_class": p.tail_class, "upper_lower_ratio": p.upper_lower_ratio,
                })
        return Report("indexes", list(PROFILE_COLUMNS), rows,
                      {"epochs": list(cohort.epochs), "source": cohort.source,
                       "warnings": list(cohort.warnings)})

    @log_errors
    def series_report(self, cohort: Cohort, max_radius: Optional[int] = None) -> Report:
        """Index-table shaped report; its csv form parses back with parse_index_table_csv."""
        radii = self._radius_range(max_radius)
        columns = io_ingest.TABLE_KEYS + [f"A{j}" for j in radii] + [f"I{j}" for j in radii]
        rows = []
        for author in cohort.author_ids():
            for epoch in cohort.epochs:
                snapshot = cohort.snapshot(author, epoch)
                if snapshot is None:
                    continue
                p, s = snapshot.profile, snapshot.series
                row = {"author": author, "epoch": epoch, "h": p.h, "Np": p.N_p, "Nc": p.N_c}
                row.update({f"A{j}": s.area.get(j) for j in radii})
                row.update({f"I{j}": s.interval.get(j) for j in radii})
                rows.append(row)
        return Report("series", columns, rows,
                      {"max_radius": len(radii), "warnings": list(cohort.warnings)})

    def matrices(self, cohort: Cohort, from_epoch: Optional[str] = None,
                 to_epoch: Optional[str] = None, max_radius: Optional[int] = None,
                 min_n: Optional[int] = None) -> List[CorrelationMatrix]:
        """Area and interval matrices for one epoch pair."""
        a, b = self._pair(cohort, from_epoch, to_epoch)
        return [
            analysis.correlation_matrix(cohort, kind, a, b,
                                        max_radius or self.config.max_radius,
                                        min_n or self.config.min_n,
                                        self.config.n_jobs)
            for kind in (IndexKind.AREA, IndexKind.INTERVAL)
        ]

    @log_errors
    def correlation_report(self, cohort: Cohort, from_epoch: Optional[str] = None,
                           to_epoch: Optional[str] = None, kind: Optional[str] = None,
                           max_radius: Optional[int] = None,
                           min_n: Optional[int] = None) -> Report:
        """
        Rows (matrix, j, k1..kR): the area and interval grids and their difference,
        or only the grid named by ``kind``.
        """
        area, interval = self.matrices(cohort, from_epoch, to_epoch, max_radius, min_n)
        difference = analysis.matrix_difference(area, interval)
        radii = area.radii()
        columns = ["matrix", "j"] + [f"k{k}" for k in radii]

        grids = [("area", area), ("interval", interval), ("difference", difference)]
        if kind is not None:
            wanted = analysis.as_kind(kind, allow_h=False).value
            grids = [g for g in grids if g[0] == wanted]

        rows = []
        for name, grid in grids:
            for j in radii:
                row = {"matrix": name, "j": j}
                for k in radii:
                    if isinstance(grid, DifferenceGrid):
                        row[f"k{k}"] = grid.values.get((j, k))
                    else:
                        cell = grid.cell(j, k)
                        row[f"k{k}"] = cell.coefficient if cell else None
                rows.append(row)

        negatives, available = analysis.count_negative(difference, "full")
        negatives_forecast, available_forecast = analysis.count_negative(difference, "forecast")
        metadata = {
            "from_epoch": area.from_epoch,
            "to_epoch": area.to_epoch,
            "max_radius": area.max_radius,
            "min_n": area.min_n,
            "deletion": area.metadata["deletion"],
            "sample_sizes": {f"{kname}:{j},{k}": c.n
                             for kname, m in (("area", area), ("interval", interval))
                             for (j, k), c in m.available()},
            "negative_differences": f"{negatives}/{available}",
            "negative_differences_forecast": f"{negatives_forecast}/{available_forecast}",
            "forecast_region": area.metadata["forecast_region"],
        }
        return Report("correlation", columns, rows, metadata)

    @log_errors
    def radius_report(self, cohort: Cohort, from_epoch: Optional[str] = None,
                      to_epoch: Optional[str] = None, kind: Optional[str] = None,
                      max_radius: Optional[int] = None, min_n: Optional[int] = None,
                      aggregator: Optional[str] = None) -> Report:
        a, b = self._pair(cohort, from_epoch, to_epoch)
        aggregator = aggregator or self.config.aggregator
        choice = analysis.optimal_radius(
            cohort, kind or IndexKind.AREA, a, b,
            max_radius or self.config.max_radius, min_n or self.config.min_n,
            aggregator, self.config.n_jobs,
        )
        heuristic = analysis.half_mean_h_heuristic(cohort, a)

        rows = [{"radius": j, "score": s, "selected": "yes" if j == choice.radius else ""}
                for j, s in sorted(choice.scores.items())]
        return Report("radius", ["radius", "score", "selected"], rows, {
            "kind": choice.kind,
            "from_epoch": a,
            "to_epoch": b,
            "aggregator": aggregator,
            "optimal_radius": choice.radius,
            "score": choice.score,
            "half_mean_h": heuristic,
        })

    @log_errors
    def regression_report(self, cohort: Cohort, epoch: Optional[str] = None) -> Report:
        """Fit per epoch (or just ``epoch``); residual ranks are per epoch, 1 = most selective."""
        epochs = [epoch] if epoch else list(cohort.epochs)
        rows, fits = [], {}
        for label in epochs:
            fit = analysis.production_impact_regression(cohort, label)
            fits[label] = {"slope": fit.slope, "intercept": fit.intercept,
                           "r": fit.r, "r_squared": fit.r_squared}
            for rank, (author, residual) in enumerate(fit.ranked_residuals(), start=1):
                p = cohort.snapshot(author, label).profile
                rows.append({
                    "epoch": label, "author": author, "N_p": p.N_p, "N_c": p.N_c,
                    "fitted": fit.slope * p.N_p + fit.intercept, "residual": residual,
                    "rank": rank, "selective": "yes" if residual > 0 else "",
                })
        return Report("regression",
                      ["epoch", "rank", "author", "N_p", "N_c", "fitted", "residual", "selective"],
                      rows, {"fits": fits}, ordered=True)

    @log_errors
    def curve_report(self, cohort: Cohort, max_rank: int = 100,
                     radius_profile: bool = False) -> Report:
        rows = []
        skipped = []
        for author in cohort.author_ids():
            for epoch in cohort.epochs:
                snapshot = cohort.snapshot(author, epoch)
                if snapshot is None:
                    continue
                if radius_profile:
                    for j, a, i in radius_profile_points(snapshot.series):
                        rows.append({"author": author, "epoch": epoch, "radius": j, "A": a, "I": i})
                elif snapshot.distribution is None:
                    skipped.append(f"{author} {epoch}")
                else:
                    for rank, c in citation_curve_points(snapshot.distribution, max_rank):
                        rows.append({"author": author, "epoch": epoch, "rank": rank, "citations": c})

        if skipped:
            logger.warning(f"⚠️ No citation curve for precomputed snapshots: {', '.join(skipped)}")
        columns = (["author", "epoch", "radius", "A", "I"] if radius_profile
                   else ["author", "epoch", "rank", "citations"])
        return Report("curve", columns, rows, {"max_rank": max_rank, "skipped": skipped})

    # ------------------------------------------------------------------ synthesis

    @log_errors
    def generate(self, kind: str, h_target: int = 10, amplitude: int = 2,
                 exponent: float = 1.0, seed: int = 0, n_authors: int = 15,
                 epochs: Optional[Sequence[str]] = None) -> Cohort:
        """Synthetic cohort for ``kind`` in selective / producer / power_law / pair / cohort."""
        epochs = list(epochs) if epochs else list(DEFAULT_EPOCHS)
        include = self.config.include_uncited

        if kind == "cohort":
            return generate_cohort(n_authors, epochs, seed, include)

        cohort = Cohort(epochs=[epochs[0]], source="synthetic")
        if kind == "pair":
            selective, producer = generate_matched_pair(h_target, amplitude, seed)
            cohort.add_snapshot("selective", epochs[0], build_snapshot(selective, include))
            cohort.add_snapshot("producer", epochs[0], build_snapshot(producer, include))
            return cohort

        try:
            profile = ProfileKind(kind)
        except ValueError:
            raise ValidationError(
                f"unknown profile kind {kind!r} (selective, producer, power_law, pair, cohort)"
            ) from None
        distribution = generate(ProfileSpec(profile, h_target, amplitude, exponent, seed))
        cohort.add_snapshot(profile.value, epochs[0], build_snapshot(distribution, include))
        return cohort

    # ------------------------------------------------------------------ claims

    def verifier(self) -> ClaimVerifier:
        return ClaimVerifier(self.config)

    @staticmethod
    def claims_report(checks: List[ClaimCheck]) -> Report:
        rows = [{"claim": c.name, "published": c.published, "measured": c.measured,
                 "status": c.status, "note": c.note} for c in checks]
        return Report("reproduce", ["claim", "published", "measured", "status", "note"], rows)
