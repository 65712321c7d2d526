"""
File ingestion, embedded fixtures and result serialization.

Formats:
  raw csv          author,epoch,citations                      (one paper per row)
  index-table csv  author,epoch,h,Np,Nc,A1..AR,I1..IR          ("-" or empty = missing)
  summary csv      author,epoch,Np,Nc,h[,H][,first_year]       (the production/impact table)
  json             {"kind", "metadata", "authors": {id: {epoch: {...}}}}  for cohorts
                   {"kind", "metadata", "rows": [...]}                    for tabular reports

Every parser reports the 1-based line of the offending row.
"""
import io
import json
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd
from joblib import Parallel, delayed

from .core_metrics import build_snapshot, summary_profile
from .models import CitationDistribution, Cohort, PrecomputedRow, RadiusSeries, RawCitationRecord, Snapshot
from .validation import (
    ParseError,
    ValidationError,
    validate_author_id,
    validate_epoch_label,
    validate_max_radius,
    validate_non_negative_int,
)

logger = logging.getLogger("CentralIndexDebug")

DATA_DIR = Path(__file__).parent / "data"
FIXTURES = {"summary": "summary.csv", "indexes": "indexes.csv"}

RAW_COLUMNS = ["author", "epoch", "citations"]
TABLE_KEYS = ["author", "epoch", "h", "Np", "Nc"]
SUMMARY_KEYS = ["author", "epoch", "Np", "Nc", "h"]
MISSING = ("-", "")


@dataclass
class Report:
    """A tabular result ready for csv or json output."""
    kind: str
    columns: List[str]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)
    ordered: bool = False  # keep row order (rankings) instead of sorting by author


# ============================================================================
# HELPERS
# ============================================================================

def epoch_sort_key(label: str):
    """Natural order: "2004" < "2009" < "2010", "t2" < "t10"."""
    return [(0, int(part), "") if part.isdigit() else (1, 0, part)
            for part in re.split(r"(\d+)", label) if part]


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise ParseError(f"input is not valid UTF-8 ({e.reason} at byte {e.start})") from None


def _read_frame(data: bytes) -> pd.DataFrame:
    """
    All cells as stripped strings, indexed by the physical line each row starts on.

    The header is tokenized as an ordinary row, so a data row with a surplus
    field is a tokenizing error instead of being taken as an index column.
    """
    text = _decode(data)
    if not text.strip():
        raise ParseError("empty input: a header row is required", line=1)

    try:
        grid = pd.read_csv(
            io.StringIO(text),
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
        )
    except pd.errors.ParserError as e:
        match = re.search(r"line (\d+)", str(e))
        raise ParseError(
            f"malformed row ({str(e).strip()})",
            line=int(match.group(1)) if match else None,
        ) from None

    # blank lines and short rows come back as NaN
    grid = grid.fillna("").astype(str)

    # quoted cells may span several physical lines
    spans = 1 + grid.apply(lambda column: column.str.count("\n")).sum(axis=1)
    starts = 1 + spans.cumsum() - spans

    header = [c.strip() for c in grid.iloc[0]]
    duplicated = sorted({c for c in header if header.count(c) > 1})
    if duplicated:
        raise ParseError(f"duplicate column {', '.join(duplicated)!r} in header", line=1)

    frame = grid.iloc[1:].copy()
    frame.columns = header
    frame.index = starts.iloc[1:].astype(int)
    for column in frame.columns:
        frame[column] = frame[column].str.strip()
    return frame


def _rows(frame: pd.DataFrame):
    """(line number, row dict) for every non-blank row."""
    for line, record in zip(frame.index, frame.to_dict("records")):
        if all(v == "" for v in record.values()):
            continue
        yield int(line), record


def _int_field(value: str, name: str, line: int) -> int:
    if not re.fullmatch(r"-?\d+", value):
        raise ParseError(f"{name} must be an integer, got {value!r}", line)
    number = int(value)
    if number < 0:
        raise ParseError(f"{name} must be non-negative, got {number}", line)
    return number


def _optional_int(value: str, name: str, line: int) -> Optional[int]:
    if value in MISSING:
        return None
    return _int_field(value, name, line)


def _identity(record: Dict[str, str], line: int) -> Tuple[str, str]:
    try:
        return validate_author_id(record["author"]), validate_epoch_label(record["epoch"])
    except ValidationError as e:
        raise ParseError(str(e), line) from None


def _declare_epochs(cohort: Cohort, labels) -> None:
    cohort.epochs = sorted(set(labels), key=epoch_sort_key)


def _to_csv(columns: List[str], rows: List[List[Any]]) -> bytes:
    frame = pd.DataFrame(rows, columns=columns)
    return frame.to_csv(index=False, lineterminator="\n").encode("utf-8")


# ============================================================================
# RAW CITATION LISTS
# ============================================================================

def parse_raw_csv(data: bytes, include_uncited: bool = False, n_jobs: int = 1) -> Cohort:
    """
    Raw per-paper csv to a Cohort.

    Rows may come in any order. Zero-citation rows are kept in the distribution
    and only count towards N_p with ``include_uncited``.

    Raises:
        ParseError: bad header, malformed row, non-integer or negative citations
    """
    frame = _read_frame(data)
    if sorted(frame.columns) != sorted(RAW_COLUMNS):
        raise ParseError(
            f"unknown header {','.join(frame.columns)!r} (expected {','.join(RAW_COLUMNS)})",
            line=1,
        )

    records = []
    for line, record in _rows(frame):
        author, epoch = _identity(record, line)
        citations = _int_field(record["citations"], "citations", line)
        records.append(RawCitationRecord(author, epoch, citations))

    groups: Dict[Tuple[str, str], List[int]] = {}
    for r in records:
        groups.setdefault((r.author, r.epoch), []).append(r.citations)

    keys = sorted(groups)
    snapshots = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(build_snapshot)(CitationDistribution(tuple(groups[key])), include_uncited)
        for key in keys
    )

    cohort = Cohort(source="raw")
    for (author, epoch), snapshot in zip(keys, snapshots):
        cohort.add_snapshot(author, epoch, snapshot)
    _declare_epochs(cohort, [epoch for _, epoch in keys])

    logger.info(f"📥 Parsed raw csv: {len(cohort)} authors, {len(keys)} snapshots, "
                f"{sum(len(v) for v in groups.values())} papers")
    return cohort


def write_raw_csv(cohort: Cohort) -> bytes:
    """Raw csv of a cohort whose snapshots all carry distributions."""
    rows = []
    for author in cohort.author_ids():
        for epoch in cohort.epochs:
            snapshot = cohort.snapshot(author, epoch)
            if snapshot is None:
                continue
            if snapshot.distribution is None:
                raise ValidationError(
                    f"{author!r} at {epoch!r} is precomputed; raw citations are unavailable"
                )
            rows.extend([author, epoch, c] for c in snapshot.distribution.counts)
    return _to_csv(RAW_COLUMNS, rows)


# ============================================================================
# INDEX TABLES
# ============================================================================

def _table_radius(columns: List[str]) -> int:
    missing = [c for c in TABLE_KEYS if c not in columns]
    if missing:
        raise ParseError(f"index table header lacks {', '.join(missing)}", line=1)

    area = sorted(int(c[1:]) for c in columns if re.fullmatch(r"A\d+", c))
    interval = sorted(int(c[1:]) for c in columns if re.fullmatch(r"I\d+", c))
    radius = len(area)
    if area != list(range(1, radius + 1)) or interval != area:
        raise ParseError("index table header needs A1..AR and I1..IR for the same R", line=1)

    extra = set(columns) - set(TABLE_KEYS) - {f"A{j}" for j in area} - {f"I{j}" for j in area}
    if extra:
        raise ParseError(f"unknown columns in index table header: {', '.join(sorted(extra))}", line=1)
    return radius


def _row_warnings(row: PrecomputedRow, line: int) -> List[str]:
    warnings = []
    where = f"line {line} ({row.author}, {row.epoch})"

    for name, series in (("A", row.area), ("I", row.interval)):
        present = [(j, v) for j, v in sorted(series.items()) if v is not None]
        for (j, v), (k, w) in zip(present, present[1:]):
            if w < v:
                warnings.append(f"{where}: {name}{k}={w} is below {name}{j}={v}")
        for j, v in sorted(series.items()):
            if v is None and j < row.h:
                warnings.append(f"{where}: {name}{j} missing although h={row.h}")

    for j, a in sorted(row.area.items()):
        i = row.interval.get(j)
        if a is not None and i is not None and a < i:
            warnings.append(f"{where}: A{j}={a} is below I{j}={i}")
    return warnings


def parse_index_table_csv(data: bytes) -> Cohort:
    """
    Precomputed index table to a Cohort.

    A value present at a radius j >= h is rejected: that index cannot exist.
    Non-monotone series, A_j < I_j and in-domain gaps are kept and reported as
    warnings on the cohort.
    """
    frame = _read_frame(data)
    radius = _table_radius(list(frame.columns))

    cohort = Cohort(source="precomputed")
    for line, record in _rows(frame):
        author, epoch = _identity(record, line)
        if cohort.snapshot(author, epoch) is not None:
            raise ParseError(f"duplicate row for {author!r} at {epoch!r}", line)

        row = PrecomputedRow(
            author=author,
            epoch=epoch,
            h=_int_field(record["h"], "h", line),
            N_p=_int_field(record["Np"], "Np", line),
            N_c=_int_field(record["Nc"], "Nc", line),
            area={j: _optional_int(record[f"A{j}"], f"A{j}", line) for j in range(1, radius + 1)},
            interval={j: _optional_int(record[f"I{j}"], f"I{j}", line) for j in range(1, radius + 1)},
        )

        for name, series in (("A", row.area), ("I", row.interval)):
            for j, v in series.items():
                if v is not None and j >= row.h:
                    raise ParseError(
                        f"{name}{j}={v} present but radius {j} is undefined for h={row.h}", line
                    )

        try:
            profile = summary_profile(row.h, row.N_p, row.N_c)
        except ValidationError as e:
            raise ParseError(str(e), line) from None

        for warning in _row_warnings(row, line):
            logger.warning(f"⚠️ {warning}")
            cohort.warnings.append(warning)

        series = RadiusSeries(
            h=row.h,
            area={j: v for j, v in row.area.items() if v is not None},
            interval={j: v for j, v in row.interval.items() if v is not None},
        )
        cohort.add_snapshot(author, epoch, Snapshot(profile=profile, series=series))

    _declare_epochs(cohort, cohort.epochs)
    logger.info(f"📥 Parsed index table: {len(cohort)} authors, radius {radius}, "
                f"{len(cohort.warnings)} warnings")
    return cohort


def write_index_table(cohort: Cohort, max_radius: Optional[int] = None) -> bytes:
    """
    Index-table csv, authors sorted, epochs in cohort order, "-" where undefined.

    Without ``max_radius`` the table is wide enough for every radius any snapshot
    defines, so writing then parsing loses nothing.
    """
    if max_radius is None:
        max_radius = max((j for record in cohort.authors.values()
                          for snapshot in record.snapshots.values()
                          for j in (*snapshot.series.area, *snapshot.series.interval)), default=1)
    validate_max_radius(max_radius)
    radii = range(1, max_radius + 1)
    columns = TABLE_KEYS + [f"A{j}" for j in radii] + [f"I{j}" for j in radii]

    rows = []
    for author in cohort.author_ids():
        for epoch in cohort.epochs:
            snapshot = cohort.snapshot(author, epoch)
            if snapshot is None:
                continue
            p, s = snapshot.profile, snapshot.series
            rows.append(
                [author, epoch, p.h, p.N_p, p.N_c]
                + [s.area.get(j, "-") for j in radii]
                + [s.interval.get(j, "-") for j in radii]
            )
    return _to_csv(columns, rows)


def parse_summary_table_csv(data: bytes) -> Cohort:
    """Production/impact summary rows; snapshots get h-only profiles and no series."""
    frame = _read_frame(data)
    missing = [c for c in SUMMARY_KEYS if c not in frame.columns]
    if missing:
        raise ParseError(f"summary table header lacks {', '.join(missing)}", line=1)

    cohort = Cohort(source="precomputed")
    for line, record in _rows(frame):
        author, epoch = _identity(record, line)
        h = _int_field(record["h"], "h", line)
        try:
            profile = summary_profile(h, _int_field(record["Np"], "Np", line),
                                      _int_field(record["Nc"], "Nc", line))
        except ValidationError as e:
            raise ParseError(str(e), line) from None

        if "H" in record and record["H"] not in MISSING:
            declared = _int_field(record["H"], "H", line)
            if declared != profile.H:
                warning = f"line {line} ({author}, {epoch}): H={declared} but h^2={profile.H}"
                logger.warning(f"⚠️ {warning}")
                cohort.warnings.append(warning)

        cohort.add_snapshot(author, epoch, Snapshot(profile=profile, series=RadiusSeries(h=h)))

    _declare_epochs(cohort, cohort.epochs)
    return cohort


# ============================================================================
# FIXTURES
# ============================================================================

def fixture_bytes(name: str) -> bytes:
    if name not in FIXTURES:
        raise ValidationError(f"unknown fixture {name!r} (available: {', '.join(FIXTURES)})")
    return (DATA_DIR / FIXTURES[name]).read_bytes()


def fixture_frame(name: str) -> pd.DataFrame:
    """Fixture as a DataFrame, "-" cells as NaN; for integrity checks on the raw columns."""
    return pd.read_csv(io.BytesIO(fixture_bytes(name)), na_values=["-"])


def load_fixture(name: str) -> Cohort:
    """The embedded 'summary' (h, N_p, N_c per epoch) or 'indexes' (index table) cohort."""
    data = fixture_bytes(name)
    cohort = parse_summary_table_csv(data) if name == "summary" else parse_index_table_csv(data)
    cohort.source = f"fixture:{name}"
    return cohort


# ============================================================================
# JSON
# ============================================================================

def _snapshot_json(snapshot: Snapshot) -> Dict[str, Any]:
    if snapshot.distribution is not None:
        return {"citations": list(snapshot.distribution.counts)}
    p, s = snapshot.profile, snapshot.series
    return {
        "h": p.h,
        "N_p": p.N_p,
        "N_c": p.N_c,
        "area": {str(j): v for j, v in sorted(s.area.items())},
        "interval": {str(j): v for j, v in sorted(s.interval.items())},
    }


def write_cohort_json(cohort: Cohort) -> bytes:
    payload = {
        "kind": "cohort",
        "metadata": {"epochs": list(cohort.epochs), "source": cohort.source,
                     "warnings": list(cohort.warnings)},
        "authors": {
            author: {
                epoch: _snapshot_json(cohort.snapshot(author, epoch))
                for epoch in cohort.epochs if cohort.snapshot(author, epoch) is not None
            }
            for author in cohort.author_ids()
        },
    }
    return (json.dumps(payload, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def _radius_map(raw: Any, where: str) -> Dict[int, int]:
    if not isinstance(raw, dict):
        raise ParseError(f"{where} must be an object keyed by radius")
    series = {}
    for key, value in raw.items():
        if value is None:
            continue
        if not str(key).isdigit():
            raise ParseError(f"{where}: radius key {key!r} is not a positive integer")
        series[int(key)] = validate_non_negative_int(value, f"{where}[{key}]")
    return series


def parse_cohort_json(data: bytes, include_uncited: bool = False) -> Cohort:
    """
    Cohort from the json mirror. A snapshot holds either ``citations`` (raw) or
    ``h``/``N_p``/``N_c`` with optional ``area``/``interval`` maps (precomputed).
    """
    try:
        payload = json.loads(_decode(data))
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid json: {e.msg}", line=e.lineno) from None

    if not isinstance(payload, dict) or not isinstance(payload.get("authors"), dict):
        raise ParseError("json cohort must be an object with an 'authors' object")

    cohort = Cohort(source="json")
    metadata = payload.get("metadata")
    declared = metadata.get("epochs", []) if isinstance(metadata, dict) else []
    if not isinstance(declared, list):
        declared = []
    try:
        for raw_author, snapshots in payload["authors"].items():
            author = validate_author_id(raw_author)
            if not isinstance(snapshots, dict):
                raise ParseError(f"author {author!r}: snapshots must be an object")

            for raw_epoch, body in snapshots.items():
                epoch = validate_epoch_label(raw_epoch)
                where = f"{author!r} at {epoch!r}"
                if not isinstance(body, dict):
                    raise ParseError(f"{where}: snapshot must be an object")

                if "citations" in body:
                    counts = body["citations"]
                    if not isinstance(counts, list):
                        raise ParseError(f"{where}: citations must be a list")
                    snapshot = build_snapshot(CitationDistribution(tuple(counts)), include_uncited)
                else:
                    h = validate_non_negative_int(body.get("h"), f"{where} h")
                    area = _radius_map(body.get("area", {}), f"{where} area")
                    interval = _radius_map(body.get("interval", {}), f"{where} interval")
                    undefined = [j for j in list(area) + list(interval) if j < 1 or j >= h]
                    if undefined:
                        raise ParseError(f"{where}: radius {min(undefined)} is undefined for h={h}")
                    snapshot = Snapshot(
                        profile=summary_profile(h, body.get("N_p"), body.get("N_c")),
                        series=RadiusSeries(h=h, area=area, interval=interval),
                    )
                cohort.add_snapshot(author, epoch, snapshot)
    except ParseError:
        raise
    except ValidationError as e:
        raise ParseError(str(e)) from None

    _declare_epochs(cohort, cohort.epochs)
    known = [e for e in declared if e in cohort.epochs]
    if known:
        cohort.reorder(known)
    return cohort


# ============================================================================
# REPORTS
# ============================================================================

def _plain(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Fraction):
        return float(value)
    return value


def _csv_cell(value: Any) -> Any:
    value = _plain(value)
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.3f}"
    return value


def _sorted_rows(report: Report) -> List[Dict[str, Any]]:
    if report.ordered or "author" not in report.columns:
        return list(report.rows)
    return sorted(report.rows, key=lambda row: str(row.get("author", "")))


def write_results(report: Report, fmt: str = "csv") -> bytes:
    """
    Serialize a Report.

    csv: floats with 3 decimals, missing as "-". json: full precision, missing as null.
    Rows with an ``author`` column are sorted by author (stable for other keys).
    """
    rows = _sorted_rows(report)
    if fmt == "csv":
        return _to_csv(report.columns,
                       [[_csv_cell(row.get(c)) for c in report.columns] for row in rows])
    if fmt == "json":
        payload = {
            "kind": report.kind,
            "metadata": {k: _plain(v) for k, v in report.metadata.items()},
            "rows": [{c: _plain(row.get(c)) for c in report.columns} for row in rows],
        }
        return (json.dumps(payload, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    raise ValidationError(f"unknown format {fmt!r} (expected csv or json)")
