"""
Core citation metrics.

Pure functions over a single CitationDistribution: the h-index, the Hirsch-core
decomposition N_c = H + U + L, and the two families of central indexes

    A_j = (h - j) * c_{h-j} + sum_{i=h-j+1}^{h+j} c_i
    I_j = sum_{i=h-j}^{h+j} c_i

for radii j = 1..h-1. Ranks past the last paper hold 0 citations, so both
indexes are total on their radius domain. All index arithmetic is integer;
only n_c, the tail ratio and U/L are rationals.
"""
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .models import CitationDistribution, IndexProfile, RadiusSeries, Snapshot, TailClass
from .validation import ValidationError, validate_non_negative_int, validate_radius

# Hirsch's tail estimate: N_c / H below 3 is light, above 5 heavy
LIGHT_TAIL_BELOW = 3
HEAVY_TAIL_ABOVE = 5


def h_index(d: CitationDistribution) -> int:
    """Largest i with c_i >= i; 0 for empty or all-zero distributions."""
    counts = np.asarray(d.counts, dtype=np.int64)
    if counts.size == 0:
        return 0
    ranks = np.arange(1, counts.size + 1)
    qualifying = np.flatnonzero(counts >= ranks)
    return int(qualifying[-1]) + 1 if qualifying.size else 0


def brute_force_h_index(d: CitationDistribution) -> int:
    """Order-free h: the largest i such that at least i papers have i or more citations."""
    best = 0
    for i in range(1, len(d.counts) + 1):
        if sum(1 for c in d.counts if c >= i) >= i:
            best = i
    return best


def cumulative_citations(d: CitationDistribution, j: int) -> int:
    """N_c^j: citations of the j most cited papers."""
    j = validate_non_negative_int(j, "j")
    return sum(d.counts[:j])


def count_cited(d: CitationDistribution, include_uncited: bool = False) -> int:
    """N_p. Uncited papers are excluded unless ``include_uncited`` is set."""
    if include_uncited:
        return len(d.counts)
    return sum(1 for c in d.counts if c > 0)


def classify_tail(tail_ratio: Optional[Fraction]) -> TailClass:
    if tail_ratio is None:
        return TailClass.UNDEFINED
    if tail_ratio < LIGHT_TAIL_BELOW:
        return TailClass.LIGHT
    if tail_ratio > HEAVY_TAIL_ABOVE:
        return TailClass.HEAVY
    return TailClass.INTERMEDIATE


def decompose(d: CitationDistribution, include_uncited: bool = False) -> IndexProfile:
    """Full IndexProfile of a distribution."""
    h = h_index(d)
    H = h * h
    core = cumulative_citations(d, h)
    N_c = sum(d.counts)
    U = core - H
    L = N_c - core
    N_p = count_cited(d, include_uncited)
    tail_ratio = Fraction(N_c, H) if h > 0 else None

    return IndexProfile(
        h=h,
        H=H,
        U=U,
        L=L,
        N_p=N_p,
        N_c=N_c,
        n_c=Fraction(N_c, N_p) if N_p > 0 else None,
        tail_ratio=tail_ratio,
        tail_class=classify_tail(tail_ratio),
        upper_lower_ratio=Fraction(U, L) if L > 0 else None,
    )


def summary_profile(h: int, N_p: int, N_c: int) -> IndexProfile:
    """
    Profile rebuilt from a published summary row (h, N_p, N_c only).
    The tails cannot be recovered, so U and L stay None.
    """
    h = validate_non_negative_int(h, "h")
    N_p = validate_non_negative_int(N_p, "N_p")
    N_c = validate_non_negative_int(N_c, "N_c")
    H = h * h
    if N_c < H:
        raise ValidationError(f"N_c={N_c} is below H=h^2={H}")
    tail_ratio = Fraction(N_c, H) if h > 0 else None

    return IndexProfile(
        h=h,
        H=H,
        U=None,
        L=None,
        N_p=N_p,
        N_c=N_c,
        n_c=Fraction(N_c, N_p) if N_p > 0 else None,
        tail_ratio=tail_ratio,
        tail_class=classify_tail(tail_ratio),
    )


def _padded_prefix(d: CitationDistribution, upto: int) -> List[int]:
    """prefix[i] = c_1 + ... + c_i for i in 0..upto, zero-padded past N_p."""
    prefix = [0] * (upto + 1)
    for i in range(1, upto + 1):
        prefix[i] = prefix[i - 1] + d.citations_at(i)
    return prefix


def _area(d: CitationDistribution, prefix: Sequence[int], h: int, j: int) -> int:
    return (h - j) * d.citations_at(h - j) + prefix[h + j] - prefix[h - j]


def _interval(prefix: Sequence[int], h: int, j: int) -> int:
    return prefix[h + j] - prefix[h - j - 1]


def central_area_index(d: CitationDistribution, j: int) -> int:
    """A_j: citations of the h+j most cited papers, each capped at c_{h-j}."""
    h = h_index(d)
    validate_radius(j, h)
    return _area(d, _padded_prefix(d, h + j), h, j)


def central_interval_index(d: CitationDistribution, j: int) -> int:
    """I_j: citations of the papers ranked h-j through h+j."""
    h = h_index(d)
    validate_radius(j, h)
    return _interval(_padded_prefix(d, h + j), h, j)


def radius_series(d: CitationDistribution) -> RadiusSeries:
    """A_j and I_j for every valid radius; empty maps when h <= 1."""
    h = h_index(d)
    if h <= 1:
        return RadiusSeries(h=h)

    prefix = _padded_prefix(d, 2 * h - 1)
    area = {j: _area(d, prefix, h, j) for j in range(1, h)}
    interval = {j: _interval(prefix, h, j) for j in range(1, h)}
    return RadiusSeries(h=h, area=area, interval=interval)


def citation_curve_points(d: CitationDistribution, max_rank: int) -> List[Tuple[int, int]]:
    """(rank, citations) pairs of the cited papers, truncated at ``max_rank``."""
    max_rank = validate_non_negative_int(max_rank, "max_rank")
    if max_rank < 1:
        raise ValidationError("max_rank must be at least 1")

    limit = min(max_rank, count_cited(d))
    return [(i, d.citations_at(i)) for i in range(1, limit + 1)]


def radius_profile_points(series: RadiusSeries) -> List[Tuple[int, Optional[int], Optional[int]]]:
    """(radius, A_j, I_j) triples for index-versus-radius plots."""
    radii = sorted(set(series.area) | set(series.interval))
    return [(j, series.area.get(j), series.interval.get(j)) for j in radii]


def build_snapshot(d: CitationDistribution, include_uncited: bool = False) -> Snapshot:
    """Profile and series of a raw distribution, computed once."""
    return Snapshot(
        profile=decompose(d, include_uncited),
        series=radius_series(d),
        distribution=d,
    )
