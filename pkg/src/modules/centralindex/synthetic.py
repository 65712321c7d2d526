"""
Synthetic citation profiles.

Builds distributions with a prescribed h-index:

  selective  h papers, each with amplitude*h citations
  producer   amplitude*h papers, each with exactly h citations
  power_law  floor(C * i^-exponent * noise) over 3h papers, C chosen so rank h
             lands on exactly h citations; amplitude stretches the counts above h

The noise factor is exp(N(0, 0.25)) drawn from numpy's PCG64 generator seeded with
``spec.seed``. Only ranks h and h+1 are ever adjusted towards h.
"""
import logging
from typing import List, Sequence, Tuple

import numpy as np

from .core_metrics import build_snapshot, h_index
from .models import CitationDistribution, Cohort, ProfileKind, ProfileSpec
from .validation import ValidationError

logger = logging.getLogger("CentralIndexDebug")

NOISE_SIGMA = 0.25
PAPERS_PER_H = 3


def _check_spec(spec: ProfileSpec) -> None:
    if spec.h_target < 2:
        raise ValidationError(
            f"h_target must be at least 2 (no central indexes below h=2), got {spec.h_target}"
        )
    if spec.amplitude < 1:
        raise ValidationError(f"amplitude must be at least 1, got {spec.amplitude}")
    if spec.kind == ProfileKind.POWER_LAW and not spec.exponent > 0:
        raise ValidationError(f"exponent must be positive, got {spec.exponent}")


def power_law_draw(spec: ProfileSpec) -> List[int]:
    """
    The un-adjusted power-law counts, non-increasing.

    Noisy weights i^-exponent * exp(N(0, sigma)) are sorted and scaled so the
    weight at rank h maps onto exactly h citations. Ranks 1..h get h plus
    amplitude times their excess over h; later ranks are floored as drawn.
    """
    h = spec.h_target
    rng = np.random.default_rng(spec.seed)
    ranks = np.arange(1, PAPERS_PER_H * h + 1, dtype=float)
    noise = np.exp(rng.normal(0.0, NOISE_SIGMA, size=ranks.size))
    weights = sorted((float(w) for w in ranks ** (-spec.exponent) * noise), reverse=True)

    pivot = weights[h - 1]
    counts = []
    for i, w in enumerate(weights):
        value = h * (w / pivot)
        if i < h:
            counts.append(h + int(np.floor(spec.amplitude * (value - h))))
        else:
            counts.append(int(np.floor(value)))
    return counts


def settle_at_h(counts: List[int], h: int) -> List[int]:
    """Raise rank h to h and lower rank h+1 to h where needed; no other rank moves."""
    adjusted = list(counts)
    adjusted[h - 1] = max(adjusted[h - 1], h)
    if len(adjusted) > h:
        adjusted[h] = min(adjusted[h], h)
    return adjusted


def _power_law_counts(spec: ProfileSpec) -> List[int]:
    counts = power_law_draw(spec)
    adjusted = settle_at_h(counts, spec.h_target)
    moved = sum(1 for a, b in zip(counts, adjusted) if a != b)
    if moved:
        logger.debug(f"🎲 power_law seed={spec.seed}: adjusted {moved} counts at rank {spec.h_target}")
    return adjusted


def generate(spec: ProfileSpec) -> CitationDistribution:
    """Deterministic distribution with h_index == spec.h_target."""
    _check_spec(spec)
    h = spec.h_target

    if spec.kind == ProfileKind.SELECTIVE:
        counts = [spec.amplitude * h] * h
    elif spec.kind == ProfileKind.PRODUCER:
        counts = [h] * (spec.amplitude * h)
    else:
        counts = _power_law_counts(spec)

    distribution = CitationDistribution(tuple(counts))
    # guaranteed by construction
    assert h_index(distribution) == h
    return distribution


def generate_matched_pair(h_target: int, amplitude: int,
                          seed: int = 0) -> Tuple[CitationDistribution, CitationDistribution]:
    """
    (selective, producer) with equal h.

    With amplitude >= 2 the selective area index, amplitude*h^2, beats the
    producer's h^2 + j*h at every shared radius.
    """
    if amplitude < 2:
        raise ValidationError(f"matched pairs need amplitude >= 2, got {amplitude}")

    selective = generate(ProfileSpec(ProfileKind.SELECTIVE, h_target, amplitude, seed=seed))
    producer = generate(ProfileSpec(ProfileKind.PRODUCER, h_target, amplitude, seed=seed))
    return selective, producer


def generate_cohort(n_authors: int, epochs: Sequence[str], seed: int = 0,
                    include_uncited: bool = False) -> Cohort:
    """
    Random power-law cohort. Each author's h grows from one epoch to the next,
    loosely mimicking careers observed at successive snapshots.
    """
    if n_authors < 0:
        raise ValidationError(f"n_authors must be non-negative, got {n_authors}")
    if not epochs:
        raise ValidationError("at least one epoch label is required")

    rng = np.random.default_rng(seed)
    cohort = Cohort(epochs=list(epochs), source="synthetic")
    width = len(str(max(n_authors - 1, 0)))

    for a in range(n_authors):
        author = f"author-{a:0{width}d}"
        h = int(rng.integers(2, 12))
        exponent = float(rng.uniform(0.6, 1.6))
        amplitude = int(rng.integers(1, 4))
        for epoch in epochs:
            spec = ProfileSpec(ProfileKind.POWER_LAW, h, amplitude, exponent,
                               seed=int(rng.integers(0, 2**31 - 1)))
            cohort.add_snapshot(author, epoch, build_snapshot(generate(spec), include_uncited))
            h += int(rng.integers(0, 5))

    logger.info(f"🎲 Generated synthetic cohort: {n_authors} authors x {len(epochs)} epochs (seed={seed})")
    return cohort
