"""
Analysis configuration.
Defaults reproduce the published empirical setup (radius 10, at least 9 of 15 authors per coefficient).
"""
import os
import logging
from dataclasses import dataclass, field, replace

import psutil

from .validation import ValidationError, validate_max_radius, validate_min_n

logger = logging.getLogger("CentralIndexDebug")

AGGREGATORS = ("forward", "row")


def default_jobs() -> int:
    """Worker count for parallel sections: physical cores, 1 when unknown."""
    try:
        cores = psutil.cpu_count(logical=False)
    except Exception as e:  # pylint: disable=broad-except
        logger.debug(f"psutil core count unavailable: {e}")
        cores = None
    return max(1, cores or 1)


@dataclass(frozen=True)
class AnalysisConfig:
    """Tunable parameters shared by the facade, the CLI and the claim checks."""
    min_n: int = 9
    max_radius: int = 10
    reference_radius: int = 7
    aggregator: str = "forward"
    include_uncited: bool = False
    n_jobs: int = field(default_factory=default_jobs)

    # Environment overrides (all optional)
    ENV_MIN_N = "CENTRALINDEX_MIN_N"
    ENV_MAX_RADIUS = "CENTRALINDEX_MAX_RADIUS"
    ENV_JOBS = "CENTRALINDEX_JOBS"
    ENV_INCLUDE_UNCITED = "CENTRALINDEX_INCLUDE_UNCITED"

    def __post_init__(self):
        validate_min_n(self.min_n)
        validate_max_radius(self.max_radius)
        validate_max_radius(self.reference_radius)
        if self.aggregator not in AGGREGATORS:
            raise ValidationError(
                f"aggregator must be one of {', '.join(AGGREGATORS)}, got {self.aggregator!r}"
            )
        if self.n_jobs < 1:
            raise ValidationError(f"n_jobs must be at least 1, got {self.n_jobs}")

    @classmethod
    def from_env(cls, environ=None) -> "AnalysisConfig":
        """Build a config from defaults overlaid with CENTRALINDEX_* variables."""
        env = os.environ if environ is None else environ
        overrides = {}

        for key, attr in ((cls.ENV_MIN_N, "min_n"),
                          (cls.ENV_MAX_RADIUS, "max_radius"),
                          (cls.ENV_JOBS, "n_jobs")):
            raw = env.get(key)
            if raw is None or raw == "":
                continue
            try:
                overrides[attr] = int(raw)
            except ValueError:
                raise ValidationError(f"{key} must be an integer, got {raw!r}") from None

        flag = env.get(cls.ENV_INCLUDE_UNCITED)
        if flag:
            overrides["include_uncited"] = flag.strip().lower() in ("1", "true", "yes", "on")

        if overrides:
            logger.debug(f"⚙️ Config overrides from environment: {overrides}")
        return cls(**overrides)

    def with_overrides(self, **changes) -> "AnalysisConfig":
        """Copy with the non-None values of ``changes`` applied."""
        applied = {k: v for k, v in changes.items() if v is not None}
        return replace(self, **applied) if applied else self
