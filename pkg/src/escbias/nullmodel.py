"""Monte Carlo null thresholds for window-averaged pair scores.

For a giver/receiver pair and a year window, draw many unbiased window
means (one scheme-appropriate score per year, averaged) and cut at the
minimum of the top ``alpha`` fraction: the empirical 95th-percentile
threshold that observed means must strictly exceed to count as biased.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
from numpy.random import PCG64

from .dataset import Dataset
from .errors import EmptyInput, IneligiblePair, InvalidAlpha, InvalidSpec
from .kernel import WindowProgram, build_program, sample_window_means as _kernel_means
from .schemes import (
    Allocated,
    Rated,
    ScorePmf,
    Sequential,
    VotingScheme,
    convolve_years,
    exact_null_pmf,
    scheme_for_year,
    JUROR_POINTS,
    POINTS_1962,
    POINTS_1975,
    POINTS_MID_SIXTIES,
    TEN_SINGLE_POINTS,
)

DEFAULT_SEED = 61  # one for each contest year, 1957-2017
DEFAULT_SAMPLE_SIZE = 10_000
ADAPTIVE_BLOCK = 100
ADAPTIVE_TOLERANCE = 1e-3
ADAPTIVE_CAP = 1_000_000


@dataclass(frozen=True)
class WindowSpec:
    """Inclusive run of consecutive contest years."""

    start_year: int
    end_year: int

    def __post_init__(self) -> None:
        if self.start_year > self.end_year:
            raise InvalidSpec(
                f"window start {self.start_year} is after end {self.end_year}"
            )
        for year in self.years():
            scheme_for_year(year)  # raises UnsupportedYear outside 1957-2017

    def years(self) -> range:
        return range(self.start_year, self.end_year + 1)

    def __len__(self) -> int:
        return self.end_year - self.start_year + 1

    def __str__(self) -> str:
        return f"{self.start_year}-{self.end_year}"


@dataclass(frozen=True)
class AnalysisConfig:
    """Knobs shared by threshold sampling and edge detection.

    ``candidate_counts`` overrides the per-year candidate count read from
    the dataset (a testing hook; normal runs leave it None).  Parallel and
    serial runs agree bit-exactly because every pair/window task derives
    its own child seed from the master seed.
    """

    sample_size: int = DEFAULT_SAMPLE_SIZE
    seed: int = DEFAULT_SEED
    alpha: float = 0.05
    adaptive: bool = False
    bonferroni: bool = False
    workers: int = 1
    candidate_counts: Mapping[int, int] | None = None

    def __post_init__(self) -> None:
        if not 0 < self.alpha < 1:
            raise InvalidAlpha(f"alpha must be in (0, 1), got {self.alpha}")
        if self.sample_size < 1:
            raise ValueError("sample_size must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class NullThreshold:
    """95th-percentile null cutoff for one pair and window."""

    pair: tuple[str, str]
    window: WindowSpec
    threshold: float
    sample_size: int
    seed: int  # the derived stream seed actually used
    alpha: float


def derive_seed(master: int, *parts) -> int:
    """Deterministic, platform-stable child seed from a master seed and labels."""
    text = "|".join([str(master)] + [str(p) for p in parts])
    digest = hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def candidate_count(dataset: Dataset, giver: str, year: int) -> int:
    """Number of countries the giver may award: receivers minus itself."""
    record = dataset.record(year)
    return len(record.receivers) - (1 if giver in record.receivers else 0)


def check_eligible(dataset: Dataset, pair: tuple[str, str], window: WindowSpec) -> None:
    """Raise IneligiblePair unless both countries are present in every year."""
    giver, receiver = pair
    if giver == receiver:
        raise IneligiblePair(f"{giver}: a country cannot be paired with itself")
    for year in window.years():
        record = dataset.record(year)
        if giver not in record.givers:
            raise IneligiblePair(f"{giver} did not give scores in {year}")
        if receiver not in record.receivers:
            raise IneligiblePair(f"{receiver} could not receive scores in {year}")


def pair_is_eligible(dataset: Dataset, pair: tuple[str, str], window: WindowSpec) -> bool:
    try:
        check_eligible(dataset, pair, window)
    except IneligiblePair:
        return False
    return True


def window_program(
    dataset: Dataset,
    giver: str,
    window: WindowSpec,
    overrides: Mapping[int, int] | None = None,
) -> WindowProgram:
    """Flattened sampling instructions for this giver across the window."""
    years = []
    for year in window.years():
        if overrides and year in overrides:
            count = overrides[year]
        else:
            count = candidate_count(dataset, giver, year)
        years.append((scheme_for_year(year), count))
    return build_program(years)


def sample_window_means(
    dataset: Dataset,
    pair: tuple[str, str],
    window: WindowSpec,
    sample_size: int,
    seed: int,
) -> np.ndarray:
    """Independent unbiased draws of the pair's window-mean score.

    ``seed`` seeds the stream directly (no further derivation), so recorded
    NullThreshold seeds replay their exact sample set.
    """
    check_eligible(dataset, pair, window)
    program = window_program(dataset, pair[0], window)
    return _kernel_means(program, sample_size, PCG64(seed))


def threshold_from_samples(means: Sequence[float] | np.ndarray, alpha: float) -> float:
    """Minimum of the top ``alpha`` fraction of samples (descending slice).

    The slice length is the ceiling of ``len * alpha`` so small sample sets
    never produce an empty tail.
    """
    samples = np.asarray(means, dtype=np.float64)
    if samples.size == 0:
        raise EmptyInput("no samples to take a threshold from")
    k = _tail_size(samples.size, alpha)
    # k-th largest value == minimum of the descending top-k slice
    return float(np.partition(samples, samples.size - k)[samples.size - k])


def _tail_size(n: int, alpha: float) -> int:
    if not 0 < alpha < 1:
        raise InvalidAlpha(f"alpha must be in (0, 1), got {alpha}")
    # Treat alpha as the decimal the user wrote, not its binary float image,
    # so ceil(n * alpha) never picks up a spurious +1 at exact multiples.
    return math.ceil(n * _alpha_fraction(alpha))


def _alpha_fraction(alpha: float | Fraction) -> Fraction:
    if isinstance(alpha, Fraction):
        return alpha
    return Fraction(str(alpha))


def compute_threshold(
    dataset: Dataset,
    pair: tuple[str, str],
    window: WindowSpec,
    config: AnalysisConfig,
) -> NullThreshold:
    """Sample the null and cut at the (1 - alpha) quantile for one pair."""
    check_eligible(dataset, pair, window)
    program = window_program(dataset, pair[0], window, config.candidate_counts)
    child = derive_seed(config.seed, pair[0], pair[1], window.start_year, window.end_year)
    generator = PCG64(child)
    if not config.adaptive:
        means = _kernel_means(program, config.sample_size, generator)
        value = threshold_from_samples(means, config.alpha)
        used = config.sample_size
    else:
        value, used = _adaptive_threshold(program, generator, config.alpha)
    return NullThreshold(pair, window, value, used, child, config.alpha)


def _adaptive_threshold(program, generator, alpha: float) -> tuple[float, int]:
    # Keep drawing blocks until the running threshold settles in the third
    # decimal place between consecutive blocks, up to a hard cap.
    buffer = np.empty(0, dtype=np.float64)
    previous = None
    while buffer.size < ADAPTIVE_CAP:
        block = _kernel_means(program, ADAPTIVE_BLOCK, generator)
        buffer = np.concatenate([buffer, block])
        current = threshold_from_samples(buffer, alpha)
        if previous is not None and abs(current - previous) < ADAPTIVE_TOLERANCE:
            return current, int(buffer.size)
        previous = current
    return threshold_from_samples(buffer, alpha), int(buffer.size)


# --- exact-convolution oracle -------------------------------------------------

@dataclass(frozen=True)
class OracleCheck:
    """Monte Carlo vs exact-quantile comparison for one configuration."""

    label: str
    n_years: int
    candidate_count: int
    monte_carlo: float
    exact: Fraction
    tolerance: float

    @property
    def difference(self) -> float:
        return abs(self.monte_carlo - float(self.exact))

    @property
    def ok(self) -> bool:
        return self.difference <= self.tolerance


def exact_mean_threshold(
    per_year: Sequence[tuple[VotingScheme, int]], alpha: float | Fraction
) -> Fraction:
    """Exact analogue of the Monte Carlo threshold via full convolution.

    Uses the same "minimum of the top-alpha mass" convention on the exact
    sum distribution, then rescales to a mean.
    """
    pmfs = [exact_null_pmf(scheme, count) for scheme, count in per_year]
    total: ScorePmf = convolve_years(pmfs)
    cutoff = total.upper_tail_min(_alpha_fraction(alpha))
    return Fraction(cutoff, len(pmfs))


def oracle_check(
    label: str,
    scheme: VotingScheme,
    candidate_count: int,
    n_years: int,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    seed: int = DEFAULT_SEED,
    alpha: float = 0.05,
    tolerance: float = 0.05,
) -> OracleCheck:
    """Compare a Monte Carlo threshold against the exact convolution quantile."""
    per_year = [(scheme, candidate_count)] * n_years
    program = build_program(per_year)
    child = derive_seed(seed, "oracle", label, n_years, candidate_count)
    means = _kernel_means(program, sample_size, PCG64(child))
    monte_carlo = threshold_from_samples(means, alpha)
    exact = exact_mean_threshold(per_year, alpha)
    return OracleCheck(label, n_years, candidate_count, monte_carlo, exact, tolerance)


# One representative per scheme family, spanning every list in use.
ORACLE_FAMILIES: tuple[tuple[str, VotingScheme], ...] = (
    ("allocated-1975", Allocated(POINTS_1975)),
    ("allocated-1962", Allocated(POINTS_1962)),
    ("sequential-ten-1s", Sequential(TEN_SINGLE_POINTS)),
    ("sequential-5-3-1", Sequential(POINTS_MID_SIXTIES)),
    ("rated", Rated(JUROR_POINTS)),
)
ORACLE_YEAR_COUNTS = (1, 5)
ORACLE_CANDIDATE_COUNTS = (9, 15, 25)


def run_oracle_grid(
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    seed: int = DEFAULT_SEED,
    alpha: float = 0.05,
    tolerance: float = 0.05,
) -> list[OracleCheck]:
    """Monte Carlo vs exact comparison over the whole verification grid."""
    return [
        oracle_check(label, scheme, count, n_years, sample_size, seed, alpha, tolerance)
        for label, scheme in ORACLE_FAMILIES
        for n_years in ORACLE_YEAR_COUNTS
        for count in ORACLE_CANDIDATE_COUNTS
    ]
