"""Voting schemes by year, unbiased single-draw samplers, and exact null PMFs.

Three scheme families cover 1957-2017: a fixed descending score list handed
out to distinct countries (allocated), a list of point values each landing
independently on a uniformly chosen country (sequential), and the sum of two
independent juror draws (rated).  The exact per-draw distributions here are
the verification oracle for the Monte Carlo machinery; the sampling hot path
never consults them.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import EmptyInput, InvalidCandidateCount, UnsupportedYear

POINTS_1975 = (12, 10, 8, 7, 6, 5, 4, 3, 2, 1)
POINTS_1962 = (3, 2, 1)
POINTS_1963 = (5, 4, 3, 2, 1)
POINTS_MID_SIXTIES = (5, 3, 1)
TEN_SINGLE_POINTS = (1,) * 10
JUROR_POINTS = (5, 4, 3, 2, 1)


@dataclass(frozen=True)
class Allocated:
    """Descending score list; each listed score goes to one distinct country."""

    scores: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.scores or any(s <= 0 for s in self.scores):
            raise ValueError("allocated score list must be non-empty and positive")
        if any(a <= b for a, b in zip(self.scores, self.scores[1:])):
            raise ValueError("allocated score list must be strictly descending")


@dataclass(frozen=True)
class Sequential:
    """Point values, each independently placed on a uniformly chosen country."""

    points: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.points or any(p <= 0 for p in self.points):
            raise ValueError("sequential point list must be non-empty and positive")


@dataclass(frozen=True)
class Rated:
    """Per-pair score is the sum of juror draws, independent of field size."""

    juror_scores: tuple[int, ...]
    juror_count: int = 2

    def __post_init__(self) -> None:
        if not self.juror_scores or any(s <= 0 for s in self.juror_scores):
            raise ValueError("juror score list must be non-empty and positive")
        if self.juror_count < 1:
            raise ValueError("juror count must be positive")


VotingScheme = Union[Allocated, Sequential, Rated]


def scheme_for_year(year: int) -> VotingScheme:
    """Return the voting scheme in force for a contest year (1957-2017)."""
    if year == 1962:
        return Allocated(POINTS_1962)
    if year == 1963:
        return Allocated(POINTS_1963)
    if 1964 <= year <= 1966:
        return Sequential(POINTS_MID_SIXTIES)
    if 1971 <= year <= 1973:
        return Rated(JUROR_POINTS)
    if 1975 <= year <= 2017:
        return Allocated(POINTS_1975)
    if 1957 <= year <= 1974:
        # Remaining years: 1957-61, 1967-70 and 1974, all ten single points.
        return Sequential(TEN_SINGLE_POINTS)
    raise UnsupportedYear(f"no voting scheme for year {year}")


def attainable_scores(scheme: VotingScheme) -> frozenset[int]:
    """Every per-pair score value the scheme can produce.

    Zero is attainable under the allocated and sequential schemes (a country
    may simply receive nothing) but not under the rated scheme, where every
    participant is rated by both jurors.
    """
    if isinstance(scheme, Allocated):
        return frozenset(scheme.scores) | {0}
    if isinstance(scheme, Sequential):
        sums = {0}
        for p in scheme.points:
            sums |= {s + p for s in sums}
        return frozenset(sums)
    return frozenset(
        sum(combo)
        for combo in itertools.product(scheme.juror_scores, repeat=scheme.juror_count)
    )


def sample_score(scheme: VotingScheme, candidate_count: int, rng) -> int:
    """Draw one unbiased score toward a single country.

    ``rng`` is anything with a ``random()`` method returning uniforms in
    [0, 1), e.g. ``numpy.random.Generator``.  The draw order and arithmetic
    here are the reference the batch kernels must reproduce exactly.
    """
    if candidate_count < 1:
        raise InvalidCandidateCount(f"candidate count must be >= 1, got {candidate_count}")
    if isinstance(scheme, Allocated):
        position = int(rng.random() * candidate_count)
        return scheme.scores[position] if position < len(scheme.scores) else 0
    if isinstance(scheme, Sequential):
        total = 0
        for point in scheme.points:
            if int(rng.random() * candidate_count) == 0:
                total += point
        return total
    width = len(scheme.juror_scores)
    return sum(
        scheme.juror_scores[int(rng.random() * width)]
        for _ in range(scheme.juror_count)
    )


@dataclass(frozen=True)
class ScorePmf:
    """Exact discrete distribution over integer scores.

    Support is ascending and duplicate-free; probabilities are exact
    rationals summing to one.
    """

    support: tuple[int, ...]
    probabilities: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.support) != len(self.probabilities):
            raise ValueError("support and probabilities must be parallel")
        if not self.support:
            raise ValueError("empty pmf")
        if any(a >= b for a, b in zip(self.support, self.support[1:])):
            raise ValueError("support must be strictly ascending")
        if any(p < 0 for p in self.probabilities):
            raise ValueError("negative probability")
        if sum(self.probabilities) != 1:
            raise ValueError("probabilities must sum to 1")

    @classmethod
    def from_mapping(cls, weights: Mapping[int, Fraction]) -> "ScorePmf":
        """Build a pmf from a value -> probability mapping, dropping zeros."""
        items = sorted((v, p) for v, p in weights.items() if p > 0)
        return cls(tuple(v for v, _ in items), tuple(p for _, p in items))

    def probability(self, value: int) -> Fraction:
        for v, p in zip(self.support, self.probabilities):
            if v == value:
                return p
        return Fraction(0)

    def mean(self) -> Fraction:
        return sum(
            (Fraction(v) * p for v, p in zip(self.support, self.probabilities)),
            Fraction(0),
        )

    def upper_tail_min(self, alpha: Fraction) -> int:
        """Smallest support value v with P(X >= v) >= alpha.

        Mirrors the sampling rule "minimum of the top alpha fraction", so
        Monte Carlo thresholds converge to exactly this atom.
        """
        mass = Fraction(0)
        for v, p in zip(reversed(self.support), reversed(self.probabilities)):
            mass += p
            if mass >= alpha:
                return v
        return self.support[0]


def exact_null_pmf(scheme: VotingScheme, candidate_count: int) -> ScorePmf:
    """Exact distribution of one unbiased ``sample_score`` draw."""
    if candidate_count < 1:
        raise InvalidCandidateCount(f"candidate count must be >= 1, got {candidate_count}")
    c = candidate_count
    if isinstance(scheme, Allocated):
        weights: dict[int, Fraction] = defaultdict(Fraction)
        for score in scheme.scores[:c]:
            weights[score] += Fraction(1, c)
        if c > len(scheme.scores):
            weights[0] += Fraction(c - len(scheme.scores), c)
        return ScorePmf.from_mapping(weights)
    if isinstance(scheme, Sequential):
        hit = Fraction(1, c)
        parts = [
            ScorePmf.from_mapping({0: 1 - hit, point: hit})
            for point in scheme.points
        ]
        return convolve_years(parts)
    width = len(scheme.juror_scores)
    weights = defaultdict(Fraction)
    for combo in itertools.product(scheme.juror_scores, repeat=scheme.juror_count):
        weights[sum(combo)] += Fraction(1, width**scheme.juror_count)
    return ScorePmf.from_mapping(weights)


def convolve_years(pmfs: Sequence[ScorePmf] | Iterable[ScorePmf]) -> ScorePmf:
    """Exact distribution of the sum of independent per-year scores."""
    pmfs = list(pmfs)
    if not pmfs:
        raise EmptyInput("convolve_years needs at least one pmf")
    acc: dict[int, Fraction] = {0: Fraction(1)}
    for pmf in pmfs:
        step: dict[int, Fraction] = defaultdict(Fraction)
        for value, prob in zip(pmf.support, pmf.probabilities):
            for total, weight in acc.items():
                step[total + value] += weight * prob
        acc = step
    return ScorePmf.from_mapping(acc)
