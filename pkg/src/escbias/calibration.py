"""Empirical false-positive calibration of the detector on null data.

Generating a dataset from the unbiased samplers themselves and running the
full detection pipeline over it measures how often pure chance crosses the
95% cutoff: directed edges should appear at roughly the alpha rate and
mirrored (collusive) pairs near alpha squared.
"""

from __future__ import annotations

from dataclasses import dataclass

from .detector import EdgeKind, eligible_pairs
from .network import AggregationMode, AggregationSpec, window_edge_sets
from .nullmodel import AnalysisConfig, DEFAULT_SAMPLE_SIZE, DEFAULT_SEED
from .synthdata import null_dataset


@dataclass(frozen=True)
class CalibrationConfig:
    countries: int = 32
    start_year: int = 1975
    end_year: int = 2000
    window_size: int = 5
    sample_size: int = DEFAULT_SAMPLE_SIZE
    seed: int = DEFAULT_SEED
    alpha: float = 0.05
    data_seed: int = 99
    workers: int = 1


@dataclass(frozen=True)
class CalibrationReport:
    ordered_pair_windows: int
    significant_edges: int
    unordered_pair_windows: int
    collusive_pairs: int

    @property
    def significant_rate(self) -> float:
        return self.significant_edges / self.ordered_pair_windows

    @property
    def collusive_rate(self) -> float:
        return self.collusive_pairs / self.unordered_pair_windows


def run_calibration(config: CalibrationConfig = CalibrationConfig()) -> CalibrationReport:
    """Detect over a null dataset and count chance edges per pair-window."""
    dataset = null_dataset(
        config.countries, config.start_year, config.end_year, config.data_seed
    )
    spec = AggregationSpec(
        config.start_year,
        config.end_year,
        config.window_size,
        AggregationMode.ONE_WAY_AND_COLLUSION,
    )
    analysis = AnalysisConfig(
        sample_size=config.sample_size,
        seed=config.seed,
        alpha=config.alpha,
        workers=config.workers,
    )
    ordered = significant = collusive = 0
    for window, edges in window_edge_sets(dataset, spec, analysis):
        ordered += len(eligible_pairs(dataset, window))
        significant += len(edges)
        collusive += sum(1 for e in edges if e.kind is EdgeKind.COLLUSIVE) // 2
    return CalibrationReport(ordered, significant, ordered // 2, collusive)
