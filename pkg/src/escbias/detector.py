"""Classify significant pair edges as one-way biased or two-way collusive.

A pair enters the analysis only when both countries are present for every
year of the window; partial-participation pairs are skipped outright rather
than re-thresholded on fewer years, which trades false negatives for fewer
false positives.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional

from .dataset import Dataset
from .errors import IoFailure
from .nullmodel import (
    AnalysisConfig,
    WindowSpec,
    check_eligible,
    compute_threshold,
    pair_is_eligible,
)


class EdgeKind(Enum):
    ONE_WAY = "oneway"
    COLLUSIVE = "collusive"


@dataclass(frozen=True)
class ObservedMean:
    pair: tuple[str, str]
    window: WindowSpec
    mean: float
    years_used: int


@dataclass(frozen=True)
class BiasEdge:
    """Directed significant edge; collusive edges come in mirrored pairs."""

    from_country: str
    to_country: str
    window: WindowSpec
    observed: float
    threshold: float
    kind: EdgeKind


def observed_mean(dataset: Dataset, pair: tuple[str, str], window: WindowSpec) -> ObservedMean:
    """Average points the pair's giver awarded the receiver per window year."""
    check_eligible(dataset, pair, window)
    giver, receiver = pair
    total = sum(dataset.record(year).scores.get((giver, receiver), 0) for year in window.years())
    return ObservedMean(pair, window, total / len(window), len(window))


def detect_pair(
    dataset: Dataset,
    pair: tuple[str, str],
    window: WindowSpec,
    config: AnalysisConfig,
) -> Optional[BiasEdge]:
    """Edge iff the observed mean strictly exceeds the null threshold.

    Ties are non-significant.  The returned kind is provisionally ONE_WAY;
    ``detect_window`` upgrades mirrored pairs.
    """
    observed = observed_mean(dataset, pair, window)
    null = compute_threshold(dataset, pair, window, config)
    if observed.mean > null.threshold:
        return BiasEdge(pair[0], pair[1], window, observed.mean, null.threshold, EdgeKind.ONE_WAY)
    return None


def eligible_pairs(dataset: Dataset, window: WindowSpec) -> list[tuple[str, str]]:
    """Ordered pairs whose giver gives and receiver receives in every window year."""
    records = [dataset.record(year) for year in window.years()]
    givers = frozenset.intersection(*(r.givers for r in records))
    receivers = frozenset.intersection(*(r.receivers for r in records))
    return [(g, r) for g in sorted(givers) for r in sorted(receivers) if g != r]


def window_skips(dataset: Dataset, window: WindowSpec) -> list[tuple[str, str]]:
    """Ordered pairs seen somewhere in the window but not eligible throughout."""
    records = [dataset.record(year) for year in window.years()]
    all_givers = frozenset.union(*(r.givers for r in records))
    all_receivers = frozenset.union(*(r.receivers for r in records))
    return [
        (g, r)
        for g in sorted(all_givers)
        for r in sorted(all_receivers)
        if g != r and not pair_is_eligible(dataset, (g, r), window)
    ]


def detect_window(
    dataset: Dataset,
    window: WindowSpec,
    config: AnalysisConfig,
) -> list[BiasEdge]:
    """Significant edges over all eligible ordered pairs, collusion marked.

    Pair tasks run on a thread pool when ``config.workers`` > 1; the kernel
    releases the GIL and per-pair child seeds keep the result identical to a
    serial run.
    """
    pairs = eligible_pairs(dataset, window)
    if config.bonferroni and pairs:
        config = replace(config, alpha=config.alpha / len(pairs))

    def task(pair: tuple[str, str]) -> Optional[BiasEdge]:
        return detect_pair(dataset, pair, window, config)

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            hits = [edge for edge in pool.map(task, pairs) if edge is not None]
    else:
        hits = [edge for edge in map(task, pairs) if edge is not None]

    significant = {(e.from_country, e.to_country) for e in hits}
    edges = [
        replace(edge, kind=EdgeKind.COLLUSIVE)
        if (edge.to_country, edge.from_country) in significant
        else edge
        for edge in hits
    ]
    return sorted(edges, key=lambda e: (e.from_country, e.to_country))


def write_window_report(edges: Iterable[BiasEdge], path: str | Path) -> None:
    """Per-window CSV report: from,to,observed,threshold,kind."""
    try:
        with Path(path).open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["from", "to", "observed", "threshold", "kind"])
            for edge in edges:
                writer.writerow(
                    [
                        edge.from_country,
                        edge.to_country,
                        repr(edge.observed),
                        repr(edge.threshold),
                        edge.kind.value,
                    ]
                )
    except OSError as exc:
        raise IoFailure(f"cannot write window report {path}: {exc}") from exc
