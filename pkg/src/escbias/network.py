"""Aggregate per-window edge sets into weighted bias networks and emit DOT.

Windows step by their own size (no overlap, trailing partial windows are
dropped), so a 1975-1995 span with size 5 yields exactly four estimates.
Within an aggregate, a collusive pair subsumes its two directed components
for that window; occurrence counts drive edge thickness in the drawing.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .dataset import Dataset, Region
from .detector import BiasEdge, EdgeKind, detect_window
from .errors import InvalidSpec, IoFailure, WrongMode
from .nullmodel import AnalysisConfig, WindowSpec


class AggregationMode(Enum):
    COLLUSION_ONLY = "collusion"
    ONE_WAY_AND_COLLUSION = "all-edges"


@dataclass(frozen=True)
class AggregationSpec:
    """Stepping-window aggregation over [start_year, end_year)."""

    start_year: int
    end_year: int
    window_size: int
    mode: AggregationMode = AggregationMode.COLLUSION_ONLY

    def __post_init__(self) -> None:
        if self.window_size < 1:
            raise InvalidSpec(f"window size must be positive, got {self.window_size}")
        if self.end_year - self.start_year < self.window_size:
            raise InvalidSpec(
                f"span {self.start_year}-{self.end_year} is shorter than one "
                f"window of {self.window_size}"
            )

    def windows(self) -> list[WindowSpec]:
        count = (self.end_year - self.start_year) // self.window_size
        return [
            WindowSpec(
                self.start_year + i * self.window_size,
                self.start_year + (i + 1) * self.window_size - 1,
            )
            for i in range(count)
        ]


@dataclass(frozen=True)
class BiasNetwork:
    """Weighted aggregate of significant edges across stepping windows.

    ``collusive_edges`` is keyed by sorted unordered pairs, ``one_way_edges``
    by ordered pairs; values count the windows in which the edge appeared.
    Nodes carry their region attributes and only edge-incident countries
    are included.
    """

    nodes: dict[str, Region]
    collusive_edges: dict[tuple[str, str], int]
    one_way_edges: dict[tuple[str, str], int]
    spec: AggregationSpec


def window_edge_sets(
    dataset: Dataset, spec: AggregationSpec, config: AnalysisConfig
) -> Iterator[tuple[WindowSpec, list[BiasEdge]]]:
    """Detect each stepping window in chronological order."""
    for window in spec.windows():
        yield window, detect_window(dataset, window, config)


def network_from_edge_sets(
    dataset: Dataset,
    spec: AggregationSpec,
    edge_sets: Iterable[tuple[WindowSpec, list[BiasEdge]]],
) -> BiasNetwork:
    collusive: dict[tuple[str, str], int] = {}
    one_way: dict[tuple[str, str], int] = {}
    for _, edges in edge_sets:
        for edge in edges:
            if edge.kind is EdgeKind.COLLUSIVE:
                pair = tuple(sorted((edge.from_country, edge.to_country)))
                if edge.from_country == pair[0]:  # count each mirrored pair once
                    collusive[pair] = collusive.get(pair, 0) + 1
            elif spec.mode is AggregationMode.ONE_WAY_AND_COLLUSION:
                pair = (edge.from_country, edge.to_country)
                one_way[pair] = one_way.get(pair, 0) + 1
    incident = {c for pair in collusive for c in pair}
    incident |= {c for pair in one_way for c in pair}
    nodes = {c: dataset.regions.region(c) for c in sorted(incident)}
    return BiasNetwork(nodes, collusive, one_way, spec)


def aggregate(dataset: Dataset, spec: AggregationSpec, config: AnalysisConfig) -> BiasNetwork:
    """Run detection over every stepping window and count edge occurrences."""
    return network_from_edge_sets(dataset, spec, window_edge_sets(dataset, spec, config))


def reciprocity_ratio(networks: Iterable[BiasNetwork]) -> list[Optional[float]]:
    """Occurrence-weighted collusive-to-one-way ratio per network.

    Returns ``inf`` when collusion exists without any one-way edges and
    ``None`` for the undefined empty (0/0) case.
    """
    ratios: list[Optional[float]] = []
    for network in networks:
        if network.spec.mode is not AggregationMode.ONE_WAY_AND_COLLUSION:
            raise WrongMode(
                "reciprocity_ratio needs networks aggregated with one-way "
                "edges included"
            )
        collusive = sum(network.collusive_edges.values())
        one_way = sum(network.one_way_edges.values())
        if one_way:
            ratios.append(collusive / one_way)
        elif collusive:
            ratios.append(float("inf"))
        else:
            ratios.append(None)
    return ratios


def emit_dot(network: BiasNetwork, output_path: str | Path | None = None) -> str:
    """Render the network as deterministic DOT text, optionally writing it.

    Collusive edges are red with ``dir=both``, one-way edges black directed
    arrows; penwidth grows linearly with the occurrence count and nodes are
    filled with their region color.  Output ordering is lexicographic so
    identical networks produce byte-identical files.
    """
    lines = ["digraph bias_network {", "  node [style=filled];"]
    for country in sorted(network.nodes):
        region = network.nodes[country]
        lines.append(f'  "{country}" [fillcolor={region.color}];')
    for pair in sorted(network.collusive_edges):
        count = network.collusive_edges[pair]
        lines.append(
            f'  "{pair[0]}" -> "{pair[1]}" '
            f"[color=red, dir=both, penwidth={1 + count}];"
        )
    for pair in sorted(network.one_way_edges):
        count = network.one_way_edges[pair]
        lines.append(
            f'  "{pair[0]}" -> "{pair[1]}" [color=black, penwidth={1 + count}];'
        )
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if output_path is not None:
        try:
            Path(output_path).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise IoFailure(f"cannot write DOT file {output_path}: {exc}") from exc
    return text


def write_edge_csv(network: BiasNetwork, path: str | Path) -> None:
    """Companion edge list: from,to,kind,count."""
    try:
        with Path(path).open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["from", "to", "kind", "count"])
            for pair in sorted(network.collusive_edges):
                writer.writerow([pair[0], pair[1], "collusive", network.collusive_edges[pair]])
            for pair in sorted(network.one_way_edges):
                writer.writerow([pair[0], pair[1], "oneway", network.one_way_edges[pair]])
    except OSError as exc:
        raise IoFailure(f"cannot write edge list {path}: {exc}") from exc
