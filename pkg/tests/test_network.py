import math

import pytest
from hypothesis import given, settings, strategies as st

from escbias.dataset import Region
from escbias.errors import InvalidSpec, IoFailure, WrongMode
from escbias.network import (
    AggregationMode,
    AggregationSpec,
    BiasNetwork,
    aggregate,
    emit_dot,
    reciprocity_ratio,
    window_edge_sets,
    write_edge_csv,
)
from escbias.nullmodel import AnalysisConfig
from escbias.synthdata import null_dataset

ORANGE = Region("southeast", "orange")
GRAY = Region("central", "gray")


def make_network(collusive, one_way, mode=AggregationMode.ONE_WAY_AND_COLLUSION):
    nodes = {}
    for pair in list(collusive) + list(one_way):
        for country in pair:
            nodes[country] = ORANGE if country != "Germany" else GRAY
    spec = AggregationSpec(1975, 1995, 5, mode)
    return BiasNetwork(dict(sorted(nodes.items())), dict(collusive), dict(one_way), spec)


class TestAggregationSpec:
    def test_four_estimates_for_1975_to_1995(self):
        spec = AggregationSpec(1975, 1995, 5)
        windows = spec.windows()
        assert [(w.start_year, w.end_year) for w in windows] == [
            (1975, 1979),
            (1980, 1984),
            (1985, 1989),
            (1990, 1994),
        ]

    @given(
        start=st.integers(min_value=1957, max_value=2005),
        size=st.integers(min_value=1, max_value=12),
        count=st.integers(min_value=1, max_value=6),
        slack=st.integers(min_value=0, max_value=4),
    )
    @settings(max_examples=60, deadline=None)
    def test_windows_partition_without_gap_or_overlap(self, start, size, count, slack):
        end = start + size * count + slack
        if end > 2017 or slack >= size:
            return
        windows = AggregationSpec(start, end, size).windows()
        assert len(windows) == count
        covered = [year for w in windows for year in w.years()]
        assert covered == list(range(start, start + count * size))

    def test_invalid_specs(self):
        with pytest.raises(InvalidSpec):
            AggregationSpec(1975, 1979, 5)  # span shorter than one window
        with pytest.raises(InvalidSpec):
            AggregationSpec(1975, 1995, 0)


class TestAggregate:
    def test_decomposable_across_half_spans(self):
        ds = null_dataset(8, 1975, 1994, seed=77)
        config = AnalysisConfig(sample_size=2000, seed=13)
        mode = AggregationMode.ONE_WAY_AND_COLLUSION
        whole = aggregate(ds, AggregationSpec(1975, 1995, 5, mode), config)
        first = aggregate(ds, AggregationSpec(1975, 1985, 5, mode), config)
        second = aggregate(ds, AggregationSpec(1985, 1995, 5, mode), config)

        def merged(attribute):
            combined = {}
            for network in (first, second):
                for pair, count in getattr(network, attribute).items():
                    combined[pair] = combined.get(pair, 0) + count
            return combined

        assert merged("collusive_edges") == whole.collusive_edges
        assert merged("one_way_edges") == whole.one_way_edges

    def test_no_pair_in_both_maps_for_one_window(self):
        ds = null_dataset(8, 1975, 1984, seed=78)
        spec = AggregationSpec(1975, 1985, 5, AggregationMode.ONE_WAY_AND_COLLUSION)
        for _, edges in window_edge_sets(ds, spec, AnalysisConfig(sample_size=2000, seed=14)):
            collusive = {
                tuple(sorted((e.from_country, e.to_country)))
                for e in edges
                if e.kind.value == "collusive"
            }
            one_way = {
                tuple(sorted((e.from_country, e.to_country)))
                for e in edges
                if e.kind.value == "oneway"
            }
            assert not collusive & one_way

    def test_nodes_only_include_incident_countries(self):
        ds = null_dataset(8, 1975, 1984, seed=78)
        spec = AggregationSpec(1975, 1985, 5, AggregationMode.ONE_WAY_AND_COLLUSION)
        network = aggregate(ds, spec, AnalysisConfig(sample_size=2000, seed=14))
        incident = {c for pair in network.collusive_edges for c in pair}
        incident |= {c for pair in network.one_way_edges for c in pair}
        assert set(network.nodes) == incident
        counts = list(network.collusive_edges.values()) + list(network.one_way_edges.values())
        assert all(1 <= n <= len(spec.windows()) for n in counts)


class TestRealDataAggregates:
    def test_long_history_shows_regional_clusters(self, dataset):
        spec = AggregationSpec(1957, 2012, 5, AggregationMode.COLLUSION_ONLY)
        network = aggregate(dataset, spec, AnalysisConfig(sample_size=2000, seed=61))
        collusive_regions = {
            network.nodes[country].label
            for pair in network.collusive_edges
            for country in pair
        }
        assert {"north", "east", "southeast"} <= collusive_regions

    def test_reciprocity_over_chronological_aggregates(self, dataset):
        ratios = []
        for start in (1977, 1987, 1997, 2007):
            spec = AggregationSpec(start, start + 5, 5, AggregationMode.ONE_WAY_AND_COLLUSION)
            network = aggregate(dataset, spec, AnalysisConfig(sample_size=2000, seed=61))
            ratios.extend(reciprocity_ratio([network]))
        # the computation must be defined on every epoch; the upward drift
        # itself is a property of the data, so it is reported, not asserted
        assert all(r is None or r >= 0 for r in ratios)
        print("reciprocity by decade:", ratios)


class TestReciprocityRatio:
    def test_simple_ratio(self):
        network = make_network(
            {("Cyprus", "Greece"): 1, ("Albania", "Greece"): 1},
            {("Germany", "Turkey"): 1, ("France", "Turkey"): 1,
             ("Belgium", "Turkey"): 1, ("Ireland", "Sweden"): 1},
        )
        assert reciprocity_ratio([network]) == [0.5]

    def test_occurrence_weighting(self):
        network = make_network({("Cyprus", "Greece"): 3}, {("Germany", "Turkey"): 2})
        assert reciprocity_ratio([network]) == [1.5]

    def test_empty_is_undefined(self):
        assert reciprocity_ratio([make_network({}, {})]) == [None]

    def test_collusion_without_one_way_is_infinite(self):
        result = reciprocity_ratio([make_network({("Cyprus", "Greece"): 2}, {})])
        assert result == [math.inf]

    def test_wrong_mode(self):
        network = make_network({}, {}, mode=AggregationMode.COLLUSION_ONLY)
        with pytest.raises(WrongMode):
            reciprocity_ratio([network])


class TestEmitDot:
    def test_empty_network(self):
        text = emit_dot(make_network({}, {}))
        assert text == "digraph bias_network {\n  node [style=filled];\n}\n"

    def test_collusive_pair_rendering(self):
        text = emit_dot(make_network({("Cyprus", "Greece"): 3}, {}))
        assert text.splitlines() == [
            "digraph bias_network {",
            "  node [style=filled];",
            '  "Cyprus" [fillcolor=orange];',
            '  "Greece" [fillcolor=orange];',
            '  "Cyprus" -> "Greece" [color=red, dir=both, penwidth=4];',
            "}",
        ]

    def test_one_way_rendering(self):
        text = emit_dot(make_network({}, {("Germany", "Turkey"): 1}))
        assert '  "Germany" [fillcolor=gray];' in text
        assert '  "Turkey" [fillcolor=orange];' in text
        assert '  "Germany" -> "Turkey" [color=black, penwidth=2];' in text

    def test_deterministic_and_written(self, tmp_path):
        network = make_network({("Cyprus", "Greece"): 2}, {("Germany", "Turkey"): 1})
        path = tmp_path / "network.dot"
        text = emit_dot(network, path)
        assert path.read_text(encoding="utf-8") == text
        assert emit_dot(network) == text

    def test_io_failure(self, tmp_path):
        network = make_network({}, {})
        with pytest.raises(IoFailure):
            emit_dot(network, tmp_path / "missing" / "network.dot")


def test_edge_csv_layout(tmp_path):
    network = make_network({("Cyprus", "Greece"): 2}, {("Germany", "Turkey"): 1})
    path = tmp_path / "edges.csv"
    write_edge_csv(network, path)
    assert path.read_text(encoding="utf-8").splitlines() == [
        "from,to,kind,count",
        "Cyprus,Greece,collusive,2",
        "Germany,Turkey,oneway,1",
    ]
