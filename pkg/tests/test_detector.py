import pytest

from escbias.dataset import Dataset, YearRecord
from escbias.detector import (
    BiasEdge,
    EdgeKind,
    detect_pair,
    detect_window,
    eligible_pairs,
    observed_mean,
    window_skips,
    write_window_report,
)
from escbias.errors import IneligiblePair
from escbias.nullmodel import AnalysisConfig, WindowSpec, compute_threshold
from escbias.synthdata import null_dataset, region_registry

RATED_WINDOW = WindowSpec(1971, 1973)


def rated_pair_dataset(forward: dict[int, int], backward: dict[int, int]) -> Dataset:
    """Two-country dataset over 1971-73 with prescribed France->Spain cells."""
    years = {}
    for year in (1971, 1972, 1973):
        scores = {
            ("France", "Spain"): forward[year],
            ("Spain", "France"): backward[year],
        }
        pair = frozenset({"France", "Spain"})
        years[year] = YearRecord(year, pair, pair, scores)
    return Dataset(years, region_registry())


def split_into_rated_cells(total: int) -> dict[int, int]:
    """Three per-year juror totals in [2, 10] summing to ``total``."""
    first = min(10, total - 4)
    rest = total - first
    second = min(10, rest - 2)
    cells = [first, second, rest - second]
    assert all(2 <= c <= 10 for c in cells) and sum(cells) == total
    return dict(zip((1971, 1972, 1973), cells))


class TestObservedMean:
    def test_constant_twelve(self, dataset):
        # the bundled Greece->Cyprus cells are 12 throughout this window
        result = observed_mean(dataset, ("Greece", "Cyprus"), WindowSpec(1997, 2001))
        assert result.mean == 12.0
        assert result.years_used == 5

    def test_partial_participation_is_ineligible(self, dataset):
        with pytest.raises(IneligiblePair):
            observed_mean(dataset, ("France", "Morocco"), WindowSpec(1979, 1981))


class TestDetectPair:
    def test_tie_with_threshold_is_not_significant(self):
        config = AnalysisConfig(sample_size=10_000, seed=17)
        probe = rated_pair_dataset({y: 5 for y in (1971, 1972, 1973)}, {y: 5 for y in (1971, 1972, 1973)})
        threshold = compute_threshold(probe, ("France", "Spain"), RATED_WINDOW, config).threshold
        total = round(threshold * 3)
        assert total / 3 == threshold  # means live on the third-integer grid

        tied = rated_pair_dataset(split_into_rated_cells(total), {y: 5 for y in (1971, 1972, 1973)})
        assert observed_mean(tied, ("France", "Spain"), RATED_WINDOW).mean == threshold
        assert detect_pair(tied, ("France", "Spain"), RATED_WINDOW, config) is None

        cells = split_into_rated_cells(total)
        cells[1973] += 1
        above = rated_pair_dataset(cells, {y: 5 for y in (1971, 1972, 1973)})
        edge = detect_pair(above, ("France", "Spain"), RATED_WINDOW, config)
        assert edge is not None and edge.kind is EdgeKind.ONE_WAY
        assert edge.observed > edge.threshold

    @pytest.mark.parametrize("field_size", [11, 20, 40])
    def test_maximum_scorer_is_always_significant(self, field_size):
        # twelve points every year clears any 1975-era threshold
        config = AnalysisConfig(sample_size=5000, seed=19, candidate_counts={
            year: field_size for year in range(1975, 1980)
        })
        ds = null_dataset(4, 1975, 1979, seed=66)
        giver, receiver = sorted(ds.years[1975].givers)[:2]
        boosted = _give_twelve_every_year(ds, giver, receiver)
        edge = detect_pair(boosted, (giver, receiver), WindowSpec(1975, 1979), config)
        assert edge is not None and edge.observed == 12.0

    def test_raising_a_score_never_removes_the_edge(self):
        config = AnalysisConfig(sample_size=10_000, seed=17)
        probe = rated_pair_dataset({y: 9 for y in (1971, 1972, 1973)}, {y: 5 for y in (1971, 1972, 1973)})
        threshold = compute_threshold(probe, ("France", "Spain"), RATED_WINDOW, config).threshold
        total = round(threshold * 3) + 1
        cells = split_into_rated_cells(total)
        assert detect_pair(
            rated_pair_dataset(cells, {y: 5 for y in (1971, 1972, 1973)}),
            ("France", "Spain"), RATED_WINDOW, config,
        ) is not None
        for year in cells:
            if cells[year] < 10:
                bumped = dict(cells)
                bumped[year] += 1
                assert detect_pair(
                    rated_pair_dataset(bumped, {y: 5 for y in (1971, 1972, 1973)}),
                    ("France", "Spain"), RATED_WINDOW, config,
                ) is not None


class TestDetectWindow:
    def test_maximal_exchange_is_mirrored_collusion(self):
        tens = {y: 10 for y in (1971, 1972, 1973)}
        ds = rated_pair_dataset(tens, tens)
        edges = detect_window(ds, RATED_WINDOW, AnalysisConfig(sample_size=5000, seed=23))
        assert len(edges) == 2
        assert all(e.kind is EdgeKind.COLLUSIVE for e in edges)
        assert {(e.from_country, e.to_country) for e in edges} == {
            ("France", "Spain"),
            ("Spain", "France"),
        }

    def test_classification_symmetry(self, dataset):
        edges = detect_window(dataset, WindowSpec(1997, 2001), AnalysisConfig(sample_size=2000, seed=29))
        directed = {(e.from_country, e.to_country): e.kind for e in edges}
        for (a, b), kind in directed.items():
            if kind is EdgeKind.COLLUSIVE:
                assert directed.get((b, a)) is EdgeKind.COLLUSIVE
            else:
                assert (b, a) not in directed or directed[(b, a)] is EdgeKind.ONE_WAY

    def test_worker_count_does_not_change_results(self, dataset):
        window = WindowSpec(1975, 1979)
        serial = detect_window(dataset, window, AnalysisConfig(sample_size=2000, seed=31, workers=1))
        parallel = detect_window(dataset, window, AnalysisConfig(sample_size=2000, seed=31, workers=4))
        assert serial == parallel

    def test_bonferroni_only_removes_edges(self, dataset):
        window = WindowSpec(1997, 2001)
        plain = detect_window(dataset, window, AnalysisConfig(sample_size=2000, seed=37))
        corrected = detect_window(
            dataset, window, AnalysisConfig(sample_size=2000, seed=37, bonferroni=True)
        )
        plain_pairs = {(e.from_country, e.to_country) for e in plain}
        corrected_pairs = {(e.from_country, e.to_country) for e in corrected}
        assert corrected_pairs <= plain_pairs

    def test_deleting_a_country_keeps_other_edges(self):
        ds = null_dataset(6, 1975, 1979, seed=55)
        dropped = sorted(ds.years[1975].givers)[0]
        overrides = {year: 10 for year in range(1975, 1980)}
        config = AnalysisConfig(sample_size=3000, seed=41, candidate_counts=overrides)
        window = WindowSpec(1975, 1979)
        before = {
            (e.from_country, e.to_country): e.kind
            for e in detect_window(ds, window, config)
            if dropped not in (e.from_country, e.to_country)
        }
        after_edges = detect_window(_drop_country(ds, dropped), window, config)
        after = {(e.from_country, e.to_country): e.kind for e in after_edges}
        assert after == before


class TestEligibility:
    def test_eligible_pairs_respect_final_subsets(self, dataset):
        window = WindowSpec(2007, 2011)
        receivers = frozenset.intersection(
            *(dataset.years[y].receivers for y in window.years())
        )
        pairs = eligible_pairs(dataset, window)
        assert pairs and all(r in receivers for _, r in pairs)

    def test_window_skips_cover_partial_participants(self, dataset):
        window = WindowSpec(1979, 1981)
        skips = window_skips(dataset, window)
        assert ("France", "Morocco") in skips and ("Morocco", "France") in skips
        assert all("Morocco" not in pair for pair in eligible_pairs(dataset, window))


def test_window_report_layout(tmp_path):
    edges = [
        BiasEdge("Greece", "Cyprus", WindowSpec(1997, 2001), 12.0, 4.6, EdgeKind.COLLUSIVE),
        BiasEdge("Germany", "Turkey", WindowSpec(1997, 2001), 9.4, 4.8, EdgeKind.ONE_WAY),
    ]
    path = tmp_path / "report.csv"
    write_window_report(edges, path)
    assert path.read_text(encoding="utf-8").splitlines() == [
        "from,to,observed,threshold,kind",
        "Greece,Cyprus,12.0,4.6,collusive",
        "Germany,Turkey,9.4,4.8,oneway",
    ]


def _give_twelve_every_year(ds: Dataset, giver: str, receiver: str) -> Dataset:
    # swap the giver's 12 onto the chosen receiver, keeping rows legal
    years = {}
    for year, record in ds.years.items():
        scores = dict(record.scores)
        holder = next(r for (g, r), v in scores.items() if g == giver and v == 12)
        scores[(giver, holder)] = scores[(giver, receiver)]
        scores[(giver, receiver)] = 12
        years[year] = YearRecord(year, record.givers, record.receivers, scores)
    return Dataset(years, ds.regions)


def _drop_country(ds: Dataset, name: str) -> Dataset:
    years = {}
    for year, record in ds.years.items():
        years[year] = YearRecord(
            year,
            record.givers - {name},
            record.receivers - {name},
            {
                pair: value
                for pair, value in record.scores.items()
                if name not in pair
            },
        )
    return Dataset(years, ds.regions)
