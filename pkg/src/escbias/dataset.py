"""Ingestion and validation of per-year score matrices and the region registry.

Year files are square-ish matrices: header row ``giver,<receiver names...>``,
one row per giver, integer cells with explicit zeros.  Missing cells are
rejected rather than defaulted; silent defaults mask data errors.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    MalformedFile,
    MissingFile,
    MissingYear,
    SelfVote,
    UnattainableScore,
    UnknownCountry,
)
from .schemes import Allocated, Rated, Sequential, attainable_scores, scheme_for_year

REGION_COLORS = {
    "southwest": "red",
    "northwest": "turquoise",
    "north": "blue",
    "central": "gray",
    "southeast": "orange",
    "east": "green",
}


@dataclass(frozen=True)
class Region:
    label: str
    color: str


@dataclass(frozen=True)
class RegionRegistry:
    """Country name -> geographic region, used only for node coloring."""

    by_country: dict[str, Region]

    def __contains__(self, country: str) -> bool:
        return country in self.by_country

    def region(self, country: str) -> Region:
        try:
            return self.by_country[country]
        except KeyError:
            raise UnknownCountry(f"country {country!r} is not in the region registry") from None

    def countries(self) -> frozenset[str]:
        return frozenset(self.by_country)


@dataclass(frozen=True)
class YearRecord:
    """One contest year: who gave, who could receive, and every score cell.

    ``scores`` holds every (giver, receiver) cell including explicit zeros,
    but never a self-vote entry.
    """

    year: int
    givers: frozenset[str]
    receivers: frozenset[str]
    scores: dict[tuple[str, str], int]


@dataclass(frozen=True)
class Dataset:
    years: dict[int, YearRecord]
    regions: RegionRegistry

    def record(self, year: int) -> YearRecord:
        try:
            return self.years[year]
        except KeyError:
            raise MissingYear(f"year {year} is not in the dataset") from None


def load_dataset(directory: str | Path) -> Dataset:
    """Load ``<year>.csv`` matrices plus ``regions.csv`` from a directory."""
    root = Path(directory)
    if not root.is_dir():
        raise MissingFile(f"data directory {root} does not exist")
    regions = _load_regions(root / "regions.csv")
    years: dict[int, YearRecord] = {}
    for path in sorted(root.glob("*.csv")):
        if path.name == "regions.csv":
            continue
        if not path.stem.isdigit():
            raise MalformedFile(f"{path.name}: year files must be named <year>.csv")
        year = int(path.stem)
        scheme_for_year(year)  # rejects 1956 and anything outside 1957-2017
        years[year] = _load_year(path, year, regions)
    return Dataset(years=dict(sorted(years.items())), regions=regions)


def participants(dataset: Dataset, year: int) -> tuple[frozenset[str], frozenset[str]]:
    """Giver and receiver sets for one year."""
    record = dataset.record(year)
    return record.givers, record.receivers


def save_dataset(dataset: Dataset, directory: str | Path) -> None:
    """Write a dataset back out in the exact layout ``load_dataset`` reads."""
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    with (root / "regions.csv").open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["country", "region", "color"])
        for country in sorted(dataset.regions.by_country):
            region = dataset.regions.by_country[country]
            writer.writerow([country, region.label, region.color])
    for year, record in dataset.years.items():
        receivers = sorted(record.receivers)
        with (root / f"{year}.csv").open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["giver"] + receivers)
            for giver in sorted(record.givers):
                row = [giver] + [
                    0 if r == giver else record.scores[(giver, r)] for r in receivers
                ]
                writer.writerow(row)


def audit_year(record: YearRecord) -> list[str]:
    """Check each giver's awarded multiset against what the scheme permits.

    Returns human-readable violation messages; empty means clean.  This is a
    whole-row consistency check on top of the per-cell validation the loader
    already performs.
    """
    scheme = scheme_for_year(record.year)
    problems = []
    for giver in sorted(record.givers):
        cells = [
            record.scores[(giver, r)] for r in sorted(record.receivers) if r != giver
        ]
        awarded = sorted((v for v in cells if v > 0), reverse=True)
        if isinstance(scheme, Allocated):
            listed = list(scheme.scores)
            if any(awarded.count(v) > 1 for v in set(awarded)) or not set(
                awarded
            ) <= set(listed):
                problems.append(
                    f"{record.year}: {giver} awards {awarded}, but each of "
                    f"{listed} may be given at most once"
                )
        elif isinstance(scheme, Sequential):
            if not _partitionable(list(scheme.points), awarded):
                problems.append(
                    f"{record.year}: {giver} awards {awarded}, not a "
                    f"distribution of the points {list(scheme.points)}"
                )
        elif isinstance(scheme, Rated):
            low = scheme.juror_count * min(scheme.juror_scores)
            if any(v < low for v in cells):
                problems.append(
                    f"{record.year}: {giver} left a country below the "
                    f"minimum juror total {low}"
                )
    return problems


def audit_dataset(dataset: Dataset) -> list[str]:
    problems = []
    for record in dataset.years.values():
        problems.extend(audit_year(record))
    return problems


def _partitionable(points: list[int], cells: list[int]) -> bool:
    # Every point must land on some country; a cell is the sum of the points
    # that landed there.  Small sizes (at most ten points), so backtrack.
    if sum(points) != sum(cells):
        return False
    points = sorted(points, reverse=True)

    def place(i: int, remaining: tuple[int, ...]) -> bool:
        if i == len(points):
            return not any(remaining)
        tried = set()
        for j, capacity in enumerate(remaining):
            if points[i] <= capacity and capacity not in tried:
                tried.add(capacity)
                nxt = remaining[:j] + (capacity - points[i],) + remaining[j + 1 :]
                if place(i + 1, nxt):
                    return True
        return False

    return place(0, tuple(cells))


def _load_regions(path: Path) -> RegionRegistry:
    if not path.exists():
        raise MissingFile(f"{path} is required")
    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["country", "region", "color"]:
        raise MalformedFile(f"{path}: header must be country,region,color")
    by_country: dict[str, Region] = {}
    for row in rows[1:]:
        if len(row) != 3:
            raise MalformedFile(f"{path}: row {row!r} must have three cells")
        country, label, color = (cell.strip() for cell in row)
        if label not in REGION_COLORS:
            raise MalformedFile(f"{path}: unknown region {label!r} for {country}")
        if color != REGION_COLORS[label]:
            raise MalformedFile(
                f"{path}: region {label} must use color {REGION_COLORS[label]}, got {color!r}"
            )
        if country in by_country:
            raise MalformedFile(f"{path}: duplicate country {country}")
        by_country[country] = Region(label, color)
    missing = set(REGION_COLORS) - {r.label for r in by_country.values()}
    if missing:
        raise MalformedFile(f"{path}: regions {sorted(missing)} never occur")
    return RegionRegistry(by_country)


def _load_year(path: Path, year: int, regions: RegionRegistry) -> YearRecord:
    allowed = attainable_scores(scheme_for_year(year))
    with path.open(newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh) if row]
    if not rows or rows[0][:1] != ["giver"]:
        raise MalformedFile(f"{path}: first header cell must be 'giver'")
    receivers = rows[0][1:]
    if len(receivers) < 2:
        raise MalformedFile(f"{path}: need at least two receivers")
    if len(set(receivers)) != len(receivers):
        raise MalformedFile(f"{path}: duplicate receiver column")
    for name in receivers:
        if name not in regions:
            raise UnknownCountry(f"{path}: receiver {name!r} not in regions.csv")
    seen_givers: list[str] = []
    scores: dict[tuple[str, str], int] = {}
    for row in rows[1:]:
        giver = row[0]
        if giver not in regions:
            raise UnknownCountry(f"{path}: giver {giver!r} not in regions.csv")
        if giver in seen_givers:
            raise MalformedFile(f"{path}: duplicate giver row {giver}")
        if len(row) != len(receivers) + 1:
            raise MalformedFile(
                f"{path}: row for {giver} has {len(row) - 1} cells, expected "
                f"{len(receivers)} (missing cells are not defaulted)"
            )
        seen_givers.append(giver)
        for receiver, cell in zip(receivers, row[1:]):
            text = cell.strip()
            if not text:
                raise MalformedFile(f"{path}: empty cell {giver}->{receiver}")
            try:
                value = int(text)
            except ValueError:
                raise MalformedFile(
                    f"{path}: cell {giver}->{receiver} is not an integer: {text!r}"
                ) from None
            if receiver == giver:
                if value != 0:
                    raise SelfVote(f"{path}: {giver} votes for itself ({value})")
                continue
            if value not in allowed:
                raise UnattainableScore(
                    f"{path}: {giver}->{receiver} = {value} is not attainable "
                    f"under the {year} scheme"
                )
            scores[(giver, receiver)] = value
    giver_set = frozenset(seen_givers)
    receiver_set = frozenset(receivers)
    if not receiver_set <= giver_set:
        raise MalformedFile(
            f"{path}: receivers {sorted(receiver_set - giver_set)} never give"
        )
    if year <= 2003 and giver_set != receiver_set:
        raise MalformedFile(
            f"{path}: giver and receiver sets must coincide before 2004"
        )
    return YearRecord(year, giver_set, receiver_set, scores)
