"""Deterministic synthetic datasets: unbiased null tables plus known biases.

The bundled reference dataset is generated here.  Participation rosters
follow the real contest's timeline closely (debuts, withdrawals, the 10
founding participants of 1957, 42 givers with a 26-country final by 2017),
and scores are drawn from the unbiased null model of each year's scheme.
On top of that, the well-documented bias patterns (the Greece-Cyprus
exchange, the Nordic bloc, diaspora one-way edges toward Turkey, and a few
others) are injected as legal award reassignments, so every generated table
still validates against its scheme.

Calibration studies use the plain null generator with no injected rules.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .dataset import Dataset, Region, RegionRegistry, REGION_COLORS, YearRecord
from .nullmodel import derive_seed
from .schemes import Allocated, Rated, Sequential, scheme_for_year

DEFAULT_DATA_SEED = 2017
FINAL_SIZE = 26

REGION_TABLE = {
    "Portugal": "southwest",
    "Spain": "southwest",
    "Malta": "southwest",
    "SanMarino": "southwest",
    "Andorra": "southwest",
    "Monaco": "southwest",
    "Morocco": "southwest",
    "Italy": "southwest",
    "UnitedKingdom": "northwest",
    "Ireland": "northwest",
    "Belgium": "northwest",
    "France": "northwest",
    "Luxembourg": "northwest",
    "Iceland": "north",
    "Denmark": "north",
    "Norway": "north",
    "Sweden": "north",
    "Finland": "north",
    "Germany": "central",
    "Austria": "central",
    "TheNetherlands": "central",
    "Switzerland": "central",
    "Slovenia": "central",
    "CzechRepublic": "central",
    "Hungary": "central",
    "Greece": "southeast",
    "Montenegro": "southeast",
    "Cyprus": "southeast",
    "Albania": "southeast",
    "Bulgaria": "southeast",
    "Croatia": "southeast",
    "BosniaHerzegovina": "southeast",
    "Turkey": "southeast",
    "FYRMacedonia": "southeast",
    "Romania": "southeast",
    "Serbia": "southeast",
    "Israel": "southeast",
    "Yugoslavia": "southeast",
    "Russia": "east",
    "Ukraine": "east",
    "Moldova": "east",
    "Belarus": "east",
    "Poland": "east",
    "Georgia": "east",
    "Armenia": "east",
    "Azerbaijan": "east",
    "Estonia": "east",
    "Lithuania": "east",
    "Latvia": "east",
}

# Inclusive participation spans.  Plausible rather than archival: debut years
# track the real contest, while mid-career relegation gaps are smoothed out
# except where the 1975 field size depends on them.
PARTICIPATION: dict[str, tuple[tuple[int, int], ...]] = {
    "Austria": ((1957, 1972), (1976, 2017)),
    "Belgium": ((1957, 2017),),
    "Denmark": ((1957, 1966), (1978, 2017)),
    "France": ((1957, 2017),),
    "Germany": ((1957, 2017),),
    "Italy": ((1957, 2017),),
    "Luxembourg": ((1957, 1993),),
    "TheNetherlands": ((1957, 2017),),
    "Switzerland": ((1957, 2017),),
    "UnitedKingdom": ((1957, 2017),),
    "Sweden": ((1958, 2017),),
    "Monaco": ((1959, 1979),),
    "Norway": ((1960, 2017),),
    "Spain": ((1961, 2017),),
    "Finland": ((1961, 2017),),
    "Yugoslavia": ((1961, 1992),),
    "Portugal": ((1964, 2017),),
    "Ireland": ((1965, 2017),),
    "Malta": ((1971, 2017),),
    "Israel": ((1973, 2017),),
    "Greece": ((1974, 1974), (1976, 2017)),
    "Turkey": ((1975, 2012),),
    "Morocco": ((1980, 1980),),
    "Cyprus": ((1981, 2017),),
    "Iceland": ((1986, 2017),),
    "Croatia": ((1993, 2017),),
    "Slovenia": ((1993, 2017),),
    "BosniaHerzegovina": ((1993, 2016),),
    "Estonia": ((1994, 2017),),
    "Romania": ((1994, 2017),),
    "Lithuania": ((1994, 2017),),
    "Hungary": ((1994, 2017),),
    "Poland": ((1994, 2017),),
    "Russia": ((1994, 2017),),
    "FYRMacedonia": ((1998, 2017),),
    "Latvia": ((2000, 2017),),
    "Ukraine": ((2003, 2017),),
    "Albania": ((2004, 2017),),
    "Andorra": ((2004, 2009),),
    "Belarus": ((2004, 2017),),
    "Bulgaria": ((2005, 2017),),
    "Moldova": ((2005, 2017),),
    "Armenia": ((2006, 2017),),
    "CzechRepublic": ((2007, 2017),),
    "Georgia": ((2007, 2017),),
    "Montenegro": ((2007, 2017),),
    "Serbia": ((2007, 2017),),
    "Azerbaijan": ((2008, 2017),),
    "SanMarino": ((2008, 2017),),
}

# Countries guaranteed a slot in the 2004+ final whenever they participate;
# the remaining slots are filled deterministically per year.
FINALIST_PRIORITY = (
    "Greece",
    "Cyprus",
    "Turkey",
    "Germany",
    "Sweden",
    "Denmark",
    "Norway",
    "Finland",
    "Iceland",
    "UnitedKingdom",
    "France",
    "Spain",
    "Italy",
    "Albania",
    "Azerbaijan",
    "Russia",
    "Ukraine",
    "Croatia",
    "Malta",
    "Estonia",
)

NORDIC_BLOC = ("Denmark", "Finland", "Iceland", "Norway", "Sweden")


@dataclass(frozen=True)
class BiasRule:
    """One persistent preference: giver consistently over-scores receiver."""

    giver: str
    receiver: str
    first_year: int
    last_year: int

    def applies(self, giver: str, year: int) -> bool:
        return giver == self.giver and self.first_year <= year <= self.last_year


def mutual(a: str, b: str, first_year: int, last_year: int) -> tuple[BiasRule, BiasRule]:
    return BiasRule(a, b, first_year, last_year), BiasRule(b, a, first_year, last_year)


def _nordic_rules() -> list[BiasRule]:
    rules = []
    for a in NORDIC_BLOC:
        for b in NORDIC_BLOC:
            if a != b:
                rules.append(BiasRule(a, b, 1957, 2017))
    return rules


REFERENCE_BIASES: tuple[BiasRule, ...] = tuple(
    _nordic_rules()
    + [
        *mutual("Greece", "Cyprus", 1981, 2017),
        *mutual("Greece", "Albania", 2005, 2017),
        *mutual("Croatia", "Malta", 1993, 2017),
        *mutual("Turkey", "Azerbaijan", 2008, 2012),
        *mutual("Estonia", "Finland", 2001, 2017),
        *mutual("Spain", "Portugal", 1964, 2017),
        *mutual("Spain", "Monaco", 1961, 1979),
        *mutual("Russia", "Belarus", 2004, 2017),
        *mutual("Russia", "Ukraine", 2003, 2017),
        BiasRule("Germany", "Turkey", 1996, 2012),
        BiasRule("Belgium", "Turkey", 1996, 2006),
        BiasRule("France", "Turkey", 1996, 2006),
        BiasRule("TheNetherlands", "Turkey", 1996, 2006),
        BiasRule("UnitedKingdom", "Sweden", 1996, 2006),
        BiasRule("Ireland", "Sweden", 1996, 2006),
    ]
)


def region_registry() -> RegionRegistry:
    return RegionRegistry(
        {
            country: Region(label, REGION_COLORS[label])
            for country, label in REGION_TABLE.items()
        }
    )


def active_countries(year: int) -> frozenset[str]:
    return frozenset(
        country
        for country, spans in PARTICIPATION.items()
        if any(first <= year <= last for first, last in spans)
    )


def reference_rosters(seed: int = DEFAULT_DATA_SEED) -> dict[int, tuple[frozenset[str], frozenset[str]]]:
    """Giver and receiver sets per year; 2004+ receivers are a final subset."""
    rosters = {}
    for year in range(1957, 2018):
        givers = active_countries(year)
        if year <= 2003:
            receivers = givers
        else:
            receivers = _finalists(year, givers, seed)
        rosters[year] = (givers, receivers)
    return rosters


def _finalists(year: int, givers: frozenset[str], seed: int) -> frozenset[str]:
    chosen = [c for c in FINALIST_PRIORITY if c in givers]
    rest = sorted(givers - set(chosen))
    rng = np.random.default_rng(derive_seed(seed, "final", year))
    filler = list(rng.permutation(rest))
    return frozenset((chosen + filler)[:FINAL_SIZE])


def generate_dataset(
    rosters: Mapping[int, tuple[frozenset[str], frozenset[str]]],
    seed: int,
    biases: Sequence[BiasRule] = (),
) -> Dataset:
    """Simulate every year's score table under its scheme, biases injected."""
    years = {}
    for year in sorted(rosters):
        givers, receivers = rosters[year]
        scheme = scheme_for_year(year)
        rng = np.random.default_rng(derive_seed(seed, "year", year))
        scores: dict[tuple[str, str], int] = {}
        for giver in sorted(givers):
            candidates = sorted(receivers - {giver})
            favored = _favored(biases, giver, year, candidates)
            if isinstance(scheme, Allocated):
                row = _allocated_row(scheme, candidates, favored, rng)
            elif isinstance(scheme, Sequential):
                row = _sequential_row(scheme, candidates, favored, rng)
            else:
                row = _rated_row(scheme, candidates, favored, rng)
            for receiver, value in row.items():
                scores[(giver, receiver)] = value
        years[year] = YearRecord(year, frozenset(givers), frozenset(receivers), scores)
    return Dataset(years, region_registry())


def reference_dataset(seed: int = DEFAULT_DATA_SEED) -> Dataset:
    """The full 1957-2017 bundled dataset: null scores plus known biases."""
    return generate_dataset(reference_rosters(seed), seed, REFERENCE_BIASES)


def null_dataset(
    countries: int | Iterable[str],
    start_year: int,
    end_year: int,
    seed: int,
) -> Dataset:
    """A bias-free dataset where every country participates every year."""
    if isinstance(countries, int):
        names = sorted(REGION_TABLE)[:countries]
    else:
        names = sorted(countries)
    roster = frozenset(names)
    rosters = {year: (roster, roster) for year in range(start_year, end_year + 1)}
    return generate_dataset(rosters, seed)


def _favored(
    biases: Sequence[BiasRule], giver: str, year: int, candidates: Sequence[str]
) -> list[str]:
    # Rotate the favored order by year so a bloc shares its top awards evenly.
    matched = sorted(
        rule.receiver
        for rule in biases
        if rule.applies(giver, year) and rule.receiver in candidates
    )
    if not matched:
        return []
    turn = year % len(matched)
    return matched[turn:] + matched[:turn]


def _allocated_row(scheme: Allocated, candidates, favored, rng) -> dict[str, int]:
    row = dict.fromkeys(candidates, 0)
    rest = [c for c in candidates if c not in favored]
    order = favored + list(rng.permutation(rest))
    for value, receiver in zip(scheme.scores, order):
        row[receiver] = value
    return row


def _sequential_row(scheme: Sequential, candidates, favored, rng) -> dict[str, int]:
    row = dict.fromkeys(candidates, 0)
    points = list(scheme.points)
    for receiver in favored:
        # A couple of single points apiece, or the next-biggest listed value.
        grab = points[:2] if len(scheme.points) >= 6 else points[:1]
        for value in grab:
            row[receiver] += value
            points.remove(value)
    for value in points:
        row[candidates[int(rng.integers(len(candidates)))]] += value
    return row


def _rated_row(scheme: Rated, candidates, favored, rng) -> dict[str, int]:
    width = len(scheme.juror_scores)
    top = scheme.juror_count * max(scheme.juror_scores)
    row = {}
    for receiver in candidates:
        if receiver in favored:
            row[receiver] = top
        else:
            row[receiver] = sum(
                scheme.juror_scores[int(rng.integers(width))]
                for _ in range(scheme.juror_count)
            )
    return row
