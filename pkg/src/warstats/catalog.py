"""Conflict catalog and world-population table ingestion.

The catalog CSV carries one war per row (`name,start_year,end_year,fatalities`);
the population CSV carries anchor points (`year,population`) between which we
interpolate. Both parsers are strict about headers and report, rather than
silently drop, problem rows.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, TextIO

from .errors import FormatError, RangeError

DEFAULT_WINDOW = (1400, 2000)

CATALOG_COLUMNS = ("name", "start_year", "end_year", "fatalities")
POPULATION_COLUMNS = ("year", "population")


@dataclass(frozen=True)
class ConflictRecord:
    """One catalog row: a war, its span, and its total fatality count."""

    id: int
    name: str
    start_year: int
    end_year: int
    fatalities: Optional[int]

    def __post_init__(self):
        if self.start_year > self.end_year:
            raise ValueError(f"record {self.id}: start_year {self.start_year} > end_year {self.end_year}")
        if self.fatalities is not None and self.fatalities < 0:
            raise ValueError(f"record {self.id}: negative fatalities")


@dataclass(frozen=True)
class ParseReport:
    """Row accounting from parse_catalog."""

    retained: int = 0
    missing_fatalities: int = 0
    rejected: int = 0
    out_of_window: int = 0

    def as_dict(self) -> dict:
        return {
            "retained": self.retained,
            "missing_fatalities": self.missing_fatalities,
            "rejected": self.rejected,
            "out_of_window": self.out_of_window,
        }


@dataclass(frozen=True)
class ConflictCatalog:
    records: tuple[ConflictRecord, ...]
    year_min: int
    year_max: int
    report: ParseReport = field(default_factory=ParseReport)

    def __post_init__(self):
        if self.year_min > self.year_max:
            raise ValueError("year_min > year_max")

    @property
    def n_years(self) -> int:
        return self.year_max - self.year_min + 1


@dataclass(frozen=True)
class PopulationTable:
    """Anchored (year, population) pairs, strictly increasing in year."""

    anchors: tuple[tuple[int, float], ...]

    def __post_init__(self):
        years = [y for y, _ in self.anchors]
        if any(a >= b for a, b in zip(years, years[1:])):
            raise ValueError("anchor years must be strictly increasing")
        if any(p <= 0 for _, p in self.anchors):
            raise ValueError("populations must be positive")

    @property
    def year_min(self) -> int:
        return self.anchors[0][0]

    @property
    def year_max(self) -> int:
        return self.anchors[-1][0]


def _parse_int(text: str) -> Optional[int]:
    try:
        return int(text.strip())
    except ValueError:
        return None


def parse_catalog(
    source: TextIO | Iterable[str],
    window: tuple[int, int] = DEFAULT_WINDOW,
    delimiter: str = ",",
) -> ConflictCatalog:
    """Parse a conflict-catalog CSV, keeping rows whose end year is inside `window`.

    Rows with an empty or unparseable fatalities field are retained with
    fatalities absent; rows with non-integer years are rejected and counted.
    """
    reader = csv.reader(source, delimiter=delimiter)
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError("empty catalog file") from None
    header = [h.strip().lower() for h in header]
    missing = [c for c in CATALOG_COLUMNS if c not in header]
    if missing:
        raise FormatError(f"catalog header lacks columns: {', '.join(missing)}")
    idx = {c: header.index(c) for c in CATALOG_COLUMNS}

    year_min, year_max = window
    records: list[ConflictRecord] = []
    retained = missing_fat = rejected = out_of_window = 0
    for row in reader:
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) < len(header):
            rejected += 1
            continue
        start = _parse_int(row[idx["start_year"]])
        end = _parse_int(row[idx["end_year"]])
        if start is None or end is None or start > end:
            rejected += 1
            continue
        if not (year_min <= end <= year_max):
            out_of_window += 1
            continue
        fat_text = row[idx["fatalities"]].strip()
        fatalities = _parse_int(fat_text) if fat_text else None
        if fatalities is not None and fatalities < 0:
            fatalities = None
        if fatalities is None:
            missing_fat += 1
        records.append(
            ConflictRecord(
                id=len(records),
                name=row[idx["name"]].strip(),
                start_year=start,
                end_year=end,
                fatalities=fatalities,
            )
        )
        retained += 1

    report = ParseReport(retained, missing_fat, rejected, out_of_window)
    return ConflictCatalog(tuple(records), year_min, year_max, report)


def parse_population(source: TextIO | Iterable[str], delimiter: str = ",") -> PopulationTable:
    """Parse a `year,population` CSV into a sorted anchor table."""
    reader = csv.reader(source, delimiter=delimiter)
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError("empty population file") from None
    header = [h.strip().lower() for h in header]
    if any(c not in header for c in POPULATION_COLUMNS):
        raise FormatError("population header must contain 'year' and 'population'")
    yi, pi = header.index("year"), header.index("population")

    anchors: list[tuple[int, float]] = []
    for row in reader:
        if not row or all(not cell.strip() for cell in row):
            continue
        year = _parse_int(row[yi])
        if year is None:
            raise FormatError(f"non-integer year: {row[yi]!r}")
        try:
            pop = float(row[pi])
        except ValueError:
            raise FormatError(f"unparseable population: {row[pi]!r}") from None
        if pop <= 0:
            raise FormatError(f"non-positive population at year {year}")
        anchors.append((year, pop))

    if len(anchors) < 2:
        raise FormatError("population table needs at least 2 anchors")
    anchors.sort(key=lambda a: a[0])
    years = [y for y, _ in anchors]
    if len(set(years)) != len(years):
        raise FormatError("duplicate year in population table")
    return PopulationTable(tuple(anchors))


def population_at(table: PopulationTable, year: int, interpolation: str = "log") -> float:
    """World population at `year`, interpolated between anchors.

    Default interpolation is log-linear (geometric), since historical world
    population grows roughly exponentially; pass interpolation="linear" for a
    plain linear rule. No extrapolation outside the anchor range.
    """
    if interpolation not in ("log", "linear"):
        raise ValueError(f"unknown interpolation {interpolation!r}")
    anchors = table.anchors
    if year < anchors[0][0] or year > anchors[-1][0]:
        raise RangeError(f"year {year} outside anchor range [{anchors[0][0]}, {anchors[-1][0]}]")
    # binary search for the bracketing pair
    lo, hi = 0, len(anchors) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if anchors[mid][0] <= year:
            lo = mid
        else:
            hi = mid
    (y0, p0), (y1, p1) = anchors[lo], anchors[hi]
    if year == y0:
        return p0
    if year == y1:
        return p1
    t = (year - y0) / (y1 - y0)
    if interpolation == "linear":
        return p0 + t * (p1 - p0)
    return math.exp(math.log(p0) + t * (math.log(p1) - math.log(p0)))
