"""Time-series construction from a conflict catalog.

Four series feed the downstream analysis: wars per year, fatalities per year,
fatalities per war (event-indexed), and their per-capita variants. A
multi-year war contributes its whole fatality total to its end year; wars
lacking a fatality estimate count toward war tallies but not fatality series.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import ConflictCatalog, PopulationTable, population_at


@dataclass(frozen=True)
class AnnualSeries:
    """One value per calendar year; years without wars hold 0."""

    start_year: int
    values: tuple[float, ...]

    @property
    def years(self) -> range:
        return range(self.start_year, self.start_year + len(self.values))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


@dataclass(frozen=True)
class Event:
    ordinal: int
    year: int
    value: float


@dataclass(frozen=True)
class EventSeries:
    """One value per war, in chronological order."""

    events: tuple[Event, ...]

    def values(self) -> np.ndarray:
        return np.asarray([e.value for e in self.events], dtype=float)


def wars_per_year(catalog: ConflictCatalog, attribute_start: bool = False) -> AnnualSeries:
    """Count wars per calendar year, attributed to the end year by default.

    attribute_start=True switches to onset-year counting for sensitivity
    analysis. Wars with missing fatalities still count here.
    """
    counts = np.zeros(catalog.n_years)
    for rec in catalog.records:
        year = rec.start_year if attribute_start else rec.end_year
        if catalog.year_min <= year <= catalog.year_max:
            counts[year - catalog.year_min] += 1
    return AnnualSeries(catalog.year_min, tuple(counts.tolist()))


def fatalities_per_year(catalog: ConflictCatalog) -> AnnualSeries:
    """Sum each war's full fatality count into its end year.

    Records with absent fatalities contribute nothing. Integer accumulation
    keeps the conservation property exact.
    """
    totals = [0] * catalog.n_years
    for rec in catalog.records:
        if rec.fatalities is None:
            continue
        if catalog.year_min <= rec.end_year <= catalog.year_max:
            totals[rec.end_year - catalog.year_min] += rec.fatalities
    return AnnualSeries(catalog.year_min, tuple(float(t) for t in totals))


def fatalities_per_war(catalog: ConflictCatalog) -> EventSeries:
    """One event per war with known fatalities, in chronological order.

    Sort key is (start_year, end_year, catalog row index) for deterministic
    tie-breaking.
    """
    known = [r for r in catalog.records if r.fatalities is not None]
    known.sort(key=lambda r: (r.start_year, r.end_year, r.id))
    events = tuple(
        Event(ordinal=i, year=r.end_year, value=float(r.fatalities)) for i, r in enumerate(known)
    )
    return EventSeries(events)


def normalize_per_capita(
    series: AnnualSeries | EventSeries,
    table: PopulationTable,
    interpolation: str = "log",
):
    """Divide each value by the world population of its year.

    Annual values use their calendar year; event values use the war's end year
    (the year the fatalities are attributed to). Zero stays zero.
    """
    if isinstance(series, AnnualSeries):
        normed = tuple(
            v / population_at(table, y, interpolation)
            for v, y in zip(series.values, series.years)
        )
        return AnnualSeries(series.start_year, normed)
    events = tuple(
        Event(e.ordinal, e.year, e.value / population_at(table, e.year, interpolation))
        for e in series.events
    )
    return EventSeries(events)


def zero_year_count(series: AnnualSeries) -> int:
    """Number of years with a zero value (no-war years in a fatality series)."""
    return sum(1 for v in series.values if v == 0)
