import pytest
from hypothesis import given
from hypothesis import strategies as st

from warstats.catalog import ConflictCatalog, ConflictRecord, PopulationTable
from warstats.errors import RangeError
from warstats.series import (
    AnnualSeries,
    fatalities_per_war,
    fatalities_per_year,
    normalize_per_capita,
    wars_per_year,
    zero_year_count,
)


def make_catalog(rows, window=(1400, 2000)):
    records = tuple(
        ConflictRecord(i, f"war{i}", start, end, fat) for i, (start, end, fat) in enumerate(rows)
    )
    return ConflictCatalog(records, *window)


FLAT_TABLE = PopulationTable(((1, 1e9), (3000, 1e9)))


class TestWarsPerYear:
    def test_empty_catalog(self):
        s = wars_per_year(make_catalog([], window=(1400, 1402)))
        assert s.values == (0.0, 0.0, 0.0)

    def test_counts_by_end_year(self):
        s = wars_per_year(make_catalog([(1499, 1500, 1), (1500, 1500, 2), (1501, 1501, 3)], window=(1500, 1502)))
        assert s.values == (2.0, 1.0, 0.0)

    def test_attribute_start_flag(self):
        s = wars_per_year(
            make_catalog([(1500, 1502, 1)], window=(1500, 1502)), attribute_start=True
        )
        assert s.values == (1.0, 0.0, 0.0)

    def test_total_equals_record_count(self):
        cat = make_catalog([(1450, 1455, None), (1500, 1500, 10), (1600, 1650, 20)])
        assert sum(wars_per_year(cat).values) == len(cat.records)


class TestFatalitiesPerYear:
    def test_end_year_collocation(self):
        s = fatalities_per_year(make_catalog([(1618, 1648, 7_500_000)]))
        assert s.values[1648 - 1400] == 7_500_000
        assert sum(s.values) == 7_500_000

    def test_additivity_same_end_year(self):
        s = fatalities_per_year(make_catalog([(1690, 1700, 10), (1695, 1700, 20)]))
        assert s.values[1700 - 1400] == 30

    def test_missing_fatalities_contribute_nothing(self):
        s = fatalities_per_year(make_catalog([(1500, 1500, None), (1500, 1500, 5)]))
        assert sum(s.values) == 5

    @given(
        st.lists(
            st.tuples(st.integers(1400, 2000), st.integers(0, 50), st.integers(0, 10**7)),
            max_size=40,
        )
    )
    def test_conservation(self, raw):
        rows = [(start, min(start + dur, 2000), fat) for start, dur, fat in raw]
        cat = make_catalog(rows)
        total = sum(fat for _, _, fat in rows)
        assert sum(fatalities_per_year(cat).values) == total


class TestFatalitiesPerWar:
    def test_chronological_order(self):
        s = fatalities_per_war(make_catalog([(1500, 1510, 100), (1490, 1495, 50)]))
        assert [e.value for e in s.events] == [50.0, 100.0]
        assert [e.ordinal for e in s.events] == [0, 1]

    def test_absent_fatalities_omitted(self):
        s = fatalities_per_war(make_catalog([(1500, 1501, None), (1600, 1601, 7)]))
        assert len(s.events) == 1

    def test_stable_tiebreak_by_row_index(self):
        s = fatalities_per_war(make_catalog([(1500, 1510, 1), (1500, 1510, 2)]))
        assert [e.value for e in s.events] == [1.0, 2.0]

    def test_event_year_is_end_year(self):
        s = fatalities_per_war(make_catalog([(1500, 1510, 1)]))
        assert s.events[0].year == 1510


class TestNormalizePerCapita:
    def test_annual_direct_ratio(self):
        s = AnnualSeries(1500, (1e6,))
        out = normalize_per_capita(s, FLAT_TABLE)
        assert out.values[0] == pytest.approx(1e-3, rel=1e-12)

    def test_zero_stays_zero(self):
        s = AnnualSeries(1500, (0.0, 0.0))
        assert normalize_per_capita(s, FLAT_TABLE).values == (0.0, 0.0)

    def test_event_uses_end_year_population(self):
        table = PopulationTable(((1000, 5e8), (2000, 5e8)))
        s = fatalities_per_war(make_catalog([(1495, 1500, 200_000)]))
        out = normalize_per_capita(s, table)
        assert out.events[0].value == pytest.approx(4e-4)

    def test_out_of_range_year(self):
        table = PopulationTable(((1600, 1e9), (2000, 1e9)))
        with pytest.raises(RangeError):
            normalize_per_capita(AnnualSeries(1500, (1.0,)), table)

    def test_homogeneous_in_population(self):
        s = AnnualSeries(1500, (3.0, 5.0, 0.0))
        k = 7.0
        scaled = PopulationTable(tuple((y, k * p) for y, p in FLAT_TABLE.anchors))
        base = normalize_per_capita(s, FLAT_TABLE).values
        out = normalize_per_capita(s, scaled).values
        for b, o in zip(base, out):
            assert o == pytest.approx(b / k, rel=1e-12)


def test_zero_year_count():
    assert zero_year_count(AnnualSeries(1400, (0.0, 1.0, 0.0, 2.0))) == 2
