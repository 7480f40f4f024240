import io
import textwrap

import pytest

from warstats.catalog import parse_catalog, parse_population


def catalog_from_text(text, window=(1400, 2000), delimiter=","):
    return parse_catalog(io.StringIO(textwrap.dedent(text).strip() + "\n"), window, delimiter)


def population_from_text(text):
    return parse_population(io.StringIO(textwrap.dedent(text).strip() + "\n"))


@pytest.fixture
def tiny_catalog():
    return catalog_from_text(
        """
        name,start_year,end_year,fatalities
        Thirty Years War,1618,1648,7500000
        War A,1500,1510,100
        War B,1490,1495,50
        """
    )


@pytest.fixture
def two_anchor_table():
    return population_from_text(
        """
        year,population
        1400,350e6
        2000,6e9
        """
    )
