"""Month-key arithmetic: parsing, formatting, offsets, and ranges."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from excavator import months

valid_months = st.tuples(
    st.integers(min_value=1900, max_value=2100),
    st.integers(min_value=1, max_value=12),
).map(lambda ym: months.fmt(*ym))


def test_parse_and_fmt_examples():
    assert months.parse("2020-03") == (2020, 3)
    assert months.fmt(2020, 3) == "2020-03"
    assert months.fmt(2020, 12) == "2020-12"


def test_parse_rejects_malformed():
    for bad in ("2020-13", "2020-00", "2020-3", "202003", "abcd-ef", "", "2020-03-01"):
        assert not months.is_valid(bad)
        with pytest.raises(ValueError):
            months.parse(bad)


def test_add_crosses_year_boundaries():
    assert months.add("2020-01", 1) == "2020-02"
    assert months.add("2020-12", 1) == "2021-01"
    assert months.add("2020-01", -1) == "2019-12"
    assert months.add("2020-06", -18) == "2018-12"
    assert months.add("2020-06", 0) == "2020-06"


def test_span_inclusive_and_ordered():
    assert months.span("2019-11", "2020-02") == [
        "2019-11", "2019-12", "2020-01", "2020-02",
    ]
    assert months.span("2020-05", "2020-05") == ["2020-05"]


def test_span_empty_for_reversed_range():
    assert months.span("2020-05", "2020-04") == []


def test_from_date_takes_month_prefix():
    assert months.from_date("2020-03-15") == "2020-03"
    assert months.from_date("2020-03-15T08:30:00Z") == "2020-03"


@given(valid_months, st.integers(min_value=-600, max_value=600))
def test_add_round_trips(month, delta):
    shifted = months.add(month, delta)
    assert months.is_valid(shifted)
    assert months.add(shifted, -delta) == month


@given(valid_months, st.integers(min_value=0, max_value=48))
def test_span_length_matches_offset(month, width):
    last = months.add(month, width)
    seq = months.span(month, last)
    assert len(seq) == width + 1
    assert seq[0] == month and seq[-1] == last
    # consecutive entries differ by exactly one month
    assert all(months.add(a, 1) == b for a, b in zip(seq, seq[1:]))


@given(valid_months)
def test_parse_fmt_round_trip(month):
    assert months.fmt(*months.parse(month)) == month
