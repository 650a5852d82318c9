from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from gradeforge.series import TruncSeries

settings.register_profile(
    "exact",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")


def rationals(max_num: int = 50, max_den: int = 20) -> st.SearchStrategy[Fraction]:
    return st.fractions(
        min_value=-max_num, max_value=max_num, max_denominator=max_den
    )


def series_of(order: int, **kwargs) -> st.SearchStrategy[TruncSeries]:
    return st.lists(rationals(**kwargs), min_size=order, max_size=order).map(
        TruncSeries.from_list
    )
