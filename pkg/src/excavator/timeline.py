"""Popularity timelines over monthly mention counts.

The popularity of an event type in month t is the centered moving average
of its normalized mention rate:

    popularity_t = (1/T) * sum over t' in [t - T//2, t + T//2] of N_t' / M_t'

where N_t' counts mentions of the type in month t' and M_t' is the number
of articles published in t' divided by 500. Months with zero published
articles (or outside the corpus range) are excluded from the window; by
default the average then divides by the number of included months (the
window shrinks), while strict mode always divides by T. A window with no
usable months produces no point at all.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import months as months_mod
from .corpus import CorpusStats
from .extraction import EventMention

NORM_DIVISOR = 500
DEFAULT_WINDOW = 3


@dataclass
class MonthlyCounts:
    """Mention counts per month for one event type, optionally geo-restricted."""

    event_type: str
    geo: Optional[str]
    counts: dict[str, int]


@dataclass
class PopularitySeries:
    event_type: str
    geo: Optional[str]
    points: list[tuple[str, float]]  # (month, score), months strictly increasing
    window: int
    strict_window: bool = False
    norm_divisor: int = NORM_DIVISOR
    skipped_months: list[str] = field(default_factory=list)

    @property
    def months(self) -> list[str]:
        return [m for m, _ in self.points]

    @property
    def values(self) -> list[float]:
        return [v for _, v in self.points]


def event_monthly_counts(
    mentions: Sequence[EventMention],
    event_type: str,
    geo: Optional[str] = None,
) -> MonthlyCounts:
    """Count mentions of the type per month. Under a geo restriction,
    mentions without a geo are excluded; without one, all count.
    Mentions lacking a month never count (they have no time coordinate)."""
    counts: dict[str, int] = {}
    for mention in mentions:
        if mention.event_type != event_type:
            continue
        if geo is not None and mention.geo != geo:
            continue
        if mention.month is None:
            continue
        counts[mention.month] = counts.get(mention.month, 0) + 1
    return MonthlyCounts(event_type=event_type, geo=geo, counts=counts)


def popularity_series(
    counts: MonthlyCounts,
    stats: CorpusStats,
    window: int = DEFAULT_WINDOW,
    strict_window: bool = False,
) -> PopularitySeries:
    if window < 1 or window % 2 == 0:
        raise ValueError(f"window must be a positive odd integer, got {window}")
    span = stats.month_range()
    if not span:
        return PopularitySeries(counts.event_type, counts.geo, [], window,
                                strict_window)
    in_range = set(span)
    half = window // 2

    skipped = [m for m in span if stats.articles_per_month.get(m, 0) == 0]

    points: list[tuple[str, float]] = []
    for center in span:
        total = 0.0
        included = 0
        for offset in range(-half, half + 1):
            m = months_mod.add(center, offset)
            if m not in in_range:
                continue
            articles = stats.articles_per_month.get(m, 0)
            if articles == 0:
                continue
            rate = counts.counts.get(m, 0) / (articles / NORM_DIVISOR)
            total += rate
            included += 1
        if included == 0:
            continue
        denom = window if strict_window else included
        points.append((center, total / denom))

    return PopularitySeries(
        event_type=counts.event_type,
        geo=counts.geo,
        points=points,
        window=window,
        strict_window=strict_window,
        skipped_months=skipped,
    )


def top_geo_series(
    mentions: Sequence[EventMention],
    event_type: str,
    stats: CorpusStats,
    k: int = 10,
    geo_prefix: str = "US-",
    window: int = DEFAULT_WINDOW,
    strict_window: bool = False,
) -> list[PopularitySeries]:
    """One popularity series per top-k geolocation (by total mention count
    across all event types), restricted to ids with the given prefix —
    the per-state trend view. Ties rank by geo id."""
    totals: dict[str, int] = {}
    for mention in mentions:
        if mention.geo is not None and mention.geo.startswith(geo_prefix):
            totals[mention.geo] = totals.get(mention.geo, 0) + 1
    ranked = sorted(totals, key=lambda g: (-totals[g], g))[:k]
    return [
        popularity_series(
            event_monthly_counts(mentions, event_type, geo=geo),
            stats, window=window, strict_window=strict_window,
        )
        for geo in ranked
    ]


def pearson_correlation(xs: Sequence[float], ys: Sequence[float]) -> Optional[float]:
    """Pearson r over paired samples; None (undefined) when either side
    has no variance."""
    if len(xs) != len(ys):
        raise ValueError(f"length mismatch: {len(xs)} vs {len(ys)}")
    n = len(xs)
    if n < 2:
        raise ValueError("need at least two paired samples")
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    dx = [x - mean_x for x in xs]
    dy = [y - mean_y for y in ys]
    var_x = sum(d * d for d in dx)
    var_y = sum(d * d for d in dy)
    if var_x == 0.0 or var_y == 0.0:
        return None
    cov = sum(a * b for a, b in zip(dx, dy))
    return cov / (var_x ** 0.5 * var_y ** 0.5)


def correlate_series(
    a: PopularitySeries, b: PopularitySeries
) -> tuple[list[str], Optional[float]]:
    """Pearson r over the month-aligned overlap of two series.
    Raises ValueError when fewer than two months overlap."""
    b_by_month = dict(b.points)
    shared = [m for m, _ in a.points if m in b_by_month]
    if len(shared) < 2:
        raise ValueError(
            f"need at least two overlapping months, got {len(shared)}")
    a_by_month = dict(a.points)
    r = pearson_correlation([a_by_month[m] for m in shared],
                            [b_by_month[m] for m in shared])
    return shared, r
