"""Year-month arithmetic on "YYYY-MM" strings.

Months are passed around as plain strings everywhere (JSON-friendly,
sortable); this module is the only place that does arithmetic on them.
"""

import re

_MONTH_RE = re.compile(r"^(\d{4})-(\d{2})$")


def is_valid(month: str) -> bool:
    m = _MONTH_RE.match(month or "")
    return bool(m) and 1 <= int(m.group(2)) <= 12


def parse(month: str) -> tuple[int, int]:
    m = _MONTH_RE.match(month or "")
    if not m or not 1 <= int(m.group(2)) <= 12:
        raise ValueError(f"not a YYYY-MM month: {month!r}")
    return int(m.group(1)), int(m.group(2))


def fmt(year: int, month: int) -> str:
    return f"{year:04d}-{month:02d}"


def add(month: str, delta: int) -> str:
    """Shift a month by `delta` (may be negative)."""
    y, m = parse(month)
    idx = y * 12 + (m - 1) + delta
    return fmt(idx // 12, idx % 12 + 1)


def span(first: str, last: str) -> list[str]:
    """All months from `first` to `last` inclusive; empty if first > last."""
    y0, m0 = parse(first)
    y1, m1 = parse(last)
    lo, hi = y0 * 12 + m0 - 1, y1 * 12 + m1 - 1
    return [fmt(i // 12, i % 12 + 1) for i in range(lo, hi + 1)]


def from_date(iso_date: str) -> str:
    """Truncate an ISO-8601 date or datetime ("2020-03-15...") to its month."""
    m = re.match(r"^(\d{4})-(\d{2})(?:-\d{2})?", iso_date or "")
    if not m or not 1 <= int(m.group(2)) <= 12:
        raise ValueError(f"not an ISO date: {iso_date!r}")
    return f"{m.group(1)}-{m.group(2)}"
