"""Read-only HTTP API over a loaded artifact snapshot.

All endpoints are GET and return JSON; the snapshot is immutable, so
identical requests produce identical bodies. Query parameters are read as
raw strings (several, like `from`, are not valid Python names) and
validated by hand: anything malformed answers 400 with a message rather
than a framework validation error.
"""

from typing import Optional

from fastapi import FastAPI, HTTPException, Request

from . import months
from .pipeline import Snapshot
from .relations import RELATION_TYPES
from .tcag import FilterSpec, assign_focus_colors, build_tcag, tcag_to_dict
from .timeline import (
    DEFAULT_WINDOW,
    PopularitySeries,
    correlate_series,
    event_monthly_counts,
    popularity_series,
    top_geo_series,
)

EVIDENCE_PAGE_SIZE = 10


def _bad(msg: str) -> HTTPException:
    return HTTPException(status_code=400, detail=msg)


def _parse_int(raw: Optional[str], name: str, default: int, minimum: int) -> int:
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise _bad(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise _bad(f"{name} must be >= {minimum}, got {value}")
    return value


def _parse_flag(raw: Optional[str], name: str) -> bool:
    if raw is None:
        return False
    low = raw.lower()
    if low in ("1", "true", "yes"):
        return True
    if low in ("0", "false", "no"):
        return False
    raise _bad(f"{name} must be a boolean flag, got {raw!r}")


def _parse_month(raw: Optional[str], name: str) -> Optional[str]:
    if raw is None:
        return None
    if not months.is_valid(raw):
        raise _bad(f"{name} must be YYYY-MM, got {raw!r}")
    return raw


def _parse_window(raw: Optional[str]) -> int:
    value = _parse_int(raw, "window", DEFAULT_WINDOW, 1)
    if value % 2 == 0:
        raise _bad(f"window must be odd, got {value}")
    return value


def _series_payload(series: PopularitySeries) -> dict:
    return {
        "event": series.event_type,
        "geo": series.geo,
        "window": series.window,
        "strict_window": series.strict_window,
        "norm_divisor": series.norm_divisor,
        "points": [{"month": m, "score": v} for m, v in series.points],
        "skipped_months": series.skipped_months,
    }


def create_app(snapshot: Snapshot) -> FastAPI:
    app = FastAPI(title="event graph service", docs_url=None, redoc_url=None)

    def require_event_type(name: Optional[str], param: str) -> str:
        if not name:
            raise _bad(f"missing required parameter {param!r}")
        if name not in snapshot.taxonomy:
            raise _bad(f"unknown event type {name!r}")
        return name

    def compute_series(event: str, geo: Optional[str], window: int,
                       strict_window: bool) -> PopularitySeries:
        counts = event_monthly_counts(list(snapshot.mentions), event, geo=geo)
        return popularity_series(counts, snapshot.stats, window=window,
                                 strict_window=strict_window)

    @app.get("/api/taxonomy")
    def get_taxonomy() -> dict:
        return {
            "version": snapshot.taxonomy.version,
            "types": [
                {
                    "name": et.name,
                    "description": et.description,
                    "parents": sorted(et.parents),
                }
                for _, et in sorted(snapshot.taxonomy.types.items())
            ],
        }

    @app.get("/api/tcag")
    def get_tcag(request: Request) -> dict:
        params = request.query_params
        spec = FilterSpec(
            geo=params.get("geo"),
            month=_parse_month(params.get("month"), "month"),
            min_edge_count=_parse_int(params.get("min_count"), "min_count", 1, 0),
            strict=_parse_flag(params.get("strict"), "strict"),
        )
        tcag = build_tcag(list(snapshot.mentions), list(snapshot.relations),
                          snapshot.taxonomy, spec,
                          generated_at=snapshot.generated_at,
                          corpus_version=snapshot.corpus_version)
        payload = tcag_to_dict(tcag)
        focus = params.get("focus")
        if focus is not None:
            if focus not in tcag.node_types():
                raise HTTPException(
                    status_code=404,
                    detail=f"focused event type {focus!r} not in graph")
            payload["focus"] = focus
            payload["focus_colors"] = assign_focus_colors(tcag, focus)
        return payload

    @app.get("/api/timeline")
    def get_timeline(request: Request) -> dict:
        params = request.query_params
        event = require_event_type(params.get("event"), "event")
        geo = params.get("geo")
        window = _parse_window(params.get("window"))
        strict_window = _parse_flag(params.get("strict_window"), "strict_window")
        lo = _parse_month(params.get("from"), "from")
        hi = _parse_month(params.get("to"), "to")
        series = compute_series(event, geo, window, strict_window)
        series.points = [(m, v) for m, v in series.points
                         if (lo is None or m >= lo) and (hi is None or m <= hi)]
        return _series_payload(series)

    @app.get("/api/timelines/top_states")
    def get_top_states(request: Request) -> dict:
        params = request.query_params
        event = require_event_type(params.get("event"), "event")
        k = _parse_int(params.get("k"), "k", 10, 1)
        window = _parse_window(params.get("window"))
        strict_window = _parse_flag(params.get("strict_window"), "strict_window")
        series = top_geo_series(list(snapshot.mentions), event, snapshot.stats,
                                k=k, window=window, strict_window=strict_window)
        return {
            "event": event,
            "k": k,
            "series": [_series_payload(s) for s in series],
        }

    @app.get("/api/correlate")
    def get_correlate(request: Request) -> dict:
        params = request.query_params
        left = require_event_type(params.get("left_event"), "left_event")
        right = require_event_type(params.get("right_event"), "right_event")
        geo = params.get("geo")
        window = _parse_window(params.get("window"))
        left_series = compute_series(left, geo, window, False)
        right_series = compute_series(right, geo, window, False)
        try:
            shared, r = correlate_series(left_series, right_series)
        except ValueError as err:
            raise _bad(str(err))
        left_by_month = dict(left_series.points)
        right_by_month = dict(right_series.points)
        return {
            "left_event": left,
            "right_event": right,
            "geo": geo,
            "window": window,
            "months": shared,
            "left": [left_by_month[m] for m in shared],
            "right": [right_by_month[m] for m in shared],
            "r": r,
            "undefined": r is None,
        }

    @app.get("/api/evidence")
    def get_evidence(request: Request) -> dict:
        params = request.query_params
        kind = params.get("kind")
        if kind not in RELATION_TYPES:
            raise _bad(f"kind must be one of {sorted(RELATION_TYPES)}, "
                       f"got {kind!r}")
        left = require_event_type(params.get("left"), "left")
        right = require_event_type(params.get("right"), "right")
        limit = _parse_int(params.get("limit"), "limit", EVIDENCE_PAGE_SIZE, 1)
        offset = _parse_int(params.get("offset"), "offset", 0, 0)

        matching = []
        for rel in snapshot.relations:
            if rel.type != kind:
                continue
            lm = snapshot.mention_by_id(rel.left_event)
            rm = snapshot.mention_by_id(rel.right_event)
            if lm is None or rm is None:
                continue
            if lm.event_type != left or rm.event_type != right:
                continue
            matching.append((rel, lm, rm))
        # confidence first, then the evidence document's time coordinate
        # (the left mention's month stands in for the publish date).
        matching.sort(key=lambda t: (
            -t[0].confidence, t[1].month or "", t[0].evidence.doc_id,
            t[0].evidence.sentence_index, t[0].id))
        page = matching[offset:offset + limit]
        return {
            "kind": kind,
            "left": left,
            "right": right,
            "total": len(matching),
            "limit": limit,
            "offset": offset,
            "items": [
                {
                    "doc_id": rel.evidence.doc_id,
                    "sentence_index": rel.evidence.sentence_index,
                    "text": rel.evidence.text,
                    "confidence": rel.confidence,
                    "subtype": rel.subtype,
                    "provenance": list(rel.provenance),
                    "left_event": rel.left_event,
                    "right_event": rel.right_event,
                    "left_trigger": list(lm.trigger_span),
                    "right_trigger": list(rm.trigger_span),
                }
                for rel, lm, rm in page
            ],
        }

    return app
