"""HTTP API contract: schemas, validation errors, and payload semantics."""

from __future__ import annotations

from conftest import validate_payload
from excavator.corpus import tokenize_texts
from excavator.tcag import FilterSpec, assign_focus_colors, build_tcag


def get_json(client, url, expect=200):
    resp = client.get(url)
    assert resp.status_code == expect, f"{url}: {resp.status_code} {resp.text}"
    return resp.json()


# ---------------------------------------------------------------------------
# Schema validity
# ---------------------------------------------------------------------------

def test_taxonomy_endpoint(client, taxonomy):
    doc = get_json(client, "/api/taxonomy")
    validate_payload(doc, "taxonomy")
    assert doc["version"] == taxonomy.version
    names = {t["name"] for t in doc["types"]}
    assert names == set(taxonomy.types)
    by_name = {t["name"]: t for t in doc["types"]}
    assert "PolicyIntervention" in by_name["Lockdown"]["parents"]


def test_tcag_endpoint_schema(client):
    doc = get_json(client, "/api/tcag")
    validate_payload(doc, "tcag")
    assert doc["schema"] == "tcag/1"
    assert doc["nodes"] and doc["edges"]


def test_tcag_endpoint_respects_filters(client, snapshot):
    unfiltered = get_json(client, "/api/tcag")
    filtered = get_json(client, "/api/tcag?geo=US-NY&month=2020-03&min_count=2")
    validate_payload(filtered, "tcag")
    assert filtered["filter"] == {
        "geo": "US-NY", "month": "2020-03", "min_edge_count": 2,
        "strict": False,
    }
    node_count = {n["event_type"]: n["mention_count"] for n in filtered["nodes"]}
    expected = {}
    for m in snapshot.mentions:
        if m.geo not in (None, "US-NY") or m.month not in (None, "2020-03"):
            continue
        expected[m.event_type] = expected.get(m.event_type, 0) + 1
    assert {t: c for t, c in node_count.items() if c} == \
        {t: c for t, c in expected.items() if c}
    assert len(filtered["edges"]) <= len(unfiltered["edges"])
    for edge in filtered["edges"]:
        assert edge["count"] >= 2 or edge["kind"] == "IsA"


def test_tcag_focus_matches_library_coloring(client, snapshot):
    doc = get_json(client, "/api/tcag?focus=Lockdown")
    validate_payload(doc, "tcag")
    assert doc["focus"] == "Lockdown"
    tcag = build_tcag(list(snapshot.mentions), list(snapshot.relations),
                      snapshot.taxonomy, FilterSpec(),
                      generated_at=snapshot.generated_at,
                      corpus_version=snapshot.corpus_version)
    assert doc["focus_colors"] == assign_focus_colors(tcag, "Lockdown")
    assert doc["focus_colors"]["Lockdown"] == "blue"


def test_tcag_focus_not_in_graph_is_404(client):
    resp = client.get("/api/tcag?month=2020-01&focus=VaccineDevelopment"
                      "&strict=true")
    if resp.status_code == 200:
        # if the type survived the filter this combo is wrong; use a
        # guaranteed-absent name instead
        resp = client.get("/api/tcag?focus=Quarantine&month=1999-01&strict=true")
    assert resp.status_code == 404
    assert "not in graph" in resp.json()["detail"]


def test_timeline_endpoint(client):
    doc = get_json(client, "/api/timeline?event=Lockdown&window=3")
    validate_payload(doc, "timeline")
    assert doc["event"] == "Lockdown"
    assert doc["window"] == 3
    assert doc["points"], "expected a non-empty series"
    prev = None
    for point in doc["points"]:
        assert point["score"] >= 0.0
        assert prev is None or point["month"] > prev
        prev = point["month"]


def test_timeline_range_slicing(client):
    full = get_json(client, "/api/timeline?event=Lockdown")
    sliced = get_json(client,
                      "/api/timeline?event=Lockdown&from=2020-02&to=2020-04")
    kept = [p for p in full["points"] if "2020-02" <= p["month"] <= "2020-04"]
    assert sliced["points"] == kept


def test_top_states_endpoint(client):
    doc = get_json(client, "/api/timelines/top_states?event=Lockdown&k=3")
    validate_payload(doc, "top_states")
    assert doc["k"] == 3
    assert 1 <= len(doc["series"]) <= 3
    for series in doc["series"]:
        assert series["geo"] and series["geo"].startswith("US-")
        assert series["event"] == "Lockdown"


def test_correlate_endpoint(client):
    doc = get_json(client,
                   "/api/correlate?left_event=Lockdown&right_event=DiseaseSpread")
    validate_payload(doc, "correlate")
    assert len(doc["months"]) == len(doc["left"]) == len(doc["right"])
    assert len(doc["months"]) >= 2
    if doc["r"] is not None:
        assert -1.0 <= doc["r"] <= 1.0
        assert doc["undefined"] is False
    else:
        assert doc["undefined"] is True


def test_evidence_endpoint(client):
    doc = get_json(client,
                   "/api/evidence?kind=Causes&left=Lockdown&right=Unemployment")
    validate_payload(doc, "evidence")
    assert doc["total"] == 10
    assert doc["limit"] == 10 and doc["offset"] == 0
    assert len(doc["items"]) == 10
    confidences = [item["confidence"] for item in doc["items"]]
    assert confidences == sorted(confidences, reverse=True)


def test_evidence_sentences_contain_trigger_spans(client):
    doc = get_json(client,
                   "/api/evidence?kind=Causes&left=Lockdown&right=Unemployment")
    for item in doc["items"]:
        tokens = tokenize_texts(item["text"])
        for key in ("left_trigger", "right_trigger"):
            start, end = item[key]
            assert 0 <= start < end <= len(tokens), (
                f"{key} {item[key]} out of range for {item['text']!r}")
            assert " ".join(tokens[start:end]) in item["text"]


def test_evidence_pagination(client):
    base = "/api/evidence?kind=Causes&left=Lockdown&right=Unemployment"
    full = get_json(client, base)
    page1 = get_json(client, base + "&limit=4")
    page2 = get_json(client, base + "&limit=4&offset=4")
    page3 = get_json(client, base + "&limit=4&offset=8")
    assert [len(p["items"]) for p in (page1, page2, page3)] == [4, 4, 2]
    stitched = page1["items"] + page2["items"] + page3["items"]
    assert stitched == full["items"]
    beyond = get_json(client, base + "&offset=50")
    assert beyond["items"] == [] and beyond["total"] == 10


def test_evidence_empty_combination(client):
    doc = get_json(client,
                   "/api/evidence?kind=Before&left=Treatment&right=Treatment")
    assert doc["total"] == 0 and doc["items"] == []


# ---------------------------------------------------------------------------
# Validation errors
# ---------------------------------------------------------------------------

def test_bad_month_param_is_400(client):
    doc = get_json(client, "/api/tcag?month=202003", expect=400)
    assert "YYYY-MM" in doc["detail"]


def test_bad_min_count_is_400(client):
    get_json(client, "/api/tcag?min_count=-1", expect=400)
    get_json(client, "/api/tcag?min_count=two", expect=400)


def test_bad_strict_flag_is_400(client):
    doc = get_json(client, "/api/tcag?strict=maybe", expect=400)
    assert "boolean" in doc["detail"]


def test_timeline_unknown_event_is_400(client):
    doc = get_json(client, "/api/timeline?event=Zamboni", expect=400)
    assert "unknown event type" in doc["detail"]


def test_timeline_missing_event_is_400(client):
    doc = get_json(client, "/api/timeline", expect=400)
    assert "missing required parameter" in doc["detail"]


def test_timeline_even_window_is_400(client):
    doc = get_json(client, "/api/timeline?event=Lockdown&window=4", expect=400)
    assert "odd" in doc["detail"]


def test_timeline_bad_range_is_400(client):
    get_json(client, "/api/timeline?event=Lockdown&from=Jan2020", expect=400)


def test_evidence_bad_kind_is_400(client):
    doc = get_json(client,
                   "/api/evidence?kind=Fixes&left=Lockdown&right=Unemployment",
                   expect=400)
    assert "kind must be one of" in doc["detail"]


def test_correlate_unknown_event_is_400(client):
    get_json(client, "/api/correlate?left_event=Lockdown&right_event=Zamboni",
             expect=400)


def test_correlate_insufficient_overlap_is_400(snapshot):
    # a snapshot whose stats cover a single month yields one-point series,
    # below the two shared months correlation requires
    from fastapi.testclient import TestClient

    from excavator.corpus import CorpusStats
    from excavator.pipeline import Snapshot
    from excavator.service import create_app

    mini = Snapshot(
        mentions=snapshot.mentions, relations=(), taxonomy=snapshot.taxonomy,
        stats=CorpusStats(articles_per_month={"2020-01": 4}),
        tcag=snapshot.tcag, generated_at=snapshot.generated_at,
        corpus_version=snapshot.corpus_version)
    local = TestClient(create_app(mini))
    resp = local.get("/api/correlate?left_event=Lockdown"
                     "&right_event=DiseaseSpread&window=1")
    assert resp.status_code == 400
    assert "overlapping months" in resp.json()["detail"]


def test_identical_requests_are_identical(client):
    a = client.get("/api/tcag?focus=Lockdown")
    b = client.get("/api/tcag?focus=Lockdown")
    assert a.content == b.content
