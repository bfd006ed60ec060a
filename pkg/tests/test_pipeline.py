"""End-to-end pipeline: determinism, artifacts, snapshot loading, CLI."""

from __future__ import annotations

import json

import pytest

from excavator.cli import main
from excavator.corpus import CorpusStats
from excavator.extraction import ArgumentMention, EventMention, mention_from_dict, mention_to_dict
from excavator.pipeline import (
    PipelineConfig,
    PipelineStageError,
    corpus_digest,
    count_by,
    derive_generated_at,
    read_jsonl,
    run_pipeline,
    write_jsonl,
)

ARTIFACTS = ("mentions.jsonl", "relations.jsonl", "stats.json", "tcag.json")


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def test_corpus_digest_tracks_content(tmp_path):
    a = tmp_path / "a.jsonl"
    b = tmp_path / "b.jsonl"
    a.write_bytes(b"hello\n")
    b.write_bytes(b"hello\n")
    assert corpus_digest(str(a)) == corpus_digest(str(b))
    assert len(corpus_digest(str(a))) == 16
    b.write_bytes(b"hello!\n")
    assert corpus_digest(str(a)) != corpus_digest(str(b))


def test_generated_at_derives_from_latest_month():
    stats = CorpusStats(articles_per_month={"2020-03": 2, "2020-05": 1})
    assert derive_generated_at(stats) == "2020-06-01T00:00:00Z"
    assert derive_generated_at(CorpusStats(articles_per_month={})) == (
        "1970-01-01T00:00:00Z")


def test_write_jsonl_sorts_keys_per_line(tmp_path):
    path = tmp_path / "rows.jsonl"
    write_jsonl(str(path), [{"b": 1, "a": 2}, {"z": None}])
    assert path.read_bytes() == b'{"a": 2, "b": 1}\n{"z": null}\n'
    assert read_jsonl(str(path)) == [{"a": 2, "b": 1}, {"z": None}]


def test_count_by():
    assert count_by(["x", "y", "x", "x"]) == {"x": 3, "y": 1}
    assert count_by([]) == {}


def test_mention_dict_round_trip():
    mention = EventMention(
        id="d:0:1-2:Lockdown", doc_id="d", sentence_index=0,
        trigger_span=(1, 2), event_type="Lockdown",
        location_arg=ArgumentMention(role="Place", span=(3, 4)),
        time_arg=ArgumentMention(role="Time", span=(6, 8)),
        geo="US-OH", month="2020-03",
    )
    clone = mention_from_dict(mention_to_dict(mention))
    assert clone == mention
    bare = EventMention(id="x", doc_id="d", sentence_index=1,
                        trigger_span=(0, 1), event_type="Testing")
    assert mention_from_dict(mention_to_dict(bare)) == bare


# ---------------------------------------------------------------------------
# Full runs
# ---------------------------------------------------------------------------

def test_stage_errors_name_the_failing_stage(tmp_path):
    with pytest.raises(PipelineStageError) as err:
        run_pipeline(PipelineConfig(input_path=str(tmp_path / "missing.jsonl"),
                                    out_dir=str(tmp_path / "out")),
                     log=lambda _m: None)
    assert err.value.stage == "corpus"

    with pytest.raises(PipelineStageError) as err:
        run_pipeline(PipelineConfig(
            input_path=str(tmp_path / "missing.jsonl"),
            out_dir=str(tmp_path / "out"),
            taxonomy_path=str(tmp_path / "missing-taxonomy.txt")),
            log=lambda _m: None)
    # corpus loads first, so the missing corpus still wins; create it
    corpus = tmp_path / "c.jsonl"
    corpus.write_text(json.dumps({
        "id": "n1", "kind": "news", "source": "s",
        "published_at": "2020-01-02", "title": "", "body": "Lockdown began.",
    }) + "\n")
    with pytest.raises(PipelineStageError) as err:
        run_pipeline(PipelineConfig(
            input_path=str(corpus),
            out_dir=str(tmp_path / "out"),
            taxonomy_path=str(tmp_path / "missing-taxonomy.txt")),
            log=lambda _m: None)
    assert err.value.stage == "taxonomy"


def test_second_run_is_byte_identical(tmp_path, corpus_path, artifacts_dir):
    out = tmp_path / "again"
    run_pipeline(PipelineConfig(input_path=str(corpus_path), out_dir=str(out)),
                 log=lambda _m: None)
    for name in ARTIFACTS:
        assert (out / name).read_bytes() == (artifacts_dir / name).read_bytes()


def test_parallel_extraction_matches_serial(tmp_path, corpus_path, artifacts_dir):
    out = tmp_path / "parallel"
    run_pipeline(PipelineConfig(input_path=str(corpus_path), out_dir=str(out),
                                workers=4),
                 log=lambda _m: None)
    for name in ARTIFACTS:
        assert (out / name).read_bytes() == (artifacts_dir / name).read_bytes()


def test_artifacts_match_frozen_goldens(artifacts_dir, golden_dir):
    for name in ARTIFACTS:
        assert (artifacts_dir / name).read_bytes() == (
            golden_dir / name).read_bytes(), f"{name} drifted from golden"


def test_stats_artifact_contents(artifacts_dir):
    stats = json.loads((artifacts_dir / "stats.json").read_text())
    assert stats["schema"] == "stats/1"
    assert stats["ingested"] == 58
    assert stats["skipped_lines"] == 2
    assert stats["missing_month"] == 1
    assert sum(stats["articles_per_month"].values()) == 57
    assert stats["generated_at"] == "2020-06-01T00:00:00Z"
    assert len(stats["corpus_version"]) == 16
    assert stats["mentions_by_type"]
    assert set(stats["relations_by_type"]) <= {"Causes", "Mitigates", "Before"}


def test_snapshot_exposes_loaded_state(snapshot, artifacts_dir):
    mentions = read_jsonl(str(artifacts_dir / "mentions.jsonl"))
    relations = read_jsonl(str(artifacts_dir / "relations.jsonl"))
    assert len(snapshot.mentions) == len(mentions)
    assert len(snapshot.relations) == len(relations)
    first = snapshot.mentions[0]
    assert snapshot.mention_by_id(first.id) is first
    assert snapshot.mention_by_id("nope") is None
    assert snapshot.generated_at == "2020-06-01T00:00:00Z"
    assert "Lockdown" in snapshot.taxonomy
    # every relation endpoint resolves to a loaded mention
    for rel in snapshot.relations:
        assert snapshot.mention_by_id(rel.left_event) is not None
        assert snapshot.mention_by_id(rel.right_event) is not None


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

def test_cli_ingest_reports_volume(capsys, corpus_path):
    assert main(["ingest", "--input", str(corpus_path)]) == 0
    out = capsys.readouterr().out
    assert "documents: 58 ingested, 2 line(s) skipped, 1 without a publish date" in out
    assert "2020-03: 17" in out


def test_cli_ingest_range_report(capsys, corpus_path):
    assert main(["ingest", "--input", str(corpus_path),
                 "--from", "2020-02", "--to", "2020-04"]) == 0
    out = capsys.readouterr().out
    # 6 January + 12 May documents fall outside [2020-02 .. 2020-04]
    assert "out of range [2020-02..2020-04]: 18" in out


def test_cli_ingest_missing_input_fails(capsys, tmp_path):
    assert main(["ingest", "--input", str(tmp_path / "nope.jsonl")]) == 2
    assert "stage 'corpus' failed" in capsys.readouterr().err


def test_cli_extract_writes_mentions_and_stats(capsys, tmp_path, corpus_path,
                                               artifacts_dir):
    out = tmp_path / "extract-out"
    assert main(["extract", "--input", str(corpus_path), "--out", str(out)]) == 0
    assert (out / "mentions.jsonl").read_bytes() == (
        artifacts_dir / "mentions.jsonl").read_bytes()
    stats = json.loads((out / "stats.json").read_text())
    assert stats["schema"] == "stats/1"
    assert "mentions from 58 documents" in capsys.readouterr().out


def test_cli_graph_matches_library_run(capsys, tmp_path, corpus_path, artifacts_dir):
    out = tmp_path / "graph-out"
    assert main(["graph", "--input", str(corpus_path), "--out", str(out)]) == 0
    for name in ARTIFACTS:
        assert (out / name).read_bytes() == (artifacts_dir / name).read_bytes()
    printed = capsys.readouterr().out
    assert "documents: 58 ingested" in printed
    assert "artifacts written to" in printed


def test_cli_timeline_prints_sliced_series(capsys, artifacts_dir):
    assert main(["timeline", "--artifacts", str(artifacts_dir),
                 "--event", "Lockdown", "--window", "1",
                 "--from", "2020-02", "--to", "2020-04"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["event"] == "Lockdown"
    assert doc["window"] == 1
    assert doc["norm_divisor"] == 500
    months = [p["month"] for p in doc["points"]]
    assert months == ["2020-02", "2020-03", "2020-04"]
    assert all(p["score"] >= 0 for p in doc["points"])


def test_cli_timeline_rejects_unknown_event(capsys, artifacts_dir):
    assert main(["timeline", "--artifacts", str(artifacts_dir),
                 "--event", "Zamboni"]) == 2
    assert "unknown event type" in capsys.readouterr().err


def test_cli_timeline_rejects_even_window(capsys, artifacts_dir):
    assert main(["timeline", "--artifacts", str(artifacts_dir),
                 "--event", "Lockdown", "--window", "2"]) == 2
    assert "positive odd" in capsys.readouterr().err


def test_cli_timeline_rejects_bad_month(capsys, artifacts_dir):
    assert main(["timeline", "--artifacts", str(artifacts_dir),
                 "--event", "Lockdown", "--from", "202002"]) == 2
    assert "YYYY-MM" in capsys.readouterr().err


def test_cli_serve_rejects_bad_bind(capsys, artifacts_dir):
    assert main(["serve", "--artifacts", str(artifacts_dir),
                 "--bind", "nonsense"]) == 2
    assert "host:port" in capsys.readouterr().err
