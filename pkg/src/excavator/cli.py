"""Command-line entry points: ingest, extract, graph, timeline, serve."""

import argparse
import json
import os
import sys
from typing import Optional

from . import months
from .corpus import load_corpus, monthly_article_counts
from .extraction import LexiconTagger, load_gazetteer, load_trigger_lexicon, mention_to_dict
from .pipeline import (
    PipelineConfig,
    PipelineStageError,
    Snapshot,
    stage_guard,
    corpus_digest,
    default_data_path,
    derive_generated_at,
    extract_all_mentions,
    load_snapshot,
    run_pipeline,
    train_argument_model,
    write_jsonl,
)
from .taxonomy import load_taxonomy
from .timeline import event_monthly_counts, popularity_series

DEFAULT_BIND = "127.0.0.1:8000"


def _add_path_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--taxonomy", default=default_data_path("taxonomy.txt"),
                   help="taxonomy file (default: bundled)")
    p.add_argument("--lexicon", default=default_data_path("lexicon.tsv"),
                   help="trigger lexicon file (default: bundled)")
    p.add_argument("--gazetteer", default=default_data_path("gazetteer.tsv"),
                   help="gazetteer file (default: bundled)")
    p.add_argument("--arg-training", default=default_data_path("arg_training.jsonl"),
                   help="argument-tagger training file; empty string disables")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="excavator",
        description="Event and relation extraction pipeline with graph "
                    "and timeline analytics.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("ingest", help="ingest a corpus and report volume stats")
    p.add_argument("--input", required=True, help="JSONL corpus path")
    p.add_argument("--from", dest="from_month", metavar="YYYY-MM",
                   help="report documents before this month as out of range")
    p.add_argument("--to", dest="to_month", metavar="YYYY-MM",
                   help="report documents after this month as out of range")

    p = sub.add_parser("extract", help="extract event mentions to mentions.jsonl")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--workers", type=int, default=1)
    _add_path_flags(p)

    p = sub.add_parser("graph", help="run the full pipeline and write artifacts")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--patterns", default=default_data_path("patterns.txt"))
    p.add_argument("--relation-training",
                   default=default_data_path("relation_training.jsonl"),
                   help="relation-classifier training file; empty string disables")
    p.add_argument("--min-edge-count", type=int, default=1)
    p.add_argument("--strict-filter", action="store_true",
                   help="drop mentions lacking a filtered attribute")
    p.add_argument("--workers", type=int, default=1)
    _add_path_flags(p)

    p = sub.add_parser("timeline", help="print a popularity timeseries as JSON")
    p.add_argument("--artifacts", required=True, help="pipeline output directory")
    p.add_argument("--event", required=True)
    p.add_argument("--geo")
    p.add_argument("--from", dest="from_month", metavar="YYYY-MM")
    p.add_argument("--to", dest="to_month", metavar="YYYY-MM")
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--strict-window", action="store_true")
    p.add_argument("--taxonomy", default=default_data_path("taxonomy.txt"))

    p = sub.add_parser("serve", help="serve the read-only HTTP API")
    p.add_argument("--artifacts", required=True, help="pipeline output directory")
    p.add_argument("--bind", default=DEFAULT_BIND, help="host:port")
    p.add_argument("--taxonomy", default=default_data_path("taxonomy.txt"))

    return parser


def cmd_ingest(args: argparse.Namespace) -> int:
    docs, skipped = stage_guard("corpus")(load_corpus)(args.input)
    stats = monthly_article_counts(docs)
    print(f"documents: {stats.ingested} ingested, {skipped} line(s) skipped, "
          f"{stats.missing_month} without a publish date")
    for month, n in sorted(stats.articles_per_month.items()):
        print(f"  {month}: {n}")
    if args.from_month or args.to_month:
        lo = args.from_month or "0000-00"
        hi = args.to_month or "9999-99"
        outside = sum(
            1 for d in docs
            if d.published_month is not None
            and not (lo <= d.published_month <= hi))
        print(f"out of range [{args.from_month or '*'}..{args.to_month or '*'}]: "
              f"{outside}")
    return 0


def cmd_extract(args: argparse.Namespace) -> int:
    docs, skipped = stage_guard("corpus")(load_corpus)(args.input)
    version = stage_guard("corpus")(corpus_digest)(args.input)
    stats = monthly_article_counts(docs)
    taxonomy = stage_guard("taxonomy")(load_taxonomy)(args.taxonomy)

    @stage_guard("extract")
    def _extract():
        lexicon = load_trigger_lexicon(args.lexicon, taxonomy)
        gazetteer = load_gazetteer(args.gazetteer)
        arg_model = (train_argument_model(args.arg_training)
                     if args.arg_training else None)
        return extract_all_mentions(docs, LexiconTagger(lexicon), arg_model,
                                    gazetteer, workers=args.workers)

    mentions = _extract()

    @stage_guard("write")
    def _write():
        os.makedirs(args.out, exist_ok=True)
        write_jsonl(os.path.join(args.out, "mentions.jsonl"),
                    (mention_to_dict(m) for m in mentions))
        stats_doc = {
            "schema": "stats/1",
            "generated_at": derive_generated_at(stats),
            "corpus_version": version,
            "articles_per_month": stats.articles_per_month,
            "ingested": stats.ingested,
            "missing_month": stats.missing_month,
            "skipped_lines": skipped,
        }
        with open(os.path.join(args.out, "stats.json"), "w", encoding="utf-8") as fh:
            json.dump(stats_doc, fh, sort_keys=True, indent=2)
            fh.write("\n")

    _write()
    print(f"{len(mentions)} mentions from {len(docs)} documents -> {args.out}")
    return 0


def cmd_graph(args: argparse.Namespace) -> int:
    config = PipelineConfig(
        input_path=args.input,
        out_dir=args.out,
        taxonomy_path=args.taxonomy,
        lexicon_path=args.lexicon,
        patterns_path=args.patterns,
        gazetteer_path=args.gazetteer,
        arg_training_path=args.arg_training or None,
        relation_training_path=args.relation_training or None,
        min_edge_count=args.min_edge_count,
        strict_filter=args.strict_filter,
        workers=args.workers,
    )
    run_pipeline(config)
    return 0


def cmd_timeline(args: argparse.Namespace) -> int:
    snapshot = stage_guard("load")(load_snapshot)(args.artifacts, args.taxonomy)
    if args.event not in snapshot.taxonomy:
        print(f"unknown event type {args.event!r}", file=sys.stderr)
        return 2
    if args.window < 1 or args.window % 2 == 0:
        print("--window must be a positive odd integer", file=sys.stderr)
        return 2
    for name, value in (("--from", args.from_month), ("--to", args.to_month)):
        if value is not None and not months.is_valid(value):
            print(f"{name} must be YYYY-MM, got {value!r}", file=sys.stderr)
            return 2
    counts = event_monthly_counts(list(snapshot.mentions), args.event,
                                  geo=args.geo)
    series = popularity_series(counts, snapshot.stats, window=args.window,
                               strict_window=args.strict_window)
    lo, hi = args.from_month, args.to_month
    points = [(m, v) for m, v in series.points
              if (lo is None or m >= lo) and (hi is None or m <= hi)]
    print(json.dumps({
        "event": series.event_type,
        "geo": series.geo,
        "window": series.window,
        "strict_window": series.strict_window,
        "norm_divisor": series.norm_divisor,
        "points": [{"month": m, "score": v} for m, v in points],
        "skipped_months": series.skipped_months,
    }, sort_keys=True, indent=2))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    snapshot: Snapshot = stage_guard("load")(load_snapshot)(
        args.artifacts, args.taxonomy)
    host, _, port = args.bind.rpartition(":")
    if not host or not port.isdigit():
        print(f"--bind must be host:port, got {args.bind!r}", file=sys.stderr)
        return 2
    app = create_app(snapshot)
    uvicorn.run(app, host=host, port=int(port), log_level="info")
    return 0


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "ingest": cmd_ingest,
        "extract": cmd_extract,
        "graph": cmd_graph,
        "timeline": cmd_timeline,
        "serve": cmd_serve,
    }
    try:
        return handlers[args.verb](args)
    except PipelineStageError as err:
        print(str(err), file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
