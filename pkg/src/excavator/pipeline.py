"""End-to-end pipeline: corpus in, graph artifacts out.

Stages: corpus -> taxonomy -> extract -> relations -> graph -> write.
Every stage is deterministic, so two runs over the same input produce
byte-identical artifacts (mentions.jsonl, relations.jsonl, stats.json,
tcag.json). To keep even the embedded stamps stable, `generated_at` is
derived from the corpus content (latest publish month) rather than the
wall clock, and `corpus_version` is a digest of the raw input bytes.
"""

import hashlib
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Optional

from . import months
from .corpus import CorpusStats, Document, load_corpus, monthly_article_counts
from .extraction import (
    EventMention,
    Gazetteer,
    LexiconTagger,
    LinearTaggerModel,
    bio_tagset,
    extract_event_mentions,
    load_gazetteer,
    load_tagged_sentences,
    load_trigger_lexicon,
    mention_from_dict,
    mention_to_dict,
    train_sequence_tagger,
)
from .relations import (
    NeuralRelationExtractor,
    RelationMention,
    extract_svo_propositions,
    load_patterns,
    load_relation_instances,
    match_patterns,
    relation_from_dict,
    relation_to_dict,
    train_from_instances,
    union_and_dedup,
)
from .taxonomy import Taxonomy, load_taxonomy
from .tcag import FilterSpec, Tcag, build_tcag, export_tcag_json
from .vectors import HashedNgramVectors

ARG_EPOCHS = 8
EPOCH_STAMP = "1970-01-01T00:00:00Z"


def default_data_path(name: str) -> str:
    return str(resources.files("excavator").joinpath("data", name))


class PipelineStageError(Exception):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class PipelineConfig:
    input_path: str
    out_dir: str
    taxonomy_path: str = field(
        default_factory=lambda: default_data_path("taxonomy.txt"))
    lexicon_path: str = field(
        default_factory=lambda: default_data_path("lexicon.tsv"))
    patterns_path: str = field(
        default_factory=lambda: default_data_path("patterns.txt"))
    gazetteer_path: str = field(
        default_factory=lambda: default_data_path("gazetteer.tsv"))
    arg_training_path: Optional[str] = field(
        default_factory=lambda: default_data_path("arg_training.jsonl"))
    relation_training_path: Optional[str] = field(
        default_factory=lambda: default_data_path("relation_training.jsonl"))
    min_edge_count: int = 1
    strict_filter: bool = False
    workers: int = 1


@dataclass
class PipelineResult:
    documents: int
    skipped_lines: int
    mentions: list[EventMention]
    relations: list[RelationMention]
    stats: CorpusStats
    tcag: Tcag
    generated_at: str
    corpus_version: str
    out_dir: str


def stage_guard(name: str):
    def wrap(fn):
        def run(*args, **kwargs):
            try:
                return fn(*args, **kwargs)
            except PipelineStageError:
                raise
            except Exception as err:
                raise PipelineStageError(name, err) from err
        return run
    return wrap


def corpus_digest(path: str) -> str:
    h = hashlib.blake2b(digest_size=8)
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def derive_generated_at(stats: CorpusStats) -> str:
    """Content-derived stamp: first day after the latest publish month.
    Keeps artifacts byte-identical across runs over the same corpus."""
    span = stats.month_range()
    if not span:
        return EPOCH_STAMP
    return months.add(span[-1], 1) + "-01T00:00:00Z"


def train_argument_model(path: str, epochs: int = ARG_EPOCHS) -> LinearTaggerModel:
    annotated = load_tagged_sentences(path)
    roles = ("Place", "Time")
    return train_sequence_tagger(annotated, bio_tagset(roles), epochs=epochs)


def extract_all_mentions(
    docs: list[Document],
    tagger,
    arg_model: Optional[LinearTaggerModel],
    gazetteer: Optional[Gazetteer],
    workers: int = 1,
) -> list[EventMention]:
    """Per-document extraction is pure, so worker parallelism is safe;
    results merge in document input order for determinism."""
    def one(doc: Document) -> list[EventMention]:
        return extract_event_mentions(doc, tagger, arg_model, gazetteer)

    if workers <= 1 or len(docs) < 2:
        per_doc = [one(d) for d in docs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_doc = list(pool.map(one, docs))
    return [m for chunk in per_doc for m in chunk]


def extract_all_relations(
    docs: list[Document],
    mentions: list[EventMention],
    patterns,
    neural: Optional[NeuralRelationExtractor],
) -> list[RelationMention]:
    by_sentence: dict[tuple[str, int], list[EventMention]] = {}
    for m in mentions:
        by_sentence.setdefault((m.doc_id, m.sentence_index), []).append(m)

    pattern_out: list[RelationMention] = []
    neural_out: list[RelationMention] = []
    for doc in docs:
        for sent in doc.sentences:
            events = by_sentence.get((doc.id, sent.index), [])
            if len(events) < 2:
                continue
            props = extract_svo_propositions(sent)
            pattern_out.extend(
                match_patterns(doc, sent, events, patterns, props=props))
            if neural is not None:
                neural_out.extend(neural.extract(doc, sent, events))
    return union_and_dedup(pattern_out, neural_out)


def run_pipeline(config: PipelineConfig,
                 log: Callable[[str], None] = print) -> PipelineResult:
    docs, skipped = stage_guard("corpus")(load_corpus)(config.input_path)
    version = stage_guard("corpus")(corpus_digest)(config.input_path)
    stats = monthly_article_counts(docs)
    generated_at = derive_generated_at(stats)

    taxonomy = stage_guard("taxonomy")(load_taxonomy)(config.taxonomy_path)

    @stage_guard("extract")
    def _extract() -> list[EventMention]:
        lexicon = load_trigger_lexicon(config.lexicon_path, taxonomy)
        gazetteer = load_gazetteer(config.gazetteer_path)
        arg_model = (train_argument_model(config.arg_training_path)
                     if config.arg_training_path else None)
        return extract_all_mentions(
            docs, LexiconTagger(lexicon), arg_model, gazetteer,
            workers=config.workers)

    mentions = _extract()

    @stage_guard("relations")
    def _relations() -> list[RelationMention]:
        patterns = load_patterns(config.patterns_path)
        neural = None
        if config.relation_training_path:
            provider = HashedNgramVectors()
            classifier = train_from_instances(
                load_relation_instances(config.relation_training_path),
                provider)
            neural = NeuralRelationExtractor(provider, classifier)
        return extract_all_relations(docs, mentions, patterns, neural)

    relations = _relations()

    spec = FilterSpec(min_edge_count=config.min_edge_count,
                      strict=config.strict_filter)
    tcag = stage_guard("graph")(build_tcag)(
        mentions, relations, taxonomy, spec,
        generated_at=generated_at, corpus_version=version)

    @stage_guard("write")
    def _write() -> None:
        os.makedirs(config.out_dir, exist_ok=True)
        write_jsonl(os.path.join(config.out_dir, "mentions.jsonl"),
                    (mention_to_dict(m) for m in mentions))
        write_jsonl(os.path.join(config.out_dir, "relations.jsonl"),
                    (relation_to_dict(r) for r in relations))
        stats_doc = {
            "schema": "stats/1",
            "generated_at": generated_at,
            "corpus_version": version,
            "articles_per_month": stats.articles_per_month,
            "ingested": stats.ingested,
            "missing_month": stats.missing_month,
            "skipped_lines": skipped,
            "mentions_by_type": count_by(m.event_type for m in mentions),
            "relations_by_type": count_by(r.type for r in relations),
        }
        with open(os.path.join(config.out_dir, "stats.json"), "wb") as fh:
            fh.write((json.dumps(stats_doc, sort_keys=True, indent=2) + "\n")
                     .encode("utf-8"))
        with open(os.path.join(config.out_dir, "tcag.json"), "wb") as fh:
            fh.write(export_tcag_json(tcag))

    _write()

    log(f"documents: {len(docs)} ingested, {skipped} line(s) skipped")
    log(f"event mentions: {len(mentions)}")
    for etype, n in sorted(count_by(m.event_type for m in mentions).items(),
                           key=lambda kv: (-kv[1], kv[0])):
        log(f"  {etype}: {n}")
    log(f"relations: {len(relations)}")
    for rtype, n in sorted(count_by(r.type for r in relations).items(),
                           key=lambda kv: (-kv[1], kv[0])):
        log(f"  {rtype}: {n}")
    log(f"artifacts written to {config.out_dir}")

    return PipelineResult(
        documents=len(docs),
        skipped_lines=skipped,
        mentions=mentions,
        relations=relations,
        stats=stats,
        tcag=tcag,
        generated_at=generated_at,
        corpus_version=version,
        out_dir=config.out_dir,
    )


def count_by(items) -> dict[str, int]:
    out: dict[str, int] = {}
    for item in items:
        out[item] = out.get(item, 0) + 1
    return out


def write_jsonl(path: str, rows) -> None:
    with open(path, "wb") as fh:
        for row in rows:
            fh.write((json.dumps(row, sort_keys=True) + "\n").encode("utf-8"))


def read_jsonl(path: str) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


@dataclass(frozen=True)
class Snapshot:
    """Immutable loaded artifact state shared by all request handlers."""

    mentions: tuple[EventMention, ...]
    relations: tuple[RelationMention, ...]
    taxonomy: Taxonomy
    stats: CorpusStats
    tcag: Tcag  # unfiltered
    generated_at: str
    corpus_version: str

    def mention_by_id(self, mention_id: str) -> Optional[EventMention]:
        return self._index().get(mention_id)

    def _index(self) -> dict[str, EventMention]:
        # frozen dataclass: cache on the instance via object.__setattr__
        cached = self.__dict__.get("_mention_index")
        if cached is None:
            cached = {m.id: m for m in self.mentions}
            object.__setattr__(self, "_mention_index", cached)
        return cached


def load_snapshot(artifacts_dir: str,
                  taxonomy_path: Optional[str] = None) -> Snapshot:
    """Load pipeline artifacts back into memory for serving."""
    taxonomy = load_taxonomy(taxonomy_path or default_data_path("taxonomy.txt"))
    mentions = tuple(mention_from_dict(d) for d in
                     read_jsonl(os.path.join(artifacts_dir, "mentions.jsonl")))
    relations = tuple(relation_from_dict(d) for d in
                      read_jsonl(os.path.join(artifacts_dir, "relations.jsonl")))
    with open(os.path.join(artifacts_dir, "stats.json"), encoding="utf-8") as fh:
        stats_doc = json.load(fh)
    stats = CorpusStats(
        articles_per_month=dict(stats_doc["articles_per_month"]),
        ingested=stats_doc["ingested"],
        missing_month=stats_doc["missing_month"],
    )
    generated_at = stats_doc["generated_at"]
    version = stats_doc["corpus_version"]
    with open(os.path.join(artifacts_dir, "tcag.json"), encoding="utf-8") as fh:
        recorded = json.load(fh)["filter"]
    spec = FilterSpec(geo=recorded["geo"], month=recorded["month"],
                      min_edge_count=recorded["min_edge_count"],
                      strict=recorded["strict"])
    tcag = build_tcag(list(mentions), list(relations), taxonomy, spec,
                      generated_at=generated_at, corpus_version=version)
    return Snapshot(
        mentions=mentions,
        relations=relations,
        taxonomy=taxonomy,
        stats=stats,
        tcag=tcag,
        generated_at=generated_at,
        corpus_version=version,
    )
