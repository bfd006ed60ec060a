#!/usr/bin/env python3
"""Regenerate the bundled training fixtures.

Writes three files into src/excavator/data/:

  arg_training.jsonl       marked-trigger sentences with Place/Time BIO tags
  tagger_training.jsonl    plain sentences with event-type BIO tags
  relation_training.jsonl  (tokens, span pair, subtype) classifier instances

The label side is produced by the shipped components themselves: trigger
tags come from the lexicon tagger, relation labels from the pattern engine
applied to template sentences. The relation set is validated for linear
separability (the classifier must reach 100% training accuracy) before it
is written.
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from fixture_vocab import PLACES, STORIES, TIMES_ABSOLUTE, TIMES_RELATIVE, TRIGGERS

from excavator.corpus import Document, segment_document, tokenize_texts
from excavator.extraction import (
    TRIGGER_CLOSE,
    TRIGGER_OPEN,
    LexiconTagger,
    encode_bio_spans,
    extract_event_mentions,
    load_trigger_lexicon,
)
from excavator.pipeline import default_data_path
from excavator.relations import (
    load_patterns,
    load_relation_instances,
    match_patterns,
    train_from_instances,
)
from excavator.taxonomy import load_taxonomy
from excavator.vectors import HashedNgramVectors

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                        "..", "src", "excavator", "data")

# event types the learned trigger tagger is trained on (a compact subset so
# the label space stays small and training stays fast)
TAGGER_TYPES = ("COVID-19", "Death", "DiseaseSpread", "FearOrPanic",
                "Lockdown", "Testing", "Travel", "Unemployment")


def tok(text: str) -> list[str]:
    return tokenize_texts(text)


def build_arg_instances() -> list[dict]:
    """Marked-trigger sentences with Place/Time spans tagged."""
    triggers = sorted(TRIGGERS)
    instances: list[dict] = []

    def marked(trig: str) -> list[str]:
        return [TRIGGER_OPEN, *tok(trig), TRIGGER_CLOSE]

    def emit(tokens: list[str], spans: list[tuple[int, int, str]]) -> None:
        tags = encode_bio_spans(
            [((s, e), role) for s, e, role in spans], len(tokens))
        instances.append({"tokens": tokens, "tags": tags})

    def span_of(prefix: list[str], phrase: str) -> tuple[int, int]:
        return len(prefix), len(prefix) + len(tok(phrase))

    places = [p for p, _ in PLACES]
    abs_times = [t for t, _ in TIMES_ABSOLUTE]

    for i, place in enumerate(places):
        trig = triggers[i % len(triggers)]
        time = abs_times[i % len(abs_times)]

        # The <t> trig </t> began in PLACE in TIME .
        tokens = ["The", *marked(trig), "began", "in"]
        p = span_of(tokens, place)
        tokens += tok(place) + ["in"]
        t = span_of(tokens, time)
        tokens += tok(time) + ["."]
        emit(tokens, [(p[0], p[1], "Place"), (t[0], t[1], "Time")])

        # trig continued across PLACE .
        trig2 = triggers[(i + 7) % len(triggers)]
        tokens = [*marked(trig2), "continued", "across"]
        p = span_of(tokens, place)
        tokens += tok(place) + ["."]
        emit(tokens, [(p[0], p[1], "Place")])

        # In TIME , officials reported trig in PLACE .
        trig3 = triggers[(i + 13) % len(triggers)]
        time2 = abs_times[(i + 5) % len(abs_times)]
        tokens = ["In"]
        t = span_of(tokens, time2)
        tokens += tok(time2) + [",", "officials", "reported", *marked(trig3), "in"]
        p = span_of(tokens, place)
        tokens += tok(place) + ["."]
        emit(tokens, [(t[0], t[1], "Time"), (p[0], p[1], "Place")])

    for i, time in enumerate(abs_times):
        trig = triggers[(i + 3) % len(triggers)]
        tokens = ["The", *marked(trig), "started", "in"]
        t = span_of(tokens, time)
        tokens += tok(time) + ["."]
        emit(tokens, [(t[0], t[1], "Time")])

    for i, rel in enumerate(TIMES_RELATIVE * 3):
        trig = triggers[(i + 11) % len(triggers)]
        place = places[(i * 5) % len(places)]
        tokens = [*marked(trig), "hit"]
        p = span_of(tokens, place)
        tokens += tok(place)
        t = span_of(tokens, rel)
        tokens += tok(rel) + ["."]
        emit(tokens, [(p[0], p[1], "Place"), (t[0], t[1], "Time")])

        trig2 = triggers[(i + 17) % len(triggers)]
        tokens = ["Experts", "discussed", "the", *marked(trig2)]
        t = span_of(tokens, rel)
        tokens += tok(rel) + ["."]
        emit(tokens, [(t[0], t[1], "Time")])

    for i in range(0, len(triggers), 3):
        tokens = ["The", *marked(triggers[i]), "remained", "severe", "."]
        emit(tokens, [])

    return instances


def build_tagger_instances(tagger: LexiconTagger) -> list[dict]:
    """Plain sentences tagged by the lexicon matcher, restricted to a small
    type subset so the learned tagger's label space stays compact."""
    by_type: dict[str, list[str]] = {}
    for phrase, etype in TRIGGERS.items():
        by_type.setdefault(etype, []).append(phrase)

    sentence_texts: list[str] = []
    for etype in TAGGER_TYPES:
        for phrase in sorted(by_type.get(etype, [])):
            sentence_texts += [
                f"The {phrase} continued for weeks.",
                f"Officials discussed the {phrase} on Monday.",
                f"Reports described the {phrase} in detail.",
            ]
    for left, conn, right in STORIES:
        if TRIGGERS[left] in TAGGER_TYPES and TRIGGERS[right] in TAGGER_TYPES:
            sentence_texts.append(f"The {left} {conn} {right}.")
    sentence_texts += [
        "Officials held a briefing on Monday.",
        "The report was published without fanfare.",
    ]

    instances = []
    for text in sentence_texts:
        doc = segment_document(Document(
            id="t", kind="news", source="s", published_month="2020-03",
            title="", body=text))
        sent = doc.sentences[0]
        spans = [(span, etype) for span, etype in tagger.tag_events(sent)
                 if etype in TAGGER_TYPES]
        tags = encode_bio_spans(spans, len(sent.tokens))
        instances.append({"tokens": sent.token_texts(), "tags": tags})
    return instances


def build_relation_instances(tagger: LexiconTagger, patterns) -> list[dict]:
    """Apply the shipped patterns to template sentences; keep the relation's
    (X span, Y span, subtype), add reversed and neutral pairs as NoRelation.
    Every (left tokens, right tokens) pair maps to exactly one label, which
    keeps the pooled representations consistently labeled."""
    pair_label: dict[tuple[tuple[str, ...], tuple[str, ...]], str] = {}
    instances: list[dict] = []

    def add(tokens: list[str], left: tuple[int, int], right: tuple[int, int],
            label: str) -> None:
        key = (tuple(tokens[left[0]:left[1]]), tuple(tokens[right[0]:right[1]]))
        known = pair_label.get(key)
        if known == label:
            return
        if known is not None:
            raise SystemExit(
                f"conflicting labels for pair {key}: {known} vs {label}")
        pair_label[key] = label
        instances.append({
            "tokens": tokens,
            "left_span": list(left),
            "right_span": list(right),
            "label": label,
        })

    positives = []
    for left, conn, right in STORIES:
        text = f"The {left} {conn} {right}."
        doc = segment_document(Document(
            id="r", kind="news", source="s", published_month="2020-03",
            title="", body=text))
        sent = doc.sentences[0]
        mentions = extract_event_mentions(doc, tagger, None, None)
        rels = match_patterns(doc, sent, mentions, patterns)
        if not rels:
            raise SystemExit(f"no pattern matched template: {text!r}")
        by_id = {m.id: m for m in mentions}
        rel = rels[0]
        lspan = by_id[rel.left_event].trigger_span
        rspan = by_id[rel.right_event].trigger_span
        positives.append((sent.token_texts(), lspan, rspan, rel.subtype))

    for tokens, lspan, rspan, subtype in positives:
        add(tokens, lspan, rspan, subtype)
    for tokens, lspan, rspan, _ in positives:
        key = (tuple(tokens[rspan[0]:rspan[1]]), tuple(tokens[lspan[0]:lspan[1]]))
        if key not in pair_label:
            add(tokens, rspan, lspan, "NoRelation")

    neutral_pairs = [
        ("fever", "symptoms"), ("economy", "markets"), ("testing", "travel"),
        ("virus", "flights"), ("protests", "tourism"),
        ("treatment", "ventilators"),
    ]
    for a, b in neutral_pairs:
        text = f"The {a} and the {b} stayed in the news."
        doc = segment_document(Document(
            id="n", kind="news", source="s", published_month="2020-03",
            title="", body=text))
        sent = doc.sentences[0]
        mentions = sorted(extract_event_mentions(doc, tagger, None, None),
                          key=lambda m: m.trigger_span)
        if len(mentions) != 2:
            raise SystemExit(f"expected 2 mentions in {text!r}, "
                             f"got {len(mentions)}")
        tokens = sent.token_texts()
        s0, s1 = mentions[0].trigger_span, mentions[1].trigger_span
        add(tokens, s0, s1, "NoRelation")
        add(tokens, s1, s0, "NoRelation")

    return instances


def write_jsonl(path: str, rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True) + "\n")
    print(f"wrote {len(rows):4d} records -> {os.path.relpath(path)}")


def main() -> None:
    taxonomy = load_taxonomy(default_data_path("taxonomy.txt"))
    lexicon = load_trigger_lexicon(default_data_path("lexicon.tsv"), taxonomy)
    tagger = LexiconTagger(lexicon)
    patterns = load_patterns(default_data_path("patterns.txt"))

    write_jsonl(os.path.join(DATA_DIR, "arg_training.jsonl"),
                build_arg_instances())
    write_jsonl(os.path.join(DATA_DIR, "tagger_training.jsonl"),
                build_tagger_instances(tagger))
    rel_path = os.path.join(DATA_DIR, "relation_training.jsonl")
    write_jsonl(rel_path, build_relation_instances(tagger, patterns))

    # the shipped set must be linearly separable for the classifier
    provider = HashedNgramVectors()
    instances = load_relation_instances(rel_path)
    clf = train_from_instances(instances, provider)
    import numpy as np

    from excavator.relations import classify_pair, mention_pool, pair_representation
    wrong = 0
    for inst in instances:
        vecs = provider.token_vectors(inst.tokens)
        rep = pair_representation(mention_pool(vecs, inst.left_span),
                                  mention_pool(vecs, inst.right_span))
        label, _ = classify_pair(clf, rep)
        wrong += label != inst.label
    if wrong:
        raise SystemExit(
            f"relation training set is not separable: {wrong} errors")
    print(f"relation classifier reaches 100% on {len(instances)} instances")


if __name__ == "__main__":
    main()
