#!/usr/bin/env python3
"""Regenerate the fixture corpus at tests/data/corpus.jsonl.

Deterministic (seeded) synthetic corpus: 57 documents over 2020-01..2020-05
with a volume ramp, plus two malformed lines and one document without a
publish date, exercising ingestion bookkeeping. Bodies are assembled from
templates that realize the shipped trigger lexicon, relation patterns,
place/time argument contexts, abbreviation handling, and the explicit
proposition pass-through.
"""

import json
import os
import random
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from fixture_vocab import PLACES, STORIES, TIMES_ABSOLUTE, TIMES_RELATIVE, TRIGGERS

OUT_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                        "..", "tests", "data", "corpus.jsonl")

DOCS_PER_MONTH = {
    "2020-01": 6,
    "2020-02": 8,
    "2020-03": 16,
    "2020-04": 14,
    "2020-05": 12,
}

NEWS_SOURCES = ["wire-a", "daily-b", "metro-c", "global-d"]
SCHOLARLY_SOURCES = ["journal-x", "preprint-y"]

NEUTRAL = [
    "Officials held a briefing on Tuesday.",
    "The measures remain under review.",
    "Local agencies published updated guidance.",
    "Residents were urged to follow the advice.",
    "Dr. Smith of St. Mary Hospital briefed reporters.",
    "A spokesperson for the U.S. agency declined to comment.",
]


def month_num(month: str) -> int:
    return int(month.split("-")[1])


def main() -> None:
    rng = random.Random(20200315)
    triggers = sorted(TRIGGERS)
    places = [p for p, _ in PLACES]
    # absolute time phrases usable in a doc published in month m: phrases
    # that resolve to a month <= m (bare names must not point forward)
    times_by_month = {
        m: [t for t, num in TIMES_ABSOLUTE if num <= month_num(m)]
        for m in DOCS_PER_MONTH
    }

    story_cursor = 0

    def next_story():
        nonlocal story_cursor
        story = STORIES[story_cursor % len(STORIES)]
        story_cursor += 1
        return story

    def story_sentence(month: str) -> str:
        left, conn, right = next_story()
        tail = ""
        roll = rng.random()
        if roll < 0.35:
            tail = f" in {rng.choice(places)}"
        elif roll < 0.55:
            tail = f" in {rng.choice(times_by_month[month])}"
        return f"The {left} {conn} {right}{tail}."

    def arg_sentence(month: str) -> str:
        trig = rng.choice(triggers)
        place = rng.choice(places)
        shape = rng.randrange(4)
        if shape == 0:
            time = rng.choice(times_by_month[month])
            return f"The {trig} began in {place} in {time}."
        if shape == 1:
            return f"The {trig} continued across {place}."
        if shape == 2:
            time = rng.choice(times_by_month[month])
            return f"In {time}, officials reported {trig} in {place}."
        time = rng.choice(TIMES_RELATIVE)
        return f"The {trig} hit {place} {time}."

    def scholarly_sentence(month: str) -> str:
        left, conn, right = next_story()
        if rng.random() < 0.5:
            return f"Our analysis suggests the {left} {conn} {right}."
        place = rng.choice(places)
        return f"We studied the {left} and the {right} across {place}."

    lines: list[str] = []
    doc_no = 0
    for month in sorted(DOCS_PER_MONTH):
        for k in range(DOCS_PER_MONTH[month]):
            doc_no += 1
            scholarly = (doc_no % 7) == 0
            kind = "scholarly" if scholarly else "news"
            source = rng.choice(SCHOLARLY_SOURCES if scholarly else NEWS_SOURCES)
            day = rng.randrange(2, 28)
            sentences = []
            n_story = rng.randrange(1, 4)
            for _ in range(n_story):
                sentences.append(scholarly_sentence(month) if scholarly
                                 else story_sentence(month))
            for _ in range(rng.randrange(1, 3)):
                sentences.append(arg_sentence(month))
            if rng.random() < 0.5:
                sentences.append(rng.choice(NEUTRAL))
            rng.shuffle(sentences)
            doc = {
                "id": f"{kind}-{doc_no:04d}",
                "kind": kind,
                "source": source,
                "published_at": f"{month}-{day:02d}",
                "title": f"Dispatch {doc_no}",
                "body": " ".join(sentences),
            }
            lines.append(json.dumps(doc, sort_keys=True))

    # explicit proposition pass-through: the heuristic would misread the
    # parenthetical subject, the supplied triples name it correctly
    body = "Panic, officials said, reduced travel. The outbreak continued across Ohio."
    lines.append(json.dumps({
        "id": "news-props-0001",
        "kind": "news",
        "source": "wire-a",
        "published_at": "2020-03-09",
        "title": "Dispatch with parsed propositions",
        "body": body,
        "propositions": {"0": [[5, 6, "subject", 0, 1], [5, 6, "object", 6, 7]]},
    }, sort_keys=True))

    # a document with no publish date: ingested, excluded from volume stats
    lines.append(json.dumps({
        "id": "news-undated-0001",
        "kind": "news",
        "source": "metro-c",
        "published_at": None,
        "title": "Undated dispatch",
        "body": "The shortages continued across Michigan. Officials held a briefing on Tuesday.",
    }, sort_keys=True))

    # malformed lines: invalid JSON and a missing body field
    lines.insert(20, '{"id": "broken-json", "kind": "news"')
    lines.insert(40, json.dumps({
        "id": "news-nobody-0001", "kind": "news", "source": "wire-a",
        "published_at": "2020-02-11", "title": "No body",
    }, sort_keys=True))

    os.makedirs(os.path.dirname(OUT_PATH), exist_ok=True)
    with open(OUT_PATH, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} lines -> {os.path.relpath(OUT_PATH)}")


if __name__ == "__main__":
    main()
