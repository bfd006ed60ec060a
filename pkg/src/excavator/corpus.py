"""Corpus ingestion and segmentation.

Documents arrive as JSONL (one object per line: id, kind, source,
published_at, title, body). Segmentation is deliberately rule-based and
dependency-free so that token offsets are stable across machines: sentence
breaks at .!? followed by whitespace and an uppercase letter, with a short
abbreviation exemption list; tokens are alphanumeric runs or single
punctuation characters.
"""

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import IO, Iterable, Optional

from . import months

# Words whose trailing period does not end a sentence.
ABBREVIATIONS = {
    "dr", "mr", "mrs", "ms", "prof", "st", "no", "vs", "etc", "al",
    "inc", "ltd", "co", "fig", "jan", "feb", "mar", "apr", "jun",
    "jul", "aug", "sep", "sept", "oct", "nov", "dec", "e.g", "i.e",
    "u.s", "u.k",
}

_TOKEN_RE = re.compile(r"[A-Za-z0-9]+(?:'[A-Za-z]+)?|[^\sA-Za-z0-9]")


@dataclass
class Token:
    text: str
    char_span: tuple[int, int]

    @property
    def lowercase(self) -> str:
        return self.text.lower()


@dataclass
class Sentence:
    index: int
    char_span: tuple[int, int]
    tokens: list[Token]
    # Optional externally supplied predicate-argument triples for this
    # sentence: (pred_start, pred_end, role, arg_start, arg_end) in token
    # indices. The SVO heuristic is skipped when these are present.
    propositions: Optional[list[tuple[int, int, str, int, int]]] = None

    def token_texts(self) -> list[str]:
        return [t.text for t in self.tokens]

    def text(self, body: str) -> str:
        return body[self.char_span[0]:self.char_span[1]]


@dataclass
class Document:
    id: str
    kind: str  # "news" | "scholarly"
    source: str
    published_month: Optional[str]  # YYYY-MM, None when the date was absent
    title: str
    body: str
    sentences: list[Sentence] = field(default_factory=list)
    # raw "propositions" payload from the input line, keyed by sentence index
    raw_propositions: Optional[dict] = None


@dataclass
class CorpusStats:
    articles_per_month: dict[str, int]
    ingested: int = 0
    missing_month: int = 0

    def month_range(self) -> list[str]:
        if not self.articles_per_month:
            return []
        keys = sorted(self.articles_per_month)
        return months.span(keys[0], keys[-1])


class IngestError(Exception):
    pass


REQUIRED_FIELDS = ("id", "kind", "source", "published_at", "title", "body")


def ingest_documents(stream: IO[bytes] | IO[str]) -> tuple[list[Document], int]:
    """Parse a JSONL stream into documents.

    Malformed lines (bad JSON, missing fields, unparseable dates) are skipped
    and counted; more than 50% malformed lines is treated as a broken input
    and raises. Returns (documents, skipped_line_count).
    """
    docs: list[Document] = []
    skipped = 0
    total = 0
    seen_ids: set[str] = set()
    for raw in stream:
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8", errors="replace")
        line = raw.strip()
        if not line:
            continue
        total += 1
        try:
            obj = json.loads(line)
            if not isinstance(obj, dict):
                raise ValueError("line is not an object")
            missing = [f for f in REQUIRED_FIELDS if f not in obj]
            if missing:
                raise ValueError(f"missing fields: {missing}")
            month = months.from_date(str(obj["published_at"])) if obj["published_at"] else None
            doc_id = str(obj["id"])
            if doc_id in seen_ids:
                raise ValueError(f"duplicate document id {doc_id}")
            kind = str(obj["kind"])
            if kind not in ("news", "scholarly"):
                raise ValueError(f"unknown kind {kind!r}")
            docs.append(Document(
                id=doc_id,
                kind=kind,
                source=str(obj["source"]),
                published_month=month,
                title=str(obj["title"]),
                body=str(obj["body"]),
                raw_propositions=obj.get("propositions"),
            ))
            seen_ids.add(doc_id)
        except (ValueError, KeyError, TypeError):
            skipped += 1
            continue
    if total and skipped * 2 > total:
        raise IngestError(
            f"{skipped}/{total} lines malformed; refusing to continue")
    return docs, skipped


def _is_sentence_break(body: str, pos: int) -> bool:
    """True when the punctuation at `pos` ends a sentence: .!? followed by
    whitespace and an uppercase letter, abbreviations exempted."""
    ch = body[pos]
    if ch not in ".!?":
        return False
    j = pos + 1
    if j < len(body):
        if not body[j].isspace():
            return False
        k = j
        while k < len(body) and body[k].isspace():
            k += 1
        if k < len(body) and not body[k].isupper():
            return False
    if ch == ".":
        # abbreviation exemption: word immediately before the period
        i = pos - 1
        while i >= 0 and (body[i].isalnum() or body[i] == "."):
            i -= 1
        word = body[i + 1:pos].lower().rstrip(".")
        if word in ABBREVIATIONS:
            return False
    return True


def tokenize(text: str, offset: int = 0) -> list[Token]:
    """Split into alphanumeric runs (apostrophes allowed inside) and single
    punctuation characters, keeping char offsets."""
    return [
        Token(m.group(0), (offset + m.start(), offset + m.end()))
        for m in _TOKEN_RE.finditer(text)
    ]


def tokenize_texts(text: str) -> list[str]:
    return [t.text for t in tokenize(text)]


def segment_document(doc: Document) -> Document:
    """Populate doc.sentences in place (and return the doc)."""
    body = doc.body
    bounds: list[tuple[int, int]] = []
    start = 0
    i = 0
    while i < len(body):
        if _is_sentence_break(body, i):
            bounds.append((start, i + 1))
            start = i + 1
        i += 1
    if start < len(body) and body[start:].strip():
        bounds.append((start, len(body)))

    sentences: list[Sentence] = []
    for idx, (s, e) in enumerate(bounds):
        # trim leading/trailing whitespace out of the span
        while s < e and body[s].isspace():
            s += 1
        while e > s and body[e - 1].isspace():
            e -= 1
        toks = tokenize(body[s:e], offset=s)
        if not toks:
            continue
        sent = Sentence(index=len(sentences), char_span=(s, e), tokens=toks)
        sentences.append(sent)

    if doc.raw_propositions:
        for sent in sentences:
            triples = doc.raw_propositions.get(str(sent.index))
            if triples:
                sent.propositions = [
                    (int(t[0]), int(t[1]), str(t[2]), int(t[3]), int(t[4]))
                    for t in triples
                ]
    doc.sentences = sentences
    return doc


def monthly_article_counts(docs: Iterable[Document]) -> CorpusStats:
    """Exact per-month article counts; documents without a publish date are
    left out of the map and tallied separately."""
    counts: Counter[str] = Counter()
    ingested = 0
    missing = 0
    for doc in docs:
        ingested += 1
        if doc.published_month is None:
            missing += 1
        else:
            counts[doc.published_month] += 1
    return CorpusStats(
        articles_per_month=dict(sorted(counts.items())),
        ingested=ingested,
        missing_month=missing,
    )


def load_corpus(path: str) -> tuple[list[Document], int]:
    """Ingest + segment a JSONL corpus file."""
    with open(path, "rb") as fh:
        docs, skipped = ingest_documents(fh)
    for doc in docs:
        segment_document(doc)
    return docs, skipped
