"""Two-stage event extraction.

Stage 1 finds typed trigger spans per sentence; stage 2 finds Place/Time
arguments for each trigger with the trigger marked by reserved tokens.
Both stages speak BIO over sentence tokens. Two trigger taggers share one
interface: a phrase-lexicon matcher and a trainable averaged-perceptron
linear-chain tagger (also used for the argument stage). Time arguments are
resolved to year-months by rule, locations to canonical geo ids by
gazetteer lookup.
"""

import json
import random
import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import months
from .corpus import Sentence, tokenize_texts
from .taxonomy import Taxonomy

OUTSIDE = "O"
TRIGGER_OPEN = "<t>"
TRIGGER_CLOSE = "</t>"
ARG_ROLES = ("Place", "Time")

Span = tuple[int, int]  # token indices, end-exclusive


@dataclass
class ArgumentMention:
    role: str  # "Place" | "Time"
    span: Span


@dataclass
class EventMention:
    id: str
    doc_id: str
    sentence_index: int
    trigger_span: Span
    event_type: str
    location_arg: Optional[ArgumentMention] = None
    time_arg: Optional[ArgumentMention] = None
    geo: Optional[str] = None
    month: Optional[str] = None


def mention_id(doc_id: str, sentence_index: int, span: Span, event_type: str) -> str:
    return f"{doc_id}:{sentence_index}:{span[0]}-{span[1]}:{event_type}"


def mention_to_dict(m: EventMention) -> dict:
    def arg(a: Optional[ArgumentMention]) -> Optional[dict]:
        return None if a is None else {"role": a.role, "span": list(a.span)}

    return {
        "id": m.id,
        "doc_id": m.doc_id,
        "sentence_index": m.sentence_index,
        "trigger_span": list(m.trigger_span),
        "event_type": m.event_type,
        "location_arg": arg(m.location_arg),
        "time_arg": arg(m.time_arg),
        "geo": m.geo,
        "month": m.month,
    }


def mention_from_dict(d: dict) -> EventMention:
    def arg(v: Optional[dict]) -> Optional[ArgumentMention]:
        return None if v is None else ArgumentMention(
            role=v["role"], span=(v["span"][0], v["span"][1]))

    return EventMention(
        id=d["id"],
        doc_id=d["doc_id"],
        sentence_index=d["sentence_index"],
        trigger_span=(d["trigger_span"][0], d["trigger_span"][1]),
        event_type=d["event_type"],
        location_arg=arg(d.get("location_arg")),
        time_arg=arg(d.get("time_arg")),
        geo=d.get("geo"),
        month=d.get("month"),
    )


# ---------------------------------------------------------------------------
# BIO tags
# ---------------------------------------------------------------------------

def bio_tagset(types: Iterable[str]) -> tuple[str, ...]:
    tags = [OUTSIDE]
    for t in sorted(set(types)):
        tags.extend((f"B-{t}", f"I-{t}"))
    return tuple(tags)


def decode_bio_spans(tags: Sequence[str]) -> list[tuple[Span, str]]:
    """Contiguous B-t (I-t)* runs become (span, type). Repair policy: an I-t
    with no preceding tag of type t is treated as B-t."""
    spans: list[tuple[Span, str]] = []
    start: Optional[int] = None
    cur_type: Optional[str] = None
    for i, tag in enumerate(tags):
        if tag == OUTSIDE:
            if start is not None:
                spans.append(((start, i), cur_type))
                start, cur_type = None, None
            continue
        prefix, etype = tag.split("-", 1)
        if prefix == "B" or cur_type != etype:
            if start is not None:
                spans.append(((start, i), cur_type))
            start, cur_type = i, etype
    if start is not None:
        spans.append(((start, len(tags)), cur_type))
    return spans


def encode_bio_spans(spans: Sequence[tuple[Span, str]], length: int) -> list[str]:
    """Inverse of decode for non-overlapping spans."""
    tags = [OUTSIDE] * length
    for (s, e), etype in spans:
        tags[s] = f"B-{etype}"
        for i in range(s + 1, e):
            tags[i] = f"I-{etype}"
    return tags


# ---------------------------------------------------------------------------
# Trigger lexicon tagger
# ---------------------------------------------------------------------------

class LexiconError(Exception):
    pass


@dataclass
class TriggerLexicon:
    # lowercased token sequence -> event type
    entries: dict[tuple[str, ...], str]

    def max_len(self) -> int:
        return max((len(k) for k in self.entries), default=0)


def load_trigger_lexicon(path: str, taxonomy: Taxonomy) -> TriggerLexicon:
    """Read `phrase TAB type` lines; phrases are tokenized with the corpus
    tokenizer so multi-word and hyphenated entries match real token runs."""
    entries: dict[tuple[str, ...], str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise LexiconError(f"{path}:{lineno}: expected `phrase<TAB>type`")
            phrase, etype = parts[0].strip(), parts[1].strip()
            toks = tuple(t.lower() for t in tokenize_texts(phrase))
            if not toks:
                raise LexiconError(f"{path}:{lineno}: empty phrase")
            if etype not in taxonomy:
                raise LexiconError(f"{path}:{lineno}: unknown event type {etype}")
            entries[toks] = etype
    return TriggerLexicon(entries=entries)


class LexiconTagger:
    """Longest-match, left-to-right, non-overlapping phrase matching."""

    def __init__(self, lexicon: TriggerLexicon):
        self.lexicon = lexicon

    def tag_events(self, sentence: Sentence) -> list[tuple[Span, str]]:
        lower = [t.lowercase for t in sentence.tokens]
        out: list[tuple[Span, str]] = []
        i = 0
        n = len(lower)
        longest = self.lexicon.max_len()
        while i < n:
            matched = None
            for width in range(min(longest, n - i), 0, -1):
                etype = self.lexicon.entries.get(tuple(lower[i:i + width]))
                if etype is not None:
                    matched = ((i, i + width), etype)
                    break
            if matched:
                out.append(matched)
                i = matched[0][1]
            else:
                i += 1
        return out


# ---------------------------------------------------------------------------
# Averaged-perceptron linear-chain tagger
# ---------------------------------------------------------------------------

START = "<s>"
PAD = "<pad>"


@dataclass
class LinearTaggerModel:
    feature_weights: dict[tuple[str, str], float]  # (feature, label) -> w
    transition_weights: dict[tuple[str, str], float]  # (prev, label) -> w
    tags: tuple[str, ...]

    def label_order(self) -> list[str]:
        """Tie-break order for decoding: O first, then lexicographic."""
        rest = sorted(t for t in self.tags if t != OUTSIDE)
        return [OUTSIDE, *rest]


def token_features(tokens: Sequence[str], i: int) -> list[str]:
    def at(j: int) -> str:
        return tokens[j].lower() if 0 <= j < len(tokens) else PAD

    return [
        f"w={tokens[i]}",
        f"lw={tokens[i].lower()}",
        f"w-1={at(i - 1)}",
        f"w-2={at(i - 2)}",
        f"w+1={at(i + 1)}",
        f"w+2={at(i + 2)}",
    ]


def _emissions(model: LinearTaggerModel, tokens: Sequence[str],
               labels: Sequence[str]) -> list[dict[str, float]]:
    fw = model.feature_weights
    out = []
    for i in range(len(tokens)):
        feats = token_features(tokens, i)
        out.append({
            y: sum(fw.get((f, y), 0.0) for f in feats) for y in labels
        })
    return out


def tag_bio(model: LinearTaggerModel, sentence: Sentence | Sequence[str]) -> list[str]:
    """Exact highest-scoring label sequence under emission + transition
    weights (Viterbi). Ties prefer O, then lexicographic label order, applied
    per position from the end of the sentence backwards."""
    tokens = sentence.token_texts() if isinstance(sentence, Sentence) else list(sentence)
    if not tokens:
        return []
    labels = model.label_order()
    tw = model.transition_weights
    emis = _emissions(model, tokens, labels)

    score = [{y: tw.get((START, y), 0.0) + emis[0][y] for y in labels}]
    back: list[dict[str, str]] = []
    for i in range(1, len(tokens)):
        row: dict[str, float] = {}
        bp: dict[str, str] = {}
        for y in labels:
            best_prev, best = None, None
            for p in labels:  # label_order makes ties deterministic
                s = score[i - 1][p] + tw.get((p, y), 0.0)
                if best is None or s > best:
                    best, best_prev = s, p
            row[y] = best + emis[i][y]
            bp[y] = best_prev
        score.append(row)
        back.append(bp)

    last, best = None, None
    for y in labels:
        if best is None or score[-1][y] > best:
            best, last = score[-1][y], y
    seq = [last]
    for bp in reversed(back):
        seq.append(bp[seq[-1]])
    return list(reversed(seq))


def train_sequence_tagger(
    annotated: Sequence[tuple[Sequence[str], Sequence[str]]],
    tags: Iterable[str],
    epochs: int = 10,
    seed: int = 13,
) -> LinearTaggerModel:
    """Averaged-perceptron training. `annotated` pairs token lists with
    aligned tag lists. Deterministic given seed and input order."""
    if not annotated:
        raise ValueError("empty training set")
    tagset = tuple(tags)
    for toks, gold in annotated:
        if len(toks) != len(gold):
            raise ValueError("tokens and tags misaligned")
        for g in gold:
            if g not in tagset:
                raise ValueError(f"tag {g!r} not in declared tag set")

    fw: dict[tuple[str, str], float] = defaultdict(float)
    tw: dict[tuple[str, str], float] = defaultdict(float)
    f_tot: dict[tuple[str, str], float] = defaultdict(float)
    t_tot: dict[tuple[str, str], float] = defaultdict(float)
    f_stamp: dict[tuple[str, str], int] = defaultdict(int)
    t_stamp: dict[tuple[str, str], int] = defaultdict(int)
    step = 0

    def bump_f(key, delta):
        f_tot[key] += (step - f_stamp[key]) * fw[key]
        f_stamp[key] = step
        fw[key] += delta

    def bump_t(key, delta):
        t_tot[key] += (step - t_stamp[key]) * tw[key]
        t_stamp[key] = step
        tw[key] += delta

    model = LinearTaggerModel(fw, tw, tagset)
    rng = random.Random(seed)
    order = list(range(len(annotated)))
    for _ in range(epochs):
        rng.shuffle(order)
        for idx in order:
            toks, gold = annotated[idx]
            gold = list(gold)
            step += 1
            pred = tag_bio(model, toks)
            if pred == gold:
                continue
            prev_g, prev_p = START, START
            for i in range(len(toks)):
                if pred[i] != gold[i]:
                    for f in token_features(toks, i):
                        bump_f((f, gold[i]), 1.0)
                        bump_f((f, pred[i]), -1.0)
                if (prev_g, gold[i]) != (prev_p, pred[i]):
                    bump_t((prev_g, gold[i]), 1.0)
                    bump_t((prev_p, pred[i]), -1.0)
                prev_g, prev_p = gold[i], pred[i]

    def averaged(weights, totals, stamps):
        out = {}
        for key, w in weights.items():
            avg = (totals[key] + (step - stamps[key]) * w) / max(step, 1)
            if avg != 0.0:
                out[key] = avg
        return out

    return LinearTaggerModel(
        feature_weights=averaged(fw, f_tot, f_stamp),
        transition_weights=averaged(tw, t_tot, t_stamp),
        tags=tagset,
    )


def load_tagged_sentences(path: str) -> list[tuple[list[str], list[str]]]:
    """Read annotated training records: one JSON object per line with
    `tokens` and aligned `tags` arrays."""
    out: list[tuple[list[str], list[str]]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            obj = json.loads(line)
            tokens = [str(t) for t in obj["tokens"]]
            tags = [str(t) for t in obj["tags"]]
            if len(tokens) != len(tags):
                raise ValueError(
                    f"{path}:{lineno}: {len(tokens)} tokens vs {len(tags)} tags")
            out.append((tokens, tags))
    return out


class LearnedTagger:
    """Trigger tagger backed by a trained linear-chain model."""

    def __init__(self, model: LinearTaggerModel):
        self.model = model

    def tag_events(self, sentence: Sentence) -> list[tuple[Span, str]]:
        return decode_bio_spans(tag_bio(self.model, sentence))


def lexicon_tag_events(sentence: Sentence, lexicon: TriggerLexicon) -> list[tuple[Span, str]]:
    return LexiconTagger(lexicon).tag_events(sentence)


# ---------------------------------------------------------------------------
# Argument extraction (stage 2)
# ---------------------------------------------------------------------------

def mark_trigger(tokens: Sequence[str], trigger: Span) -> list[str]:
    s, e = trigger
    return [*tokens[:s], TRIGGER_OPEN, *tokens[s:e], TRIGGER_CLOSE, *tokens[e:]]


def extract_arguments(
    model: LinearTaggerModel, sentence: Sentence | Sequence[str], trigger: Span,
) -> list[ArgumentMention]:
    """Tag the marker-wrapped sentence with the argument-role model and map
    decoded Place/Time spans back to unmarked token indices."""
    tokens = sentence.token_texts() if isinstance(sentence, Sentence) else list(sentence)
    s, e = trigger
    if not (0 <= s < e <= len(tokens)):
        raise ValueError(f"trigger {trigger} outside sentence of {len(tokens)} tokens")
    marked = mark_trigger(tokens, trigger)
    open_at, close_at = s, e + 1

    def unmark(j: int) -> Optional[int]:
        if j == open_at or j == close_at:
            return None
        return j if j < open_at else (j - 1 if j < close_at else j - 2)

    args: list[ArgumentMention] = []
    for (ms, me), role in decode_bio_spans(tag_bio(model, marked)):
        if role not in ARG_ROLES:
            continue
        positions = [p for p in (unmark(j) for j in range(ms, me)) if p is not None]
        if not positions:
            continue
        args.append(ArgumentMention(role=role, span=(min(positions), max(positions) + 1)))
    return args


# ---------------------------------------------------------------------------
# Time resolution
# ---------------------------------------------------------------------------

MONTH_NAMES = {
    "january": 1, "february": 2, "march": 3, "april": 4, "may": 5,
    "june": 6, "july": 7, "august": 8, "september": 9, "october": 10,
    "november": 11, "december": 12,
    "jan": 1, "feb": 2, "mar": 3, "apr": 4, "jun": 6, "jul": 7,
    "aug": 8, "sep": 9, "sept": 9, "oct": 10, "nov": 11, "dec": 12,
}

_YM_RE = re.compile(r"\b(\d{4})-(\d{2})\b")
_NOW_PHRASES = ("today", "this week", "this month", "now")


def resolve_time_to_month(arg_text: str, doc_month: str) -> Optional[str]:
    """Rule-based month resolution relative to the document's publish month.
    Unrecognized expressions resolve to None (a valid outcome)."""
    doc_y, doc_m = months.parse(doc_month)
    text = arg_text.lower().strip()

    m = _YM_RE.search(text)
    if m and 1 <= int(m.group(2)) <= 12:
        return months.fmt(int(m.group(1)), int(m.group(2)))

    words = re.findall(r"[a-z]+|\d{4}", text)
    for i, w in enumerate(words):
        if w in MONTH_NAMES:
            num = MONTH_NAMES[w]
            year = None
            if i + 1 < len(words) and words[i + 1].isdigit():
                year = int(words[i + 1])
            elif i > 0 and words[i - 1].isdigit():
                year = int(words[i - 1])
            if year is not None:
                return months.fmt(year, num)
            # bare month name: latest occurrence not after the publish month
            return months.fmt(doc_y if num <= doc_m else doc_y - 1, num)

    if "last month" in text:
        return months.add(doc_month, -1)
    if "next month" in text:
        return months.add(doc_month, 1)
    if any(p in text for p in _NOW_PHRASES):
        return doc_month
    return None


# ---------------------------------------------------------------------------
# Location resolution
# ---------------------------------------------------------------------------

@dataclass
class Gazetteer:
    # lowercased alias token sequence -> canonical geo id
    aliases: dict[tuple[str, ...], str]

    def max_len(self) -> int:
        return max((len(k) for k in self.aliases), default=0)


def load_gazetteer(path: str) -> Gazetteer:
    """Read `canonical_id TAB alias` lines (one alias per line)."""
    aliases: dict[tuple[str, ...], str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected `id<TAB>alias`")
            geo_id, alias = parts[0].strip(), parts[1].strip()
            toks = tuple(t.lower() for t in tokenize_texts(alias))
            if toks:
                aliases[toks] = geo_id
    return Gazetteer(aliases=aliases)


def resolve_location(arg_text: str, gazetteer: Gazetteer) -> Optional[str]:
    """Case-insensitive longest alias match anywhere in the argument text."""
    toks = [t.lower() for t in tokenize_texts(arg_text)]
    best: Optional[tuple[int, int, str]] = None  # (width, -start, id)
    for width in range(min(gazetteer.max_len(), len(toks)), 0, -1):
        for start in range(len(toks) - width + 1):
            geo = gazetteer.aliases.get(tuple(toks[start:start + width]))
            if geo is not None:
                cand = (width, -start, geo)
                if best is None or cand[:2] > best[:2]:
                    best = cand
        if best is not None:
            break  # widths descend; first hit is the longest
    return best[2] if best else None


# ---------------------------------------------------------------------------
# Full per-document extraction
# ---------------------------------------------------------------------------

def extract_event_mentions(
    doc,
    tagger,
    arg_model: Optional[LinearTaggerModel],
    gazetteer: Optional[Gazetteer],
    inherit_doc_month: bool = True,
) -> list[EventMention]:
    """Run the two-stage pipeline over one segmented document. Triggers come
    from `tagger.tag_events`; arguments only from triggers it produced."""
    out: list[EventMention] = []
    for sent in doc.sentences:
        for span, etype in sorted(tagger.tag_events(sent)):
            mention = EventMention(
                id=mention_id(doc.id, sent.index, span, etype),
                doc_id=doc.id,
                sentence_index=sent.index,
                trigger_span=span,
                event_type=etype,
            )
            if arg_model is not None:
                for arg in extract_arguments(arg_model, sent, span):
                    if arg.role == "Place" and mention.location_arg is None:
                        mention.location_arg = arg
                    elif arg.role == "Time" and mention.time_arg is None:
                        mention.time_arg = arg
            tokens = sent.token_texts()
            if mention.location_arg and gazetteer is not None:
                s, e = mention.location_arg.span
                mention.geo = resolve_location(" ".join(tokens[s:e]), gazetteer)
            if mention.time_arg and doc.published_month:
                s, e = mention.time_arg.span
                mention.month = resolve_time_to_month(
                    " ".join(tokens[s:e]), doc.published_month)
            if mention.month is None and inherit_doc_month:
                mention.month = doc.published_month
            out.append(mention)
    out.sort(key=lambda m: (m.doc_id, m.sentence_index, m.trigger_span[0],
                            m.trigger_span[1], m.event_type))
    return out
