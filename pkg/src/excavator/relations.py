"""Causal/temporal relation extraction between same-sentence event pairs.

Two extractors feed one union: a pattern engine (lexical token templates and
predicate-argument "proposition" patterns over SVO-style triples) and a
pooled-pair linear classifier over pluggable token vectors. Subtypes merge
to the three display types; the union is deduplicated by (left, right, type)
keeping the highest-confidence contributor's subtype.
"""

import json
import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .corpus import Document, Sentence, tokenize_texts
from .extraction import EventMention, Span

SUBTYPE_TO_TYPE = {
    "Cause": "Causes",
    "Catalyst": "Causes",
    "Precondition": "Causes",
    "Mitigation": "Mitigates",
    "Preventative": "Mitigates",
    "BeforeAfter": "Before",
}
SUBTYPES = tuple(SUBTYPE_TO_TYPE)
RELATION_TYPES = ("Causes", "Mitigates", "Before")
NO_RELATION = "NoRelation"
# Documented label order for the pair classifier (ties resolve to the
# earliest entry, so an untrained model predicts NoRelation).
CLASSIFIER_LABELS = (NO_RELATION, *SUBTYPES)


def merge_subtype_to_type(subtype: str) -> str:
    return SUBTYPE_TO_TYPE[subtype]


@dataclass
class Evidence:
    doc_id: str
    sentence_index: int
    text: str


@dataclass
class RelationMention:
    id: str
    type: str
    subtype: str
    left_event: str  # EventMention id (relation X)
    right_event: str  # EventMention id (relation Y)
    evidence: Evidence
    provenance: tuple[str, ...]
    confidence: float


def relation_id(left_event: str, right_event: str, rtype: str, subtype: str) -> str:
    return f"{left_event}|{right_event}|{rtype}|{subtype}"


def relation_to_dict(r: RelationMention) -> dict:
    return {
        "id": r.id,
        "type": r.type,
        "subtype": r.subtype,
        "left_event": r.left_event,
        "right_event": r.right_event,
        "evidence": {
            "doc_id": r.evidence.doc_id,
            "sentence_index": r.evidence.sentence_index,
            "text": r.evidence.text,
        },
        "provenance": list(r.provenance),
        "confidence": r.confidence,
    }


def relation_from_dict(d: dict) -> RelationMention:
    ev = d["evidence"]
    return RelationMention(
        id=d["id"],
        type=d["type"],
        subtype=d["subtype"],
        left_event=d["left_event"],
        right_event=d["right_event"],
        evidence=Evidence(ev["doc_id"], ev["sentence_index"], ev["text"]),
        provenance=tuple(d["provenance"]),
        confidence=d["confidence"],
    )


# ---------------------------------------------------------------------------
# Patterns
# ---------------------------------------------------------------------------

class PatternError(Exception):
    pass


@dataclass
class Pattern:
    kind: str  # "lexical" | "proposition"
    subtype: str
    source: str
    # lexical: tokens strictly between the two slots, lowercased, and
    # whether the surface-first slot is the relation's X (left)
    interior: tuple[str, ...] = ()
    x_first: bool = True
    # proposition: predicate lemma plus the roles binding X and Y
    predicate: str = ""
    role_x: str = ""
    role_y: str = ""


_PROP_BODY_RE = re.compile(
    r"^(?P<pred>[a-z][a-z_-]*)"
    r"\[(?P<r1>[a-z_]+)=(?P<s1>[XY])\]"
    r"\s*\[(?P<r2>[a-z_]+)=(?P<s2>[XY])\]$"
)


def compile_pattern(source: str) -> Pattern:
    """Parse one pattern line.

    Grammar:
        lexical: <tokens with one X and one Y at the ends> => <Subtype>
        prop: <predicate>[<role>=X][<role>=Y] => <Subtype>
    """
    line = source.strip()
    if "=>" not in line:
        raise PatternError(f"missing `=> Subtype`: {source!r}")
    head, subtype = line.rsplit("=>", 1)
    subtype = subtype.strip()
    if subtype not in SUBTYPE_TO_TYPE:
        raise PatternError(f"unknown subtype {subtype!r} in {source!r}")
    if ":" not in head:
        raise PatternError(f"missing `lexical:`/`prop:` prefix: {source!r}")
    kind, body = head.split(":", 1)
    kind = kind.strip().lower()
    body = body.strip()

    if kind == "lexical":
        toks = tokenize_texts(body)
        slots = [i for i, t in enumerate(toks) if t in ("X", "Y")]
        if len(slots) != 2 or {toks[slots[0]], toks[slots[1]]} != {"X", "Y"}:
            raise PatternError(f"lexical pattern needs exactly one X and one Y: {source!r}")
        if slots[0] != 0 or slots[1] != len(toks) - 1:
            raise PatternError(
                f"lexical pattern must start and end with its slots: {source!r}")
        interior = tuple(t.lower() for t in toks[1:-1])
        return Pattern(kind="lexical", subtype=subtype, source=line,
                       interior=interior, x_first=toks[0] == "X")

    if kind == "prop":
        m = _PROP_BODY_RE.match(body)
        if not m:
            raise PatternError(f"unparseable proposition pattern: {source!r}")
        if {m.group("s1"), m.group("s2")} != {"X", "Y"}:
            raise PatternError(f"proposition pattern needs one X and one Y: {source!r}")
        role_x = m.group("r1") if m.group("s1") == "X" else m.group("r2")
        role_y = m.group("r2") if m.group("s2") == "Y" else m.group("r1")
        return Pattern(kind="proposition", subtype=subtype, source=line,
                       predicate=m.group("pred"), role_x=role_x, role_y=role_y)

    raise PatternError(f"unknown pattern kind {kind!r} in {source!r}")


def load_patterns(path: str) -> list[Pattern]:
    patterns = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                patterns.append(compile_pattern(line))
            except PatternError as err:
                raise PatternError(f"{path}:{lineno}: {err}") from err
    return patterns


# ---------------------------------------------------------------------------
# SVO-style proposition triples
# ---------------------------------------------------------------------------

CAUSAL_TEMPORAL_VERBS = frozenset("""
cause lead result trigger spark fuel drive force prompt create produce
generate induce provoke bring yield increase boost raise amplify worsen
exacerbate aggravate deepen escalate accelerate reduce decrease lower curb
ease alleviate mitigate prevent avert block halt stop suppress contain limit
slow delay follow precede predate foreshadow herald threaten undermine
disrupt strain overwhelm devastate cripple hamper hinder improve hurt damage
begin start end stem contribute enable require
""".split())

_IRREGULAR = {
    "led": "lead", "brought": "bring", "began": "begin", "begun": "begin",
    "drove": "drive", "driven": "drive", "overcame": "overcome",
}

_STOP_WORDS = frozenset("""
the a an this that these those its their his her our your my such both each
every either neither all some any no more most several few many much other
another and or but as is are am was were be been being has have had having
will would can could may might must shall should do does did done not also
very too still already again often
""".split())

_PREPS = frozenset("""
in of to by with from for on at into over under between among during across
amid against toward towards after before since until within throughout
""".split())


def verb_lemma(token: str) -> Optional[str]:
    """Lexicon lemma for a verb-like token, else None."""
    w = token.lower()
    if w in _IRREGULAR:
        w = _IRREGULAR[w]
    if w in CAUSAL_TEMPORAL_VERBS:
        return w
    for suffix in ("ing", "ed", "es", "d", "s"):
        if w.endswith(suffix) and len(w) > len(suffix) + 2:
            stem = w[: -len(suffix)]
            candidates = [stem, stem + "e"]
            if len(stem) > 2 and stem[-1] == stem[-2]:
                candidates.append(stem[:-1])  # stopped -> stop
            for cand in candidates:
                if cand in CAUSAL_TEMPORAL_VERBS:
                    return cand
    return None


@dataclass
class PropositionGraph:
    # (predicate span, role, argument span) in token indices
    triples: list[tuple[Span, str, Span]] = field(default_factory=list)


def _is_content(tok: str) -> bool:
    return tok.isalpha() and tok.lower() not in _STOP_WORDS \
        and tok.lower() not in _PREPS and verb_lemma(tok) is None


def _content_run_left(tokens: Sequence[str], pos: int) -> Optional[Span]:
    """Nearest noun-phrase-like run left of `pos`; prepositional chunks are
    skipped so `the lockdown in California <verb>` resolves to the lockdown."""
    j = pos - 1
    while j >= 0:
        tok = tokens[j]
        if not tok.isalpha():
            return None  # clause boundary
        if _is_content(tok):
            k = j
            while k - 1 >= 0 and _is_content(tokens[k - 1]):
                k -= 1
            p = k - 1
            while p >= 0 and tokens[p].lower() in _STOP_WORDS:
                p -= 1
            if p >= 0 and tokens[p].lower() in _PREPS:
                j = p - 1  # run was a PP object; keep scanning left
                continue
            return (k, j + 1)
        j -= 1
    return None


def _content_run_right(tokens: Sequence[str], pos: int) -> Optional[tuple[Span, Optional[str]]]:
    """Nearest run right of `pos`, hopping over at most one preposition;
    returns (span, preposition or None)."""
    j = pos
    prep: Optional[str] = None
    while j < len(tokens):
        tok = tokens[j]
        if not tok.isalpha():
            return None
        low = tok.lower()
        if low in _PREPS:
            if prep is not None:
                return None
            prep = low
            j += 1
            continue
        if _is_content(tok):
            k = j
            while k + 1 < len(tokens) and _is_content(tokens[k + 1]):
                k += 1
            return ((j, k + 1), prep)
        j += 1
    return None


def extract_svo_propositions(sentence: Sentence) -> PropositionGraph:
    """Heuristic subject/object/prep_* triples around causal/temporal verbs.
    Precomputed triples attached to the sentence are returned verbatim."""
    if sentence.propositions is not None:
        return PropositionGraph(triples=[
            ((ps, pe), role, (as_, ae))
            for ps, pe, role, as_, ae in sentence.propositions
        ])
    tokens = sentence.token_texts()
    graph = PropositionGraph()
    for i, tok in enumerate(tokens):
        if verb_lemma(tok) is None:
            continue
        pred = (i, i + 1)
        subj = _content_run_left(tokens, i)
        if subj is not None:
            graph.triples.append((pred, "subject", subj))
        right = _content_run_right(tokens, i + 1)
        if right is not None:
            obj, prep = right
            role = f"prep_{prep}" if prep else "object"
            graph.triples.append((pred, role, obj))
    return graph


# ---------------------------------------------------------------------------
# Pattern matching over event pairs
# ---------------------------------------------------------------------------

def _spans_overlap(a: Span, b: Span) -> bool:
    return a[0] < b[1] and b[0] < a[1]


def match_patterns(
    doc: Document,
    sentence: Sentence,
    events: Sequence[EventMention],
    patterns: Sequence[Pattern],
    props: Optional[PropositionGraph] = None,
) -> list[RelationMention]:
    """Apply compiled patterns to every event pair in one sentence.

    Lexical templates compare the token sequence strictly between a
    surface-ordered pair against the template interior; proposition patterns
    need a triple whose predicate lemma matches and whose role-bound
    arguments overlap the two event spans. Matches carry confidence 1.0.
    """
    if props is None:
        props = extract_svo_propositions(sentence)
    lower = [t.lowercase for t in sentence.tokens]
    evidence = Evidence(
        doc_id=doc.id,
        sentence_index=sentence.index,
        text=sentence.text(doc.body),
    )

    # predicate spans with their lemmas/surface forms, for proposition matching
    pred_keys: dict[Span, set[str]] = {}
    for pred, _role, _arg in props.triples:
        if pred not in pred_keys:
            keys = set()
            for t in lower[pred[0]:pred[1]]:
                keys.add(t)
                lemma = verb_lemma(t)
                if lemma:
                    keys.add(lemma)
            pred_keys[pred] = keys

    out: list[RelationMention] = []
    seen: set[tuple[str, str, str]] = set()

    def emit(left: EventMention, right: EventMention, subtype: str) -> None:
        if left.id == right.id:
            return
        key = (left.id, right.id, subtype)
        if key in seen:
            return
        seen.add(key)
        rtype = merge_subtype_to_type(subtype)
        out.append(RelationMention(
            id=relation_id(left.id, right.id, rtype, subtype),
            type=rtype,
            subtype=subtype,
            left_event=left.id,
            right_event=right.id,
            evidence=evidence,
            provenance=("pattern",),
            confidence=1.0,
        ))

    ordered = sorted(events, key=lambda m: m.trigger_span)
    for i, first in enumerate(ordered):
        for second in ordered[i + 1:]:
            if first.trigger_span[1] > second.trigger_span[0]:
                continue  # overlapping spans have no inter-span sequence
            inter = tuple(lower[first.trigger_span[1]:second.trigger_span[0]])
            for pat in patterns:
                if pat.kind != "lexical" or inter != pat.interior:
                    continue
                if pat.x_first:
                    emit(first, second, pat.subtype)
                else:
                    emit(second, first, pat.subtype)

    for a in ordered:
        for b in ordered:
            if a.id == b.id:
                continue
            for pat in patterns:
                if pat.kind != "proposition":
                    continue
                hit = any(
                    pat.predicate in pred_keys[pred]
                    and role == pat.role_x
                    and _spans_overlap(arg, a.trigger_span)
                    and any(
                        p2 == pred and r2 == pat.role_y
                        and _spans_overlap(a2, b.trigger_span)
                        for p2, r2, a2 in props.triples
                    )
                    for pred, role, arg in props.triples
                )
                if hit:
                    emit(a, b, pat.subtype)
    return out


# ---------------------------------------------------------------------------
# Pooled-pair classifier
# ---------------------------------------------------------------------------

def mention_pool(token_vectors: np.ndarray, span: Span) -> np.ndarray:
    """Element-wise mean of the token vectors inside `span`."""
    s, e = span
    if not (0 <= s < e <= len(token_vectors)):
        raise ValueError(f"empty or out-of-range span {span} for {len(token_vectors)} vectors")
    return np.mean(token_vectors[s:e], axis=0)


def pair_representation(v1: np.ndarray, v2: np.ndarray) -> np.ndarray:
    """Concatenation (v1, v2, |v1 - v2|)."""
    if v1.shape != v2.shape:
        raise ValueError(f"dimension mismatch: {v1.shape} vs {v2.shape}")
    return np.concatenate([v1, v2, np.abs(v1 - v2)])


def softmax(scores: np.ndarray) -> np.ndarray:
    shifted = scores - np.max(scores)
    exp = np.exp(shifted)
    return exp / exp.sum()


@dataclass
class RelationClassifier:
    weights: np.ndarray  # (num labels, 3 * dim)
    bias: np.ndarray  # (num labels,)
    labels: tuple[str, ...] = CLASSIFIER_LABELS

    @classmethod
    def zeros(cls, dim: int, labels: tuple[str, ...] = CLASSIFIER_LABELS) -> "RelationClassifier":
        return cls(np.zeros((len(labels), 3 * dim)), np.zeros(len(labels)), labels)


def classify_pair(clf: RelationClassifier, rep: np.ndarray) -> tuple[str, float]:
    """Softmax over linear scores; returns (argmax label, its probability).
    Ties resolve to the earliest label in clf.labels."""
    if rep.shape != (clf.weights.shape[1],):
        raise ValueError(f"rep dim {rep.shape} does not match classifier {clf.weights.shape}")
    probs = softmax(clf.weights @ rep + clf.bias)
    idx = int(np.argmax(probs))
    return clf.labels[idx], float(probs[idx])


def train_relation_classifier(
    reps: np.ndarray,
    labels: Sequence[str],
    label_set: tuple[str, ...] = CLASSIFIER_LABELS,
    epochs: int = 50,
    lr: float = 5.0,
) -> RelationClassifier:
    """Full-batch softmax regression from zero init; deterministic."""
    if len(reps) == 0:
        raise ValueError("empty training set")
    if len(reps) != len(labels):
        raise ValueError("reps and labels misaligned")
    n, d = reps.shape
    idx = {lab: i for i, lab in enumerate(label_set)}
    y = np.zeros((n, len(label_set)))
    for row, lab in enumerate(labels):
        y[row, idx[lab]] = 1.0
    w = np.zeros((len(label_set), d))
    b = np.zeros(len(label_set))
    for _ in range(epochs):
        scores = reps @ w.T + b
        scores -= scores.max(axis=1, keepdims=True)
        exp = np.exp(scores)
        p = exp / exp.sum(axis=1, keepdims=True)
        grad = (p - y) / n
        w -= lr * (grad.T @ reps)
        b -= lr * grad.sum(axis=0)
    return RelationClassifier(weights=w, bias=b, labels=label_set)


@dataclass
class RelationInstance:
    """One labeled training example: a sentence with two mention spans."""

    tokens: list[str]
    left_span: Span
    right_span: Span
    label: str  # a subtype or NoRelation


def load_relation_instances(path: str) -> list[RelationInstance]:
    """Read relation training records: one JSON object per line with
    `tokens`, `left_span`, `right_span`, `label`."""
    out: list[RelationInstance] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            obj = json.loads(line)
            label = str(obj["label"])
            if label not in CLASSIFIER_LABELS:
                raise ValueError(f"{path}:{lineno}: unknown label {label!r}")
            out.append(RelationInstance(
                tokens=[str(t) for t in obj["tokens"]],
                left_span=(obj["left_span"][0], obj["left_span"][1]),
                right_span=(obj["right_span"][0], obj["right_span"][1]),
                label=label,
            ))
    return out


def train_from_instances(
    instances: Sequence[RelationInstance],
    provider,
    epochs: int = 50,
    lr: float = 5.0,
) -> RelationClassifier:
    """Pool each instance's span pair through the provider and fit the
    softmax classifier on the stacked representations."""
    reps = []
    for inst in instances:
        vecs = provider.token_vectors(inst.tokens)
        reps.append(pair_representation(
            mention_pool(vecs, inst.left_span),
            mention_pool(vecs, inst.right_span)))
    return train_relation_classifier(
        np.stack(reps), [i.label for i in instances], epochs=epochs, lr=lr)


class NeuralRelationExtractor:
    """Pooled-pair extractor over a token-vector provider. Classifies every
    ordered same-sentence event pair; NoRelation predictions are suppressed."""

    def __init__(self, provider, classifier: RelationClassifier):
        self.provider = provider
        self.classifier = classifier

    def pair_rep(self, tokens: Sequence[str], left: Span, right: Span) -> np.ndarray:
        vecs = self.provider.token_vectors(list(tokens))
        return pair_representation(mention_pool(vecs, left), mention_pool(vecs, right))

    def extract(
        self, doc: Document, sentence: Sentence, events: Sequence[EventMention],
    ) -> list[RelationMention]:
        if len(events) < 2:
            return []
        tokens = sentence.token_texts()
        vecs = self.provider.token_vectors(tokens)
        evidence = Evidence(doc.id, sentence.index, sentence.text(doc.body))
        out: list[RelationMention] = []
        ordered = sorted(events, key=lambda m: m.trigger_span)
        for a in ordered:
            for b in ordered:
                if a.id == b.id:
                    continue
                rep = pair_representation(
                    mention_pool(vecs, a.trigger_span),
                    mention_pool(vecs, b.trigger_span))
                label, prob = classify_pair(self.classifier, rep)
                if label == NO_RELATION:
                    continue
                rtype = merge_subtype_to_type(label)
                out.append(RelationMention(
                    id=relation_id(a.id, b.id, rtype, label),
                    type=rtype,
                    subtype=label,
                    left_event=a.id,
                    right_event=b.id,
                    evidence=evidence,
                    provenance=("neural",),
                    confidence=prob,
                ))
        return out


# ---------------------------------------------------------------------------
# Union
# ---------------------------------------------------------------------------

def union_and_dedup(
    pattern_out: Sequence[RelationMention],
    neural_out: Sequence[RelationMention],
    mentions: Optional[dict[str, EventMention]] = None,
) -> list[RelationMention]:
    """Union both extractors' outputs; duplicates keyed by
    (left_event, right_event, type) merge with provenance union and max
    confidence, keeping the higher-confidence contributor's subtype (ties
    prefer pattern provenance, then the earliest subtype in SUBTYPES order,
    so the merge is commutative in its two inputs)."""
    groups: dict[tuple[str, str, str], list[tuple[float, int, int, int, RelationMention]]] = {}
    for pos, rel in enumerate([*pattern_out, *neural_out]):
        key = (rel.left_event, rel.right_event, rel.type)
        pattern_first = 1 if "pattern" in rel.provenance else 0
        rank = -SUBTYPES.index(rel.subtype)
        groups.setdefault(key, []).append((rel.confidence, pattern_first, rank, -pos, rel))

    merged: list[RelationMention] = []
    for (left, right, rtype), contributors in groups.items():
        contributors.sort(key=lambda c: c[:4], reverse=True)
        best = contributors[0][4]
        provenance = tuple(sorted({p for *_, r in contributors for p in r.provenance}))
        merged.append(RelationMention(
            id=relation_id(left, right, rtype, best.subtype),
            type=rtype,
            subtype=best.subtype,
            left_event=left,
            right_event=right,
            evidence=best.evidence,
            provenance=provenance,
            confidence=max(c[0] for c in contributors),
        ))

    def sort_key(rel: RelationMention):
        lm = mentions.get(rel.left_event) if mentions else None
        rm = mentions.get(rel.right_event) if mentions else None
        return (rel.evidence.doc_id, rel.evidence.sentence_index,
                lm.trigger_span if lm else (0, 0),
                rm.trigger_span if rm else (0, 0),
                rel.type, rel.left_event, rel.right_event)

    merged.sort(key=sort_key)
    return merged
