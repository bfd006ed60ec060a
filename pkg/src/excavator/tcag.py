"""Aggregate event and relation mentions into the analysis graph.

Nodes are event types (counts of surviving mentions), edges are
Causes/Mitigates/Before groups plus dashed IsA links mirroring direct
taxonomy parents among the present nodes. Display scalars use ln(1+count)
so count 0 maps to 0 and ordering is preserved. Export is canonical JSON
("tcag/1"): sorted keys, nodes by type, edges by (kind, left, right),
byte-stable across runs.
"""

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .extraction import EventMention
from .relations import RelationMention
from .taxonomy import Taxonomy

SCHEMA_VERSION = "tcag/1"

FOCUS_BLUE = "blue"  # the focused node
FOCUS_ORANGE = "orange"  # causes/precedes the focused node
FOCUS_GREEN = "green"  # caused/preceded by the focused node
FOCUS_NEUTRAL = "neutral"


@dataclass(frozen=True)
class FilterSpec:
    geo: Optional[str] = None
    month: Optional[str] = None
    min_edge_count: int = 1
    strict: bool = False  # drop mentions lacking a filtered attribute


@dataclass
class TcagNode:
    event_type: str
    mention_count: int

    @property
    def display_size(self) -> float:
        return math.log1p(self.mention_count)


@dataclass
class TcagEdge:
    kind: str  # Causes | Mitigates | Before | IsA
    left: str
    right: str
    count: int
    style: str  # solid | dashed

    @property
    def display_thickness(self) -> float:
        return math.log1p(self.count)


@dataclass
class Tcag:
    nodes: list[TcagNode]
    edges: list[TcagEdge]
    filter: FilterSpec
    generated_at: str
    corpus_version: str

    def node_types(self) -> set[str]:
        return {n.event_type for n in self.nodes}


def mention_passes(mention: EventMention, spec: FilterSpec) -> bool:
    """Lenient by default: a mention lacking the filtered attribute survives;
    strict mode drops it."""
    if spec.geo is not None:
        if mention.geo is None:
            if spec.strict:
                return False
        elif mention.geo != spec.geo:
            return False
    if spec.month is not None:
        if mention.month is None:
            if spec.strict:
                return False
        elif mention.month != spec.month:
            return False
    return True


def build_tcag(
    mentions: Sequence[EventMention],
    relations: Sequence[RelationMention],
    taxonomy: Taxonomy,
    spec: FilterSpec = FilterSpec(),
    generated_at: str = "",
    corpus_version: str = "",
) -> Tcag:
    surviving = {m.id: m for m in mentions if mention_passes(m, spec)}

    node_counts: dict[str, int] = {}
    for m in surviving.values():
        node_counts[m.event_type] = node_counts.get(m.event_type, 0) + 1

    edge_counts: dict[tuple[str, str, str], int] = {}
    for rel in relations:
        left = surviving.get(rel.left_event)
        right = surviving.get(rel.right_event)
        if left is None or right is None:
            continue
        key = (rel.type, left.event_type, right.event_type)
        edge_counts[key] = edge_counts.get(key, 0) + 1

    nodes = [TcagNode(event_type=t, mention_count=c)
             for t, c in sorted(node_counts.items())]
    edges = [
        TcagEdge(kind=k, left=l, right=r, count=c, style="solid")
        for (k, l, r), c in sorted(edge_counts.items())
        if c >= spec.min_edge_count
    ]

    present = set(node_counts)
    for child in sorted(present):
        if child not in taxonomy.types:
            continue
        for parent in sorted(taxonomy.types[child].parents):
            if parent in present:
                edges.append(TcagEdge(kind="IsA", left=child, right=parent,
                                      count=0, style="dashed"))

    edges.sort(key=lambda e: (e.kind, e.left, e.right))
    return Tcag(nodes=nodes, edges=edges, filter=spec,
                generated_at=generated_at, corpus_version=corpus_version)


def assign_focus_colors(tcag: Tcag, focused: str) -> dict[str, str]:
    """Color roles for single-event analysis: focused blue, upstream
    (sources of Causes/Before — and Mitigates, treated alike — edges into
    the focus) orange, downstream green; a node that is both ends up orange.
    IsA edges do not color."""
    types = tcag.node_types()
    if focused not in types:
        raise KeyError(f"focused event type {focused!r} not in graph")
    upstream: set[str] = set()
    downstream: set[str] = set()
    for edge in tcag.edges:
        if edge.kind == "IsA":
            continue
        if edge.right == focused and edge.left != focused:
            upstream.add(edge.left)
        if edge.left == focused and edge.right != focused:
            downstream.add(edge.right)
    roles = {}
    for t in sorted(types):
        if t == focused:
            roles[t] = FOCUS_BLUE
        elif t in upstream:  # upstream wins when both
            roles[t] = FOCUS_ORANGE
        elif t in downstream:
            roles[t] = FOCUS_GREEN
        else:
            roles[t] = FOCUS_NEUTRAL
    return roles


def tcag_to_dict(tcag: Tcag) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "generated_at": tcag.generated_at,
        "corpus_version": tcag.corpus_version,
        "filter": {
            "geo": tcag.filter.geo,
            "month": tcag.filter.month,
            "min_edge_count": tcag.filter.min_edge_count,
            "strict": tcag.filter.strict,
        },
        "nodes": [
            {
                "event_type": n.event_type,
                "mention_count": n.mention_count,
                "display_size": n.display_size,
            }
            for n in sorted(tcag.nodes, key=lambda n: n.event_type)
        ],
        "edges": [
            {
                "kind": e.kind,
                "left": e.left,
                "right": e.right,
                "count": e.count,
                "display_thickness": e.display_thickness,
                "style": e.style,
            }
            for e in sorted(tcag.edges, key=lambda e: (e.kind, e.left, e.right))
        ],
    }


def export_tcag_json(tcag: Tcag) -> bytes:
    """Canonical, byte-stable JSON export."""
    doc = tcag_to_dict(tcag)
    return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8")
