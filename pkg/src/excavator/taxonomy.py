"""Event taxonomy: load/validate the type inventory with is_a links, plus a
committee-style clustering assist for proposing new types from phrase
vectors.

Taxonomy file format (diffable, one entry per block):

    type: Lockdown
    description: Government-mandated stay-at-home orders ...
    is_a: PolicyIntervention

`is_a` is optional and comma-separated. Blank lines and #-comments ignored.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .vectors import cosine


class TaxonomyError(Exception):
    pass


@dataclass
class EventType:
    name: str
    description: str = ""
    parents: tuple[str, ...] = ()


@dataclass
class Taxonomy:
    types: dict[str, EventType]
    version: str = "unversioned"

    def __contains__(self, name: str) -> bool:
        return name in self.types

    def names(self) -> list[str]:
        return sorted(self.types)


def _check_acyclic(types: dict[str, EventType]) -> None:
    state: dict[str, int] = {}  # 0 visiting, 1 done

    def visit(name: str, path: list[str]) -> None:
        if state.get(name) == 1:
            return
        if state.get(name) == 0:
            cycle = path[path.index(name):] + [name]
            raise TaxonomyError("is_a cycle: " + " -> ".join(cycle))
        state[name] = 0
        for p in types[name].parents:
            visit(p, path + [name])
        state[name] = 1

    for name in types:
        visit(name, [])


def build_taxonomy(entries: Sequence[EventType], version: str = "unversioned") -> Taxonomy:
    types: dict[str, EventType] = {}
    for et in entries:
        if et.name in types:
            raise TaxonomyError(f"duplicate type {et.name}")
        types[et.name] = et
    for et in entries:
        for p in et.parents:
            if p not in types:
                raise TaxonomyError(f"{et.name} names unknown parent {p}")
    _check_acyclic(types)
    return Taxonomy(types=types, version=version)


def load_taxonomy(path: str) -> Taxonomy:
    """Parse and validate a taxonomy file; dangling parents and is_a cycles
    are fatal."""
    entries: list[EventType] = []
    version = "unversioned"
    cur: dict[str, str] = {}

    def flush() -> None:
        if not cur:
            return
        if "type" not in cur:
            raise TaxonomyError(f"entry without a type name: {cur}")
        parents = tuple(
            p.strip() for p in cur.get("is_a", "").split(",") if p.strip())
        entries.append(EventType(
            name=cur["type"],
            description=cur.get("description", ""),
            parents=parents,
        ))
        cur.clear()

    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                if not line:
                    flush()
                continue
            if ":" not in line:
                raise TaxonomyError(f"unparseable taxonomy line: {line!r}")
            key, val = line.split(":", 1)
            key = key.strip().lower()
            val = val.strip()
            if key == "version":
                version = val
                continue
            if key == "type":
                flush()
            cur[key] = val
    flush()
    return build_taxonomy(entries, version=version)


def ancestors(taxonomy: Taxonomy, name: str) -> set[str]:
    """Transitive closure over is_a parents, excluding the type itself."""
    if name not in taxonomy.types:
        raise KeyError(f"unknown event type {name}")
    out: set[str] = set()
    stack = list(taxonomy.types[name].parents)
    while stack:
        p = stack.pop()
        if p not in out:
            out.add(p)
            stack.extend(taxonomy.types[p].parents)
    return out


# ---------------------------------------------------------------------------
# Clustering assist for taxonomy authoring
# ---------------------------------------------------------------------------

@dataclass
class PhraseVector:
    phrase: str
    vector: np.ndarray


@dataclass
class Cluster:
    centroid: np.ndarray
    members: list[str] = field(default_factory=list)


def discover_event_clusters(
    phrases: Sequence[PhraseVector],
    similarity_threshold: float = 0.5,
    committee_min_size: int = 2,
    top_k: int = 4,
) -> list[Cluster]:
    """Committee-style clustering over phrase vectors.

    1. For each phrase, collect its top_k nearest neighbors by cosine
       similarity (only strictly positive similarities join a committee, so
       unrelated phrases yield singleton candidates).
    2. Score each candidate committee (anchor + neighbors) by average
       pairwise similarity.
    3. Greedily accept committees, best score first, whose centroid stays
       below `similarity_threshold` cosine to every accepted centroid.
    4. Assign every phrase to its most similar accepted centroid.

    Deterministic given input order; output clusters sorted by size
    (descending), ties by first-member input order.
    """
    if len(phrases) < 2:
        raise ValueError("need at least 2 phrases to cluster")
    dims = {p.vector.shape for p in phrases}
    if len(dims) != 1 or len(next(iter(dims))) != 1:
        raise ValueError(f"phrase vectors disagree on dimension: {dims}")
    for p in phrases:
        if not np.all(np.isfinite(p.vector)):
            raise ValueError(f"non-finite vector for {p.phrase!r}")

    n = len(phrases)
    sim = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            sim[i, j] = sim[j, i] = cosine(phrases[i].vector, phrases[j].vector)

    # candidate committees, deduped by member set
    candidates: list[tuple[float, int, frozenset[int]]] = []
    seen: set[frozenset[int]] = set()
    for i in range(n):
        order = sorted(range(n), key=lambda j: (-sim[i, j], j))
        neighbors = [j for j in order if j != i and sim[i, j] > 0.0][:top_k]
        committee = frozenset([i, *neighbors])
        if committee in seen:
            continue
        seen.add(committee)
        members = sorted(committee)
        if len(members) == 1:
            score = 1.0
        else:
            pair_sims = [sim[a, b] for ai, a in enumerate(members)
                         for b in members[ai + 1:]]
            score = float(np.mean(pair_sims))
        candidates.append((score, i, committee))

    min_size = committee_min_size
    sized = [c for c in candidates if len(c[2]) >= min_size]
    if not sized:
        # nothing reaches the requested size; relax to the largest available
        # so the result is still a partition
        biggest = max(len(c[2]) for c in candidates)
        sized = [c for c in candidates if len(c[2]) == biggest]
    sized.sort(key=lambda c: (-c[0], c[1]))

    accepted: list[Cluster] = []
    for _score, _anchor, committee in sized:
        centroid = np.mean([phrases[j].vector for j in sorted(committee)], axis=0)
        if any(cosine(centroid, c.centroid) >= similarity_threshold for c in accepted):
            continue
        accepted.append(Cluster(centroid=centroid))

    for idx, p in enumerate(phrases):
        best_c = max(
            range(len(accepted)),
            key=lambda ci: (cosine(p.vector, accepted[ci].centroid), -ci),
        )
        accepted[best_c].members.append(p.phrase)

    occupied = [c for c in accepted if c.members]
    order_key = {p.phrase: i for i, p in enumerate(phrases)}
    occupied.sort(key=lambda c: (-len(c.members), order_key[c.members[0]]))
    return occupied
