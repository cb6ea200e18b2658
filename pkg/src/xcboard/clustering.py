"""Structuring large boards: tokenization, Jaccard similarity, leader clustering.

The clustering algorithm is greedy leader clustering over the board's total
order: walking items by seq, each item joins the earliest-created cluster
whose *representative* (the founding, lowest-seq member) is similar enough,
otherwise it founds a new cluster.  This is O(items x clusters) worst case
and order-stable; an inverted token index prunes candidate clusters without
changing the result, since a similarity above a positive threshold requires
at least one shared token.
"""

from __future__ import annotations

import re
import unicodedata
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .resources import load_stopwords
from .session import BoardItem

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

_default_stopwords: frozenset[str] | None = None


def _stopwords() -> frozenset[str]:
    global _default_stopwords
    if _default_stopwords is None:
        _default_stopwords = load_stopwords()
    return _default_stopwords


@dataclass(frozen=True)
class TokenVector:
    seq: int
    tokens: Counter


@dataclass(frozen=True)
class Cluster:
    cluster_id: str
    member_seqs: tuple[int, ...]
    representative_seq: int


def tokenize(text: str, stopwords: frozenset[str] | None = None) -> Counter:
    """Normalize text to a token multiset.

    Pipeline: Unicode NFC, lowercase, split on non-alphanumeric runs, drop
    length-1 tokens, drop stop tokens.  Pass ``stopwords=frozenset()`` to
    disable the stop list.
    """
    if stopwords is None:
        stopwords = _stopwords()
    normalized = unicodedata.normalize("NFC", text).lower()
    return Counter(
        t for t in _TOKEN_RE.findall(normalized) if len(t) >= 2 and t not in stopwords
    )


def vectorize(item: BoardItem, stopwords: frozenset[str] | None = None) -> TokenVector:
    return TokenVector(seq=item.seq, tokens=tokenize(_caption(item), stopwords))


def _caption(item: BoardItem) -> str:
    # image bodies are asset references, not prose; they cluster as empty text
    return item.body if item.kind == "text" else ""


def _jaccard(a: frozenset, b: frozenset) -> float:
    if not a and not b:
        return 0.0
    inter = len(a & b)
    if inter == 0:
        return 0.0
    return inter / (len(a) + len(b) - inter)


def similarity(a: TokenVector, b: TokenVector) -> float:
    """Jaccard coefficient over the two token sets; empty vs empty is 0."""
    return _jaccard(frozenset(a.tokens), frozenset(b.tokens))


def cluster(
    items: Sequence[BoardItem],
    threshold: float,
    stopwords: frozenset[str] | None = None,
) -> list[Cluster]:
    """Partition items into clusters by greedy leader assignment in seq order."""
    if not 0 < threshold <= 1:
        raise ValueError(f"threshold must be in (0, 1], got {threshold}")
    if stopwords is None:
        stopwords = _stopwords()

    rep_tokens: list[frozenset] = []  # by cluster creation index
    rep_seqs: list[int] = []
    members: list[list[int]] = []
    token_index: dict[str, list[int]] = {}

    for item in sorted(items, key=lambda i: i.seq):
        tokens = frozenset(tokenize(_caption(item), stopwords))
        size = len(tokens)
        candidates = sorted({ci for t in tokens for ci in token_index.get(t, ())})
        joined = None
        for ci in candidates:
            rep = rep_tokens[ci]
            # Jaccard can't reach the threshold if the sizes are too far apart
            if min(size, len(rep)) < threshold * max(size, len(rep)):
                continue
            if _jaccard(tokens, rep) >= threshold:
                joined = ci
                break
        if joined is None:
            joined = len(rep_tokens)
            rep_tokens.append(tokens)
            rep_seqs.append(item.seq)
            members.append([])
            for t in tokens:
                token_index.setdefault(t, []).append(joined)
        members[joined].append(item.seq)

    return [
        Cluster(
            cluster_id=f"c{ci + 1}",
            member_seqs=tuple(member_list),
            representative_seq=rep_seqs[ci],
        )
        for ci, member_list in enumerate(members)
    ]


def near_duplicates(
    items: Sequence[BoardItem],
    threshold: float,
    stopwords: frozenset[str] | None = None,
) -> list[Cluster]:
    """Clusters with at least two members, under the same greedy assignment."""
    return [c for c in cluster(items, threshold, stopwords) if len(c.member_seqs) >= 2]


def clusters_to_doc(clusters: Iterable[Cluster], threshold: float) -> dict:
    return {
        "threshold": threshold,
        "clusters": [
            {
                "cluster_id": c.cluster_id,
                "representative_seq": c.representative_seq,
                "member_seqs": list(c.member_seqs),
            }
            for c in clusters
        ],
    }
