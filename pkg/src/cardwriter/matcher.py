"""Resolve typed model names against the registry.

Matching is exact on normalized names first, with a normalized-Levenshtein
similarity fallback for near misses (typos, spacing, punctuation). The
similarity metric and the default threshold are tool defaults, not part of
any external standard; the threshold is exposed as a knob everywhere the
matcher is reachable (CLI flag, service config).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .registry import ModelEntry, ModelRegistry

DEFAULT_THRESHOLD = 0.75


class MatchKind(Enum):
    EXACT = "exact"
    FUZZY = "fuzzy"
    NONE = "none"


@dataclass(frozen=True)
class MatchResult:
    """Outcome of resolving one typed name against a registry.

    ``entry`` and ``score`` are present for exact and fuzzy matches and
    absent for misses; an exact match always scores 1.0.
    """

    kind: MatchKind
    query: str
    entry: "ModelEntry | None" = None
    score: float | None = None


def normalize_name(raw: str) -> str:
    """Lowercase ``raw`` and drop every character that is not a letter or digit."""
    return "".join(c for c in raw.lower() if c.isalpha() or c.isdigit())


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance between two strings."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    # Two-row dynamic program; previous holds distances for a[:i].
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            current.append(min(previous[j] + 1,      # delete from a
                               current[j - 1] + 1,   # insert into a
                               previous[j - 1] + cost))
        previous = current
    return previous[-1]


def similarity(a: str, b: str) -> float:
    """Similarity in [0, 1] between two names after normalization.

    Defined as ``1 - lev(na, nb) / max(len(na), len(nb))`` over the
    normalized forms, and 1.0 when both normalize to the empty string.
    """
    na = normalize_name(a)
    nb = normalize_name(b)
    if not na and not nb:
        return 1.0
    return 1.0 - levenshtein(na, nb) / max(len(na), len(nb))


def best_match(registry: "ModelRegistry", query: str,
               threshold: float = DEFAULT_THRESHOLD) -> MatchResult:
    """Resolve ``query`` against ``registry``.

    Exact equality of normalized names wins outright. Otherwise the
    highest-scoring entry at or above ``threshold`` is returned as a fuzzy
    match, ties broken by registry order (first wins). A query that
    normalizes to the empty string never matches.
    """
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"threshold must be in (0, 1], got {threshold!r}")
    nq = normalize_name(query)
    if not nq:
        return MatchResult(kind=MatchKind.NONE, query=query)

    for entry in registry.entries:
        if normalize_name(entry.model) == nq:
            return MatchResult(kind=MatchKind.EXACT, query=query,
                               entry=entry, score=1.0)

    best_entry = None
    best_score = 0.0
    for entry in registry.entries:
        ne = normalize_name(entry.model)
        # nq is non-empty here, so max() is never zero.
        score = 1.0 - levenshtein(nq, ne) / max(len(nq), len(ne))
        if score > best_score:
            best_entry = entry
            best_score = score
    if best_entry is not None and best_score >= threshold:
        return MatchResult(kind=MatchKind.FUZZY, query=query,
                           entry=best_entry, score=best_score)
    return MatchResult(kind=MatchKind.NONE, query=query)
