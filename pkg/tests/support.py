"""Shared test helpers: independent oracles and seeded corpus generators.

The edit-distance oracle here is written straight from the recursive
definition so it shares no code or algorithmic shape with the two-row
dynamic program in the package.
"""

from __future__ import annotations

import datetime
import random
import string
from functools import lru_cache

from cardwriter.matcher import normalize_name

EDIT_ALPHABET = string.ascii_letters + string.digits + " -."


def oracle_levenshtein(a: str, b: str) -> int:
    """Textbook recursive edit distance (memoized on suffix indices)."""

    @lru_cache(maxsize=None)
    def dist(i: int, j: int) -> int:
        if i == len(a):
            return len(b) - j
        if j == len(b):
            return len(a) - i
        if a[i] == b[j]:
            return dist(i + 1, j + 1)
        return 1 + min(dist(i + 1, j),      # delete a[i]
                       dist(i, j + 1),      # insert b[j]
                       dist(i + 1, j + 1))  # substitute

    return dist(0, 0)


def oracle_similarity(a: str, b: str) -> float:
    na, nb = normalize_name(a), normalize_name(b)
    if not na and not nb:
        return 1.0
    return 1.0 - oracle_levenshtein(na, nb) / max(len(na), len(nb))


def oracle_best(registry, query: str) -> tuple[object | None, float]:
    """Highest-similarity entry under the oracle metric, first-wins ties."""
    best_entry = None
    best_score = 0.0
    for entry in registry.entries:
        score = oracle_similarity(query, entry.model)
        if score > best_score:
            best_entry, best_score = entry, score
    return best_entry, best_score


def perturb(rng: random.Random, name: str, edits: int) -> str:
    """Apply ``edits`` random character edits (insert/delete/substitute)."""
    chars = list(name)
    for _ in range(edits):
        op = rng.choice(("insert", "delete", "substitute"))
        if op == "delete" and chars:
            del chars[rng.randrange(len(chars))]
        elif op == "substitute" and chars:
            chars[rng.randrange(len(chars))] = rng.choice(EDIT_ALPHABET)
        else:
            chars.insert(rng.randrange(len(chars) + 1), rng.choice(EDIT_ALPHABET))
    return "".join(chars)


def perturbation_corpus(registry, *, seed: int, recoverable_target: int,
                        threshold: float):
    """Generate typo-style queries for every registry entry.

    Returns (recoverable, ambiguous): ``recoverable`` holds at least
    ``recoverable_target`` (query, source_entry) pairs whose source stays
    the unique oracle argmax at or above ``threshold``; ``ambiguous``
    holds the generated perturbations that drifted closer to another
    entry or below the threshold, kept so callers can still assert
    implementation/oracle agreement on them.
    """
    rng = random.Random(seed)
    names = [entry.model for entry in registry.entries]
    recoverable: list[tuple[str, object]] = []
    ambiguous: list[str] = []
    while len(recoverable) < recoverable_target:
        source = rng.choice(registry.entries)
        query = perturb(rng, source.model, rng.choice((0, 1, 2)))
        scores = [(oracle_similarity(query, name), name) for name in names]
        best_score = max(score for score, _ in scores)
        top = [name for score, name in scores if score == best_score]
        if best_score >= threshold and top == [source.model]:
            recoverable.append((query, source))
        else:
            ambiguous.append(query)
    return recoverable, ambiguous


def unrelated_names(registry, rng: random.Random, count: int,
                    threshold: float) -> list[str]:
    """Random names verified (by the oracle) to sit below the threshold."""
    names = []
    while len(names) < count:
        candidate = random_word(rng, 8, 14)
        _, score = oracle_best(registry, candidate)
        if score < threshold:
            names.append(candidate)
    return names


def random_word(rng: random.Random, min_len: int = 3, max_len: int = 10) -> str:
    return "".join(rng.choice(string.ascii_lowercase)
                   for _ in range(rng.randint(min_len, max_len)))


def record(model: str, provider: str = "Prov", url: str = "https://example.com/",
           terms: str = "https://example.com/terms",
           version: str = "2024.01.01") -> dict[str, str]:
    return {"model": model, "provider": provider, "url": url,
            "terms": terms, "version": version}


def registry_from_records(records, label: str = "test"):
    import json

    from cardwriter.registry import load_registry
    return load_registry(json.dumps(records), source_label=label)


def random_registry(rng: random.Random, max_entries: int = 8):
    """Build a valid random registry as a list of on-disk records."""
    records = []
    seen = set()
    for _ in range(rng.randint(0, max_entries)):
        while True:
            name = " ".join(random_word(rng) for _ in range(rng.randint(1, 3)))
            if rng.random() < 0.5:
                name = name.title()
            if normalize_name(name) and normalize_name(name) not in seen:
                seen.add(normalize_name(name))
                break
        date = datetime.date(rng.randint(2000, 2030), rng.randint(1, 12),
                             rng.randint(1, 28))
        records.append({
            "model": name,
            "provider": random_word(rng).title(),
            "url": f"https://{random_word(rng)}.example.com/{random_word(rng)}",
            "terms": f"http://{random_word(rng)}.example.org/terms",
            "version": f"{date.year:04d}.{date.month:02d}.{date.day:02d}",
        })
    return records
