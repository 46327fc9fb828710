"""Model-metadata registry: the dictionary backing the card's Step 2.

A registry is an ordered, immutable list of model records. The on-disk
form is a UTF-8 JSON array of flat objects with exactly the keys
``model``, ``provider``, ``url``, ``terms``, ``version`` (all strings,
``version`` in ``YYYY.MM.DD``). The schema is strict so community-edited
files fail loudly on typos. Registries merge overlay-wins, which lets a
local file correct stale builtin data.
"""

from __future__ import annotations

import datetime
import json
import re
from dataclasses import dataclass, field
from typing import IO, Iterable
from urllib.parse import urlsplit

from .errors import DuplicateModelError, RegistryParseError, RegistryValidationError
from .matcher import normalize_name

ENTRY_FIELDS = ("model", "provider", "url", "terms", "version")
VERSION_RE = re.compile(r"^\d{4}\.\d{2}\.\d{2}$")

# Seed data: the five models the tool ships with. Community updates go
# through overlay files (see merge), never through edits to requests.
_BUILTIN_RECORDS = [
    {
        "model": "GPT-3.5",
        "provider": "OpenAI",
        "url": "https://openai.com/chatgpt",
        "terms": "https://openai.com/policies/terms-of-use",
        "version": "2024.02.13",
    },
    {
        "model": "GPT-4",
        "provider": "OpenAI",
        "url": "https://chat.openai.com/",
        "terms": "https://openai.com/policies/terms-of-use",
        "version": "2024.02.13",
    },
    {
        "model": "Gemini",
        "provider": "Google",
        "url": "https://gemini.google.com/",
        "terms": "https://policies.google.com/terms",
        "version": "2024.02.08",
    },
    {
        "model": "Claude 3 Sonnet",
        "provider": "Anthropic",
        "url": "https://claude.ai/chat/",
        "terms": "https://www.anthropic.com/legal/consumer-terms",
        "version": "2024.03.04",
    },
    {
        "model": "Claude 3 Opus",
        "provider": "Anthropic",
        "url": "https://claude.ai/chat/",
        "terms": "https://www.anthropic.com/legal/consumer-terms",
        "version": "2024.03.04",
    },
]


def is_http_url(value: str) -> bool:
    """True when ``value`` is an absolute URL with an http or https scheme."""
    parts = urlsplit(value)
    return parts.scheme in ("http", "https") and bool(parts.netloc)


def parse_version_date(value: str) -> datetime.date:
    """Parse a ``YYYY.MM.DD`` version date, rejecting impossible dates."""
    if not VERSION_RE.match(value):
        raise ValueError(f"version {value!r} does not match YYYY.MM.DD")
    year, month, day = value.split(".")
    return datetime.date(int(year), int(month), int(day))


def format_version_date(value: datetime.date) -> str:
    return f"{value.year:04d}.{value.month:02d}.{value.day:02d}"


@dataclass(frozen=True)
class ModelEntry:
    """One dictionary record: name, provider, service URL, terms URL, version date."""

    model: str
    provider: str
    url: str
    terms: str
    version: datetime.date

    def __post_init__(self):
        if not self.model.strip():
            raise RegistryValidationError("field 'model' must be non-empty")
        if not self.provider.strip():
            raise RegistryValidationError("field 'provider' must be non-empty")
        for name in ("url", "terms"):
            value = getattr(self, name)
            if not is_http_url(value):
                raise RegistryValidationError(
                    f"field {name!r} must be an absolute http(s) URL, got {value!r}")

    def to_record(self) -> dict[str, str]:
        return {
            "model": self.model,
            "provider": self.provider,
            "url": self.url,
            "terms": self.terms,
            "version": format_version_date(self.version),
        }


@dataclass(frozen=True)
class ModelRegistry:
    """Immutable, ordered collection of entries with unique normalized names.

    ``source_label`` records provenance for diagnostics only; it is
    excluded from equality so a round-trip through bytes compares equal.
    """

    entries: tuple[ModelEntry, ...]
    source_label: str = field(default="unlabeled", compare=False)

    def find(self, model_name: str) -> ModelEntry | None:
        """Return the entry whose normalized name equals the query's, if any."""
        wanted = normalize_name(model_name)
        for entry in self.entries:
            if normalize_name(entry.model) == wanted:
                return entry
        return None


def _entry_from_record(record: object, where: str) -> ModelEntry:
    if not isinstance(record, dict):
        raise RegistryValidationError(f"{where}: expected an object, got {type(record).__name__}")
    label = record.get("model") if isinstance(record.get("model"), str) else None
    name = f"{where} ({label!r})" if label else where
    missing = [k for k in ENTRY_FIELDS if k not in record]
    if missing:
        raise RegistryValidationError(f"{name}: missing field(s) {', '.join(missing)}")
    extra = [k for k in record if k not in ENTRY_FIELDS]
    if extra:
        raise RegistryValidationError(f"{name}: unexpected field(s) {', '.join(sorted(extra))}")
    for key in ENTRY_FIELDS:
        if not isinstance(record[key], str):
            raise RegistryValidationError(
                f"{name}: field {key!r} must be a string, got {type(record[key]).__name__}")
    try:
        version = parse_version_date(record["version"])
    except ValueError as exc:
        raise RegistryValidationError(f"{name}: {exc}") from None
    try:
        return ModelEntry(model=record["model"], provider=record["provider"],
                          url=record["url"], terms=record["terms"], version=version)
    except RegistryValidationError as exc:
        raise RegistryValidationError(f"{name}: {exc}") from None


def _build_registry(entries: Iterable[ModelEntry], source_label: str) -> ModelRegistry:
    seen: dict[str, ModelEntry] = {}
    out = []
    for entry in entries:
        key = normalize_name(entry.model)
        if key in seen:
            raise DuplicateModelError(
                f"duplicate model name: {entry.model!r} collides with "
                f"{seen[key].model!r} (both normalize to {key!r})")
        seen[key] = entry
        out.append(entry)
    return ModelRegistry(entries=tuple(out), source_label=source_label)


def load_registry(source: bytes | str | IO, source_label: str = "stream") -> ModelRegistry:
    """Load and validate a registry document from bytes, text, or a file object."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            text = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise RegistryParseError(f"registry is not valid UTF-8: {exc.reason}",
                                     position=exc.start) from None
    else:
        text = source
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RegistryParseError(f"registry is not valid JSON: {exc.msg}",
                                 line=exc.lineno, column=exc.colno,
                                 position=exc.pos) from None
    if not isinstance(data, list):
        raise RegistryValidationError(
            f"registry document must be a JSON array, got {type(data).__name__}")
    entries = [_entry_from_record(record, f"entry {i + 1}") for i, record in enumerate(data)]
    return _build_registry(entries, source_label)


def builtin_registry() -> ModelRegistry:
    """The compiled-in seed registry (five models)."""
    entries = [_entry_from_record(r, f"builtin entry {i + 1}")
               for i, r in enumerate(_BUILTIN_RECORDS)]
    return _build_registry(entries, "builtin")


def merge(base: ModelRegistry, overlay: ModelRegistry) -> ModelRegistry:
    """Combine two registries, overlay-wins.

    Base order is preserved; an overlay entry whose normalized name exists
    in the base replaces it in place, the rest are appended in overlay order.
    """
    overlay_by_key = {normalize_name(e.model): e for e in overlay.entries}
    merged: list[ModelEntry] = []
    for entry in base.entries:
        key = normalize_name(entry.model)
        merged.append(overlay_by_key.pop(key, entry))
    for entry in overlay.entries:
        key = normalize_name(entry.model)
        if key in overlay_by_key:
            merged.append(overlay_by_key.pop(key))
    label = f"{base.source_label}+{overlay.source_label}"
    return ModelRegistry(entries=tuple(merged), source_label=label)


def serialize_registry(registry: ModelRegistry) -> bytes:
    """Emit the on-disk JSON form; inverse of load_registry field-for-field."""
    records = [entry.to_record() for entry in registry.entries]
    return (json.dumps(records, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
