"""Usage-category catalog: the checkbox set behind the card's Step 1.

The shipped set below is a configurable default, not a fixed standard;
deployments can load their own catalog file (UTF-8 JSON array of objects
with exactly the keys ``id``, ``label``, ``description``). Labels are
stored lowercase because they are inserted mid-sentence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO, Iterable

from .errors import CatalogParseError, CatalogValidationError

CATEGORY_FIELDS = ("id", "label", "description")

_BUILTIN_CATEGORIES = [
    {
        "id": "idea-generation",
        "label": "idea generation",
        "description": "Generative AI proposed or refined ideas, framings, or outlines.",
    },
    {
        "id": "literature-search",
        "label": "literature search",
        "description": "Generative AI helped find, summarise, or screen related work.",
    },
    {
        "id": "drafting",
        "label": "drafting",
        "description": "Generative AI produced draft text that was then revised.",
    },
    {
        "id": "paraphrasing",
        "label": "paraphrasing",
        "description": "Generative AI reworded existing text while keeping its meaning.",
    },
    {
        "id": "editing-and-proofreading",
        "label": "editing and proofreading",
        "description": "Generative AI corrected grammar, spelling, or style.",
    },
    {
        "id": "translation",
        "label": "translation",
        "description": "Generative AI translated text between languages.",
    },
    {
        "id": "code-generation",
        "label": "code generation",
        "description": "Generative AI wrote or completed code used in the work.",
    },
]


@dataclass(frozen=True)
class UsageCategory:
    """One way generative AI assisted the writing, selectable in Step 1."""

    id: str
    label: str
    description: str


@dataclass(frozen=True)
class CategoryCatalog:
    categories: tuple[UsageCategory, ...]

    def find(self, category_id: str) -> UsageCategory | None:
        for category in self.categories:
            if category.id == category_id:
                return category
        return None

    def ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.categories)


def _category_from_record(record: object, where: str) -> UsageCategory:
    if not isinstance(record, dict):
        raise CatalogValidationError(f"{where}: expected an object, got {type(record).__name__}")
    missing = [k for k in CATEGORY_FIELDS if k not in record]
    if missing:
        raise CatalogValidationError(f"{where}: missing field(s) {', '.join(missing)}")
    extra = [k for k in record if k not in CATEGORY_FIELDS]
    if extra:
        raise CatalogValidationError(f"{where}: unexpected field(s) {', '.join(sorted(extra))}")
    for key in CATEGORY_FIELDS:
        if not isinstance(record[key], str):
            raise CatalogValidationError(
                f"{where}: field {key!r} must be a string, got {type(record[key]).__name__}")
    if not record["id"].strip():
        raise CatalogValidationError(f"{where}: field 'id' must be non-empty")
    if not record["label"].strip():
        raise CatalogValidationError(f"{where}: field 'label' must be non-empty")
    return UsageCategory(id=record["id"], label=record["label"],
                         description=record["description"])


def _build_catalog(categories: Iterable[UsageCategory]) -> CategoryCatalog:
    seen: set[str] = set()
    out = []
    for category in categories:
        if category.id in seen:
            raise CatalogValidationError(f"duplicate category id {category.id!r}")
        seen.add(category.id)
        out.append(category)
    return CategoryCatalog(categories=tuple(out))


def load_catalog(source: bytes | str | IO) -> CategoryCatalog:
    """Load and validate a catalog document from bytes, text, or a file object."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            text = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CatalogParseError(f"catalog is not valid UTF-8: {exc.reason}") from None
    else:
        text = source
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogParseError(
            f"catalog is not valid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}"
        ) from None
    if not isinstance(data, list):
        raise CatalogValidationError(
            f"catalog document must be a JSON array, got {type(data).__name__}")
    categories = [_category_from_record(r, f"category {i + 1}") for i, r in enumerate(data)]
    return _build_catalog(categories)


def builtin_catalog() -> CategoryCatalog:
    """The default seven-category catalog."""
    return _build_catalog(
        _category_from_record(r, f"builtin category {i + 1}")
        for i, r in enumerate(_BUILTIN_CATEGORIES)
    )


def serialize_catalog(catalog: CategoryCatalog) -> bytes:
    records = [{"id": c.id, "label": c.label, "description": c.description}
               for c in catalog.categories]
    return (json.dumps(records, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
