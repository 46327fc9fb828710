"""Compose a structured PaperCard from a validated card request.

All card text comes from fixed sentence templates filled with user input;
there is no free-form rephrasing. Sections carry url_spans (character
ranges that hold URLs) so renderers can apply format-native URL handling
without re-scanning the text.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from .catalog import UsageCategory
from .errors import (
    IncompleteRequestError,
    InvalidCustomModelError,
    MutualExclusivityError,
    WindowOrderError,
)
from .registry import ModelEntry, format_version_date, is_http_url

NO_AI_SENTENCE = ("The authors did not use any assistance from generative AI "
                  "in writing this manuscript.")
STEP1_PREFIX = ("We used machine assistance for the writing of this manuscript, "
                "especially in ")
DISCLAIMER_SENTENCES = (
    "We own the rights of the generated text and are accountable for potential conflicts.",
    "We believe the AI-generated texts included in this paper do not have elements "
    "that may give rise to ethical issues.",
    "We inspected the texts thoroughly to check for their academic accuracy and plagiarism.",
)


class SectionKind(Enum):
    STEP1 = "step1"
    STEP2 = "step2"
    STEP3 = "step3"
    NO_AI = "no_ai"


@dataclass(frozen=True)
class UrlSpan:
    """Half-open character range [start, end) of ``text`` holding ``href``."""

    start: int
    end: int
    href: str


@dataclass(frozen=True)
class Section:
    """One card paragraph plus the URL ranges inside it."""

    kind: SectionKind
    text: str
    url_spans: tuple[UrlSpan, ...] = ()

    def __post_init__(self):
        last_end = 0
        for span in self.url_spans:
            if not (0 <= span.start < span.end <= len(self.text)):
                raise ValueError(f"url span {span} out of bounds for text of "
                                 f"length {len(self.text)}")
            if span.start < last_end:
                raise ValueError(f"url span {span} overlaps a previous span")
            if self.text[span.start:span.end] != span.href:
                raise ValueError(f"url span {span} does not match its text slice "
                                 f"{self.text[span.start:span.end]!r}")
            last_end = span.end


@dataclass(frozen=True)
class PaperCard:
    """Ordered card sections: [NO_AI] alone, or STEP1, STEP2, optional STEP3."""

    sections: tuple[Section, ...]

    def __post_init__(self):
        kinds = [s.kind for s in self.sections]
        if kinds == [SectionKind.NO_AI]:
            return
        if kinds in ([SectionKind.STEP1, SectionKind.STEP2],
                     [SectionKind.STEP1, SectionKind.STEP2, SectionKind.STEP3]):
            return
        raise ValueError(f"invalid section sequence: {[k.value for k in kinds]}")


@dataclass(frozen=True)
class CustomModel:
    """A model typed by the user that is not (or not acceptably) in the registry.

    Only the name is required; missing fields are simply left out of the
    Step 2 sentence.
    """

    model: str
    provider: str | None = None
    url: str | None = None
    terms: str | None = None
    version: datetime.date | None = None

    def __post_init__(self):
        if not self.model.strip():
            raise InvalidCustomModelError("custom model name must be non-empty")
        for name in ("url", "terms"):
            value = getattr(self, name)
            if value is not None and not is_http_url(value):
                raise InvalidCustomModelError(
                    f"custom model field {name!r} must be an absolute http(s) URL, "
                    f"got {value!r}")


ModelSelection = Union[ModelEntry, CustomModel]


@dataclass(frozen=True)
class DisclaimerSet:
    d1_rights: bool = False
    d2_ethics: bool = False
    d3_integrity: bool = False

    def any(self) -> bool:
        return self.d1_rights or self.d2_ethics or self.d3_integrity


@dataclass(frozen=True)
class AccessWindow:
    """Date range of model access; order is checked by validate_request."""

    from_date: datetime.date
    to_date: datetime.date


@dataclass(frozen=True)
class CardRequest:
    no_ai: bool = False
    steps: tuple[UsageCategory, ...] = ()
    models: tuple[ModelSelection, ...] = ()
    disclaimers: DisclaimerSet = field(default_factory=DisclaimerSet)
    window: AccessWindow | None = None


def validate_request(request: CardRequest) -> CardRequest:
    """Check CardRequest invariants, returning the request unchanged.

    Raises MutualExclusivityError, IncompleteRequestError, or
    WindowOrderError; each carries a stable ``code``.
    """
    if request.no_ai:
        offending = []
        if request.steps:
            offending.append("steps")
        if request.models:
            offending.append("models")
        if request.window is not None:
            offending.append("access window")
        if request.disclaimers.any():
            offending.append("disclaimers")
        if offending:
            raise MutualExclusivityError(
                "a no-AI declaration cannot be combined with "
                + ", ".join(offending))
        return request
    missing = []
    if not request.steps:
        missing.append("steps")
    if not request.models:
        missing.append("models")
    if request.window is None:
        missing.append("access window")
    if missing:
        raise IncompleteRequestError(
            "usage declaration is missing " + ", ".join(missing))
    assert request.window is not None
    if request.window.from_date > request.window.to_date:
        raise WindowOrderError(
            f"access window starts {request.window.from_date.isoformat()} "
            f"after it ends {request.window.to_date.isoformat()}")
    return request


def format_date(date: datetime.date) -> str:
    """Render an access date as DD/MM/YYYY, zero-padded."""
    return f"{date.day:02d}/{date.month:02d}/{date.year:04d}"


def join_list(items: list[str]) -> str:
    """Join phrases for mid-sentence use: 'A', 'A and B', 'A, B, and C'."""
    if not items:
        raise ValueError("cannot join an empty list")
    if any(not item for item in items):
        raise ValueError("cannot join empty items")
    if len(items) == 1:
        return items[0]
    if len(items) == 2:
        return f"{items[0]} and {items[1]}"
    return ", ".join(items[:-1]) + f", and {items[-1]}"


def compose_no_ai() -> Section:
    return Section(kind=SectionKind.NO_AI, text=NO_AI_SENTENCE)


def compose_step1(steps: list[UsageCategory] | tuple[UsageCategory, ...]) -> Section:
    if not steps:
        raise ValueError("compose_step1 requires at least one step")
    text = STEP1_PREFIX + join_list([s.label for s in steps]) + "."
    return Section(kind=SectionKind.STEP1, text=text)


class _SentenceBuilder:
    """Accumulates sentence fragments while tracking URL spans."""

    def __init__(self):
        self._parts: list[str] = []
        self._length = 0
        self.spans: list[UrlSpan] = []

    def add(self, fragment: str) -> None:
        self._parts.append(fragment)
        self._length += len(fragment)

    def add_url(self, href: str) -> None:
        self.spans.append(UrlSpan(start=self._length, end=self._length + len(href),
                                  href=href))
        self.add(href)

    @property
    def text(self) -> str:
        return "".join(self._parts)


def _step2_sentence(selection: ModelSelection, window: AccessWindow) -> _SentenceBuilder:
    if isinstance(selection, ModelEntry):
        name = selection.model
        url: str | None = selection.url
        version: str | None = format_version_date(selection.version)
        provider: str | None = selection.provider
        terms: str | None = selection.terms
    else:
        name = selection.model
        url = selection.url
        version = (format_version_date(selection.version)
                   if selection.version is not None else None)
        provider = selection.provider
        terms = selection.terms

    builder = _SentenceBuilder()
    builder.add(f"We adopted {name}")
    if url is not None:
        builder.add(" (url: ")
        builder.add_url(url)
        builder.add(")")
    if version is not None:
        builder.add(f" version {version}")
    if provider is not None:
        builder.add(f" provided by {provider}")
        # The terms link only makes sense next to its provider.
        if terms is not None:
            builder.add(" (terms of usage: ")
            builder.add_url(terms)
            builder.add(")")
    builder.add(f", accessed from {format_date(window.from_date)} "
                f"to {format_date(window.to_date)}.")
    return builder


def compose_step2(models: list[ModelSelection] | tuple[ModelSelection, ...],
                  window: AccessWindow) -> Section:
    """One filled sentence per model, in input order, joined by single spaces."""
    if not models:
        raise ValueError("compose_step2 requires at least one model")
    parts: list[str] = []
    spans: list[UrlSpan] = []
    offset = 0
    for selection in models:
        if parts:
            parts.append(" ")
            offset += 1
        sentence = _step2_sentence(selection, window)
        parts.append(sentence.text)
        spans.extend(UrlSpan(start=s.start + offset, end=s.end + offset, href=s.href)
                     for s in sentence.spans)
        offset += len(sentence.text)
    return Section(kind=SectionKind.STEP2, text="".join(parts), url_spans=tuple(spans))


def compose_step3(disclaimers: DisclaimerSet) -> Section | None:
    """The selected disclaimer sentences in fixed order, or None if none are set."""
    flags = (disclaimers.d1_rights, disclaimers.d2_ethics, disclaimers.d3_integrity)
    chosen = [sentence for flag, sentence in zip(flags, DISCLAIMER_SENTENCES) if flag]
    if not chosen:
        return None
    return Section(kind=SectionKind.STEP3, text=" ".join(chosen))


def compose_card(request: CardRequest) -> PaperCard:
    """Validate the request and assemble the full card."""
    validate_request(request)
    if request.no_ai:
        return PaperCard(sections=(compose_no_ai(),))
    assert request.window is not None
    sections = [compose_step1(request.steps),
                compose_step2(request.models, request.window)]
    step3 = compose_step3(request.disclaimers)
    if step3 is not None:
        sections.append(step3)
    return PaperCard(sections=tuple(sections))
