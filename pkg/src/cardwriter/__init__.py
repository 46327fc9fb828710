"""Cardwriter: generate PaperCard declarations of generative-AI use in writing."""

__version__ = "0.1.0"

from .catalog import CategoryCatalog, UsageCategory, builtin_catalog, load_catalog
from .composer import (
    AccessWindow,
    CardRequest,
    CustomModel,
    DisclaimerSet,
    ModelSelection,
    PaperCard,
    Section,
    SectionKind,
    UrlSpan,
    compose_card,
    compose_no_ai,
    compose_step1,
    compose_step2,
    compose_step3,
    format_date,
    join_list,
    validate_request,
)
from .matcher import (
    DEFAULT_THRESHOLD,
    MatchKind,
    MatchResult,
    best_match,
    normalize_name,
    similarity,
)
from .registry import (
    ModelEntry,
    ModelRegistry,
    builtin_registry,
    load_registry,
    merge,
    serialize_registry,
)
from .renderer import (
    RenderFormat,
    RenderedCard,
    escape_latex,
    escape_markdown,
    render,
)
from .wire import GenerateResult, generate_card, request_from_wire

__all__ = [
    "__version__",
    "AccessWindow",
    "CardRequest",
    "CategoryCatalog",
    "CustomModel",
    "DEFAULT_THRESHOLD",
    "DisclaimerSet",
    "GenerateResult",
    "MatchKind",
    "MatchResult",
    "ModelEntry",
    "ModelRegistry",
    "ModelSelection",
    "PaperCard",
    "RenderFormat",
    "RenderedCard",
    "Section",
    "SectionKind",
    "UrlSpan",
    "UsageCategory",
    "best_match",
    "builtin_catalog",
    "builtin_registry",
    "compose_card",
    "compose_no_ai",
    "compose_step1",
    "compose_step2",
    "compose_step3",
    "escape_latex",
    "escape_markdown",
    "format_date",
    "generate_card",
    "join_list",
    "load_catalog",
    "load_registry",
    "merge",
    "normalize_name",
    "render",
    "request_from_wire",
    "serialize_registry",
    "similarity",
    "validate_request",
]
