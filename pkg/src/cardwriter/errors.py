"""Exception hierarchy shared by the library, the CLI, and the HTTP service.

Every error carries a stable ``code`` string so callers (CLI exit paths,
the service's 422 responses) can map failures without parsing messages.
"""

from __future__ import annotations


class CardwriterError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"


class RegistryError(CardwriterError):
    """Problem with a model-registry document."""

    code = "registry_error"


class RegistryParseError(RegistryError):
    """Registry bytes are not valid JSON (or not UTF-8)."""

    code = "registry_parse"

    def __init__(self, message: str, *, line: int | None = None,
                 column: int | None = None, position: int | None = None):
        self.line = line
        self.column = column
        self.position = position
        where = ""
        if line is not None and column is not None:
            where = f" at line {line} column {column}"
        elif position is not None:
            where = f" at byte {position}"
        super().__init__(f"{message}{where}")


class RegistryValidationError(RegistryError):
    """A registry record violates the entry schema."""

    code = "registry_invalid"


class DuplicateModelError(RegistryError):
    """Two registry records share the same normalized model name."""

    code = "duplicate_model"


class CatalogError(CardwriterError):
    """Problem with a usage-category catalog document."""

    code = "catalog_error"


class CatalogParseError(CatalogError):
    code = "catalog_parse"


class CatalogValidationError(CatalogError):
    code = "catalog_invalid"


class RequestError(CardwriterError):
    """Problem with a card request."""

    code = "request_error"


class RequestShapeError(RequestError):
    """The wire form of a request is structurally malformed.

    Distinct from semantic validation: shape errors map to HTTP 400 and
    CLI exit 2, semantic errors to HTTP 422 and CLI exit 1.
    """

    code = "malformed_request"


class RequestValidationError(RequestError):
    """A structurally sound request violates a semantic invariant."""

    code = "invalid_request"


class MutualExclusivityError(RequestValidationError):
    """The no-AI declaration was combined with usage input."""

    code = "mutually_exclusive"


class IncompleteRequestError(RequestValidationError):
    """A usage declaration is missing steps, models, or the access window."""

    code = "incomplete_request"


class WindowOrderError(RequestValidationError):
    """The access window ends before it starts."""

    code = "window_order"


class UnknownStepError(RequestValidationError):
    """A step id is not present in the usage-category catalog."""

    code = "unknown_step"


class InvalidCustomModelError(RequestValidationError):
    """A custom model entry has an empty name or malformed fields."""

    code = "invalid_custom_model"


class UnresolvedModelError(RequestValidationError):
    """A typed model name matched nothing in the registry."""

    code = "unresolved_model"
