"""Wire-form card requests: the JSON shape shared by the CLI and the service.

A request document looks like::

    {
      "no_ai": false,
      "steps": ["paraphrasing"],
      "models": [{"name": "GPT-4"}, {"custom": {"model": "MyLM"}}],
      "disclaimers": {"d1": true, "d2": false, "d3": true},
      "window": {"from": "2024-02-13", "to": "2024-02-20"}
    }

Every key is optional; the schema is strict (unknown keys rejected).
Model selections are either ``{"name": ...}``, resolved against the
registry (exact or fuzzy, fuzzy adds a warning), or ``{"custom": {...}}``
with the name required and everything else optional.

Structural problems raise RequestShapeError; semantic ones raise
RequestValidationError subclasses. Both the CLI and the service funnel
through generate_card, so their outputs are byte-identical by construction.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass
from typing import Any, Mapping

from .catalog import CategoryCatalog
from .composer import (
    AccessWindow,
    CardRequest,
    CustomModel,
    DisclaimerSet,
    ModelSelection,
    PaperCard,
    compose_card,
    validate_request,
)
from .errors import (
    InvalidCustomModelError,
    MutualExclusivityError,
    RequestShapeError,
    UnknownStepError,
    UnresolvedModelError,
)
from .matcher import MatchKind, best_match
from .registry import ModelRegistry, parse_version_date
from .renderer import RenderFormat, RenderedCard, render

REQUEST_KEYS = ("no_ai", "steps", "models", "disclaimers", "window")
CUSTOM_MODEL_KEYS = ("model", "provider", "url", "terms", "version")
DISCLAIMER_KEYS = ("d1", "d2", "d3")

NO_DISCLAIMER_WARNING = ("no disclaimers selected; the card will not include "
                         "a Step 3 section")


def fuzzy_warning(query: str, model: str, score: float) -> str:
    return f'model "{query}" fuzzy-matched ({score:.3f}) to "{model}"'


def parse_format(token: str) -> RenderFormat:
    for fmt in RenderFormat:
        if fmt.value == token:
            return fmt
    expected = ", ".join(f.value for f in RenderFormat)
    raise RequestShapeError(f"unknown format {token!r}; expected one of {expected}")


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise RequestShapeError(message)


def _check_keys(obj: Mapping, allowed: tuple[str, ...], where: str) -> None:
    extra = [k for k in obj if k not in allowed]
    if extra:
        raise RequestShapeError(f"{where}: unexpected field(s) {', '.join(sorted(extra))}")


def _parse_iso_date(value: Any, where: str) -> datetime.date:
    _require(isinstance(value, str), f"{where} must be a string (YYYY-MM-DD)")
    try:
        return datetime.date.fromisoformat(value)
    except ValueError:
        raise RequestShapeError(f"{where}: {value!r} is not a valid ISO date "
                                "(YYYY-MM-DD)") from None


def _parse_custom_model(obj: Any) -> CustomModel:
    _require(isinstance(obj, dict), "custom model must be an object")
    _check_keys(obj, CUSTOM_MODEL_KEYS, "custom model")
    _require("model" in obj, "custom model: missing field 'model'")
    fields: dict[str, Any] = {}
    for key in CUSTOM_MODEL_KEYS:
        value = obj.get(key)
        if value is None:
            continue
        _require(isinstance(value, str), f"custom model: field {key!r} must be a string")
        fields[key] = value
    version = fields.pop("version", None)
    if version is not None:
        try:
            fields["version"] = parse_version_date(version)
        except ValueError as exc:
            raise InvalidCustomModelError(f"custom model: {exc}") from None
    return CustomModel(**fields)


def _resolve_model(obj: Any, index: int, registry: ModelRegistry,
                   threshold: float, warnings: list[str]) -> ModelSelection:
    where = f"models[{index}]"
    _require(isinstance(obj, dict), f"{where} must be an object")
    keys = set(obj)
    if keys == {"name"}:
        name = obj["name"]
        _require(isinstance(name, str), f"{where}: field 'name' must be a string")
        result = best_match(registry, name, threshold)
        if result.kind is MatchKind.NONE:
            raise UnresolvedModelError(
                f"model name {name!r} did not match any registry entry "
                f"(threshold {threshold})")
        assert result.entry is not None and result.score is not None
        if result.kind is MatchKind.FUZZY:
            warnings.append(fuzzy_warning(name, result.entry.model, result.score))
        return result.entry
    if keys == {"custom"}:
        return _parse_custom_model(obj["custom"])
    raise RequestShapeError(
        f"{where} must have exactly one of the keys 'name' or 'custom'")


def _parse_disclaimers(obj: Any) -> DisclaimerSet:
    if obj is None:
        return DisclaimerSet()
    _require(isinstance(obj, dict), "'disclaimers' must be an object")
    _check_keys(obj, DISCLAIMER_KEYS, "disclaimers")
    values = {}
    for key in DISCLAIMER_KEYS:
        value = obj.get(key, False)
        _require(isinstance(value, bool), f"disclaimers: field {key!r} must be a boolean")
        values[key] = value
    return DisclaimerSet(d1_rights=values["d1"], d2_ethics=values["d2"],
                         d3_integrity=values["d3"])


def _parse_window(obj: Any) -> AccessWindow | None:
    if obj is None:
        return None
    _require(isinstance(obj, dict), "'window' must be an object")
    _check_keys(obj, ("from", "to"), "window")
    _require("from" in obj and "to" in obj,
             "window requires both 'from' and 'to' dates")
    return AccessWindow(from_date=_parse_iso_date(obj["from"], "window.from"),
                        to_date=_parse_iso_date(obj["to"], "window.to"))


def request_from_wire(payload: Any, *, registry: ModelRegistry,
                      catalog: CategoryCatalog,
                      threshold: float) -> tuple[CardRequest, list[str]]:
    """Parse, resolve, and validate a wire-form request.

    Returns the validated CardRequest and any non-fatal warnings (fuzzy
    resolutions, missing disclaimers).
    """
    _require(isinstance(payload, dict), "request must be a JSON object")
    _check_keys(payload, REQUEST_KEYS, "request")

    no_ai = payload.get("no_ai", False)
    _require(isinstance(no_ai, bool), "'no_ai' must be a boolean")
    raw_steps = payload.get("steps", [])
    _require(isinstance(raw_steps, list), "'steps' must be an array of category ids")
    raw_models = payload.get("models", [])
    _require(isinstance(raw_models, list), "'models' must be an array of selections")
    disclaimers = _parse_disclaimers(payload.get("disclaimers"))
    window = _parse_window(payload.get("window"))

    if no_ai:
        # Checked before name resolution so the conflict is reported even
        # when the extra input would itself fail to resolve.
        offending = []
        if raw_steps:
            offending.append("steps")
        if raw_models:
            offending.append("models")
        if window is not None:
            offending.append("access window")
        if disclaimers.any():
            offending.append("disclaimers")
        if offending:
            raise MutualExclusivityError(
                "a no-AI declaration cannot be combined with "
                + ", ".join(offending))

    warnings: list[str] = []
    steps = []
    seen_ids = set()
    for i, step_id in enumerate(raw_steps):
        _require(isinstance(step_id, str), f"steps[{i}] must be a string id")
        if step_id in seen_ids:
            raise RequestShapeError(f"steps[{i}]: duplicate step id {step_id!r}")
        seen_ids.add(step_id)
        category = catalog.find(step_id)
        if category is None:
            known = ", ".join(catalog.ids())
            raise UnknownStepError(f"unknown step id {step_id!r}; known ids: {known}")
        steps.append(category)

    models = [_resolve_model(obj, i, registry, threshold, warnings)
              for i, obj in enumerate(raw_models)]

    request = CardRequest(no_ai=no_ai, steps=tuple(steps), models=tuple(models),
                          disclaimers=disclaimers, window=window)
    validate_request(request)
    if not no_ai and not disclaimers.any():
        warnings.append(NO_DISCLAIMER_WARNING)
    return request, warnings


@dataclass(frozen=True)
class GenerateResult:
    rendered: RenderedCard
    card: PaperCard
    warnings: tuple[str, ...]


def generate_card(payload: Any, fmt: RenderFormat, *, registry: ModelRegistry,
                  catalog: CategoryCatalog, threshold: float) -> GenerateResult:
    """The one shared path from wire request to rendered card."""
    request, warnings = request_from_wire(payload, registry=registry,
                                          catalog=catalog, threshold=threshold)
    card = compose_card(request)
    return GenerateResult(rendered=render(card, fmt), card=card,
                          warnings=tuple(warnings))
