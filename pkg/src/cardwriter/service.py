"""Stateless HTTP JSON API over the card engine.

Endpoints (all JSON, UTF-8):

* ``GET  /api/health``      liveness probe
* ``GET  /api/models``      effective registry entries, in order
* ``GET  /api/categories``  usage-category catalog for the Step 1 checkboxes
* ``POST /api/match``       resolve one typed model name
* ``POST /api/generate``    compose and render a card

Structurally malformed bodies get 400; semantically invalid requests
(including unresolvable model names) get 422 with a machine-readable
``code`` plus a human ``message``. All shared state is immutable after
startup, so any request sequence is replayable in any order.
"""

from __future__ import annotations

import argparse
import json
import os

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .catalog import CategoryCatalog, builtin_catalog
from .errors import RequestShapeError, RequestValidationError
from .matcher import DEFAULT_THRESHOLD, MatchKind, best_match
from .registry import (
    ModelRegistry,
    builtin_registry,
    load_registry,
    merge,
)
from .wire import generate_card, parse_format

ADDR_ENV = "CARDWRITER_ADDR"
REGISTRY_ENV = "CARDWRITER_REGISTRY"
THRESHOLD_ENV = "CARDWRITER_MATCH_THRESHOLD"
ORIGIN_ENV = "CARDWRITER_ALLOW_ORIGIN"
DEFAULT_ADDR = "127.0.0.1:8080"


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


async def _json_body(request: Request):
    try:
        return json.loads(await request.body())
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise RequestShapeError(f"body is not valid JSON: {exc}") from None


def create_app(*, registry: ModelRegistry | None = None,
               catalog: CategoryCatalog | None = None,
               threshold: float = DEFAULT_THRESHOLD,
               allow_origin: str | None = None) -> FastAPI:
    """Build the service around an immutable registry/catalog/config triple."""
    effective_registry = registry if registry is not None else builtin_registry()
    effective_catalog = catalog if catalog is not None else builtin_catalog()

    app = FastAPI(title="cardwriter", version="0.1.0", docs_url=None, redoc_url=None)

    if allow_origin:
        from fastapi.middleware.cors import CORSMiddleware
        app.add_middleware(CORSMiddleware, allow_origins=[allow_origin],
                           allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(RequestShapeError)
    async def _shape_error(_request, exc: RequestShapeError):
        return _error_response(400, exc.code, str(exc))

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_request, exc: RequestValidationError):
        return _error_response(422, exc.code, str(exc))

    @app.get("/api/health")
    async def health():
        return {"status": "ok"}

    @app.get("/api/models")
    async def models():
        return [entry.to_record() for entry in effective_registry.entries]

    @app.get("/api/categories")
    async def categories():
        return [{"id": c.id, "label": c.label, "description": c.description}
                for c in effective_catalog.categories]

    @app.post("/api/match")
    async def match(request: Request):
        body = await _json_body(request)
        if not isinstance(body, dict):
            raise RequestShapeError("body must be a JSON object")
        extra = [k for k in body if k not in ("query", "threshold")]
        if extra:
            raise RequestShapeError(f"unexpected field(s) {', '.join(sorted(extra))}")
        if "query" not in body or not isinstance(body["query"], str):
            raise RequestShapeError("field 'query' (string) is required")
        threshold_value = body.get("threshold", threshold)
        if not isinstance(threshold_value, (int, float)) or isinstance(threshold_value, bool):
            raise RequestShapeError("field 'threshold' must be a number")
        if not 0.0 < float(threshold_value) <= 1.0:
            raise RequestShapeError("field 'threshold' must be in (0, 1]")
        result = best_match(effective_registry, body["query"], float(threshold_value))
        payload: dict = {"kind": result.kind.value, "query": result.query}
        if result.kind is not MatchKind.NONE:
            assert result.entry is not None and result.score is not None
            payload["model"] = result.entry.model
            payload["score"] = result.score
            payload["entry"] = result.entry.to_record()
        return payload

    @app.post("/api/generate")
    async def generate(request: Request):
        body = await _json_body(request)
        if not isinstance(body, dict):
            raise RequestShapeError("body must be a JSON object")
        extra = [k for k in body if k not in ("request", "format")]
        if extra:
            raise RequestShapeError(f"unexpected field(s) {', '.join(sorted(extra))}")
        if "request" not in body:
            raise RequestShapeError("field 'request' is required")
        format_token = body.get("format", "plain")
        if not isinstance(format_token, str):
            raise RequestShapeError("field 'format' must be a string")
        fmt = parse_format(format_token)
        result = generate_card(body["request"], fmt, registry=effective_registry,
                               catalog=effective_catalog, threshold=threshold)
        return {
            "card": result.rendered.body,
            "sections": [{"kind": s.kind.value, "text": s.text}
                         for s in result.card.sections],
            "warnings": list(result.warnings),
        }

    return app


def app_from_env() -> FastAPI:
    """Build an app from environment configuration (for uvicorn import strings)."""
    registry = builtin_registry()
    overlay_path = os.environ.get(REGISTRY_ENV)
    if overlay_path:
        with open(overlay_path, "rb") as handle:
            registry = merge(registry, load_registry(handle, source_label=overlay_path))
    threshold = float(os.environ.get(THRESHOLD_ENV, DEFAULT_THRESHOLD))
    return create_app(registry=registry, threshold=threshold,
                      allow_origin=os.environ.get(ORIGIN_ENV) or None)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="cardwriter-serve", description="Run the card-generation HTTP service.")
    parser.add_argument("--addr", default=os.environ.get(ADDR_ENV, DEFAULT_ADDR),
                        help=f"listen address host:port (default: {DEFAULT_ADDR}, "
                             f"env ${ADDR_ENV})")
    parser.add_argument("--registry", default=os.environ.get(REGISTRY_ENV) or None,
                        metavar="PATH", help="overlay registry merged over the builtin "
                                             f"(env ${REGISTRY_ENV})")
    parser.add_argument("--match-threshold", type=float,
                        default=float(os.environ.get(THRESHOLD_ENV, DEFAULT_THRESHOLD)),
                        metavar="T", help="fuzzy-match threshold in (0, 1]")
    parser.add_argument("--allow-origin", default=os.environ.get(ORIGIN_ENV) or None,
                        metavar="ORIGIN", help="CORS origin allowed to call the API "
                                               f"(env ${ORIGIN_ENV})")
    args = parser.parse_args(argv)

    if not 0.0 < args.match_threshold <= 1.0:
        parser.error("--match-threshold must be in (0, 1]")
    host, _, port_text = args.addr.rpartition(":")
    if not host or not port_text.isdigit():
        parser.error("--addr must look like host:port")

    registry = builtin_registry()
    if args.registry:
        with open(args.registry, "rb") as handle:
            registry = merge(registry, load_registry(handle, source_label=args.registry))

    app = create_app(registry=registry, threshold=args.match_threshold,
                     allow_origin=args.allow_origin)

    import uvicorn
    uvicorn.run(app, host=host, port=int(port_text), log_level="info")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
