"""Command-line interface.

Builds a wire-form request from flags or a request file, resolves it
against the effective registry (builtin merged with an optional overlay),
and writes the rendered card to stdout or a file. The card body is the
only thing written to the output stream; warnings and errors go to stderr
with ``warning:`` / ``error:`` prefixes.

Exit codes: 0 success, 1 request validation error, 2 I/O / parse / usage
error, 3 unresolved model name.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .catalog import builtin_catalog
from .errors import (
    CardwriterError,
    CatalogError,
    RegistryError,
    RequestShapeError,
    RequestValidationError,
    UnresolvedModelError,
)
from .matcher import DEFAULT_THRESHOLD
from .registry import builtin_registry, format_version_date, load_registry, merge
from .wire import generate_card, parse_format

REGISTRY_ENV = "CARDWRITER_REGISTRY"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_UNRESOLVED = 3


class _ModelAction(argparse.Action):
    """Collect --model and --model-custom into one ordered list."""

    def __call__(self, parser, namespace, values, option_string=None):
        selections = getattr(namespace, self.dest) or []
        kind = "custom" if option_string == "--model-custom" else "name"
        selections.append((kind, values))
        setattr(namespace, self.dest, selections)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cardwriter",
        description="Generate a PaperCard declaration of generative-AI use.")
    parser.add_argument("--request", metavar="PATH",
                        help="read the request from a JSON file instead of flags")
    parser.add_argument("--registry", metavar="PATH",
                        help="overlay registry file merged over the builtin one "
                             f"(fallback: ${REGISTRY_ENV})")
    parser.add_argument("--format", choices=["plain", "markdown", "latex"],
                        default="plain", help="output format (default: plain)")
    parser.add_argument("--match-threshold", type=float, default=DEFAULT_THRESHOLD,
                        metavar="T", help="fuzzy-match acceptance threshold in (0, 1] "
                                          f"(default: {DEFAULT_THRESHOLD})")
    parser.add_argument("--output", metavar="PATH",
                        help="write the card to this file instead of stdout")
    parser.add_argument("--no-ai", action="store_true", dest="no_ai",
                        help="declare that no generative AI was used")
    parser.add_argument("--step", action="append", dest="steps", metavar="ID",
                        default=None, help="usage-category id; repeatable, order kept")
    parser.add_argument("--model", action=_ModelAction, dest="models", metavar="NAME",
                        default=None, help="model name to resolve against the registry; "
                                           "repeatable, order kept")
    parser.add_argument("--model-custom", action=_ModelAction, dest="models",
                        metavar="JSON", help="custom model record as a JSON object "
                                             '(e.g. \'{"model": "MyLM"}\')')
    parser.add_argument("--d1", action="store_true",
                        help="assert rights/accountability for generated text")
    parser.add_argument("--d2", action="store_true",
                        help="assert the AI text raises no ethical issues")
    parser.add_argument("--d3", action="store_true",
                        help="assert accuracy and plagiarism inspection")
    parser.add_argument("--from", dest="from_date", metavar="DATE",
                        help="access window start (YYYY-MM-DD)")
    parser.add_argument("--to", dest="to_date", metavar="DATE",
                        help="access window end (YYYY-MM-DD)")
    parser.add_argument("--list-models", action="store_true",
                        help="list the effective registry and exit")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    return parser


def _fail(message: str, exit_code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return exit_code


def _load_effective_registry(path: str | None):
    registry = builtin_registry()
    if path is None:
        path = os.environ.get(REGISTRY_ENV) or None
    if path is not None:
        with open(path, "rb") as handle:
            overlay = load_registry(handle, source_label=path)
        registry = merge(registry, overlay)
    return registry


def _inline_flags_used(args: argparse.Namespace) -> bool:
    return bool(args.no_ai or args.steps or args.models or args.d1 or args.d2
                or args.d3 or args.from_date or args.to_date)


def _payload_from_flags(args: argparse.Namespace) -> dict:
    payload: dict = {}
    if args.no_ai:
        payload["no_ai"] = True
    if args.steps:
        payload["steps"] = list(args.steps)
    if args.models:
        models = []
        for kind, value in args.models:
            if kind == "name":
                models.append({"name": value})
            else:
                try:
                    custom = json.loads(value)
                except json.JSONDecodeError as exc:
                    raise RequestShapeError(
                        f"--model-custom is not valid JSON: {exc.msg}") from None
                models.append({"custom": custom})
        payload["models"] = models
    if args.d1 or args.d2 or args.d3:
        payload["disclaimers"] = {"d1": args.d1, "d2": args.d2, "d3": args.d3}
    if args.from_date or args.to_date:
        window = {}
        if args.from_date:
            window["from"] = args.from_date
        if args.to_date:
            window["to"] = args.to_date
        payload["window"] = window
    return payload


def run(args: argparse.Namespace) -> int:
    try:
        registry = _load_effective_registry(args.registry)
    except OSError as exc:
        return _fail(f"cannot read registry: {exc}", EXIT_IO)
    except RegistryError as exc:
        return _fail(str(exc), EXIT_IO)

    if args.list_models:
        for entry in registry.entries:
            print(f"{entry.model}\t{entry.provider}\t{format_version_date(entry.version)}")
        return EXIT_OK

    if args.request is not None:
        try:
            with open(args.request, "rb") as handle:
                payload = json.loads(handle.read().decode("utf-8"))
        except OSError as exc:
            return _fail(f"cannot read request: {exc}", EXIT_IO)
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            return _fail(f"request file is not valid JSON: {exc}", EXIT_IO)
    else:
        try:
            payload = _payload_from_flags(args)
        except RequestShapeError as exc:
            return _fail(str(exc), EXIT_IO)

    try:
        fmt = parse_format(args.format)
        result = generate_card(payload, fmt, registry=registry,
                               catalog=builtin_catalog(),
                               threshold=args.match_threshold)
    except UnresolvedModelError as exc:
        return _fail(str(exc), EXIT_UNRESOLVED)
    except RequestShapeError as exc:
        return _fail(str(exc), EXIT_IO)
    except RequestValidationError as exc:
        return _fail(str(exc), EXIT_VALIDATION)
    except (RegistryError, CatalogError) as exc:
        return _fail(str(exc), EXIT_IO)
    except CardwriterError as exc:
        return _fail(str(exc), EXIT_VALIDATION)

    for warning in result.warnings:
        print(f"warning: {warning}", file=sys.stderr)

    body = result.rendered.body
    if args.output is not None:
        try:
            with open(args.output, "w", encoding="utf-8") as handle:
                handle.write(body)
        except OSError as exc:
            return _fail(f"cannot write output: {exc}", EXIT_IO)
    else:
        sys.stdout.write(body)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.request is not None and _inline_flags_used(args):
        parser.error("--request cannot be combined with inline request flags")
    if not 0.0 < args.match_threshold <= 1.0:
        parser.error("--match-threshold must be in (0, 1]")

    return run(args)


if __name__ == "__main__":
    sys.exit(main())
