"""Render a composed card as plain text, Markdown, or LaTeX.

Layout is fixed: a "PaperCard" heading, one paragraph per section, a
single blank line between paragraphs, and a trailing newline. URLs are
never escaped or broken; they go through each format's native mechanism
(bare, ``[url](url)``, ``\\url{url}``) so links survive copy-paste intact.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .composer import PaperCard, Section

HEADING = "PaperCard"
LATEX_PREAMBLE_NOTE = "% requires \\usepackage{url} or hyperref"

_LATEX_ESCAPES = {
    "#": "\\#",
    "$": "\\$",
    "%": "\\%",
    "&": "\\&",
    "_": "\\_",
    "{": "\\{",
    "}": "\\}",
    "\\": "\\textbackslash{}",
    "~": "\\textasciitilde{}",
    "^": "\\textasciicircum{}",
}
_LATEX_TABLE = str.maketrans({k: v for k, v in _LATEX_ESCAPES.items()})

_MARKDOWN_SPECIALS = "*_[]()#`\\"
_MARKDOWN_TABLE = str.maketrans({c: f"\\{c}" for c in _MARKDOWN_SPECIALS})


class RenderFormat(Enum):
    PLAIN = "plain"
    MARKDOWN = "markdown"
    LATEX = "latex"


@dataclass(frozen=True)
class RenderedCard:
    format: RenderFormat
    body: str
    heading: str = HEADING


def escape_latex(text: str) -> str:
    """Escape LaTeX special characters; call only on non-URL segments."""
    return text.translate(_LATEX_TABLE)


def escape_markdown(text: str) -> str:
    """Backslash-escape Markdown punctuation; call only on non-URL segments."""
    return text.translate(_MARKDOWN_TABLE)


def _segments(section: Section):
    """Split section text into (is_url, piece) runs following url_spans."""
    cursor = 0
    for span in section.url_spans:
        if span.start > cursor:
            yield False, section.text[cursor:span.start]
        yield True, span.href
        cursor = span.end
    if cursor < len(section.text):
        yield False, section.text[cursor:]


def _section_plain(section: Section) -> str:
    return section.text


def _section_markdown(section: Section) -> str:
    return "".join(f"[{piece}]({piece})" if is_url else escape_markdown(piece)
                   for is_url, piece in _segments(section))


def _section_latex(section: Section) -> str:
    return "".join(f"\\url{{{piece}}}" if is_url else escape_latex(piece)
                   for is_url, piece in _segments(section))


def render(card: PaperCard, format: RenderFormat) -> RenderedCard:
    """Produce the full card body in the requested format."""
    if format is RenderFormat.PLAIN:
        head = HEADING
        paragraphs = [_section_plain(s) for s in card.sections]
    elif format is RenderFormat.MARKDOWN:
        head = f"## {HEADING}"
        paragraphs = [_section_markdown(s) for s in card.sections]
    elif format is RenderFormat.LATEX:
        head = f"{LATEX_PREAMBLE_NOTE}\n\\subsection*{{{HEADING}}}"
        paragraphs = [_section_latex(s) for s in card.sections]
    else:
        raise ValueError(f"unknown render format: {format!r}")
    body = head + "\n\n" + "\n\n".join(paragraphs) + "\n"
    return RenderedCard(format=format, body=body, heading=HEADING)
