"""Parsing of concepts/description comment headers.

Seeds and generated problems carry their intent as a comment block near the
top of the source::

    # concepts:
    # symmetry, occlusion

    # description:
    # In the input you will see ...
    # To make the output ...

The same block format is what the description-sampling prompt asks a model
to produce, so one parser serves both the seed registry and response parsing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class DescriptionParseError(ValueError):
    pass


@dataclass(frozen=True)
class ParsedHeader:
    concepts: tuple[str, ...]
    description: str


def parse_header(source: str) -> ParsedHeader:
    """Extract the concepts/description comment block from program source."""
    concepts = _comment_section(source, "concepts")
    description = _comment_section(source, "description")
    if concepts is None:
        raise DescriptionParseError("missing '# concepts:' header")
    if description is None:
        raise DescriptionParseError("missing '# description:' header")
    concept_list = tuple(
        c.strip() for c in " ".join(concepts).replace("\n", " ").split(",") if c.strip()
    )
    if not concept_list:
        raise DescriptionParseError("empty concepts list")
    text = " ".join(description).strip()
    if not text:
        raise DescriptionParseError("empty description")
    return ParsedHeader(concept_list, text)


def _comment_section(source: str, label: str) -> list[str] | None:
    lines = source.split("\n")
    for i, line in enumerate(lines):
        if re.fullmatch(rf"#\s*{label}\s*:\s*", line.strip()):
            body = []
            for follow in lines[i + 1:]:
                stripped = follow.strip()
                if not stripped.startswith("#"):
                    break
                content = stripped.lstrip("#").strip()
                if re.fullmatch(r"\w+\s*:", content):
                    break
                if content:
                    body.append(content)
            return body
    return None


def render_header(concepts: tuple[str, ...] | list[str], description: str) -> str:
    """Inverse of parse_header, used when prompting for new descriptions."""
    desc_lines = "\n".join(f"# {line}" for line in description.split("\n"))
    return f"# concepts:\n# {', '.join(concepts)}\n\n# description:\n{desc_lines}"
