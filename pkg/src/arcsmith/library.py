"""Renders the grid library surface as prompt text.

Code-generation prompts embed the standard library so the model writes
against the real API. The text is produced from the live modules (names,
signatures, docstrings), so the prompt can never drift from the code.
"""

from __future__ import annotations

import inspect

from . import gridlib, symmetry
from .grid import COLOR_NAMES

_GRIDLIB_EXPORTS = (
    gridlib.flood_fill,
    gridlib.draw_line,
    gridlib.find_connected_components,
    gridlib.is_contiguous,
    gridlib.detect_objects,
    gridlib.bounding_box,
    gridlib.crop,
    gridlib.object_position,
    gridlib.blit,
    gridlib.translate,
    gridlib.collision,
    gridlib.contact,
    gridlib.random_free_location,
    gridlib.region_mask,
    gridlib.object_interior,
    gridlib.object_boundary,
    gridlib.object_neighbors,
    gridlib.random_sprite,
    gridlib.scale_pattern,
    gridlib.scatter_points,
    symmetry.detect_translational,
    symmetry.detect_mirror,
    symmetry.detect_rotational,
    symmetry.orbit,
)

_HEADER = '''"""Grid puzzle standard library."""

class Color:
    """The ten cell colors, indices 0-9:
    {names}
    Color.BLACK (0) is the conventional background. Colors are small integers;
    never do arithmetic on them, only compare and look them up.
    """

class Grid:
    """An immutable width x height field of colors.

    Key methods: Grid.from_rows(rows), Grid.filled(w, h, color), g.at(x, y),
    g.with_cell(x, y, color), g.width, g.height, g.transpose(), g.rows().
    (x, y) means column x, row y. All operations return new grids.
    """
'''


def render_library_text() -> str:
    """The `common.py` text embedded in code-generation prompts."""
    parts = [_HEADER.format(names=", ".join(COLOR_NAMES))]
    for fn in _GRIDLIB_EXPORTS:
        sig = inspect.signature(fn)
        doc = inspect.getdoc(fn) or ""
        body = "\n".join(f"    {line}".rstrip() for line in doc.split("\n"))
        parts.append(f'def {fn.__name__}{sig}:\n    """\n{body}\n    """')
    return "\n\n".join(parts) + "\n"
