"""Grid rendering: SVG files and ANSI terminal output.

Pure functions of their input: fixed palette, fixed cell geometry, no
timestamps, so rendered bytes are stable across runs.
"""

from __future__ import annotations

from .grid import Grid, GridError, Task

#: Display palette, one hex color per cell value.
PALETTE_HEX = (
    "#000000",  # Black
    "#0074D9",  # Blue
    "#FF4136",  # Red
    "#2ECC40",  # Green
    "#FFDC00",  # Yellow
    "#AAAAAA",  # Gray
    "#F012BE",  # Pink
    "#FF851B",  # Orange
    "#7FDBFF",  # Teal
    "#870C25",  # Brown
)

#: xterm-256 background codes approximating the palette.
_ANSI_CODES = (16, 26, 196, 40, 220, 247, 201, 208, 45, 88)

CELL = 20  # SVG pixels per grid cell
GAP = 12   # SVG pixels between grids in a task rendering


def grid_svg_fragment(grid: Grid, ox: int = 0, oy: int = 0) -> list[str]:
    parts = []
    for y in range(grid.height):
        for x in range(grid.width):
            color = PALETTE_HEX[grid.at(x, y)]
            parts.append(
                f'<rect x="{ox + x * CELL}" y="{oy + y * CELL}" width="{CELL}" '
                f'height="{CELL}" fill="{color}" stroke="#555555" stroke-width="1"/>'
            )
    return parts


def render_grid_svg(grid: Grid) -> str:
    body = "\n".join(grid_svg_fragment(grid))
    w, h = grid.width * CELL, grid.height * CELL
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">\n{body}\n</svg>\n'
    )


def render_task_svg(task: Task) -> str:
    """Train pairs as input/output rows, then the test inputs."""
    parts = []
    oy = 0
    width = 0
    for gin, gout in task.train:
        parts.extend(grid_svg_fragment(gin, 0, oy))
        ox = gin.width * CELL + GAP
        parts.extend(grid_svg_fragment(gout, ox, oy))
        width = max(width, ox + gout.width * CELL)
        oy += max(gin.height, gout.height) * CELL + GAP
    for test_in in task.test_inputs:
        parts.extend(grid_svg_fragment(test_in, 0, oy))
        width = max(width, test_in.width * CELL)
        oy += test_in.height * CELL + GAP
    body = "\n".join(parts)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{oy - GAP}" '
        f'viewBox="0 0 {width} {oy - GAP}">\n{body}\n</svg>\n'
    )


def render_grid_ansi(grid: Grid) -> str:
    """Background-colored double-space cells, one line per row."""
    lines = []
    for y in range(grid.height):
        cells = [f"\x1b[48;5;{_ANSI_CODES[grid.at(x, y)]}m  " for x in range(grid.width)]
        lines.append("".join(cells) + "\x1b[0m")
    return "\n".join(lines) + "\n"


def render(target: Grid | Task, fmt: str) -> str:
    if fmt == "svg":
        return render_task_svg(target) if isinstance(target, Task) else render_grid_svg(target)
    if fmt == "ansi":
        if isinstance(target, Task):
            sections = []
            for k, (gin, gout) in enumerate(target.train, start=1):
                sections.append(f"train {k} input:\n{render_grid_ansi(gin)}"
                                f"train {k} output:\n{render_grid_ansi(gout)}")
            for k, test_in in enumerate(target.test_inputs, start=1):
                sections.append(f"test {k} input:\n{render_grid_ansi(test_in)}")
            return "\n".join(sections)
        return render_grid_ansi(target)
    raise GridError(f"unknown render format {fmt!r}")
