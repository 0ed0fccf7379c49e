"""Grid and sprite primitives: fill, lines, components, blitting, placement.

A "sprite" is just a Grid whose background-colored cells (Black by default)
are transparent to blitting and collision. Everything here is pure: grids in,
new grids out, with randomness only through an explicit random.Random handle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from . import kernels
from .grid import Color, Grid, GridError

Sprite = Grid

_OFFSETS_4 = ((1, 0), (-1, 0), (0, 1), (0, -1))
_OFFSETS_8 = _OFFSETS_4 + ((1, 1), (1, -1), (-1, 1), (-1, -1))

SPRITE_SYMMETRIES = ("horizontal", "vertical", "diagonal", "radial", "not_symmetric")


def _offsets(connectivity: int) -> tuple[tuple[int, int], ...]:
    if connectivity == 4:
        return _OFFSETS_4
    if connectivity == 8:
        return _OFFSETS_8
    raise GridError(f"connectivity must be 4 or 8, got {connectivity}")


@dataclass(frozen=True)
class Mask:
    """A boolean field aligned with a source grid."""

    width: int
    height: int
    bits: bytes

    def get(self, x: int, y: int) -> bool:
        return self.bits[y * self.width + x] != 0

    def coords(self) -> Iterator[tuple[int, int]]:
        """Positions where the mask is set."""
        for idx, b in enumerate(self.bits):
            if b:
                yield idx % self.width, idx // self.width

    def count(self) -> int:
        return sum(1 for b in self.bits if b)


# -- filling and drawing -----------------------------------------------------


def flood_fill(grid: Grid, x: int, y: int, color: int, connectivity: int = 4) -> Grid:
    """Recolor the connected region containing (x, y).

    The region is defined by the color originally at (x, y); connectivity is
    4 (cardinal) or 8 (cardinal + diagonal).
    """
    if not grid.in_bounds(x, y):
        raise GridError(f"fill seed ({x}, {y}) out of bounds")
    _offsets(connectivity)
    cells = kernels.flood_fill(grid.cells, grid.width, grid.height, x, y, int(color), connectivity)
    return Grid(grid.width, grid.height, cells)


def draw_line(
    grid: Grid,
    x: int,
    y: int,
    *,
    end: tuple[int, int] | None = None,
    length: int | None = None,
    direction: tuple[int, int] | None = None,
    color: int,
    stop_at_colors: Sequence[int] = (),
) -> Grid:
    """Color cells along a ray from (x, y).

    Give either an end point (on the same row, column, or 45-degree
    diagonal) or a direction with elements in {-1, 0, 1}; with a direction
    and no length the line runs until the grid edge. The walk stops before
    any cell whose current color is in stop_at_colors.

    Example: a 3-cell diagonal from the corner::

        draw_line(grid, 0, 0, length=3, direction=(1, 1), color=Color.BLUE)
    """
    if not grid.in_bounds(x, y):
        raise GridError(f"line start ({x}, {y}) out of bounds")
    if (end is None) == (direction is None):
        raise GridError("give exactly one of end or direction")
    if end is not None:
        ex, ey = end
        ddx, ddy = ex - x, ey - y
        if not (ddx == 0 or ddy == 0 or abs(ddx) == abs(ddy)):
            raise GridError(f"end ({ex}, {ey}) is not on a straight ray from ({x}, {y})")
        direction = ((ddx > 0) - (ddx < 0), (ddy > 0) - (ddy < 0))
        length = max(abs(ddx), abs(ddy)) + 1
    dx, dy = direction
    if dx not in (-1, 0, 1) or dy not in (-1, 0, 1) or (dx == 0 and dy == 0):
        raise GridError(f"bad direction {direction!r}")

    stops = set(int(c) for c in stop_at_colors)
    buf = bytearray(grid.cells)
    cx, cy = x, y
    steps = 0
    while grid.in_bounds(cx, cy) and (length is None or steps < length):
        if buf[cy * grid.width + cx] in stops:
            break
        buf[cy * grid.width + cx] = int(color)
        cx += dx
        cy += dy
        steps += 1
    return Grid(grid.width, grid.height, bytes(buf))


# -- connected components ----------------------------------------------------


def find_connected_components(
    grid: Grid,
    background: int = Color.BLACK,
    connectivity: int = 4,
    monochromatic: bool = True,
) -> list[Sprite]:
    """Split the non-background cells into connected sprites.

    Each returned sprite has the source grid's dimensions with non-member
    cells set to background, so blitting all of them back reconstructs the
    input. With monochromatic=True a component never mixes colors.
    """
    _offsets(connectivity)
    labels = kernels.label_components(
        grid.cells, grid.width, grid.height, int(background), connectivity, monochromatic
    )
    n = max(labels, default=-1) + 1
    if n == 0:
        return []
    buffers = [bytearray([int(background)]) * (grid.width * grid.height) for _ in range(n)]
    for idx, label in enumerate(labels):
        if label >= 0:
            buffers[label][idx] = grid.cells[idx]
    return [Grid(grid.width, grid.height, bytes(b)) for b in buffers]


def is_contiguous(grid: Grid, background: int = Color.BLACK, connectivity: int = 4) -> bool:
    """True when the non-background cells form at most one component."""
    labels = kernels.label_components(
        grid.cells, grid.width, grid.height, int(background), connectivity, False
    )
    return max(labels, default=-1) + 1 <= 1


def detect_objects(
    grid: Grid,
    predicate: Callable[[Sprite], bool] | None = None,
    background: int = Color.BLACK,
    monochromatic: bool = False,
    connectivity: int | None = None,
    allowed_dimensions: Sequence[tuple[int, int]] | None = None,
    colors: Sequence[int] | None = None,
    can_overlap: bool = False,
) -> list[Sprite]:
    """Extract objects that satisfy all the supplied filters.

    Objects are connected components; with connectivity=None it is picked
    automatically (4-way, switching to 8-way when that merges components
    into fewer, larger monochromatic objects). allowed_dimensions constrains
    the cropped size, colors constrains the cell colors, and predicate is an
    arbitrary accept function over the full-size sprite. With
    can_overlap=True, every axis-aligned window whose size is in
    allowed_dimensions and whose content passes the filters is also
    returned as an object.
    """
    if allowed_dimensions is not None:
        for n, m in allowed_dimensions:
            if n < 1 or m < 1:
                raise GridError(f"allowed_dimensions entry ({n}, {m}) must be positive")

    if connectivity is None:
        conn = 4
        if monochromatic:
            four = kernels.label_components(
                grid.cells, grid.width, grid.height, int(background), 4, True
            )
            eight = kernels.label_components(
                grid.cells, grid.width, grid.height, int(background), 8, True
            )
            if max(eight, default=-1) < max(four, default=-1):
                conn = 8
    else:
        conn = connectivity

    def passes(sprite: Sprite) -> bool:
        if colors is not None:
            allowed = set(int(c) for c in colors)
            present = {c for c in sprite.cells if c != int(background)}
            if not present or not present <= allowed:
                return False
        if allowed_dimensions is not None:
            box = bounding_box(sprite, background)
            if (box[2], box[3]) not in {(n, m) for n, m in allowed_dimensions}:
                return False
        if predicate is not None and not predicate(sprite):
            return False
        return True

    results = [
        comp
        for comp in find_connected_components(grid, background, conn, monochromatic)
        if passes(comp)
    ]

    if can_overlap and allowed_dimensions is not None:
        bg = int(background)
        for wn, hm in allowed_dimensions:
            if wn > grid.width or hm > grid.height:
                continue
            for oy in range(grid.height - hm + 1):
                for ox in range(grid.width - wn + 1):
                    buf = bytearray([bg]) * (grid.width * grid.height)
                    nonempty = False
                    for yy in range(oy, oy + hm):
                        for xx in range(ox, ox + wn):
                            c = grid.cells[yy * grid.width + xx]
                            if c != bg:
                                nonempty = True
                            buf[yy * grid.width + xx] = c
                    if not nonempty:
                        continue
                    window = Grid(grid.width, grid.height, bytes(buf))
                    if passes(window):
                        results.append(window)
    return results


# -- geometry ----------------------------------------------------------------


def bounding_box(grid: Grid, background: int = Color.BLACK) -> tuple[int, int, int, int]:
    """Tight (x, y, w, h) box around the non-background cells.

    All-background grids give (0, 0, 0, 0).
    """
    bg = int(background)
    min_x, min_y = grid.width, grid.height
    max_x = max_y = -1
    for idx, c in enumerate(grid.cells):
        if c == bg:
            continue
        x, y = idx % grid.width, idx // grid.width
        min_x, max_x = min(min_x, x), max(max_x, x)
        min_y, max_y = min(min_y, y), max(max_y, y)
    if max_x < 0:
        return (0, 0, 0, 0)
    return (min_x, min_y, max_x - min_x + 1, max_y - min_y + 1)


def crop(grid: Grid, background: int = Color.BLACK) -> Grid:
    """Cut the grid down to the bounding box of its non-background cells."""
    x, y, w, h = bounding_box(grid, background)
    if w == 0:
        raise GridError("cannot crop an all-background grid")
    buf = bytearray(w * h)
    for j in range(h):
        row = grid.cells[(y + j) * grid.width + x:(y + j) * grid.width + x + w]
        buf[j * w:(j + 1) * w] = row
    return Grid(w, h, bytes(buf))


#: Anchor names accepted by object_position.
ANCHORS = (
    "upper left", "upper right", "lower left", "lower right", "center",
    "upper center", "lower center", "left center", "right center",
)


def object_position(
    grid: Grid, background: int = Color.BLACK, anchor: str = "upper left"
) -> tuple[float, float]:
    """Anchor point of the non-background bounding box.

    Corner anchors give integers; center anchors use the box midpoint, which
    is half-integral for even spans.
    """
    if anchor not in ANCHORS:
        raise GridError(f"unknown anchor {anchor!r}")
    x, y, w, h = bounding_box(grid, background)
    if w == 0:
        raise GridError("object_position on an all-background grid")
    left, right = x, x + w - 1
    top, bottom = y, y + h - 1
    cx, cy = x + (w - 1) / 2, y + (h - 1) / 2
    table = {
        "upper left": (left, top),
        "upper right": (right, top),
        "lower left": (left, bottom),
        "lower right": (right, bottom),
        "center": (cx, cy),
        "upper center": (cx, top),
        "lower center": (cx, bottom),
        "left center": (left, cy),
        "right center": (right, cy),
    }
    return table[anchor]


# -- sprite placement ----------------------------------------------------------


def blit(grid: Grid, sprite: Sprite, x: int = 0, y: int = 0, background: int = Color.BLACK) -> Grid:
    """Draw sprite onto grid with its top-left at (x, y).

    Background-colored sprite cells are transparent; parts that fall outside
    the grid are clipped.
    """
    bg = int(background)
    buf = bytearray(grid.cells)
    for sy in range(sprite.height):
        gy = y + sy
        if not 0 <= gy < grid.height:
            continue
        for sx in range(sprite.width):
            gx = x + sx
            if not 0 <= gx < grid.width:
                continue
            c = sprite.cells[sy * sprite.width + sx]
            if c != bg:
                buf[gy * grid.width + gx] = c
    return Grid(grid.width, grid.height, bytes(buf))


def translate(sprite: Sprite, dx: int, dy: int, background: int = Color.BLACK) -> Sprite:
    """Shift cells by (dx, dy) inside the same canvas, backfilling background."""
    bg = int(background)
    buf = bytearray([bg]) * (sprite.width * sprite.height)
    for y in range(sprite.height):
        sy = y - dy
        if not 0 <= sy < sprite.height:
            continue
        for x in range(sprite.width):
            sx = x - dx
            if 0 <= sx < sprite.width:
                buf[y * sprite.width + x] = sprite.cells[sy * sprite.width + sx]
    return Grid(sprite.width, sprite.height, bytes(buf))


def _occupied(obj: Grid, ox: int, oy: int, background: int) -> set[tuple[int, int]]:
    bg = int(background)
    return {
        (ox + idx % obj.width, oy + idx // obj.width)
        for idx, c in enumerate(obj.cells)
        if c != bg
    }


def collision(
    object1: Grid,
    object2: Grid,
    x1: int = 0,
    y1: int = 0,
    x2: int = 0,
    y2: int = 0,
    background: int = Color.BLACK,
) -> bool:
    """True when the two objects occupy a common absolute cell."""
    a = _occupied(object1, x1, y1, background)
    b = _occupied(object2, x2, y2, background)
    return not a.isdisjoint(b)


def contact(
    object1: Grid,
    object2: Grid,
    x1: int = 0,
    y1: int = 0,
    x2: int = 0,
    y2: int = 0,
    background: int = Color.BLACK,
    connectivity: int = 4,
) -> bool:
    """True when the objects overlap or share a border.

    Collision implies contact; connectivity 8 also counts diagonal touch.
    """
    offs = _offsets(connectivity)
    a = _occupied(object1, x1, y1, background)
    b = _occupied(object2, x2, y2, background)
    if not a.isdisjoint(b):
        return True
    for x, y in a:
        for dx, dy in offs:
            if (x + dx, y + dy) in b:
                return True
    return False


def interact(
    mode: str,
    object1: Grid,
    object2: Grid,
    x1: int = 0,
    y1: int = 0,
    x2: int = 0,
    y2: int = 0,
    background: int = Color.BLACK,
    connectivity: int = 4,
) -> bool:
    """Dispatch to collision or contact by mode name."""
    if mode == "collision":
        return collision(object1, object2, x1, y1, x2, y2, background)
    if mode == "contact":
        return contact(object1, object2, x1, y1, x2, y2, background, connectivity)
    raise GridError(f"unknown interact mode {mode!r}")


def _dilate_sprite(sprite: Sprite, padding: int, connectivity: int, background: int) -> Sprite:
    """Grow non-background cells by `padding` steps on an enlarged canvas."""
    bg = int(background)
    w = sprite.width + 2 * padding
    h = sprite.height + 2 * padding
    buf = bytearray([bg]) * (w * h)
    for sy in range(sprite.height):
        for sx in range(sprite.width):
            c = sprite.cells[sy * sprite.width + sx]
            if c != bg:
                buf[(sy + padding) * w + (sx + padding)] = c
    offs = _offsets(connectivity)
    marker = next(c for c in range(10) if c != bg)
    for _ in range(padding):
        grown = bytearray(buf)
        for idx, c in enumerate(buf):
            if c == bg:
                continue
            x, y = idx % w, idx // w
            for dx, dy in offs:
                nx, ny = x + dx, y + dy
                if 0 <= nx < w and 0 <= ny < h and grown[ny * w + nx] == bg:
                    grown[ny * w + nx] = marker
        buf = grown
    return Grid(w, h, bytes(buf))


def feasible_locations(
    grid: Grid,
    sprite: Sprite,
    background: int = Color.BLACK,
    border_size: int = 0,
    padding: int = 0,
    padding_connectivity: int = 8,
) -> list[tuple[int, int]]:
    """All top-left offsets where the (padded) sprite avoids collision.

    The sprite itself must sit fully inside the grid minus border_size;
    padding only widens the collision footprint and may hang off the edge.
    """
    probe = sprite if padding == 0 else _dilate_sprite(
        sprite, padding, padding_connectivity, background
    )
    out = []
    for y in range(border_size, grid.height - sprite.height - border_size + 1):
        for x in range(border_size, grid.width - sprite.width - border_size + 1):
            if not collision(grid, probe, 0, 0, x - padding, y - padding, background):
                out.append((x, y))
    return out


def random_free_location(
    grid: Grid,
    sprite: Sprite,
    rng: random.Random,
    background: int = Color.BLACK,
    border_size: int = 0,
    padding: int = 0,
    padding_connectivity: int = 8,
) -> tuple[int, int]:
    """Uniformly pick a collision-free top-left offset for the sprite.

    Raises GridError when no feasible placement exists. A location (x, y)
    satisfies: not collision(grid, sprite, x2=x, y2=y).
    """
    options = feasible_locations(grid, sprite, background, border_size, padding, padding_connectivity)
    if not options:
        raise GridError("no feasible placement for sprite")
    return options[rng.randrange(len(options))]


# -- region masks --------------------------------------------------------------


def region_mask(kind: str, grid: Grid, background: int = Color.BLACK, connectivity: int = 4) -> Mask:
    """Mask of the object's interior, boundary, or neighboring cells.

    interior: object cells plus enclosed holes (complement of the background
    region reachable from outside). boundary: object cells with a side facing
    the outside region or the grid edge. neighbors: background cells adjacent
    to the object. Boundary cells are always non-background and neighbor
    cells always background.
    """
    if kind not in ("interior", "boundary", "neighbors"):
        raise GridError(f"unknown region kind {kind!r}")
    bg = int(background)
    w, h = grid.width, grid.height
    offs = _offsets(connectivity)

    # Background cells reachable from the border without crossing the object.
    outside = bytearray(w * h)
    stack = []
    for x in range(w):
        for y in (0, h - 1):
            idx = y * w + x
            if grid.cells[idx] == bg and not outside[idx]:
                outside[idx] = 1
                stack.append(idx)
    for y in range(h):
        for x in (0, w - 1):
            idx = y * w + x
            if grid.cells[idx] == bg and not outside[idx]:
                outside[idx] = 1
                stack.append(idx)
    while stack:
        idx = stack.pop()
        x, y = idx % w, idx // w
        for dx, dy in offs:
            nx, ny = x + dx, y + dy
            if 0 <= nx < w and 0 <= ny < h:
                nidx = ny * w + nx
                if grid.cells[nidx] == bg and not outside[nidx]:
                    outside[nidx] = 1
                    stack.append(nidx)

    bits = bytearray(w * h)
    if kind == "interior":
        for idx in range(w * h):
            bits[idx] = 0 if outside[idx] else 1
    elif kind == "boundary":
        for idx in range(w * h):
            if grid.cells[idx] == bg:
                continue
            x, y = idx % w, idx // w
            for dx, dy in offs:
                nx, ny = x + dx, y + dy
                if not (0 <= nx < w and 0 <= ny < h) or outside[ny * w + nx]:
                    bits[idx] = 1
                    break
    else:
        for idx in range(w * h):
            if grid.cells[idx] != bg:
                continue
            x, y = idx % w, idx // w
            for dx, dy in offs:
                nx, ny = x + dx, y + dy
                if 0 <= nx < w and 0 <= ny < h and grid.cells[ny * w + nx] != bg:
                    bits[idx] = 1
                    break
    return Mask(w, h, bytes(bits))


def object_interior(grid: Grid, background: int = Color.BLACK) -> Mask:
    return region_mask("interior", grid, background)


def object_boundary(grid: Grid, background: int = Color.BLACK) -> Mask:
    return region_mask("boundary", grid, background)


def object_neighbors(grid: Grid, background: int = Color.BLACK, connectivity: int = 4) -> Mask:
    return region_mask("neighbors", grid, background, connectivity)


# -- generators ----------------------------------------------------------------


def scale_pattern(sprite: Sprite, factor: int) -> Sprite:
    """Blow each cell up into a factor x factor block."""
    if factor < 1:
        raise GridError(f"scale factor must be >= 1, got {factor}")
    w, h = sprite.width * factor, sprite.height * factor
    buf = bytearray(w * h)
    for y in range(h):
        src_row = (y // factor) * sprite.width
        for x in range(w):
            buf[y * w + x] = sprite.cells[src_row + x // factor]
    return Grid(w, h, bytes(buf))


def scatter_points(
    grid: Grid,
    color: int,
    density: float,
    rng: random.Random,
    background: int = Color.BLACK,
) -> Grid:
    """Recolor each background cell independently with probability density."""
    if not 0 <= density <= 1:
        raise GridError(f"density must be in [0, 1], got {density}")
    bg = int(background)
    buf = bytearray(grid.cells)
    for idx, c in enumerate(buf):
        if c == bg and rng.random() < density:
            buf[idx] = int(color)
    return Grid(grid.width, grid.height, bytes(buf))


def _symmetrize(rows: list[list[int]], symmetry: str, n: int, m: int) -> list[list[int]]:
    # Overwrite each cell with its canonical orbit representative so the
    # requested symmetry holds exactly.
    if symmetry == "horizontal":
        for y in range(m):
            for x in range(n):
                rows[y][x] = rows[min(y, m - 1 - y)][x]
    elif symmetry == "vertical":
        for y in range(m):
            for x in range(n):
                rows[y][x] = rows[y][min(x, n - 1 - x)]
    elif symmetry == "diagonal":
        for y in range(m):
            for x in range(y):
                rows[y][x] = rows[x][y]
    elif symmetry == "radial":
        for y in range(m):
            for x in range(n):
                orbit = {(x, y)}
                px, py = x, y
                for _ in range(3):
                    px, py = py, n - 1 - px
                    orbit.add((px, py))
                rx, ry = min(orbit)
                rows[y][x] = rows[ry][rx]
    return rows


def random_sprite(
    n: int | Sequence[int],
    m: int | Sequence[int],
    rng: random.Random,
    density: float = 0.5,
    symmetry: str | None = None,
    color_palette: Sequence[int] | None = None,
    connectivity: int = 4,
    background: int = Color.BLACK,
    max_attempts: int = 1000,
) -> Sprite:
    """Generate a random connected sprite.

    n and m may be candidate lists (one entry is drawn). symmetry is one of
    'horizontal', 'vertical', 'diagonal', 'radial', 'not_symmetric', or None
    to pick randomly ('diagonal'/'radial' need square dimensions and density
    1 fills every cell). Rejection-samples until the sprite is contiguous
    under connectivity, erroring after max_attempts.
    """
    if not 0 < density <= 1:
        raise GridError(f"density must be in (0, 1], got {density}")
    width = int(rng.choice(list(n))) if isinstance(n, (list, tuple)) else int(n)
    height = int(rng.choice(list(m))) if isinstance(m, (list, tuple)) else int(m)
    if width < 1 or height < 1:
        raise GridError(f"sprite dimensions must be positive, got {width}x{height}")

    if symmetry is None:
        options = ["horizontal", "vertical", "not_symmetric"]
        if width == height:
            options += ["diagonal", "radial"]
        symmetry = rng.choice(options)
    if symmetry not in SPRITE_SYMMETRIES:
        raise GridError(f"unknown symmetry {symmetry!r}")
    if symmetry in ("diagonal", "radial") and width != height:
        raise GridError(f"{symmetry} symmetry needs square dimensions, got {width}x{height}")

    bg = int(background)
    if color_palette is None:
        pool = [c for c in range(10) if c != bg]
        palette = rng.sample(pool, rng.randint(1, 3))
    else:
        palette = [int(c) for c in color_palette]
        if not palette or bg in palette:
            raise GridError("palette must be non-empty and exclude the background color")

    for _ in range(max_attempts):
        rows = [
            [rng.choice(palette) if rng.random() < density else bg for _ in range(width)]
            for _ in range(height)
        ]
        if symmetry != "not_symmetric":
            rows = _symmetrize(rows, symmetry, width, height)
        sprite = Grid.from_rows(rows)
        if any(c != bg for c in sprite.cells) and is_contiguous(sprite, bg, connectivity):
            return sprite
    raise GridError(
        f"no contiguous {width}x{height} sprite at density {density} "
        f"after {max_attempts} attempts"
    )


def spaced_positions(total: int, count: int, size: int, rng: random.Random) -> list[int]:
    """Start offsets for `count` non-overlapping size-cell segments in [0, total).

    Segments are laid out in even slots with random jitter inside each slot.
    """
    if count < 1 or size < 1 or count * size > total:
        raise GridError(f"cannot place {count} segments of size {size} in {total}")
    slot = total / count
    out = []
    for k in range(count):
        lo = int(k * slot)
        hi = min(int((k + 1) * slot) - size, total - size)
        out.append(rng.randint(lo, hi) if hi > lo else lo)
    return out
