"""Grid symmetry detection: translations, mirrors, quarter-turn rotations.

Detected symmetries map points, so occluded patterns can be reconstructed by
pooling colors over a point's orbit. ignore_colors makes detection robust to
occlusion: a cell pair constrains a candidate symmetry only when neither cell
is an ignored color.

Mirror and rotation centers may sit on half-cell positions; a symmetry is
reported only when at least one non-ignored cell pair actually witnesses it,
so a fully ignored grid has no symmetries at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from . import kernels
from .grid import Color, Grid, GridError


@dataclass(frozen=True)
class Translation:
    """Invariance under shifting by (dx, dy); (0, 0) is not a translation."""

    dx: int
    dy: int

    def __post_init__(self) -> None:
        if self.dx == 0 and self.dy == 0:
            raise GridError("translation must be nonzero")

    def apply(self, x: int, y: int, iters: int = 1) -> tuple[int, int]:
        return x + iters * self.dx, y + iters * self.dy


@dataclass(frozen=True)
class Mirror:
    """Reflection across the line x = mirror_x (vertical axis) or y = mirror_y.

    Only the coordinate named by the axis is used when mapping points; the
    other center is carried for reference and pinned to the grid midline by
    the detector.
    """

    axis: str  # "vertical" | "horizontal"
    mirror_x: float
    mirror_y: float

    def __post_init__(self) -> None:
        if self.axis not in ("vertical", "horizontal"):
            raise GridError(f"mirror axis must be vertical or horizontal, got {self.axis!r}")

    def apply(self, x: int, y: int, iters: int = 1) -> tuple[int, int]:
        if iters % 2 == 0:
            return x, y
        if self.axis == "vertical":
            return round(2 * self.mirror_x) - x, y
        return x, round(2 * self.mirror_y) - y


@dataclass(frozen=True)
class Rotation:
    """Quarter-turn invariance about (center_x, center_y); centers are floats."""

    center_x: float
    center_y: float
    direction: str = "cw"

    def __post_init__(self) -> None:
        if self.direction not in ("cw", "ccw"):
            raise GridError(f"rotation direction must be cw or ccw, got {self.direction!r}")
        if not float(2 * self.center_x).is_integer() or not float(2 * self.center_y).is_integer():
            raise GridError("rotation centers must be integer or half-integer")
        if (round(2 * self.center_x) - round(2 * self.center_y)) % 2 != 0:
            raise GridError("rotation center parities must match to map cells to cells")

    def apply(self, x: int, y: int, iters: int = 1) -> tuple[int, int]:
        steps = iters if self.direction == "cw" else -iters
        steps %= 4
        half_diff = (round(2 * self.center_x) - round(2 * self.center_y)) // 2
        half_sum = (round(2 * self.center_x) + round(2 * self.center_y)) // 2
        for _ in range(steps):
            x, y = y + half_diff, half_sum - x
        return x, y


Symmetry = Union[Translation, Mirror, Rotation]


def _ignore_table(ignore_colors: Iterable[int]) -> bytes:
    table = bytearray(10)
    for c in ignore_colors:
        table[int(c)] = 1
    return bytes(table)


# -- lattice reduction for translation generators ----------------------------


def _lattice_basis(vectors: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """Hermite-style basis (at most two vectors) of the spanned integer lattice."""
    vecs = [v for v in vectors if v != (0, 0)]
    if not vecs:
        return []
    a = None
    residual_ys = []
    for v in vecs:
        if a is None:
            a = v
            continue
        if v[0] == 0:
            residual_ys.append(v[1])
            continue
        if a[0] == 0:
            residual_ys.append(a[1])
            a = v
            continue
        g, r, s = _ext_gcd(a[0], v[0])
        combo = (g, r * a[1] + s * v[1])
        residual_ys.append((v[0] // g) * a[1] - (a[0] // g) * v[1])
        a = combo
    if a[0] == 0:
        residual_ys.append(a[1])
        a = None
    gy = 0
    for yv in residual_ys:
        gy = math.gcd(gy, yv)
    basis = []
    if a is not None:
        basis.append(a)
    if gy != 0:
        basis.append((0, gy))
    return basis


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, r, s) with r*a + s*b = g = gcd(a, b), g > 0 for nonzero input."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _in_lattice(v: tuple[int, int], basis: Sequence[tuple[int, int]]) -> bool:
    x, y = v
    for b in basis:
        if b[0] != 0:
            if x % b[0] != 0:
                return False
            k = x // b[0]
            x, y = 0, y - k * b[1]
    if x != 0:
        return False
    for b in basis:
        if b[0] == 0 and b[1] != 0:
            return y % b[1] == 0
    return y == 0


def reduce_to_generators(shifts: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """Keep only shifts that are not integer combinations of smaller ones."""
    kept: list[tuple[int, int]] = []
    for s in sorted(shifts, key=lambda v: (abs(v[0]) + abs(v[1]), v[0], v[1])):
        if not _in_lattice(s, _lattice_basis(kept)):
            kept.append(s)
    return kept


# -- detectors ----------------------------------------------------------------


def detect_translational(
    grid: Grid, ignore_colors: Iterable[int] = (Color.BLACK,)
) -> list[Translation]:
    """Minimal-period translation generators the grid is invariant under.

    A shift (dx, dy) qualifies when grid[x, y] == grid[x+dx, y+dy] wherever
    both cells exist and neither is an ignored color, with at least one such
    witnessing pair. Only lattice generators are returned, not all multiples.
    """
    valid = kernels.translation_search(
        grid.cells, grid.width, grid.height, _ignore_table(ignore_colors)
    )
    return [Translation(dx, dy) for dx, dy in reduce_to_generators(valid)]


def detect_mirror(grid: Grid, ignore_colors: Iterable[int] = (Color.BLACK,)) -> list[Mirror]:
    """Mirror symmetries across vertical and horizontal lines.

    Every non-ignored cell must reflect onto the grid and match its image
    wherever that image is also non-ignored. A grid with both a left-right
    and a top-bottom symmetry yields two entries.
    """
    table = _ignore_table(ignore_colors)
    out: list[Mirror] = []
    for c2 in kernels.mirror_search(grid.cells, grid.width, grid.height, table, 0):
        out.append(Mirror("vertical", c2 / 2, (grid.height - 1) / 2))
    for c2 in kernels.mirror_search(grid.cells, grid.width, grid.height, table, 1):
        out.append(Mirror("horizontal", (grid.width - 1) / 2, c2 / 2))
    return out


def detect_rotational(
    grid: Grid, ignore_colors: Iterable[int] = (Color.BLACK,)
) -> Rotation | None:
    """Quarter-turn rotation center, or None when no center works.

    The returned rotation satisfies the clockwise mapping
    (x, y) -> (y - cy + cx, -x + cy + cx) on every non-ignored cell, with
    ignored image cells unconstrained. Centers may be half-integral.
    """
    found = kernels.rotation_search(
        grid.cells, grid.width, grid.height, _ignore_table(ignore_colors)
    )
    if found is None:
        return None
    cx2, cy2 = found
    return Rotation(cx2 / 2, cy2 / 2, "cw")


def apply_symmetry(sym: Symmetry, x: int, y: int, iters: int = 1) -> tuple[int, int]:
    """Map a point through a symmetry `iters` times (negative = inverse).

    The result may leave the grid; callers filter against bounds.
    """
    return sym.apply(x, y, iters)


def orbit(grid: Grid, x: int, y: int, symmetries: Sequence[Symmetry]) -> list[tuple[int, int]]:
    """In-bounds closure of (x, y) under the symmetries and their inverses."""
    if not grid.in_bounds(x, y):
        raise GridError(f"orbit start ({x}, {y}) out of bounds")
    seen = {(x, y)}
    frontier = [(x, y)]
    while frontier:
        px, py = frontier.pop()
        for sym in symmetries:
            for iters in (1, -1):
                q = sym.apply(px, py, iters)
                if grid.in_bounds(*q) and q not in seen:
                    seen.add(q)
                    frontier.append(q)
    return sorted(seen)
