from arcsmith.grid import Color, Grid
from arcsmith.gridlib import blit, random_free_location

# concepts:
# pixel decoration, relative position

# description:
# The input has isolated single pixels. The output decorates each red pixel
# with yellow cells on its four diagonal corners and each blue pixel with
# orange cells on its four sides; pixels of other colors stay bare.

PALETTE = (Color.RED, Color.BLUE, Color.YELLOW, Color.ORANGE)


def transform(grid: Grid) -> Grid:
    out = grid
    for x, y in grid.coords():
        c = grid.at(x, y)
        if c == Color.RED:
            offsets, paint = ((1, 1), (1, -1), (-1, 1), (-1, -1)), Color.YELLOW
        elif c == Color.BLUE:
            offsets, paint = ((1, 0), (-1, 0), (0, 1), (0, -1)), Color.ORANGE
        else:
            continue
        for dx, dy in offsets:
            if grid.in_bounds(x + dx, y + dy) and grid.at(x + dx, y + dy) == Color.BLACK:
                out = out.with_cell(x + dx, y + dy, paint)
    return out


def generate(rng) -> Grid:
    out = Grid.filled(rng.randint(8, 12), rng.randint(8, 12))
    pixels = [Color.RED, Color.BLUE]
    pixels += [rng.choice([Color.RED, Color.BLUE, Color.TEAL]) for _ in range(rng.randint(0, 2))]
    for color in pixels:
        dot = Grid.filled(1, 1, color)
        try:
            x, y = random_free_location(out, dot, rng, padding=2, padding_connectivity=8)
        except Exception:
            continue
        out = blit(out, dot, x, y)
    return out
