from arcsmith.grid import Grid
from arcsmith.gridlib import random_sprite

# concepts:
# mirror symmetry, pattern expansion

# description:
# The input is a small pattern. The output is twice as wide and twice as
# tall: the pattern sits in the top-left quarter, its left-right mirror in
# the top-right, and the bottom half mirrors the top half upside down.


def transform(grid: Grid) -> Grid:
    w, h = grid.width, grid.height
    out = Grid.filled(2 * w, 2 * h)
    for x, y in grid.coords():
        c = grid.at(x, y)
        out = (
            out.with_cell(x, y, c)
            .with_cell(2 * w - 1 - x, y, c)
            .with_cell(x, 2 * h - 1 - y, c)
            .with_cell(2 * w - 1 - x, 2 * h - 1 - y, c)
        )
    return out


def generate(rng) -> Grid:
    return random_sprite(
        rng.randint(3, 5), rng.randint(3, 5), rng,
        density=0.6, symmetry="not_symmetric",
        color_palette=rng.sample(range(1, 10), 2),
    )
