from arcsmith.grid import Color, Grid

# concepts:
# pattern replication, color change, upscaling

# description:
# The input is a small grid of gray and black cells. The output doubles both
# sides: each black cell becomes a 2x2 black block, and each gray cell
# becomes a 2x2 checker block with blue on the main diagonal and red on the
# other two cells.

PALETTE = (Color.GRAY, Color.BLUE, Color.RED)


def transform(grid: Grid) -> Grid:
    out = Grid.filled(2 * grid.width, 2 * grid.height)
    for x, y in grid.coords():
        if grid.at(x, y) != Color.GRAY:
            continue
        out = (
            out.with_cell(2 * x, 2 * y, Color.BLUE)
            .with_cell(2 * x + 1, 2 * y, Color.RED)
            .with_cell(2 * x, 2 * y + 1, Color.RED)
            .with_cell(2 * x + 1, 2 * y + 1, Color.BLUE)
        )
    return out


def generate(rng) -> Grid:
    while True:
        out = Grid.filled(3, 3)
        for x, y in out.coords():
            if rng.random() < 0.45:
                out = out.with_cell(x, y, Color.GRAY)
        if out.count(Color.GRAY):
            return out
