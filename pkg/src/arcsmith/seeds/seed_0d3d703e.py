from arcsmith.grid import Color, Grid

# concepts:
# color mapping

# description:
# Every column of the input grid is a solid stripe of one color.
# Recolor each stripe through a fixed two-way lookup: green and yellow swap,
# blue and gray swap, red and pink swap, teal and brown swap.

COLOR_TABLE = {
    Color.GREEN: Color.YELLOW,
    Color.BLUE: Color.GRAY,
    Color.RED: Color.PINK,
    Color.TEAL: Color.BROWN,
    Color.YELLOW: Color.GREEN,
    Color.GRAY: Color.BLUE,
    Color.PINK: Color.RED,
    Color.BROWN: Color.TEAL,
}

PALETTE = tuple(COLOR_TABLE)


def transform(grid: Grid) -> Grid:
    cells = bytes(COLOR_TABLE.get(c, c) for c in grid.cells)
    return Grid(grid.width, grid.height, cells)


def generate(rng) -> Grid:
    out = Grid.filled(3, 3)
    for x in range(3):
        stripe = rng.choice(list(COLOR_TABLE))
        for y in range(3):
            out = out.with_cell(x, y, stripe)
    return out
