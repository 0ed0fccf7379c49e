from arcsmith.grid import Color, Grid

# concepts:
# boolean logic, bitmasks with separator

# description:
# The input holds two equally sized brown-on-black bitmasks side by side,
# split by a single blue column. The output is one mask of that size where a
# cell is teal exactly when it is unset in both input masks (a NOR), and
# black everywhere else.

PALETTE = (Color.BLUE, Color.BROWN, Color.TEAL)


def transform(grid: Grid) -> Grid:
    bar_x = next(
        x for x in range(grid.width)
        if all(grid.at(x, y) == Color.BLUE for y in range(grid.height))
    )
    out = Grid.filled(bar_x, grid.height)
    for x in range(bar_x):
        for y in range(grid.height):
            left = grid.at(x, y) == Color.BROWN
            right = grid.at(bar_x + 1 + x, y) == Color.BROWN
            if not left and not right:
                out = out.with_cell(x, y, Color.TEAL)
    return out


def generate(rng) -> Grid:
    w, h = rng.randint(2, 9), rng.randint(2, 9)
    out = Grid.filled(2 * w + 1, h)
    for y in range(h):
        out = out.with_cell(w, y, Color.BLUE)
        for x in range(w):
            if rng.random() < 0.5:
                out = out.with_cell(x, y, Color.BROWN)
            if rng.random() < 0.5:
                out = out.with_cell(w + 1 + x, y, Color.BROWN)
    return out
