from arcsmith.grid import Color, Grid
from arcsmith.gridlib import draw_line

# concepts:
# rectangles, line drawing, intersection

# description:
# The input has exactly two red pixels. The output paints the axis-aligned
# rectangle spanned by them blue, then draws a full-width red row and a
# full-height red column through each of the two pixels.

PALETTE = (Color.RED, Color.BLUE)


def transform(grid: Grid) -> Grid:
    reds = [(x, y) for x, y in grid.coords() if grid.at(x, y) == Color.RED]
    assert len(reds) == 2, "expected exactly two red pixels"
    (x1, y1), (x2, y2) = reds
    out = grid
    for x in range(min(x1, x2), max(x1, x2) + 1):
        for y in range(min(y1, y2), max(y1, y2) + 1):
            out = out.with_cell(x, y, Color.BLUE)
    for px, py in reds:
        out = draw_line(out, 0, py, direction=(1, 0), color=Color.RED)
        out = draw_line(out, px, 0, direction=(0, 1), color=Color.RED)
    return out


def generate(rng) -> Grid:
    w, h = rng.randint(8, 14), rng.randint(8, 14)
    x1, x2 = rng.sample(range(w), 2)
    y1, y2 = rng.sample(range(h), 2)
    return Grid.filled(w, h).with_cell(x1, y1, Color.RED).with_cell(x2, y2, Color.RED)
