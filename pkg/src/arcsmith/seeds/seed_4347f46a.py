from arcsmith.grid import Color, Grid
from arcsmith.gridlib import blit, find_connected_components, object_boundary, random_free_location

# concepts:
# hollowing, boundary detection

# description:
# The input shows filled rectangles of various colors. The output keeps only
# the one-cell outline of each rectangle and empties its inside to black.


def transform(grid: Grid) -> Grid:
    out = grid
    for part in find_connected_components(grid, connectivity=4):
        edge = object_boundary(part)
        for x, y in part.coords():
            if part.at(x, y) != Color.BLACK and not edge.get(x, y):
                out = out.with_cell(x, y, Color.BLACK)
    return out


def generate(rng) -> Grid:
    out = Grid.filled(rng.randint(12, 20), rng.randint(12, 20))
    placed = 0
    for _ in range(rng.randint(1, 3)):
        rect = Grid.filled(rng.randint(3, 6), rng.randint(3, 6), rng.randint(1, 9))
        try:
            x, y = random_free_location(out, rect, rng, padding=1)
        except Exception:
            continue
        out = blit(out, rect, x, y)
        placed += 1
    if placed == 0:
        rect = Grid.filled(3, 3, rng.randint(1, 9))
        x, y = random_free_location(out, rect, rng)
        out = blit(out, rect, x, y)
    return out
