from arcsmith.grid import Grid

# concepts:
# rotation

# description:
# The output is the input grid rotated by half a turn, so the cell in each
# corner swaps with the opposite corner.


def transform(grid: Grid) -> Grid:
    return Grid(grid.width, grid.height, grid.cells[::-1])


def generate(rng) -> Grid:
    while True:
        w, h = rng.randint(3, 6), rng.randint(3, 6)
        g = Grid(w, h, bytes(rng.choice([0, 0, rng.randint(1, 9)]) for _ in range(w * h)))
        if g.cells != g.cells[::-1]:  # avoid half-turn-symmetric inputs
            return g
