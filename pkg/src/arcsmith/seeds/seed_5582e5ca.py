from collections import Counter

from arcsmith.grid import Grid

# concepts:
# counting, majority color

# description:
# The input is a 3x3 grid of colored cells. The output is a 3x3 grid filled
# entirely with whichever color appears most often in the input.


def transform(grid: Grid) -> Grid:
    counts = Counter(grid.cells)
    top = max(counts.values())
    winners = [c for c, n in counts.items() if n == top]
    assert len(winners) == 1, "no unique majority color"
    return Grid.filled(grid.width, grid.height, winners[0])


def generate(rng) -> Grid:
    colors = rng.sample(range(1, 10), 5)
    majority, rest = colors[0], colors[1:]
    cells = [majority] * 5 + [rng.choice(rest) for _ in range(4)]
    rng.shuffle(cells)
    return Grid(3, 3, bytes(cells))
