from arcsmith.grid import Color, Grid
from arcsmith.gridlib import blit, find_connected_components, random_free_location, random_sprite

# concepts:
# object detection, size comparison, color change

# description:
# The input shows several red shapes on a black background. The output
# recolors every shape of more than three cells to pink and leaves the
# smaller ones red.

PALETTE = (Color.RED, Color.PINK)


def transform(grid: Grid) -> Grid:
    out = grid
    for part in find_connected_components(grid, connectivity=4):
        member = [(x, y) for x, y in part.coords() if part.at(x, y) != Color.BLACK]
        if len(member) > 3:
            for x, y in member:
                out = out.with_cell(x, y, Color.PINK)
    return out


def generate(rng) -> Grid:
    out = Grid.filled(rng.randint(9, 14), rng.randint(9, 14))
    # one shape guaranteed big enough to recolor, then a few of any size
    sizes = [rng.randint(4, 6)] + [rng.randint(1, 6) for _ in range(rng.randint(1, 3))]
    for target in sizes:
        side = max(2, int(target ** 0.5) + 1)
        for _ in range(30):
            sprite = random_sprite(side, side, rng, density=0.6, color_palette=[Color.RED])
            if sprite.count(Color.RED) == target:
                break
        else:
            sprite = random_sprite(1, target, rng, density=1.0, color_palette=[Color.RED])
        try:
            x, y = random_free_location(out, sprite, rng, padding=1)
        except Exception:
            continue
        out = blit(out, sprite, x, y)
    return out
