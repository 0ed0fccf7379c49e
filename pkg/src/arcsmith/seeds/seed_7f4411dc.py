from arcsmith.grid import Color, Grid
from arcsmith.gridlib import blit, find_connected_components, random_free_location, random_sprite

# concepts:
# denoising, object detection

# description:
# The input shows a few solid shapes plus scattered single-cell specks, all
# in one color. The output erases every lone speck and keeps the shapes.


def transform(grid: Grid) -> Grid:
    out = grid
    for part in find_connected_components(grid, connectivity=4, monochromatic=False):
        member = [(x, y) for x, y in part.coords() if part.at(x, y) != Color.BLACK]
        if len(member) == 1:
            out = out.with_cell(member[0][0], member[0][1], Color.BLACK)
    return out


def generate(rng) -> Grid:
    color = rng.randint(1, 9)
    out = Grid.filled(rng.randint(10, 16), rng.randint(10, 16))
    for _ in range(rng.randint(2, 3)):
        sprite = random_sprite([2, 3], [2, 3], rng, density=1.0, color_palette=[color])
        try:
            x, y = random_free_location(out, sprite, rng, padding=1)
        except Exception:
            continue
        out = blit(out, sprite, x, y)
    speck = Grid.filled(1, 1, color)
    placed = 0
    for _ in range(rng.randint(2, 5)):
        try:
            x, y = random_free_location(out, speck, rng, padding=1, padding_connectivity=8)
        except Exception:
            break
        out = blit(out, speck, x, y)
        placed += 1
    if placed == 0:  # at least one speck so the pair is never an identity
        x, y = random_free_location(out, speck, rng, padding=1, padding_connectivity=8)
        out = blit(out, speck, x, y)
    return out
