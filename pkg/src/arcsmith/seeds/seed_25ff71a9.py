from arcsmith.grid import Grid
from arcsmith.gridlib import blit, random_sprite, translate

# concepts:
# translation, gravity

# description:
# The input contains one colored shape. The output is the same grid with the
# shape moved down by exactly one row.


def transform(grid: Grid) -> Grid:
    return translate(grid, 0, 1)


def generate(rng) -> Grid:
    w, h = rng.randint(5, 10), rng.randint(5, 10)
    sprite = random_sprite(rng.randint(2, 3), rng.randint(2, 3), rng, density=0.7)
    out = Grid.filled(w, h)
    x = rng.randint(0, w - sprite.width)
    y = rng.randint(0, h - sprite.height - 1)  # leave room to fall one row
    return blit(out, sprite, x, y)
