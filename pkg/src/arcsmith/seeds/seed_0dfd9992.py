from arcsmith.grid import Color, Grid
from arcsmith.gridlib import blit, random_sprite
from arcsmith.symmetry import detect_translational, orbit

# concepts:
# occlusion, translational symmetry

# description:
# The input is a pattern that repeats periodically in both directions, with
# random patches blotted out in black. The output restores the pattern:
# every black cell is refilled with the one color seen elsewhere along its
# orbit under the detected translations.


def transform(grid: Grid) -> Grid:
    translations = detect_translational(grid, ignore_colors=[Color.BLACK])
    assert translations, "no translational symmetry found"
    out = grid
    for x, y in grid.coords():
        if grid.at(x, y) != Color.BLACK:
            continue
        colors = {
            grid.at(px, py) for px, py in orbit(grid, x, y, translations)
        } - {int(Color.BLACK)}
        assert len(colors) == 1, "ambiguity: multiple colors in the orbit"
        out = out.with_cell(x, y, colors.pop())
    return out


def generate(rng) -> Grid:
    # Rejection-sample until the occluded pattern is provably recoverable.
    for _ in range(100):
        gw, gh = rng.randint(15, 29), rng.randint(15, 29)
        tw, th = rng.randint(3, 8), rng.randint(3, 8)
        tile = random_sprite(
            tw, th, rng, density=1.0,
            color_palette=rng.sample(range(1, 10), rng.randint(2, 4)),
        )
        full = Grid.filled(gw, gh)
        for x in range(0, gw, tw):
            for y in range(0, gh, th):
                full = blit(full, tile, x, y)
        occluded = full
        for _ in range(rng.randint(1, 5)):
            ow, oh = rng.randint(3, 7), rng.randint(3, 7)
            ox, oy = rng.randint(0, gw - 1), rng.randint(0, gh - 1)
            for x in range(ox, min(ox + ow, gw)):
                for y in range(oy, min(oy + oh, gh)):
                    occluded = occluded.with_cell(x, y, Color.BLACK)
        if occluded == full:
            continue
        try:
            if transform(occluded) == full:
                return occluded
        except AssertionError:
            continue
    raise RuntimeError("could not build a recoverable occluded tiling")
