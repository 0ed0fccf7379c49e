from arcsmith.grid import Color, Grid
from arcsmith.gridlib import blit, bounding_box, find_connected_components, random_free_location

# concepts:
# shape completion, corners

# description:
# The input contains teal corner pieces: three cells filling all but one
# corner of a 2x2 box. The output adds a blue cell in each box's empty spot.

PALETTE = (Color.TEAL, Color.BLUE)


def transform(grid: Grid) -> Grid:
    out = grid
    for part in find_connected_components(grid, connectivity=8):
        member = {(x, y) for x, y in part.coords() if part.at(x, y) == Color.TEAL}
        bx, by, bw, bh = bounding_box(part)
        if len(member) == 3 and (bw, bh) == (2, 2):
            for x in range(bx, bx + 2):
                for y in range(by, by + 2):
                    if (x, y) not in member:
                        out = out.with_cell(x, y, Color.BLUE)
    return out


def generate(rng) -> Grid:
    out = Grid.filled(rng.randint(7, 12), rng.randint(7, 12))
    placed = 0
    for _ in range(rng.randint(2, 3)):
        box = Grid.filled(2, 2, Color.TEAL)
        corner = (rng.randint(0, 1), rng.randint(0, 1))
        piece = box.with_cell(corner[0], corner[1], Color.BLACK)
        try:
            x, y = random_free_location(out, piece, rng, padding=1, padding_connectivity=8)
        except Exception:
            continue
        out = blit(out, piece, x, y)
        placed += 1
    if placed == 0:
        piece = Grid.filled(2, 2, Color.TEAL).with_cell(0, 0, Color.BLACK)
        x, y = random_free_location(out, piece, rng, padding=1, padding_connectivity=8)
        out = blit(out, piece, x, y)
    return out
