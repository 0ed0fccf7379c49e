"""Pure-Python grid kernels: the fallback backend.

Same contract as the compiled extension (arcsmith._fastkernels). Cells are a
row-major bytes buffer of color indices; (x, y) means column x, row y, so the
cell index is y*w + x. Mirror centers and rotation centers travel as doubled
integers (2*center) so half-cell positions stay exact.
"""

from __future__ import annotations

BACKEND_NAME = "python"

_OFFSETS_4 = ((1, 0), (-1, 0), (0, 1), (0, -1))
_OFFSETS_8 = _OFFSETS_4 + ((1, 1), (1, -1), (-1, 1), (-1, -1))


def label_components(
    cells: bytes, w: int, h: int, background: int, connectivity: int, monochromatic: bool
) -> list[int]:
    """Label connected non-background cells; background cells get -1.

    Labels are dense and assigned in scan order of each component's first
    cell. With monochromatic=True a component never crosses colors.
    """
    offsets = _OFFSETS_8 if connectivity == 8 else _OFFSETS_4
    labels = [-1] * (w * h)
    next_label = 0
    for start in range(w * h):
        if labels[start] != -1 or cells[start] == background:
            continue
        stack = [start]
        labels[start] = next_label
        while stack:
            idx = stack.pop()
            x, y = idx % w, idx // w
            for dx, dy in offsets:
                nx, ny = x + dx, y + dy
                if not (0 <= nx < w and 0 <= ny < h):
                    continue
                nidx = ny * w + nx
                if labels[nidx] != -1 or cells[nidx] == background:
                    continue
                if monochromatic and cells[nidx] != cells[idx]:
                    continue
                labels[nidx] = next_label
                stack.append(nidx)
        next_label += 1
    return labels


def flood_fill(
    cells: bytes, w: int, h: int, x: int, y: int, color: int, connectivity: int
) -> bytes:
    """Recolor the region of the seed cell's original color."""
    offsets = _OFFSETS_8 if connectivity == 8 else _OFFSETS_4
    target = cells[y * w + x]
    out = bytearray(cells)
    if target == color:
        return bytes(out)
    stack = [y * w + x]
    out[y * w + x] = color
    while stack:
        idx = stack.pop()
        cx, cy = idx % w, idx // w
        for dx, dy in offsets:
            nx, ny = cx + dx, cy + dy
            if not (0 <= nx < w and 0 <= ny < h):
                continue
            nidx = ny * w + nx
            if out[nidx] == target:
                out[nidx] = color
                stack.append(nidx)
    return bytes(out)


def translation_search(cells: bytes, w: int, h: int, ignored: bytes) -> list[tuple[int, int]]:
    """All canonical shifts (dx>0, or dx=0 and dy>0) the grid is invariant under.

    A shift is valid when every doubly-in-bounds pair with neither cell
    ignored is equal, and at least one such witnessing pair exists.
    """
    out: list[tuple[int, int]] = []
    for dx in range(0, w):
        dy_lo = -(h - 1) if dx > 0 else 1
        for dy in range(dy_lo, h):
            if dx == 0 and dy <= 0:
                continue
            valid = True
            witness = False
            y0 = max(0, -dy)
            y1 = min(h, h - dy)
            for y in range(y0, y1):
                base = y * w
                shifted = (y + dy) * w + dx
                for x in range(0, w - dx):
                    a = cells[base + x]
                    b = cells[shifted + x]
                    if ignored[a] or ignored[b]:
                        continue
                    if a != b:
                        valid = False
                        break
                    witness = True
                if not valid:
                    break
            if valid and witness:
                out.append((dx, dy))
    return out


def mirror_search(cells: bytes, w: int, h: int, ignored: bytes, axis: int) -> list[int]:
    """Doubled mirror centers valid for one axis (0: flip x, 1: flip y).

    Every non-ignored cell must reflect to an in-bounds cell; wherever the
    image is also non-ignored, colors must match. Needs >= 1 witnessing pair.
    """
    out: list[int] = []
    span = w if axis == 0 else h
    for c2 in range(0, 2 * span - 1):
        valid = True
        witness = False
        for y in range(h):
            base = y * w
            for x in range(w):
                a = cells[base + x]
                if ignored[a]:
                    continue
                if axis == 0:
                    rx, ry = c2 - x, y
                else:
                    rx, ry = x, c2 - y
                if not (0 <= rx < w and 0 <= ry < h):
                    valid = False
                    break
                b = cells[ry * w + rx]
                if ignored[b]:
                    continue
                if a != b:
                    valid = False
                    break
                witness = True
            if not valid:
                break
        if valid and witness:
            out.append(c2)
    return out


def rotation_search(cells: bytes, w: int, h: int, ignored: bytes) -> tuple[int, int] | None:
    """Best doubled center (cx2, cy2) for quarter-turn invariance, or None.

    A center is valid when every non-ignored cell maps in bounds under one
    clockwise quarter turn and matches wherever its image is non-ignored.
    Of the valid centers the one witnessing the most cell pairs wins; ties
    break lexicographically on (cx2, cy2).
    """
    best: tuple[int, int] | None = None
    best_support = 0
    for cx2 in range(0, 2 * w - 1):
        for cy2 in range(cx2 % 2, 2 * h - 1, 2):
            half_diff = (cx2 - cy2) // 2
            half_sum = (cx2 + cy2) // 2
            valid = True
            support = 0
            for y in range(h):
                base = y * w
                for x in range(w):
                    a = cells[base + x]
                    if ignored[a]:
                        continue
                    rx = y + half_diff
                    ry = half_sum - x
                    if not (0 <= rx < w and 0 <= ry < h):
                        valid = False
                        break
                    b = cells[ry * w + rx]
                    if ignored[b]:
                        continue
                    if a != b:
                        valid = False
                        break
                    support += 1
                if not valid:
                    break
            if valid and support > 0 and support > best_support:
                best = (cx2, cy2)
                best_support = support
    return best
