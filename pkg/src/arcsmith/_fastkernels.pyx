# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid kernels: the fast backend.

Same contract as arcsmith._purekernels; see that module for the reference
semantics. Cells are a row-major bytes buffer indexed y*w + x.
"""

from libc.stdlib cimport free, malloc

BACKEND_NAME = "compiled"

cdef int _OFF4_X[4]
cdef int _OFF4_Y[4]
cdef int _OFF8_X[8]
cdef int _OFF8_Y[8]
_OFF4_X[:] = [1, -1, 0, 0]
_OFF4_Y[:] = [0, 0, 1, -1]
_OFF8_X[:] = [1, -1, 0, 0, 1, 1, -1, -1]
_OFF8_Y[:] = [0, 0, 1, -1, 1, -1, 1, -1]


def label_components(bytes cells, int w, int h, int background,
                     int connectivity, bint monochromatic):
    cdef const unsigned char[:] c = cells
    cdef int n = w * h
    cdef int n_off = 8 if connectivity == 8 else 4
    cdef int* ox
    cdef int* oy
    if connectivity == 8:
        ox = &_OFF8_X[0]
        oy = &_OFF8_Y[0]
    else:
        ox = &_OFF4_X[0]
        oy = &_OFF4_Y[0]
    cdef int* labels = <int*> malloc(n * sizeof(int))
    cdef int* stack = <int*> malloc(n * sizeof(int))
    if labels == NULL or stack == NULL:
        free(labels); free(stack)
        raise MemoryError()
    cdef int i, start, top, idx, x, y, nx, ny, nidx, k
    cdef int next_label = 0
    for i in range(n):
        labels[i] = -1
    try:
        for start in range(n):
            if labels[start] != -1 or c[start] == background:
                continue
            top = 0
            stack[top] = start
            top += 1
            labels[start] = next_label
            while top > 0:
                top -= 1
                idx = stack[top]
                x = idx % w
                y = idx // w
                for k in range(n_off):
                    nx = x + ox[k]
                    ny = y + oy[k]
                    if nx < 0 or nx >= w or ny < 0 or ny >= h:
                        continue
                    nidx = ny * w + nx
                    if labels[nidx] != -1 or c[nidx] == background:
                        continue
                    if monochromatic and c[nidx] != c[idx]:
                        continue
                    labels[nidx] = next_label
                    stack[top] = nidx
                    top += 1
            next_label += 1
        return [labels[i] for i in range(n)]
    finally:
        free(labels)
        free(stack)


def flood_fill(bytes cells, int w, int h, int x, int y, int color, int connectivity):
    cdef bytearray out_arr = bytearray(cells)
    cdef unsigned char[:] out = out_arr
    cdef int n = w * h
    cdef int n_off = 8 if connectivity == 8 else 4
    cdef int* ox
    cdef int* oy
    if connectivity == 8:
        ox = &_OFF8_X[0]
        oy = &_OFF8_Y[0]
    else:
        ox = &_OFF4_X[0]
        oy = &_OFF4_Y[0]
    cdef int target = cells[y * w + x]
    if target == color:
        return bytes(out_arr)
    cdef int* stack = <int*> malloc(n * sizeof(int))
    if stack == NULL:
        raise MemoryError()
    cdef int top = 0, idx, cx, cy, nx, ny, nidx, k
    stack[top] = y * w + x
    top += 1
    out[y * w + x] = <unsigned char> color
    try:
        while top > 0:
            top -= 1
            idx = stack[top]
            cx = idx % w
            cy = idx // w
            for k in range(n_off):
                nx = cx + ox[k]
                ny = cy + oy[k]
                if nx < 0 or nx >= w or ny < 0 or ny >= h:
                    continue
                nidx = ny * w + nx
                if out[nidx] == target:
                    out[nidx] = <unsigned char> color
                    stack[top] = nidx
                    top += 1
    finally:
        free(stack)
    return bytes(out_arr)


def translation_search(bytes cells, int w, int h, bytes ignored):
    cdef const unsigned char[:] c = cells
    cdef const unsigned char[:] ig = ignored
    cdef int dx, dy, dy_lo, y, x, y0, y1, base, shifted
    cdef unsigned char a, b
    cdef bint valid, witness
    out = []
    for dx in range(w):
        dy_lo = -(h - 1) if dx > 0 else 1
        for dy in range(dy_lo, h):
            if dx == 0 and dy <= 0:
                continue
            valid = True
            witness = False
            y0 = -dy if dy < 0 else 0
            y1 = h - dy if dy > 0 else h
            for y in range(y0, y1):
                base = y * w
                shifted = (y + dy) * w + dx
                for x in range(w - dx):
                    a = c[base + x]
                    b = c[shifted + x]
                    if ig[a] or ig[b]:
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


def mirror_search(bytes cells, int w, int h, bytes ignored, int axis):
    cdef const unsigned char[:] c = cells
    cdef const unsigned char[:] ig = ignored
    cdef int span = w if axis == 0 else h
    cdef int c2, x, y, rx, ry, base
    cdef unsigned char a, b
    cdef bint valid, witness
    out = []
    for c2 in range(2 * span - 1):
        valid = True
        witness = False
        for y in range(h):
            base = y * w
            for x in range(w):
                a = c[base + x]
                if ig[a]:
                    continue
                if axis == 0:
                    rx = c2 - x
                    ry = y
                else:
                    rx = x
                    ry = c2 - y
                if rx < 0 or rx >= w or ry < 0 or ry >= h:
                    valid = False
                    break
                b = c[ry * w + rx]
                if ig[b]:
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


def rotation_search(bytes cells, int w, int h, bytes ignored):
    cdef const unsigned char[:] c = cells
    cdef const unsigned char[:] ig = ignored
    cdef int cx2, cy2, half_diff, half_sum, x, y, rx, ry, base
    cdef unsigned char a, b
    cdef bint valid
    cdef int support, best_support = 0
    cdef int best_cx2 = -1, best_cy2 = -1
    for cx2 in range(2 * w - 1):
        for cy2 in range(cx2 % 2, 2 * h - 1, 2):
            half_diff = (cx2 - cy2) // 2
            half_sum = (cx2 + cy2) // 2
            valid = True
            support = 0
            for y in range(h):
                base = y * w
                for x in range(w):
                    a = c[base + x]
                    if ig[a]:
                        continue
                    rx = y + half_diff
                    ry = half_sum - x
                    if rx < 0 or rx >= w or ry < 0 or ry >= h:
                        valid = False
                        break
                    b = c[ry * w + rx]
                    if ig[b]:
                        continue
                    if a != b:
                        valid = False
                        break
                    support += 1
                if not valid:
                    break
            if valid and support > best_support:
                best_support = support
                best_cx2 = cx2
                best_cy2 = cy2
    if best_support == 0:
        return None
    return (best_cx2, best_cy2)
