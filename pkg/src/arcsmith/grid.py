"""Core grid value types and codecs.

Grids are immutable w*h fields of ten colors. The cell at (x, y) lives in
column x and row y; JSON and text codecs emit row y as line/array j=y. All
operations return new grids, so values are safe to share freely.

Task grids must be 1-30 cells per side. Intermediate working grids may be
larger; the bound is enforced when parsing or assembling a task and when
validating candidate-program output.
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_TASK_SIDE = 30
NUM_COLORS = 10


class Color(IntEnum):
    """The ten cell colors. BLACK is the conventional background.

    GREY and MAROON are accepted aliases for GRAY and BROWN.
    """

    BLACK = 0
    BLUE = 1
    RED = 2
    GREEN = 3
    YELLOW = 4
    GRAY = 5
    GREY = 5
    PINK = 6
    ORANGE = 7
    TEAL = 8
    BROWN = 9
    MAROON = 9

    @property
    def canonical_name(self) -> str:
        return COLOR_NAMES[self.value]


COLOR_NAMES: tuple[str, ...] = (
    "Black", "Blue", "Red", "Green", "Yellow",
    "Gray", "Pink", "Orange", "Teal", "Brown",
)

#: Tokens decode_grid_text accepts beyond the canonical names.
DEFAULT_COLOR_ALIASES: dict[str, Color] = {
    "Grey": Color.GRAY,
    "Maroon": Color.BROWN,
}

ALL_COLORS: tuple[Color, ...] = tuple(Color(i) for i in range(NUM_COLORS))
NOT_BLACK: tuple[Color, ...] = ALL_COLORS[1:]


class GridError(ValueError):
    """Malformed grid, task, or codec input."""


@dataclass(frozen=True)
class Grid:
    """An immutable width*height field of color indices.

    Cells are stored row-major (index = y*width + x) in a bytes buffer, so
    equality, hashing, and copying are cheap and mutation is impossible.
    """

    width: int
    height: int
    cells: bytes

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise GridError(f"grid sides must be >= 1, got {self.width}x{self.height}")
        if len(self.cells) != self.width * self.height:
            raise GridError(
                f"cell buffer has {len(self.cells)} entries for a "
                f"{self.width}x{self.height} grid"
            )
        if any(c >= NUM_COLORS for c in self.cells):
            bad = max(self.cells)
            raise GridError(f"cell value {bad} out of range 0-{NUM_COLORS - 1}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Grid":
        """Build from row-major nested sequences (row j holds y=j)."""
        if not rows:
            raise GridError("no rows")
        width = len(rows[0])
        for j, row in enumerate(rows):
            if len(row) != width:
                raise GridError(f"ragged rows: row {j} has {len(row)} cells, expected {width}")
        flat = bytes(int(v) for row in rows for v in row)
        return cls(width, len(rows), flat)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "Grid":
        """Build from an (h, w) integer array; array rows are grid rows."""
        a = np.asarray(arr)
        if a.ndim != 2:
            raise GridError(f"expected a 2D array, got shape {a.shape}")
        if a.size and (a.min() < 0 or a.max() >= NUM_COLORS):
            raise GridError("array values out of color range 0-9")
        h, w = a.shape
        return cls(int(w), int(h), a.astype(np.uint8).tobytes())

    @classmethod
    def filled(cls, width: int, height: int, color: int = Color.BLACK) -> "Grid":
        return cls(width, height, bytes([int(color)]) * (width * height))

    # -- accessors ---------------------------------------------------------

    def at(self, x: int, y: int) -> int:
        if not self.in_bounds(x, y):
            raise GridError(f"({x}, {y}) out of bounds for {self.width}x{self.height}")
        return self.cells[y * self.width + x]

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height

    def rows(self) -> list[list[int]]:
        w = self.width
        return [list(self.cells[j * w:(j + 1) * w]) for j in range(self.height)]

    def to_array(self) -> np.ndarray:
        """Copy out as an (h, w) uint8 array."""
        return np.frombuffer(self.cells, dtype=np.uint8).reshape(self.height, self.width).copy()

    def coords(self) -> Iterator[tuple[int, int]]:
        for y in range(self.height):
            for x in range(self.width):
                yield x, y

    def count(self, color: int) -> int:
        return self.cells.count(int(color))

    def is_task_sized(self) -> bool:
        return self.width <= MAX_TASK_SIDE and self.height <= MAX_TASK_SIDE

    # -- derived grids -----------------------------------------------------

    def with_cell(self, x: int, y: int, color: int) -> "Grid":
        if not self.in_bounds(x, y):
            raise GridError(f"({x}, {y}) out of bounds for {self.width}x{self.height}")
        buf = bytearray(self.cells)
        buf[y * self.width + x] = int(color)
        return Grid(self.width, self.height, bytes(buf))

    def transpose(self) -> "Grid":
        w, h = self.width, self.height
        buf = bytearray(w * h)
        for y in range(h):
            row = self.cells[y * w:(y + 1) * w]
            for x in range(w):
                buf[x * h + y] = row[x]
        return Grid(h, w, bytes(buf))

    def map_colors(self, perm: Sequence[int]) -> "Grid":
        """Relabel every cell through perm (a table of 10 color indices)."""
        if len(perm) != NUM_COLORS or sorted(perm) != list(range(NUM_COLORS)):
            raise GridError(f"not a permutation of 0-{NUM_COLORS - 1}: {perm!r}")
        table = bytes(perm) + bytes(range(NUM_COLORS, 256))
        return Grid(self.width, self.height, self.cells.translate(table))

    def __str__(self) -> str:
        return encode_grid_text(self)


# -- task ------------------------------------------------------------------


@dataclass(frozen=True)
class Task:
    """K train input-output pairs plus one or more test inputs."""

    train: tuple[tuple[Grid, Grid], ...]
    test_inputs: tuple[Grid, ...]
    test_outputs: tuple[Grid, ...] | None = None
    id: str = ""

    def __post_init__(self) -> None:
        if not self.train:
            raise GridError("task needs at least one train pair")
        if not self.test_inputs:
            raise GridError("task needs at least one test input")
        if self.test_outputs is not None and len(self.test_outputs) != len(self.test_inputs):
            raise GridError(
                f"{len(self.test_outputs)} test outputs for "
                f"{len(self.test_inputs)} test inputs"
            )
        for g in self.all_grids():
            if not g.is_task_sized():
                raise GridError(
                    f"task grid {g.width}x{g.height} exceeds {MAX_TASK_SIDE} per side"
                )

    def all_grids(self) -> Iterator[Grid]:
        for gin, gout in self.train:
            yield gin
            yield gout
        yield from self.test_inputs
        if self.test_outputs is not None:
            yield from self.test_outputs


def _grid_from_json_rows(rows: object, where: str) -> Grid:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise GridError(f"{where}: expected a non-empty 2D array")
    width = len(rows[0])
    if width < 1:
        raise GridError(f"{where}: empty row")
    for j, row in enumerate(rows):
        if len(row) != width:
            raise GridError(f"{where}: ragged rows (row {j})")
        for i, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v <= 9:
                raise GridError(f"{where}: cell ({i}, {j}) value {v!r} out of range 0-9")
    if width > MAX_TASK_SIDE or len(rows) > MAX_TASK_SIDE:
        raise GridError(
            f"{where}: {width}x{len(rows)} exceeds {MAX_TASK_SIDE} cells per side"
        )
    return Grid.from_rows(rows)


def parse_task(data: bytes | str, task_id: str = "") -> Task:
    """Parse the community JSON task format.

    The document has "train"/"test" arrays of {"input", "output"} objects
    whose values are row-major 2D integer arrays. Test outputs are optional.
    """
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as e:
        raise GridError(f"malformed task JSON: {e}") from None
    if not isinstance(doc, dict) or "train" not in doc or "test" not in doc:
        raise GridError("task JSON must be an object with 'train' and 'test' arrays")

    train: list[tuple[Grid, Grid]] = []
    for k, pair in enumerate(doc["train"]):
        if not isinstance(pair, dict) or "input" not in pair or "output" not in pair:
            raise GridError(f"train[{k}] must have 'input' and 'output'")
        train.append((
            _grid_from_json_rows(pair["input"], f"train[{k}].input"),
            _grid_from_json_rows(pair["output"], f"train[{k}].output"),
        ))

    test_inputs: list[Grid] = []
    test_outputs: list[Grid] = []
    have_outputs = True
    for k, pair in enumerate(doc["test"]):
        if not isinstance(pair, dict) or "input" not in pair:
            raise GridError(f"test[{k}] must have 'input'")
        test_inputs.append(_grid_from_json_rows(pair["input"], f"test[{k}].input"))
        if "output" in pair and pair["output"] is not None:
            test_outputs.append(_grid_from_json_rows(pair["output"], f"test[{k}].output"))
        else:
            have_outputs = False

    return Task(
        train=tuple(train),
        test_inputs=tuple(test_inputs),
        test_outputs=tuple(test_outputs) if have_outputs else None,
        id=task_id or str(doc.get("id", "")),
    )


def task_to_json(task: Task) -> str:
    """Inverse of parse_task (canonical, key-sorted, no whitespace)."""
    doc: dict = {
        "train": [{"input": i.rows(), "output": o.rows()} for i, o in task.train],
        "test": [],
    }
    for k, gin in enumerate(task.test_inputs):
        entry: dict = {"input": gin.rows()}
        if task.test_outputs is not None:
            entry["output"] = task.test_outputs[k].rows()
        doc["test"].append(entry)
    if task.id:
        doc["id"] = task.id
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


# -- text codec ------------------------------------------------------------


def encode_grid_text(grid: Grid) -> str:
    """Render as one line per row of space-separated canonical color names."""
    w = grid.width
    return "\n".join(
        " ".join(COLOR_NAMES[c] for c in grid.cells[j * w:(j + 1) * w])
        for j in range(grid.height)
    )


def decode_grid_text(text: str, aliases: dict[str, Color] | None = None) -> Grid:
    """Inverse of encode_grid_text; also accepts configured alias tokens."""
    if aliases is None:
        aliases = DEFAULT_COLOR_ALIASES
    lookup: dict[str, int] = {name: i for i, name in enumerate(COLOR_NAMES)}
    for alias, color in aliases.items():
        lookup[alias] = int(color)

    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines:
        raise GridError("no grid rows in text")
    rows: list[list[int]] = []
    width: int | None = None
    for j, line in enumerate(lines):
        tokens = line.split()
        if width is None:
            width = len(tokens)
        elif len(tokens) != width:
            raise GridError(f"ragged lines: line {j} has {len(tokens)} tokens, expected {width}")
        row = []
        for tok in tokens:
            if tok not in lookup:
                raise GridError(f"unknown color token {tok!r}")
            row.append(lookup[tok])
        rows.append(row)
    return Grid.from_rows(rows)


# -- augmentations ---------------------------------------------------------


def identity_permutation() -> tuple[int, ...]:
    return tuple(range(NUM_COLORS))


def invert_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


@dataclass(frozen=True)
class Augmentation:
    """An invertible grid transform: axis transpose or color relabeling."""

    kind: str  # "transpose" | "color_permute"
    perm: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("transpose", "color_permute"):
            raise GridError(f"unknown augmentation kind {self.kind!r}")
        if self.kind == "color_permute":
            if self.perm is None or sorted(self.perm) != list(range(NUM_COLORS)):
                raise GridError("color_permute needs a permutation of 0-9")
        elif self.perm is not None:
            raise GridError("transpose takes no permutation")

    def inverse(self) -> "Augmentation":
        if self.kind == "transpose":
            return self
        return Augmentation("color_permute", invert_permutation(self.perm))

    def label(self) -> str:
        if self.kind == "transpose":
            return "transpose"
        return "perm:" + "".join(str(p) for p in self.perm)


def transpose_augmentation() -> Augmentation:
    return Augmentation("transpose")


def color_permute_augmentation(perm: Sequence[int]) -> Augmentation:
    return Augmentation("color_permute", tuple(int(p) for p in perm))


def apply_augmentation(aug: Augmentation, grid: Grid) -> Grid:
    if aug.kind == "transpose":
        return grid.transpose()
    return grid.map_colors(aug.perm)


def apply_augmentations(augs: Iterable[Augmentation], grid: Grid) -> Grid:
    for aug in augs:
        grid = apply_augmentation(aug, grid)
    return grid


def invert_augmentations(augs: Sequence[Augmentation]) -> list[Augmentation]:
    """Inverse of the composite apply_augmentations(augs, .)."""
    return [aug.inverse() for aug in reversed(augs)]


def augment_task(task: Task, augs: Sequence[Augmentation]) -> Task:
    """Apply a transform sequence to every grid of a task."""
    f = lambda g: apply_augmentations(augs, g)
    return Task(
        train=tuple((f(i), f(o)) for i, o in task.train),
        test_inputs=tuple(f(g) for g in task.test_inputs),
        test_outputs=None if task.test_outputs is None
        else tuple(f(g) for g in task.test_outputs),
        id=task.id,
    )


# -- hashing ---------------------------------------------------------------


def canonical_hash(grid: Grid) -> str:
    """Stable 128-bit digest of (w, h, cells), hex-encoded.

    Equal grids always collide; unequal grids collide with ~2^-128
    probability. Stable across runs and platforms (fixed byte layout).
    """
    h = hashlib.blake2b(digest_size=16)
    h.update(struct.pack("<II", grid.width, grid.height))
    h.update(grid.cells)
    return h.hexdigest()


def hash_grids(grids: Sequence[Grid]) -> str:
    """Digest of an ordered grid sequence (for multi-test attempt tuples)."""
    h = hashlib.blake2b(digest_size=16)
    for g in grids:
        h.update(bytes.fromhex(canonical_hash(g)))
    return h.hexdigest()
