"""arcsmith: grid-puzzle synthesis, sandboxed candidate execution, and evaluation."""

from .grid import (
    Augmentation,
    Color,
    Grid,
    GridError,
    Task,
    apply_augmentation,
    canonical_hash,
    decode_grid_text,
    encode_grid_text,
    parse_task,
)

__version__ = "0.1.0"

__all__ = [
    "Augmentation",
    "Color",
    "Grid",
    "GridError",
    "Task",
    "apply_augmentation",
    "canonical_hash",
    "decode_grid_text",
    "encode_grid_text",
    "parse_task",
    "__version__",
]
