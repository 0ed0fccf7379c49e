"""Bundled seed programs.

Each seed module carries a `# concepts:` / `# description:` comment header,
a deterministic transform(grid), a stochastic generate(rng), and optionally a
PALETTE of colors the transform treats specially (exempted from the
color-permutation check). The registry parses the headers straight from the
module source, so the prompt text and the running code cannot drift apart.
"""

from __future__ import annotations

import importlib
import inspect

from ..descriptions import parse_header
from ..runtime import SeedProgram

SEED_IDS = (
    "0d3d703e",
    "1b2d62fb",
    "0dfd9992",
    "2072aba6",
    "ae58858e",
    "7f4411dc",
    "5582e5ca",
    "25ff71a9",
    "62c24649",
    "4347f46a",
    "0ca9ddb6",
    "6150a2bd",
    "3aa6fb7a",
    "21f83797",
)


def load_seed(seed_id: str) -> SeedProgram:
    module = importlib.import_module(f".seed_{seed_id}", __package__)
    source = inspect.getsource(module)
    header = parse_header(source)
    palette = tuple(int(c) for c in getattr(module, "PALETTE", ()))
    return SeedProgram(
        id=seed_id,
        concepts=header.concepts,
        description=header.description,
        transform=module.transform,
        generator=module.generate,
        source_text=source,
        palette=palette,
    )


def builtin_seeds() -> list[SeedProgram]:
    return [load_seed(seed_id) for seed_id in SEED_IDS]


def builtin_registry() -> dict[str, SeedProgram]:
    return {seed.id: seed for seed in builtin_seeds()}
