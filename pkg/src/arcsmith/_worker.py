"""Protocol worker: hosts a Python-source candidate program as a subprocess.

Usage: python -m arcsmith._worker PROGRAM.py

Reads LF-delimited JSON requests on stdin ({"op": "transform", "input": ...}
or {"op": "generate", "seed": ...}), calls into the loaded program, and
writes exactly one JSON line per request. Program exceptions become
{"error": ...} replies; the loop only ends at stdin EOF. The program source
runs with the full grid library preloaded into its namespace, mirroring how
the bundled seeds are written.
"""

from __future__ import annotations

import inspect
import json
import os
import random
import sys

import numpy as np

from . import gridlib, symmetry
from .grid import Grid

_TRANSFORM_NAMES = ("transform", "main", "transform_grid")
_GENERATE_NAMES = ("generate", "generate_input")


def _program_namespace() -> dict:
    ns: dict = {"random": random, "np": np}
    from . import grid as grid_mod

    for mod in (grid_mod, gridlib, symmetry):
        for name in dir(mod):
            if not name.startswith("_"):
                ns[name] = getattr(mod, name)
    return ns


def _coerce_rows(value) -> list[list[int]]:
    if isinstance(value, Grid):
        return value.rows()
    if isinstance(value, np.ndarray):
        return [[int(v) for v in row] for row in value.tolist()]
    if isinstance(value, list):
        return [[int(v) for v in row] for row in value]
    raise TypeError(f"program returned {type(value).__name__}, not a grid")


def _coerce_grid(rows) -> Grid:
    return Grid.from_rows(rows)


def _find(ns: dict, names) -> object | None:
    for name in names:
        fn = ns.get(name)
        if callable(fn):
            return fn
    return None


def _call_generator(fn, seed: int):
    rng = random.Random(seed)
    random.seed(seed)  # some generators draw from the global source instead
    np.random.seed(seed % 2**32)
    params = inspect.signature(fn).parameters
    return fn(rng) if params else fn()


def main(argv: list[str]) -> int:
    if len(argv) != 1:
        print(json.dumps({"error": "usage: arcsmith._worker PROGRAM.py"}), flush=True)
        return 2
    ambient = os.environ.get("ARCSMITH_AMBIENT_SEED")
    if ambient is not None:
        random.seed(int(ambient))
        np.random.seed(int(ambient) % 2**32)

    ns = _program_namespace()
    try:
        with open(argv[0], "r", encoding="utf-8") as f:
            source = f.read()
        exec(compile(source, argv[0], "exec"), ns)
    except Exception as e:
        print(json.dumps({"error": f"program failed to load: {e}"}), flush=True)
        return 1

    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        try:
            request = json.loads(line)
            op = request.get("op")
            if op == "transform":
                fn = _find(ns, _TRANSFORM_NAMES)
                if fn is None:
                    raise NameError("no transform/main function defined")
                result = fn(_coerce_grid(request["input"]))
                reply = {"output": _coerce_rows(result)}
            elif op == "generate":
                fn = _find(ns, _GENERATE_NAMES)
                if fn is None:
                    raise NameError("no generate/generate_input function defined")
                result = _call_generator(fn, int(request["seed"]))
                reply = {"output": _coerce_rows(result)}
            else:
                reply = {"error": f"unknown op {op!r}"}
        except Exception as e:  # report and keep serving
            reply = {"error": f"{type(e).__name__}: {e}"[:500]}
        sys.stdout.write(json.dumps(reply, separators=(",", ":")) + "\n")
        sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
