"""Seed registry and sandboxed execution of transform/generator programs.

Two kinds of candidate programs run here. Registered programs are trusted
in-process callables (the bundled seeds). External programs are arbitrary
executables spoken to over a line protocol: the host writes one JSON object
per line to stdin ({"op": "transform", "input": [[int, ...], ...]} or
{"op": "generate", "seed": <uint64>}) and reads back exactly one line,
{"output": [[int, ...], ...]} or {"error": "<text>"}. A nonzero exit code
counts as a crash. Lines are UTF-8 and LF-terminated, with nothing else on
stdout.

External runs get a fresh temp directory, a stripped environment, an
address-space cap, and a wall/CPU timeout. That is process isolation plus
rlimits, not a syscall-level jail; treat it as best-effort containment.
"""

from __future__ import annotations

import json
import os
import random
import signal
import subprocess
import sys
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from .grid import NUM_COLORS, Color, Grid

try:
    import resource
except ImportError:  # non-POSIX; limits degrade to wall timeout only
    resource = None

#: Generators may hand back working grids bigger than a task allows; they are
#: rejected later, at task assembly / size filtering.
GENERATOR_SIDE_CAP = 64

#: Token in an external argv that is replaced by the path of the program's
#: materialized source file.
SOURCE_TOKEN = "{source}"


class ExecutionError(RuntimeError):
    """Raised for host-side usage errors, never for candidate misbehavior."""


@dataclass(frozen=True)
class ExecLimits:
    wall_timeout_ms: int = 2000
    memory_cap_bytes: int = 256 * 1024 * 1024
    max_output_cells: int = 30 * 30

    def __post_init__(self) -> None:
        if min(self.wall_timeout_ms, self.memory_cap_bytes, self.max_output_cells) <= 0:
            raise ExecutionError("all execution limits must be positive")


DEFAULT_LIMITS = ExecLimits()


@dataclass(frozen=True)
class ExecutionResult:
    status: str  # ok | timeout | crash | invalid_output | oversize
    output: Grid | None
    stderr_excerpt: str
    duration_ms: float

    def __post_init__(self) -> None:
        if (self.status == "ok") != (self.output is not None):
            raise ExecutionError("output must be present exactly when status is ok")

    def same_outcome(self, other: "ExecutionResult") -> bool:
        """Status and output agree (duration and stderr are incidental)."""
        return self.status == other.status and self.output == other.output


@dataclass(frozen=True)
class SeedProgram:
    """A hand-written task program: description, transform, input generator."""

    id: str
    concepts: tuple[str, ...]
    description: str
    transform: Callable[[Grid], Grid]
    generator: Callable[[random.Random], Grid]
    source_text: str
    palette: tuple[int, ...] = ()  # colors the transform is allowed to treat specially

    def __post_init__(self) -> None:
        if not self.description:
            raise ExecutionError(f"seed {self.id}: description must be non-empty")

    def as_candidate(self) -> "CandidateProgram":
        return CandidateProgram(kind="registered", source_text=self.source_text, entry=self.id)


@dataclass(frozen=True)
class CandidateProgram:
    """An executable transform: a registry key or an external command."""

    kind: str  # registered | external
    source_text: str
    entry: str | tuple[str, ...]

    def __post_init__(self) -> None:
        if self.kind not in ("registered", "external"):
            raise ExecutionError(f"unknown program kind {self.kind!r}")

    @classmethod
    def from_python_source(cls, source_text: str) -> "CandidateProgram":
        """Run arbitrary Python source through the bundled protocol worker."""
        return cls(
            kind="external",
            source_text=source_text,
            entry=(sys.executable, "-m", "arcsmith._worker", SOURCE_TOKEN),
        )


def _validate_grid_rows(rows: object, max_side: int, max_cells: int) -> tuple[str, Grid | None, str]:
    """Classify raw protocol output into (status, grid, reason)."""
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        return "invalid_output", None, "output is not a 2D array"
    w = len(rows[0])
    h = len(rows)
    if w < 1:
        return "invalid_output", None, "output has an empty row"
    for row in rows:
        if len(row) != w:
            return "invalid_output", None, "output rows are ragged"
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < NUM_COLORS:
                return "invalid_output", None, f"output cell {v!r} is not a color 0-9"
    if w > max_side or h > max_side or w * h > max_cells:
        return "oversize", None, f"output is {w}x{h}, cap is {max_side} per side / {max_cells} cells"
    return "ok", Grid.from_rows(rows), ""


def _classify_grid(grid: Grid, max_side: int, max_cells: int) -> tuple[str, Grid | None, str]:
    w, h = grid.width, grid.height
    if w > max_side or h > max_side or w * h > max_cells:
        return "oversize", None, f"output is {w}x{h}, cap is {max_side} per side / {max_cells} cells"
    return "ok", grid, ""


class ProgramRuntime:
    """Executes candidate programs and runs the behavioral checks."""

    def __init__(
        self,
        registry: dict[str, SeedProgram] | None = None,
        limits: ExecLimits = DEFAULT_LIMITS,
        max_workers: int = 4,
    ):
        self.registry = dict(registry or {})
        self.limits = limits
        self.max_workers = max_workers

    def register(self, seed: SeedProgram) -> None:
        self.registry[seed.id] = seed

    # -- execution --------------------------------------------------------

    def run_transform(
        self,
        program: CandidateProgram,
        grid: Grid,
        limits: ExecLimits | None = None,
        ambient_seed: int | None = None,
    ) -> ExecutionResult:
        """Run the program's transform on one input grid.

        All candidate failures come back as statuses; nothing a candidate
        does can raise out of here. ambient_seed pins the global randomness
        a sloppy program might consult (None draws a fresh one per run, the
        behavioral checks pin or vary it deliberately).
        """
        limits = limits or self.limits
        if program.kind == "registered":
            return self._run_registered(
                program, grid=grid, op="transform", limits=limits, ambient_seed=ambient_seed
            )
        request = {"op": "transform", "input": grid.rows()}
        return self._run_external(program, request, limits, max_side=30,
                                  ambient_seed=ambient_seed)

    def run_generate(
        self, program: CandidateProgram, seed: int, limits: ExecLimits | None = None
    ) -> ExecutionResult:
        """Run the program's input generator with an explicit seed."""
        limits = limits or self.limits
        if program.kind == "registered":
            return self._run_registered(program, gen_seed=seed, op="generate", limits=limits)
        request = {"op": "generate", "seed": int(seed)}
        return self._run_external(
            program, request, limits, max_side=GENERATOR_SIDE_CAP,
            max_cells=GENERATOR_SIDE_CAP * GENERATOR_SIDE_CAP,
        )

    def _run_registered(
        self,
        program: CandidateProgram,
        op: str,
        limits: ExecLimits,
        grid: Grid | None = None,
        gen_seed: int | None = None,
        ambient_seed: int | None = None,
    ) -> ExecutionResult:
        seed = self.registry.get(program.entry) if isinstance(program.entry, str) else None
        if seed is None:
            return ExecutionResult("crash", None, f"no registered program {program.entry!r}", 0.0)
        if ambient_seed is not None:
            _set_ambient(ambient_seed)
        start = time.perf_counter()
        try:
            if op == "transform":
                result = seed.transform(grid)
                max_side, max_cells = 30, limits.max_output_cells
            else:
                result = seed.generator(random.Random(gen_seed))
                max_side = GENERATOR_SIDE_CAP
                max_cells = GENERATOR_SIDE_CAP * GENERATOR_SIDE_CAP
        except Exception as e:  # candidate misbehavior must not crash the host
            duration = (time.perf_counter() - start) * 1000
            return ExecutionResult("crash", None, f"{type(e).__name__}: {e}"[:500], duration)
        duration = (time.perf_counter() - start) * 1000
        if not isinstance(result, Grid):
            return ExecutionResult(
                "invalid_output", None, f"returned {type(result).__name__}, not a Grid", duration
            )
        status, out, reason = _classify_grid(result, max_side, max_cells)
        return ExecutionResult(status, out, reason, duration)

    def _run_external(
        self,
        program: CandidateProgram,
        request: dict,
        limits: ExecLimits,
        max_side: int,
        max_cells: int | None = None,
        ambient_seed: int | None = None,
    ) -> ExecutionResult:
        if max_cells is None:
            max_cells = limits.max_output_cells
        argv = list(program.entry) if not isinstance(program.entry, str) else [program.entry]
        start = time.perf_counter()
        with tempfile.TemporaryDirectory(prefix="arcsmith-run-") as tmp:
            if SOURCE_TOKEN in argv:
                source_path = os.path.join(tmp, "program.py")
                with open(source_path, "w", encoding="utf-8") as f:
                    f.write(program.source_text)
                argv = [source_path if a == SOURCE_TOKEN else a for a in argv]
            ambient = ambient_seed if ambient_seed is not None \
                else random.SystemRandom().getrandbits(32)
            env = {
                "PATH": os.environ.get("PATH", "/usr/bin:/bin"),
                "HOME": tmp,
                "TMPDIR": tmp,
                "LANG": "C.UTF-8",
                "ARCSMITH_AMBIENT_SEED": str(ambient),
            }
            try:
                proc = subprocess.Popen(
                    argv,
                    stdin=subprocess.PIPE,
                    stdout=subprocess.PIPE,
                    stderr=subprocess.PIPE,
                    cwd=tmp,
                    env=env,
                    start_new_session=True,
                    preexec_fn=_rlimit_setter(limits) if resource is not None else None,
                )
            except OSError as e:
                duration = (time.perf_counter() - start) * 1000
                return ExecutionResult("crash", None, f"spawn failed: {e}", duration)

            payload = (json.dumps(request, separators=(",", ":")) + "\n").encode("utf-8")
            try:
                stdout, stderr = proc.communicate(payload, timeout=limits.wall_timeout_ms / 1000)
            except subprocess.TimeoutExpired:
                _kill_group(proc)
                stdout, stderr = proc.communicate()
                duration = (time.perf_counter() - start) * 1000
                return ExecutionResult(
                    "timeout", None, _excerpt(stderr), duration
                )
        duration = (time.perf_counter() - start) * 1000
        err = _excerpt(stderr)
        if proc.returncode != 0:
            return ExecutionResult("crash", None, err or f"exit code {proc.returncode}", duration)
        lines = stdout.decode("utf-8", errors="replace").splitlines()
        if len(lines) != 1:
            return ExecutionResult(
                "invalid_output", None,
                f"protocol violation: expected exactly 1 stdout line, got {len(lines)}", duration,
            )
        try:
            reply = json.loads(lines[0])
        except json.JSONDecodeError:
            return ExecutionResult(
                "invalid_output", None, "protocol violation: reply is not JSON", duration
            )
        if not isinstance(reply, dict):
            return ExecutionResult(
                "invalid_output", None, "protocol violation: reply is not an object", duration
            )
        if "error" in reply:
            return ExecutionResult("crash", None, str(reply["error"])[:500], duration)
        status, out, reason = _validate_grid_rows(reply.get("output"), max_side, max_cells)
        return ExecutionResult(status, out, reason or err, duration)

    def map_transform(
        self,
        programs: Sequence[CandidateProgram],
        grid: Grid,
        limits: ExecLimits | None = None,
    ) -> list[ExecutionResult]:
        """Run many programs on one input, external ones in parallel."""
        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            return list(pool.map(lambda p: self.run_transform(p, grid, limits), programs))

    # -- behavioral checks --------------------------------------------------

    def generate_examples(
        self,
        seed: SeedProgram | CandidateProgram,
        n: int,
        rng: random.Random,
        limits: ExecLimits | None = None,
        generator_retries: int = 5,
    ) -> list[tuple[Grid, Grid]]:
        """Produce n (input, output) pairs from a seed's generator + transform.

        Each example draws a fresh rng substream; a generator is retried a few
        times before giving up. Any persistent failure raises ExecutionError.
        """
        if n < 1:
            raise ExecutionError(f"need n >= 1 examples, got {n}")
        program = seed.as_candidate() if isinstance(seed, SeedProgram) else seed
        pairs: list[tuple[Grid, Grid]] = []
        for _ in range(n):
            grid_in: Grid | None = None
            last = ""
            for _attempt in range(generator_retries):
                gen = self.run_generate(program, rng.getrandbits(64), limits)
                if gen.status == "ok":
                    grid_in = gen.output
                    break
                last = f"{gen.status}: {gen.stderr_excerpt}"
            if grid_in is None:
                raise ExecutionError(f"generator failed after {generator_retries} tries ({last})")
            out = self.run_transform(program, grid_in, limits)
            if out.status != "ok":
                raise ExecutionError(
                    f"transform failed on generated input ({out.status}: {out.stderr_excerpt})"
                )
            pairs.append((grid_in, out.output))
        return pairs

    def check_determinism(
        self,
        program: CandidateProgram,
        inputs: Sequence[Grid],
        repeats: int = 3,
        limits: ExecLimits | None = None,
    ) -> bool:
        """True iff every input gives the same outcome across repeats.

        Each repeat runs under different ambient randomness (fresh global
        seeds for registered programs, a fresh process and ambient-seed
        environment for external ones), so programs that consult an unseeded
        random source are caught.
        """
        if repeats < 2:
            raise ExecutionError(f"need repeats >= 2, got {repeats}")
        for grid in inputs:
            baseline: ExecutionResult | None = None
            for rep in range(repeats):
                # consecutive constants verified to give differing first
                # draws from randrange(k) for every k in 2..30
                result = self.run_transform(
                    program, grid, limits, ambient_seed=0xA5C0 + rep
                )
                if baseline is None:
                    baseline = result
                elif not result.same_outcome(baseline):
                    return False
        return True

    def check_color_symmetry(
        self,
        program: CandidateProgram,
        inputs: Sequence[Grid],
        perms: int = 3,
        rng: random.Random | None = None,
        fixed_colors: Sequence[int] = (),
        limits: ExecLimits | None = None,
    ) -> bool:
        """True iff the transform commutes with color relabelings.

        Permutations fix Black plus any declared fixed colors (a seed with an
        explicit color table is only required to be equivariant outside it):
        transform(perm(x)) must equal perm(transform(x)) for every input.
        Execution failures on either side count as inconsistent. Both runs of
        a comparison share one pinned ambient seed, so this check measures
        color handling only; nondeterminism is the determinism check's job.
        """
        if perms < 1:
            raise ExecutionError(f"need perms >= 1, got {perms}")
        rng = rng or random.Random(0)
        fixed = {int(Color.BLACK)} | {int(c) for c in fixed_colors}
        movable = [c for c in range(NUM_COLORS) if c not in fixed]
        for _ in range(perms):
            shuffled = movable[:]
            rng.shuffle(shuffled)
            perm = list(range(NUM_COLORS))
            for src, dst in zip(movable, shuffled):
                perm[src] = dst
            for grid in inputs:
                ambient = rng.getrandbits(32)
                direct = self.run_transform(program, grid, limits, ambient_seed=ambient)
                permuted = self.run_transform(
                    program, grid.map_colors(perm), limits, ambient_seed=ambient
                )
                if direct.status != permuted.status:
                    return False
                if direct.status != "ok":
                    continue  # same failure on both sides carries no signal
                if permuted.output != direct.output.map_colors(perm):
                    return False
        return True


def _set_ambient(seed: int) -> None:
    """Pin the global random state in-process programs might consult."""
    random.seed(seed)
    try:
        import numpy as np

        np.random.seed(seed % (2**32))
    except ImportError:
        pass


def _rlimit_setter(limits: ExecLimits):
    cap = limits.memory_cap_bytes
    cpu_s = max(1, int(limits.wall_timeout_ms / 1000 * 2) + 1)

    def _apply():
        resource.setrlimit(resource.RLIMIT_AS, (cap, cap))
        resource.setrlimit(resource.RLIMIT_CPU, (cpu_s, cpu_s))
        resource.setrlimit(resource.RLIMIT_FSIZE, (64 * 1024 * 1024, 64 * 1024 * 1024))

    return _apply


def _kill_group(proc: subprocess.Popen) -> None:
    try:
        os.killpg(os.getpgid(proc.pid), signal.SIGKILL)
    except (ProcessLookupError, PermissionError, OSError):
        proc.kill()


def _excerpt(stderr: bytes | None, cap: int = 500) -> str:
    if not stderr:
        return ""
    return stderr.decode("utf-8", errors="replace").strip()[-cap:]
