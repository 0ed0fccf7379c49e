"""Synthetic problem generation: remix descriptions, retrieve similar seeds,
generate code, execute, filter, persist, and emit fine-tuning datasets.

The pipeline grows new problems out of the seed corpus: an LLM brainstorms
fresh concept/description pairs from sampled seed descriptions, similar seeds
are retrieved by embedding to ground code generation, and the generated
program is executed and pushed through five behavioral filters before it may
be persisted. Persisted problems re-validate: stored examples always re-run.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
import random
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .client import ModelClient
from .descriptions import DescriptionParseError, parse_header
from .grid import MAX_TASK_SIDE, Grid
from .prompts import (
    codegen_prompt,
    description_block,
    description_prompt,
    induction_messages,
    transduction_messages,
)
from .runtime import CandidateProgram, ExecLimits, ProgramRuntime, SeedProgram

log = logging.getLogger(__name__)

FILTER_NAMES = ("executes", "deterministic", "grid_size", "color_invariance", "non_identity")


class SynthesisError(RuntimeError):
    pass


@dataclass(frozen=True)
class ProblemDescription:
    concepts: tuple[str, ...]
    description: str
    provenance: tuple[str, ...] = ()  # ids of the seeds that prompted it

    def __post_init__(self) -> None:
        if not self.concepts or not self.description:
            raise SynthesisError("concepts and description must be non-empty")


@dataclass(frozen=True)
class FilterReport:
    """Pass/fail plus reason for each of the five problem filters."""

    entries: tuple[tuple[str, bool, str], ...]

    def __post_init__(self) -> None:
        if tuple(name for name, _, _ in self.entries) != FILTER_NAMES:
            raise SynthesisError(f"filter report must cover {FILTER_NAMES} in order")

    @property
    def all_passed(self) -> bool:
        return all(passed for _, passed, _ in self.entries)

    def failed(self) -> list[str]:
        return [name for name, passed, _ in self.entries if not passed]

    def reason(self, name: str) -> str:
        for entry_name, _, reason in self.entries:
            if entry_name == name:
                return reason
        raise KeyError(name)

    def to_json(self) -> dict:
        return {name: {"passed": passed, "reason": reason}
                for name, passed, reason in self.entries}

    @classmethod
    def from_json(cls, doc: dict) -> "FilterReport":
        return cls(tuple(
            (name, bool(doc[name]["passed"]), str(doc[name]["reason"]))
            for name in FILTER_NAMES
        ))


@dataclass(frozen=True)
class GeneratedProblem:
    uid: str
    concepts: tuple[str, ...]
    description: str
    source_text: str
    examples: tuple[tuple[Grid, Grid], ...]
    filter_report: FilterReport
    provenance: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.filter_report.all_passed:
            raise SynthesisError("persisted problems must pass every filter")
        if len(self.examples) < 4:
            raise SynthesisError("persisted problems need at least 4 examples")


def problem_uid(source_text: str, description: str) -> str:
    digest = hashlib.sha256(f"{description}\n\x00{source_text}".encode("utf-8"))
    return digest.hexdigest()[:16]


# -- stage 1: description sampling ----------------------------------------------


def sample_descriptions(
    seed_descs: Sequence[SeedProgram | ProblemDescription],
    num: int,
    client: ModelClient,
) -> list[ProblemDescription]:
    """Brainstorm new concept/description pairs from sampled seed headers.

    Fenced blocks in the reply that parse as a concepts/description header
    become records; anything else is dropped with a logged reason. Raises
    when nothing at all parses.
    """
    if not seed_descs:
        raise SynthesisError("need at least one seed description to riff on")
    blocks = [description_block(s.concepts, s.description) for s in seed_descs]
    prompt = description_prompt(blocks, num)
    reply = client.chat([{"role": "user", "content": prompt}])
    provenance = tuple(getattr(s, "id", "") for s in seed_descs if getattr(s, "id", ""))

    out: list[ProblemDescription] = []
    dropped = 0
    for block in _fenced_blocks(reply):
        try:
            header = parse_header(block)
        except DescriptionParseError as e:
            dropped += 1
            log.info("dropped unparseable description block: %s", e)
            continue
        out.append(ProblemDescription(header.concepts, header.description, provenance))
    if not out:
        raise SynthesisError(f"no parseable description blocks in reply ({dropped} dropped)")
    return out


_FENCE_RE = re.compile(r"```(?:python)?[ \t]*\n(.*?)```", re.DOTALL)


def _fenced_blocks(text: str) -> list[str]:
    return [m.group(1) for m in _FENCE_RE.finditer(text)]


# -- stage 2: retrieval ------------------------------------------------------------


class SeedIndex:
    """Embedding index over seed descriptions for similarity retrieval."""

    def __init__(self, seeds: Sequence[SeedProgram], vectors: Sequence[Sequence[float]]):
        if len(seeds) != len(vectors):
            raise SynthesisError("one vector per seed required")
        self.seeds = list(seeds)
        self.vectors = [list(map(float, v)) for v in vectors]

    @classmethod
    def build(cls, seeds: Sequence[SeedProgram], client: ModelClient) -> "SeedIndex":
        texts = [embedding_text(s.concepts, s.description) for s in seeds]
        return cls(seeds, client.embed(texts))

    def retrieve(self, query_vector: Sequence[float], k: int) -> list[SeedProgram]:
        """Top-k seeds by cosine similarity, ties broken by seed id."""
        if not self.seeds:
            raise SynthesisError("empty seed index")
        scored = sorted(
            self.seeds_with_scores(query_vector), key=lambda pair: (-pair[1], pair[0].id)
        )
        return [seed for seed, _ in scored[:k]]

    def seeds_with_scores(self, query_vector: Sequence[float]):
        q = list(map(float, query_vector))
        return [(seed, _cosine(q, vec)) for seed, vec in zip(self.seeds, self.vectors)]


def embedding_text(concepts: Iterable[str], description: str) -> str:
    return f"concepts: {', '.join(concepts)}\ndescription: {description}"


def retrieve_similar_seeds(
    desc: ProblemDescription, k: int, index: SeedIndex, client: ModelClient
) -> list[SeedProgram]:
    (vector,) = client.embed([embedding_text(desc.concepts, desc.description)])
    return index.retrieve(vector, k)


def _cosine(a: list[float], b: list[float]) -> float:
    dot = sum(x * y for x, y in zip(a, b))
    na = math.sqrt(sum(x * x for x in a))
    nb = math.sqrt(sum(y * y for y in b))
    if na == 0 or nb == 0:
        return 0.0
    return dot / (na * nb)


# -- stage 3: code generation --------------------------------------------------------


def generate_code(
    desc: ProblemDescription,
    retrieved: Sequence[SeedProgram],
    library_text: str,
    client: ModelClient,
) -> str:
    """Ask for an implementation of the described puzzle; return its code block."""
    if not retrieved:
        raise SynthesisError("need at least one retrieved seed example")
    prompt = codegen_prompt(
        description=f"{', '.join(desc.concepts)}: {desc.description}",
        common_lib=library_text,
        example_sources=[s.source_text for s in retrieved],
    )
    reply = client.chat([{"role": "user", "content": prompt}])
    blocks = _fenced_blocks(reply)
    if not blocks:
        raise SynthesisError("no fenced code block in code-generation reply")
    return blocks[0].strip() + "\n"


# -- stage 4: execution + filtering -----------------------------------------------------


def filter_problem(
    source_text: str,
    runtime: ProgramRuntime,
    limits: ExecLimits | None = None,
    rng_seed: int = 0,
    num_examples: int = 4,
    program: CandidateProgram | None = None,
    fixed_colors: Sequence[int] = (),
) -> tuple[FilterReport, list[tuple[Grid, Grid]]]:
    """Run the five acceptance filters over a candidate problem's program.

    Returns the per-criterion report and the executed example pairs. The
    report is a pure function of (program behavior, limits, rng_seed).

    The criteria: the program executes end to end for at least four
    examples; its transform is deterministic; every grid stays within the
    task size bound; the transform commutes with color relabelings; and the
    examples are not all identities. A program with a declared color palette
    (fixed_colors) is only held to relabelings outside it.
    """
    rng = random.Random(rng_seed)
    if program is None:
        program = CandidateProgram.from_python_source(source_text)

    inputs: list[Grid] = []
    transforms = []
    gen_failures: list[str] = []
    for _ in range(num_examples):
        grid_in = None
        for _attempt in range(5):
            gen = runtime.run_generate(program, rng.getrandbits(64), limits)
            if gen.status == "ok":
                grid_in = gen.output
                break
            gen_failures.append(f"{gen.status}: {gen.stderr_excerpt}"[:120])
        if grid_in is None:
            break
        inputs.append(grid_in)
        transforms.append(runtime.run_transform(program, grid_in, limits))

    pairs = [
        (grid_in, result.output)
        for grid_in, result in zip(inputs, transforms)
        if result.status == "ok"
    ]

    # 1. generator and transform execute, yielding enough examples
    executed = [r for r in transforms if r.status in ("ok", "oversize")]
    if len(inputs) < num_examples:
        ex_pass, ex_reason = False, f"generator produced {len(inputs)}/{num_examples} inputs " \
                                    f"({'; '.join(gen_failures[-2:]) or 'no failures logged'})"
    elif len(executed) < num_examples:
        bad = next(r for r in transforms if r.status not in ("ok", "oversize"))
        ex_pass, ex_reason = False, f"transform {bad.status}: {bad.stderr_excerpt}"[:200]
    else:
        ex_pass, ex_reason = True, f"{len(executed)} examples executed"

    # 2. deterministic transform under varied ambient randomness
    if inputs:
        det_pass = runtime.check_determinism(program, inputs, repeats=3, limits=limits)
        det_reason = "outcomes stable across 3 repeats" if det_pass else \
            "outcomes differ across repeated runs"
    else:
        det_pass, det_reason = False, "no inputs to check"

    # 3. grid sizes within the task bound
    oversized = [r for r in transforms if r.status == "oversize"]
    big_inputs = [g for g in inputs if not g.is_task_sized()]
    big_outputs = [o for _, o in pairs if not o.is_task_sized()]
    size_pass = not oversized and not big_inputs and not big_outputs and bool(inputs)
    if size_pass:
        size_reason = f"all grids within {MAX_TASK_SIDE} per side"
    else:
        size_reason = (
            f"{len(big_inputs)} oversized inputs, "
            f"{len(oversized) + len(big_outputs)} oversized outputs"
        ) if inputs else "no inputs to check"

    # 4. consistency under color permutation
    if inputs:
        color_pass = runtime.check_color_symmetry(
            program, inputs, perms=3, rng=random.Random(rng.getrandbits(64)),
            fixed_colors=fixed_colors, limits=limits,
        )
        color_reason = "consistent under 3 color permutations" if color_pass else \
            "output changes under color relabeling"
    else:
        color_pass, color_reason = False, "no inputs to check"

    # 5. not all pairs are identities
    if pairs:
        identity = sum(1 for gin, gout in pairs if gin == gout)
        id_pass = identity < len(pairs)
        id_reason = f"{identity}/{len(pairs)} identity pairs"
    else:
        id_pass, id_reason = True, "no complete pairs to judge"

    report = FilterReport((
        ("executes", ex_pass, ex_reason),
        ("deterministic", det_pass, det_reason),
        ("grid_size", size_pass, size_reason),
        ("color_invariance", color_pass, color_reason),
        ("non_identity", id_pass, id_reason),
    ))
    return report, pairs


def build_problem(
    desc: ProblemDescription,
    source_text: str,
    runtime: ProgramRuntime,
    limits: ExecLimits | None = None,
    rng_seed: int = 0,
) -> tuple[GeneratedProblem | None, FilterReport]:
    """Filter a candidate; return the persistable problem when all pass."""
    report, pairs = filter_problem(source_text, runtime, limits, rng_seed)
    if not report.all_passed:
        return None, report
    problem = GeneratedProblem(
        uid=problem_uid(source_text, desc.description),
        concepts=desc.concepts,
        description=desc.description,
        source_text=source_text,
        examples=tuple(pairs),
        filter_report=report,
        provenance=desc.provenance,
    )
    return problem, report


def seed_to_problem(
    seed: SeedProgram,
    runtime: ProgramRuntime,
    limits: ExecLimits | None = None,
    rng_seed: int = 0,
    num_examples: int = 4,
) -> GeneratedProblem:
    """Run a bundled seed through the same filters and package it."""
    report, pairs = filter_problem(
        seed.source_text, runtime, limits, rng_seed, num_examples,
        program=seed.as_candidate(), fixed_colors=seed.palette,
    )
    if not report.all_passed:
        raise SynthesisError(f"seed {seed.id} failed filters: {report.failed()}")
    return GeneratedProblem(
        uid=seed.id,
        concepts=seed.concepts,
        description=seed.description,
        source_text=seed.source_text,
        examples=tuple(pairs),
        filter_report=report,
        provenance=(seed.id,),
    )


# -- persistence --------------------------------------------------------------------------


def save_problems_jsonl(problems: Iterable[GeneratedProblem], path: Path | str) -> int:
    """Append problems as JSONL, one object per line; returns count written."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    n = 0
    with open(path, "a", encoding="utf-8") as f:
        for p in problems:
            doc = {
                "uid": p.uid,
                "concepts": list(p.concepts),
                "description": p.description,
                "code": p.source_text,
                "examples": [[gin.rows(), gout.rows()] for gin, gout in p.examples],
                "filter_report": p.filter_report.to_json(),
                "provenance": list(p.provenance),
            }
            f.write(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")
            n += 1
    return n


def load_problems_jsonl(path: Path | str) -> list[GeneratedProblem]:
    out = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            doc = json.loads(line)
            out.append(GeneratedProblem(
                uid=doc["uid"],
                concepts=tuple(doc["concepts"]),
                description=doc["description"],
                source_text=doc["code"],
                examples=tuple(
                    (Grid.from_rows(i), Grid.from_rows(o)) for i, o in doc["examples"]
                ),
                filter_report=FilterReport.from_json(doc["filter_report"]),
                provenance=tuple(doc.get("provenance", ())),
            ))
    return out


def dedupe_problems(problems: Sequence[GeneratedProblem]) -> list[GeneratedProblem]:
    """Drop exact source-text duplicates, keeping first occurrences."""
    seen: set[str] = set()
    out = []
    for p in problems:
        if p.source_text in seen:
            continue
        seen.add(p.source_text)
        out.append(p)
    return out


# -- stage 5: fine-tuning dataset emission ---------------------------------------------------


@dataclass(frozen=True)
class FinetuneExample:
    mode: str  # induction | transduction
    messages: tuple[tuple[str, str], ...]
    uid: str = ""
    heldout_index: int = -1

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "uid": self.uid,
            "heldout_index": self.heldout_index,
            "messages": [{"role": r, "content": c} for r, c in self.messages],
        }


def finetune_examples(
    problem: GeneratedProblem, mode: str, heldout_policy: str = "each"
) -> list[FinetuneExample]:
    """Turn one problem into fine-tuning records.

    Each record holds one example out as the fake test: the prompt shows the
    remaining pairs plus the held-out input, and the target is the held-out
    output grid (transduction) or the problem's program text (induction).
    heldout_policy 'each' gives every example a turn; 'last' holds out only
    the final one.
    """
    if mode not in ("induction", "transduction"):
        raise SynthesisError(f"unknown finetune mode {mode!r}")
    if heldout_policy not in ("each", "last"):
        raise SynthesisError(f"unknown heldout policy {heldout_policy!r}")
    if len(problem.examples) < 2:
        raise SynthesisError(f"problem {problem.uid}: need >= 2 examples to hold one out")

    indices = range(len(problem.examples)) if heldout_policy == "each" \
        else [len(problem.examples) - 1]
    out = []
    for k in indices:
        train = [pair for i, pair in enumerate(problem.examples) if i != k]
        test_in, test_out = problem.examples[k]
        if mode == "transduction":
            messages = transduction_messages(train, test_in, test_out)
        else:
            messages = induction_messages(train, test_in, problem.source_text)
        out.append(FinetuneExample(mode, tuple(messages), problem.uid, k))
    return out


def emit_finetune_dataset(
    problems: Sequence[GeneratedProblem],
    mode: str,
    path: Path | str,
    heldout_policy: str = "each",
) -> int:
    """Write one JSONL record per (problem, held-out index); returns count."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    n = 0
    with open(path, "w", encoding="utf-8") as f:
        for problem in problems:
            for record in finetune_examples(problem, mode, heldout_policy):
                f.write(json.dumps(record.to_json(), sort_keys=True,
                                   separators=(",", ":")) + "\n")
                n += 1
    return n


# -- the whole pipeline -----------------------------------------------------------------------


def generate_problems(
    seeds: Sequence[SeedProgram],
    index: SeedIndex,
    client: ModelClient,
    runtime: ProgramRuntime,
    library_text: str,
    num_descriptions: int = 2,
    seeds_per_prompt: int = 3,
    retrieval_k: int = 3,
    rng: random.Random | None = None,
    limits: ExecLimits | None = None,
) -> tuple[list[GeneratedProblem], list[FilterReport]]:
    """Description sampling -> retrieval -> codegen -> execute/filter.

    Returns the problems that passed every filter plus the reports of the
    rejected candidates.
    """
    rng = rng or random.Random(0)
    sampled = rng.sample(list(seeds), min(seeds_per_prompt, len(seeds)))
    descriptions = sample_descriptions(sampled, num_descriptions, client)

    kept: list[GeneratedProblem] = []
    rejected: list[FilterReport] = []
    for desc in descriptions:
        retrieved = retrieve_similar_seeds(desc, retrieval_k, index, client)
        try:
            code = generate_code(desc, retrieved, library_text, client)
        except SynthesisError as e:
            log.info("codegen failed for %r: %s", desc.concepts, e)
            continue
        problem, report = build_problem(desc, code, runtime, limits,
                                        rng_seed=rng.getrandbits(32))
        if problem is not None:
            kept.append(problem)
        else:
            rejected.append(report)
    return dedupe_problems(kept), rejected
