"""Test-time decision logic.

Induction samples candidate programs, keeps the set F of those that
reproduce every train pair exactly, and answers from F (uniform draw or
majority vote over distinct test outputs). Transduction asks a predictor
for scored output candidates directly, optionally reranked across invertible
task augmentations (frequency first, mean score second). The ensemble tries
induction and falls back to transduction exactly when F is empty.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Protocol, Sequence

from .grid import (
    Augmentation,
    Grid,
    Task,
    apply_augmentations,
    augment_task,
    color_permute_augmentation,
    hash_grids,
    invert_augmentations,
    transpose_augmentation,
)
from .prompts import transduction_messages
from .runtime import CandidateProgram, ExecLimits, ProgramRuntime
from .synthgen import FinetuneExample

log = logging.getLogger(__name__)


class SolverError(RuntimeError):
    pass


@dataclass(frozen=True)
class SamplingConfig:
    """Induction sampling knobs; budget is the number of programs drawn."""

    budget: int = 2048
    temperature: float = 0.8
    top_p: float = 1.0


@dataclass(frozen=True)
class BeamCandidate:
    output: Grid
    score: float  # log-probability-like, higher is better


class InductionSampler(Protocol):
    def __call__(self, task: Task, count: int) -> list[CandidateProgram]: ...


class TransductionPredictor(Protocol):
    def __call__(self, task: Task, test_index: int) -> list[BeamCandidate]: ...


@dataclass(frozen=True)
class FilteredProgram:
    """A sampled program that explained every train pair, plus its test outputs."""

    program: CandidateProgram
    test_outputs: tuple[Grid, ...]

    def output_key(self) -> str:
        return hash_grids(self.test_outputs)


@dataclass(frozen=True)
class Prediction:
    """Ranked answer attempts for one task; each attempt covers every test input."""

    attempts: tuple[tuple[Grid, ...], ...]
    provenance: str  # induction | transduction | ensemble
    diagnostics: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        keys = [hash_grids(a) for a in self.attempts]
        if len(set(keys)) != len(keys):
            raise SolverError("attempts must be distinct")


# -- induction path ---------------------------------------------------------------


def induction_filter(
    task: Task,
    programs: Sequence[CandidateProgram],
    runtime: ProgramRuntime,
    limits: ExecLimits | None = None,
) -> list[FilteredProgram]:
    """Keep exactly the programs that reproduce every train output.

    A kept program also ran ok on every test input; programs that fail any
    test input are excluded even if they explained the train pairs.
    """
    kept: list[FilteredProgram] = []
    for program in programs:
        if not _explains_train(task, program, runtime, limits):
            continue
        outputs = []
        for test_in in task.test_inputs:
            res = runtime.run_transform(program, test_in, limits)
            if res.status != "ok":
                outputs = None
                break
            outputs.append(res.output)
        if outputs is not None:
            kept.append(FilteredProgram(program, tuple(outputs)))
    return kept


def _explains_train(task, program, runtime, limits) -> bool:
    for train_in, train_out in task.train:
        res = runtime.run_transform(program, train_in, limits)
        if res.status != "ok" or res.output != train_out:
            return False
    return True


def select_uniform(F: Sequence[FilteredProgram], k: int, rng: random.Random) -> Prediction:
    """Up to k distinct test outputs drawn uniformly over the programs of F.

    Programs weight the draw: an output produced by two programs is twice as
    likely to come first as one produced by a single program.
    """
    if not F:
        raise SolverError("cannot select from an empty filtered set")
    order = list(F)
    rng.shuffle(order)
    attempts: list[tuple[Grid, ...]] = []
    seen: set[str] = set()
    for fp in order:
        key = fp.output_key()
        if key in seen:
            continue
        seen.add(key)
        attempts.append(fp.test_outputs)
        if len(attempts) == k:
            break
    return Prediction(
        attempts=tuple(attempts),
        provenance="induction",
        diagnostics={"F_size": len(F), "distinct_outputs": len({f.output_key() for f in F}),
                     "selection": "uniform"},
    )


def majority_vote(F: Sequence[FilteredProgram], k: int) -> Prediction:
    """Top-k distinct test outputs by number of supporting programs.

    Ties break on the canonical output digest, ascending, so results are
    platform-stable.
    """
    if not F:
        raise SolverError("cannot vote over an empty filtered set")
    tallies: dict[str, list] = {}
    for fp in F:
        entry = tallies.setdefault(fp.output_key(), [0, fp.test_outputs])
        entry[0] += 1
    ranked = sorted(tallies.items(), key=lambda item: (-item[1][0], item[0]))
    attempts = tuple(outputs for _, (_, outputs) in ranked[:k])
    return Prediction(
        attempts=attempts,
        provenance="induction",
        diagnostics={"F_size": len(F), "distinct_outputs": len(tallies),
                     "selection": "majority", "votes": {key: n for key, (n, _) in ranked}},
    )


# -- false positives -----------------------------------------------------------------


@dataclass(frozen=True)
class FalsePositiveStats:
    rate: float
    total: int
    wrong: int


def false_positive_stats(F: Sequence[FilteredProgram], truth: Sequence[Grid]) -> FalsePositiveStats:
    """Fraction of filtered programs whose test prediction misses the truth."""
    if not F:
        raise SolverError("no filtered programs: task contributes no histogram entry")
    truth = tuple(truth)
    wrong = sum(1 for fp in F if fp.test_outputs != truth)
    return FalsePositiveStats(rate=wrong / len(F), total=len(F), wrong=wrong)


def fp_histogram(rates: Sequence[float], n_bins: int = 10) -> list[int]:
    """Counts of per-task false-positive rates in equal bins over [0, 1]."""
    bins = [0] * n_bins
    for rate in rates:
        idx = min(int(rate * n_bins), n_bins - 1)
        bins[idx] += 1
    return bins


# -- transduction path ------------------------------------------------------------------


@dataclass(frozen=True)
class RankedOutput:
    output: Grid
    frequency: int
    mean_score: float


def rerank_with_augmentations(
    task: Task,
    predictor: TransductionPredictor,
    transforms: Sequence[Sequence[Augmentation]],
    test_index: int = 0,
) -> list[RankedOutput]:
    """Aggregate beam candidates across invertible task transforms.

    Each transform set is applied to the whole task, the predictor runs on
    the transformed version, and its candidates are mapped back through the
    inverse. Distinct outputs are ranked by how many transforms produced
    them, then by mean score, then by digest. A predictor failure skips that
    transform only.
    """
    by_key: dict[str, dict] = {}
    used = 0
    for augs in transforms:
        transformed = augment_task(task, list(augs))
        try:
            candidates = predictor(transformed, test_index)
        except Exception as e:
            log.warning("predictor failed under %s: %s",
                        [a.label() for a in augs] or ["identity"], e)
            continue
        used += 1
        inverse = invert_augmentations(list(augs))
        seen_here: set[str] = set()
        for cand in candidates:
            output = apply_augmentations(inverse, cand.output)
            key = hash_grids([output])
            if key in seen_here:
                continue  # one vote and one score per transform
            seen_here.add(key)
            entry = by_key.setdefault(key, {"output": output, "freq": 0, "scores": []})
            entry["freq"] += 1
            entry["scores"].append(cand.score)
    if used == 0:
        raise SolverError("predictor failed under every transform")
    ranked = sorted(
        by_key.items(),
        key=lambda item: (-item[1]["freq"],
                          -(sum(item[1]["scores"]) / len(item[1]["scores"])),
                          item[0]),
    )
    return [
        RankedOutput(e["output"], e["freq"], sum(e["scores"]) / len(e["scores"]))
        for _, e in ranked
    ]


def default_rerank_transforms(rng: random.Random, n_color_perms: int = 3
                              ) -> list[list[Augmentation]]:
    """Identity, transpose, and a few random color relabelings."""
    out: list[list[Augmentation]] = [[], [transpose_augmentation()]]
    for _ in range(n_color_perms):
        perm = list(range(10))
        rng.shuffle(perm)
        out.append([color_permute_augmentation(perm)])
    return out


def transduction_predict(
    task: Task,
    predictor: TransductionPredictor,
    k: int,
    rerank_transforms: Sequence[Sequence[Augmentation]] | None = None,
) -> Prediction:
    """Top-k transduction attempts for every test input of a task."""
    per_test: list[list[Grid]] = []
    for test_index in range(len(task.test_inputs)):
        if rerank_transforms is None:
            candidates = sorted(predictor(task, test_index), key=lambda c: -c.score)
            outputs = _distinct([c.output for c in candidates])
        else:
            ranked = rerank_with_augmentations(task, predictor, rerank_transforms, test_index)
            outputs = [r.output for r in ranked]
        per_test.append(outputs[:k])
    attempts = tuple(zip(*per_test)) if all(per_test) else ()
    return Prediction(
        attempts=tuple(attempts),
        provenance="transduction",
        diagnostics={"reranked": rerank_transforms is not None},
    )


def _distinct(grids: Sequence[Grid]) -> list[Grid]:
    seen: set[str] = set()
    out = []
    for g in grids:
        key = hash_grids([g])
        if key not in seen:
            seen.add(key)
            out.append(g)
    return out


# -- ensemble ---------------------------------------------------------------------------


def ensemble_solve(
    task: Task,
    sampler: InductionSampler,
    predictor: TransductionPredictor,
    runtime: ProgramRuntime,
    k: int = 2,
    config: SamplingConfig = SamplingConfig(),
    selection: str = "uniform",
    rng: random.Random | None = None,
    limits: ExecLimits | None = None,
    rerank_transforms: Sequence[Sequence[Augmentation]] | None = None,
) -> Prediction:
    """Induction first; transduction exactly when no sampled program fits.

    The returned provenance records which branch answered, and diagnostics
    carry the filtered-set size either way.
    """
    rng = rng or random.Random(0)
    programs = sampler(task, config.budget)
    if len(programs) > config.budget:
        raise SolverError(f"sampler returned {len(programs)} > budget {config.budget}")
    F = induction_filter(task, programs, runtime, limits)
    if F:
        if selection == "majority":
            prediction = majority_vote(F, k)
        else:
            prediction = select_uniform(F, k, rng)
        diagnostics = dict(prediction.diagnostics)
        diagnostics.update(sampled=len(programs), budget=config.budget)
        return Prediction(prediction.attempts, "induction", diagnostics)
    prediction = transduction_predict(task, predictor, k, rerank_transforms)
    diagnostics = dict(prediction.diagnostics)
    diagnostics.update(sampled=len(programs), budget=config.budget, F_size=0)
    return Prediction(prediction.attempts, "transduction", diagnostics)


# -- test-time-training dataset ------------------------------------------------------------


@dataclass(frozen=True)
class TTTExample:
    """One fake-test record: train pair k of an augmented task plays test."""

    task_id: str
    fake_index: int
    augmentation: str
    example: FinetuneExample

    def to_json(self) -> dict:
        doc = self.example.to_json()
        doc.update(task_id=self.task_id, fake_index=self.fake_index,
                   augmentation=self.augmentation)
        return doc


def default_ttt_augmenter(rng: random.Random) -> list[Augmentation]:
    """A random combination of transposition and color relabeling."""
    augs: list[Augmentation] = []
    if rng.random() < 0.5:
        augs.append(transpose_augmentation())
    perm = list(range(10))
    rng.shuffle(perm)
    augs.append(color_permute_augmentation(perm))
    return augs


def build_ttt_dataset(
    tasks: Sequence[Task],
    augmenter: Callable[[random.Random], list[Augmentation]] | None = None,
    reps: int = 10,
    mix: Sequence[FinetuneExample] = (),
    rng: random.Random | None = None,
) -> list[TTTExample]:
    """Fake-test transduction records from task train pairs, never test outputs.

    For every task, every train index, and every one of `reps` augmentation
    draws, one record holds that train pair out as the fake test. Tasks with
    a single train pair are skipped with a warning. `mix` records are
    appended verbatim (wrapped with empty provenance fields).
    """
    if reps < 1:
        raise SolverError(f"reps must be >= 1, got {reps}")
    if augmenter is None:
        augmenter = default_ttt_augmenter
    rng = rng or random.Random(0)
    out: list[TTTExample] = []
    for task in tasks:
        if len(task.train) < 2:
            log.warning("task %s has one train pair; skipped for fake-test training", task.id)
            continue
        for fake_index in range(len(task.train)):
            for _ in range(reps):
                augs = augmenter(rng)
                aug_pairs = [
                    (apply_augmentations(augs, gin), apply_augmentations(augs, gout))
                    for gin, gout in task.train
                ]
                fake_in, fake_out = aug_pairs[fake_index]
                train = [p for i, p in enumerate(aug_pairs) if i != fake_index]
                messages = transduction_messages(train, fake_in, fake_out)
                out.append(TTTExample(
                    task_id=task.id,
                    fake_index=fake_index,
                    augmentation="+".join(a.label() for a in augs) or "identity",
                    example=FinetuneExample("transduction", tuple(messages),
                                            uid=task.id, heldout_index=fake_index),
                ))
    for record in mix:
        out.append(TTTExample(task_id=record.uid, fake_index=-1, augmentation="mix",
                              example=record))
    return out


def save_ttt_dataset(records: Sequence[TTTExample], path) -> int:
    import json
    from pathlib import Path

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for record in records:
            f.write(json.dumps(record.to_json(), sort_keys=True, separators=(",", ":")) + "\n")
    return len(records)
