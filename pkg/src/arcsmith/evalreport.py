"""Scoring and analysis: pass@k, solve correlation, difficulty buckets.

Reports are plain data: per-task rows plus aggregates recomputable from
them. Scoring is exact grid equality; a task with several test inputs is
solved only when one attempt gets every output right (a per-output mode is
available for the looser reading).
"""

from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .grid import Task
from .solver import Prediction


class EvalError(ValueError):
    pass


@dataclass(frozen=True)
class TaskResult:
    task_id: str
    solved: bool
    correct_attempt: int  # 1-based rank of the first correct attempt, 0 if none
    attempts_used: int
    provenance: str

    def to_json(self) -> dict:
        return {
            "task_id": self.task_id,
            "solved": self.solved,
            "correct_attempt": self.correct_attempt,
            "attempts_used": self.attempts_used,
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class EvalReport:
    k: int
    results: tuple[TaskResult, ...]
    per_output: bool = False

    @property
    def pass_at_k(self) -> float:
        if not self.results:
            return 0.0
        return sum(r.solved for r in self.results) / len(self.results)

    def branch_counts(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for r in self.results:
            entry = out.setdefault(r.provenance, {"tasks": 0, "solved": 0})
            entry["tasks"] += 1
            entry["solved"] += r.solved
        return out

    def group_accuracy(self, groups: Mapping[str, str]) -> dict[str, float]:
        """Aggregate accuracy per named task group (e.g. concept groups)."""
        tally: dict[str, list[int]] = {}
        for r in self.results:
            group = groups.get(r.task_id)
            if group is None:
                raise EvalError(f"task {r.task_id} has no group assignment")
            entry = tally.setdefault(group, [0, 0])
            entry[0] += r.solved
            entry[1] += 1
        return {g: solved / total for g, (solved, total) in sorted(tally.items())}

    def bucket_accuracy(self, buckets: "DifficultyBuckets") -> list[float]:
        by_id = {r.task_id: r.solved for r in self.results}
        out = []
        for bucket in buckets.buckets:
            hits = [by_id[tid] for tid in bucket if tid in by_id]
            out.append(sum(hits) / len(hits) if hits else math.nan)
        return out

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "per_output": self.per_output,
            "pass_at_k": self.pass_at_k,
            "branch_counts": self.branch_counts(),
            "tasks": [r.to_json() for r in self.results],
        }


def score_pass_at_k(
    predictions: Mapping[str, Prediction],
    tasks: Sequence[Task],
    k: int,
    per_output: bool = False,
) -> EvalReport:
    """Score predictions against ground truth at k attempts.

    Default scoring is all-or-nothing per task: one attempt must match every
    test output exactly. per_output=True lets different attempts cover
    different test outputs.
    """
    results = []
    for task in sorted(tasks, key=lambda t: t.id):
        if task.test_outputs is None:
            raise EvalError(f"task {task.id} has no ground-truth test outputs")
        pred = predictions.get(task.id)
        if pred is None:
            results.append(TaskResult(task.id, False, 0, 0, "missing"))
            continue
        attempts = pred.attempts[:k]
        correct_attempt = 0
        if per_output:
            solved_outputs = []
            for j, truth in enumerate(task.test_outputs):
                solved_outputs.append(any(
                    j < len(attempt) and attempt[j] == truth for attempt in attempts
                ))
            solved = bool(solved_outputs) and all(solved_outputs)
            if solved:
                correct_attempt = 1  # rank is per-output; report the flag only
        else:
            truth = tuple(task.test_outputs)
            for rank, attempt in enumerate(attempts, start=1):
                if tuple(attempt) == truth:
                    correct_attempt = rank
                    break
            solved = correct_attempt > 0
        results.append(TaskResult(task.id, solved, correct_attempt,
                                  len(attempts), pred.provenance))
    return EvalReport(k=k, results=tuple(results), per_output=per_output)


# -- solve correlation --------------------------------------------------------------


@dataclass(frozen=True)
class SolveMatrix:
    """Rows are model runs, columns are task ids, entries are solved flags."""

    run_names: tuple[str, ...]
    task_ids: tuple[str, ...]
    solved: tuple[tuple[bool, ...], ...]

    def __post_init__(self) -> None:
        if len(self.solved) != len(self.run_names):
            raise EvalError("one row of solves per run required")
        for row in self.solved:
            if len(row) != len(self.task_ids):
                raise EvalError("solve matrix must be rectangular")

    @classmethod
    def from_reports(cls, named_reports: Sequence[tuple[str, EvalReport]]) -> "SolveMatrix":
        if not named_reports:
            raise EvalError("no reports")
        task_ids = tuple(r.task_id for r in named_reports[0][1].results)
        rows = []
        for name, report in named_reports:
            ids = tuple(r.task_id for r in report.results)
            if ids != task_ids:
                raise EvalError(f"run {name} covers different tasks")
            rows.append(tuple(r.solved for r in report.results))
        return cls(tuple(n for n, _ in named_reports), task_ids, tuple(rows))


def solve_correlation(matrix: SolveMatrix) -> list[list[float | None]]:
    """Pairwise Pearson correlation of solve vectors.

    Entries for constant rows are None (undefined), never NaN. The matrix is
    symmetric with a unit diagonal where defined.
    """
    if len(matrix.solved) < 2:
        raise EvalError("correlation needs at least two runs")
    rows = [[1.0 if v else 0.0 for v in row] for row in matrix.solved]
    n_runs = len(rows)
    out: list[list[float | None]] = [[None] * n_runs for _ in range(n_runs)]
    for i in range(n_runs):
        for j in range(i, n_runs):
            r = _pearson(rows[i], rows[j])
            out[i][j] = r
            out[j][i] = r
    return out


def _pearson(xs: list[float], ys: list[float]) -> float | None:
    n = len(xs)
    if n == 0:
        return None
    mx = sum(xs) / n
    my = sum(ys) / n
    vx = sum((x - mx) ** 2 for x in xs)
    vy = sum((y - my) ** 2 for y in ys)
    if vx == 0 or vy == 0:
        return None  # constant vector: correlation undefined
    cov = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return cov / math.sqrt(vx * vy)


def correlation_permutation_test(
    matrix: SolveMatrix,
    labels: Sequence[str],
    n_permutations: int = 10_000,
    rng: random.Random | None = None,
) -> float:
    """Permutation p-value for within-label vs cross-label correlation.

    Statistic: mean defined correlation between same-label run pairs minus
    mean between different-label pairs; labels are shuffled across runs.
    This is a generic reduction, not a reproduction of any particular
    published test; treat the p-value as descriptive.
    """
    if len(labels) != len(matrix.run_names):
        raise EvalError("one label per run required")
    rng = rng or random.Random(0)
    corr = solve_correlation(matrix)

    def statistic(lab: Sequence[str]) -> float | None:
        same, cross = [], []
        for i in range(len(lab)):
            for j in range(i + 1, len(lab)):
                r = corr[i][j]
                if r is None:
                    continue
                (same if lab[i] == lab[j] else cross).append(r)
        if not same or not cross:
            return None
        return sum(same) / len(same) - sum(cross) / len(cross)

    observed = statistic(labels)
    if observed is None:
        raise EvalError("need both same-label and cross-label run pairs")
    hits = 0
    total = 0
    shuffled = list(labels)
    for _ in range(n_permutations):
        rng.shuffle(shuffled)
        stat = statistic(shuffled)
        if stat is None:
            continue
        total += 1
        if stat >= observed:
            hits += 1
    if total == 0:
        raise EvalError("no informative permutations")
    return hits / total


# -- difficulty buckets ------------------------------------------------------------------


@dataclass(frozen=True)
class DifficultyBuckets:
    """Task sets ordered from easiest (highest human accuracy) to hardest."""

    buckets: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        sizes = [len(b) for b in self.buckets]
        if sizes and max(sizes) - min(sizes) > 1:
            raise EvalError(f"bucket sizes {sizes} differ by more than one")


def bucket_by_difficulty(
    task_accuracies: Mapping[str, float],
    n_buckets: int = 5,
    task_ids: Sequence[str] | None = None,
) -> DifficultyBuckets:
    """Equal-size buckets by descending external (human) accuracy.

    Ordering ties break on task id. Sizes differ by at most one, with the
    earlier (easier) buckets taking the extras.
    """
    ids = list(task_ids) if task_ids is not None else list(task_accuracies)
    missing = [tid for tid in ids if tid not in task_accuracies]
    if missing:
        raise EvalError(f"no accuracy for tasks: {missing[:5]}")
    if n_buckets < 1 or not ids:
        raise EvalError("need at least one bucket and one task")
    ordered = sorted(ids, key=lambda tid: (-task_accuracies[tid], tid))
    base, extra = divmod(len(ordered), n_buckets)
    buckets = []
    start = 0
    for b in range(n_buckets):
        size = base + (1 if b < extra else 0)
        buckets.append(tuple(ordered[start:start + size]))
        start += size
    return DifficultyBuckets(tuple(buckets))


def load_accuracy_csv(path) -> dict[str, float]:
    """CSV of (task_id, accuracy) rows; a header line is tolerated."""
    out: dict[str, float] = {}
    with open(path, "r", encoding="utf-8", newline="") as f:
        for row in csv.reader(f):
            if not row or len(row) < 2:
                continue
            try:
                out[row[0].strip()] = float(row[1])
            except ValueError:
                continue  # header
    if not out:
        raise EvalError(f"no (task_id, accuracy) rows in {path}")
    return out
