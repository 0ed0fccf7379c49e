"""Command-line surface: generate, filter, emit-finetune, solve, eval, corr, render.

Exit codes: 0 success, 1 usage error, 2 data error, 3 endpoint failure.
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

import click

from . import presets
from .adapters import ChatInductionSampler, ChatTransductionPredictor, RegistrySampler
from .client import ClientConfig, EndpointError, ModelClient
from .evalreport import (
    EvalError,
    SolveMatrix,
    bucket_by_difficulty,
    load_accuracy_csv,
    score_pass_at_k,
    solve_correlation,
)
from .grid import Grid, GridError, Task, parse_task
from .library import render_library_text
from .render import render as render_target
from .runtime import ExecLimits, ExecutionError, ProgramRuntime
from .seeds import builtin_registry, builtin_seeds
from .solver import (
    Prediction,
    SamplingConfig,
    SolverError,
    build_ttt_dataset,
    default_rerank_transforms,
    ensemble_solve,
    induction_filter,
    majority_vote,
    save_ttt_dataset,
    select_uniform,
    transduction_predict,
)
from .synthgen import (
    SeedIndex,
    SynthesisError,
    emit_finetune_dataset,
    filter_problem,
    generate_problems,
    load_problems_jsonl,
    save_problems_jsonl,
)


@click.group()
def cli():
    """Grid-puzzle synthesis, solving, and evaluation."""


def _make_client(fixtures: str | None, live: bool, record: bool) -> ModelClient:
    if live or record:
        mode = "record" if record else "live"
        return ModelClient(ClientConfig.from_env(
            mode=mode, fixture_dir=Path(fixtures) if fixtures else None))
    if not fixtures:
        raise click.UsageError("give --fixtures DIR for replay mode, or --live")
    return ModelClient(ClientConfig(mode="replay", fixture_dir=Path(fixtures)))


def _load_tasks(path: str) -> list[Task]:
    p = Path(path)
    files = sorted(p.glob("*.json")) if p.is_dir() else [p]
    if not files:
        raise GridError(f"no task files under {path}")
    return [parse_task(f.read_bytes(), task_id=f.stem) for f in files]


def _limits(timeout_ms: int) -> ExecLimits:
    return ExecLimits(wall_timeout_ms=timeout_ms)


@cli.command()
@click.option("--fixtures", type=click.Path(), default=None,
              help="Fixture directory (replay mode unless --live).")
@click.option("--live", is_flag=True, help="Call the configured live endpoint.")
@click.option("--record", is_flag=True, help="Live calls, recorded into --fixtures.")
@click.option("--num", default=2, show_default=True, help="Descriptions to brainstorm.")
@click.option("--out", required=True, type=click.Path(), help="Problems JSONL to append to.")
@click.option("--rng-seed", default=0, show_default=True)
@click.option("--retrieval-k", default=3, show_default=True)
@click.option("--seeds-per-prompt", default=3, show_default=True)
@click.option("--timeout-ms", default=10000, show_default=True)
def generate(fixtures, live, record, num, out, rng_seed, retrieval_k,
             seeds_per_prompt, timeout_ms):
    """Brainstorm descriptions, generate code, filter, persist problems."""
    client = _make_client(fixtures, live, record)
    seeds = builtin_seeds()
    runtime = ProgramRuntime(builtin_registry(), limits=_limits(timeout_ms))
    index = SeedIndex.build(seeds, client)
    problems, rejected = generate_problems(
        seeds, index, client, runtime, render_library_text(),
        num_descriptions=num, seeds_per_prompt=seeds_per_prompt,
        retrieval_k=retrieval_k, rng=random.Random(rng_seed),
    )
    n = save_problems_jsonl(problems, out)
    click.echo(f"kept {n} problems, rejected {len(rejected)} -> {out}")


@cli.command("filter")
@click.option("--problems", required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path())
@click.option("--rng-seed", default=0, show_default=True)
@click.option("--timeout-ms", default=10000, show_default=True)
def filter_cmd(problems, out, rng_seed, timeout_ms):
    """Re-run the five filters over stored problems."""
    runtime = ProgramRuntime(builtin_registry(), limits=_limits(timeout_ms))
    rows = []
    for problem in load_problems_jsonl(problems):
        report, _ = filter_problem(problem.source_text, runtime, rng_seed=rng_seed)
        rows.append({"uid": problem.uid, "all_passed": report.all_passed,
                     "filter_report": report.to_json()})
    with open(out, "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, sort_keys=True, separators=(",", ":")) + "\n")
    passed = sum(r["all_passed"] for r in rows)
    click.echo(f"{passed}/{len(rows)} problems pass all filters -> {out}")


@cli.command("emit-finetune")
@click.option("--mode", type=click.Choice(["induction", "transduction", "ttt"]), required=True)
@click.option("--problems", type=click.Path(exists=True), default=None)
@click.option("--tasks", type=click.Path(exists=True), default=None,
              help="Task JSON path/dir (ttt mode).")
@click.option("--out", required=True, type=click.Path())
@click.option("--policy", type=click.Choice(["each", "last"]), default="each",
              show_default=True)
@click.option("--reps", default=10, show_default=True, help="Augmentations per fake test (ttt).")
@click.option("--rng-seed", default=0, show_default=True)
def emit_finetune(mode, problems, tasks, out, policy, reps, rng_seed):
    """Emit fine-tuning records (induction/transduction) or a TTT dataset."""
    if mode == "ttt":
        if not tasks:
            raise click.UsageError("--mode ttt needs --tasks")
        records = build_ttt_dataset(_load_tasks(tasks), reps=reps,
                                    rng=random.Random(rng_seed))
        n = save_ttt_dataset(records, out)
    else:
        if not problems:
            raise click.UsageError(f"--mode {mode} needs --problems")
        n = emit_finetune_dataset(load_problems_jsonl(problems), mode, out, policy)
    click.echo(f"wrote {n} records -> {out}")


@cli.command()
@click.option("--tasks", required=True, type=click.Path(exists=True))
@click.option("--strategy", type=click.Choice(["induction", "transduction", "ensemble"]),
              default="ensemble", show_default=True)
@click.option("--budget", default=None, type=int, help="Candidate programs to sample.")
@click.option("--attempts", default=None, type=int, help="Ranked attempts per task.")
@click.option("--selection", type=click.Choice(["uniform", "majority"]), default="uniform",
              show_default=True)
@click.option("--rerank", is_flag=True, help="Rerank transduction over augmentations.")
@click.option("--preset", type=click.Choice(sorted(presets.PRESETS)), default=None,
              help="Named budget/width/attempts preset.")
@click.option("--sampler", type=click.Choice(["chat", "registry"]), default="chat",
              show_default=True)
@click.option("--beam-width", default=None, type=int)
@click.option("--fixtures", type=click.Path(), default=None)
@click.option("--live", is_flag=True)
@click.option("--record", is_flag=True)
@click.option("--out", required=True, type=click.Path())
@click.option("--rng-seed", default=0, show_default=True)
@click.option("--timeout-ms", default=5000, show_default=True)
def solve(tasks, strategy, budget, attempts, selection, rerank, preset, sampler,
          beam_width, fixtures, live, record, out, rng_seed, timeout_ms):
    """Predict test outputs for tasks; writes one JSON line per task."""
    chosen = presets.PRESETS.get(preset) if preset else None
    budget = budget or (chosen.budget if chosen else 64)
    attempts = attempts or (chosen.attempts if chosen else 2)
    beam_width = beam_width or (chosen.beam_width if chosen else 3)
    if chosen and chosen.selection:
        selection = selection if selection != "uniform" else chosen.selection
    rerank = rerank or bool(chosen and chosen.rerank)

    runtime = ProgramRuntime(builtin_registry(), limits=_limits(timeout_ms))
    rng = random.Random(rng_seed)
    needs_chat = sampler == "chat" or strategy in ("transduction", "ensemble")
    client = _make_client(fixtures, live, record) if needs_chat else None
    if sampler == "registry":
        sample = RegistrySampler(builtin_seeds())
    else:
        sample = ChatInductionSampler(client, temperature=presets.INDUCTION_TEMPERATURE)
    predict = ChatTransductionPredictor(client, beam_width=beam_width) if client else None
    transforms = default_rerank_transforms(rng) if rerank else None

    rows = []
    for task in sorted(_load_tasks(tasks), key=lambda t: t.id):
        if strategy == "ensemble":
            pred = ensemble_solve(task, sample, predict, runtime, k=attempts,
                                  config=SamplingConfig(budget=budget),
                                  selection=selection, rng=rng,
                                  rerank_transforms=transforms)
        elif strategy == "induction":
            programs = sample(task, budget)
            F = induction_filter(task, programs, runtime)
            if not F:
                pred = Prediction((), "induction", {"F_size": 0, "sampled": len(programs)})
            elif selection == "majority":
                pred = majority_vote(F, attempts)
            else:
                pred = select_uniform(F, attempts, rng)
        else:
            pred = transduction_predict(task, predict, attempts, transforms)
        rows.append({
            "task_id": task.id,
            "provenance": pred.provenance,
            "attempts": [[g.rows() for g in attempt] for attempt in pred.attempts],
            "diagnostics": pred.diagnostics,
        })
    with open(out, "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, sort_keys=True, separators=(",", ":")) + "\n")
    click.echo(f"solved {len(rows)} tasks -> {out}")


def load_predictions_jsonl(path) -> dict[str, Prediction]:
    out = {}
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            doc = json.loads(line)
            attempts = tuple(
                tuple(Grid.from_rows(rows) for rows in attempt)
                for attempt in doc["attempts"]
            )
            out[doc["task_id"]] = Prediction(attempts, doc["provenance"],
                                             doc.get("diagnostics", {}))
    return out


@cli.command("eval")
@click.option("--predictions", required=True, type=click.Path(exists=True))
@click.option("--truth", required=True, type=click.Path(exists=True),
              help="Task JSON path/dir with test outputs.")
@click.option("--k", default=2, show_default=True)
@click.option("--per-output", is_flag=True, help="Score each test output independently.")
@click.option("--human-accuracy", type=click.Path(exists=True), default=None,
              help="CSV of task_id,accuracy for difficulty buckets.")
@click.option("--buckets", default=5, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def eval_cmd(predictions, truth, k, per_output, human_accuracy, buckets, out):
    """Score predictions against ground truth at k attempts."""
    tasks = _load_tasks(truth)
    report = score_pass_at_k(load_predictions_jsonl(predictions), tasks, k, per_output)
    doc = report.to_json()
    if human_accuracy:
        table = load_accuracy_csv(human_accuracy)
        difficulty = bucket_by_difficulty(table, buckets, [t.id for t in tasks])
        doc["bucket_accuracy"] = report.bucket_accuracy(difficulty)
        doc["buckets"] = [list(b) for b in difficulty.buckets]
    text = json.dumps(doc, sort_keys=True, indent=1)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    click.echo(f"pass@{k}: {report.pass_at_k:.4f} over {len(report.results)} tasks")
    for branch, counts in sorted(report.branch_counts().items()):
        click.echo(f"  {branch}: {counts['solved']}/{counts['tasks']} solved")


@cli.command()
@click.option("--matrix", required=True, type=click.Path(exists=True),
              help="CSV: header 'run,<task ids...>'; rows of 0/1 solves.")
@click.option("--out", type=click.Path(), default=None)
def corr(matrix, out):
    """Pairwise Pearson correlation of run solve vectors."""
    import csv as _csv

    with open(matrix, "r", encoding="utf-8", newline="") as f:
        rows = list(_csv.reader(f))
    if len(rows) < 3:
        raise EvalError("matrix CSV needs a header and at least two runs")
    task_ids = tuple(rows[0][1:])
    runs = tuple(r[0] for r in rows[1:])
    solved = tuple(tuple(cell.strip() in ("1", "true", "True") for cell in r[1:])
                   for r in rows[1:])
    m = SolveMatrix(runs, task_ids, solved)
    corr_matrix = solve_correlation(m)
    doc = {"runs": list(runs), "correlation": corr_matrix}
    text = json.dumps(doc, indent=1)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    click.echo(text)


@cli.command("render")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True),
              help="Task JSON or bare 2D array JSON.")
@click.option("--format", "fmt", type=click.Choice(["svg", "ansi"]), default="svg",
              show_default=True)
@click.option("--out", required=True, type=click.Path())
def render_cmd(input_path, fmt, out):
    """Render a grid or task to SVG or ANSI text."""
    raw = Path(input_path).read_text(encoding="utf-8")
    doc = json.loads(raw)
    target = Grid.from_rows(doc) if isinstance(doc, list) \
        else parse_task(raw, task_id=Path(input_path).stem)
    text = render_target(target, fmt)
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as e:
        raise GridError(f"cannot write {out}: {e}") from None
    click.echo(f"rendered {fmt} -> {out}")


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.UsageError as e:
        click.echo(f"usage error: {e.format_message()}", err=True)
        return 1
    except click.ClickException as e:
        e.show()
        return 1
    except click.exceptions.Abort:
        return 1
    except EndpointError as e:
        click.echo(f"endpoint failure: {e}", err=True)
        return 3
    except (GridError, EvalError, SynthesisError, SolverError, ExecutionError,
            OSError, json.JSONDecodeError) as e:
        click.echo(f"data error: {e}", err=True)
        return 2


if __name__ == "__main__":
    sys.exit(main())
