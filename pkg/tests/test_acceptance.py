"""Acceptance suite: one test per release criterion, at stated tolerances.

Run with `pytest tests/test_acceptance.py -s` to see one pass/fail line per
criterion. Every tolerance and count here is pinned; nothing is deferred to
later calibration.
"""

import json
import random
import time

import pytest

from oracles import (
    is_integer_combo,
    make_tiling,
    mirror_symmetrize,
    occlude,
    oracle_components,
    oracle_mirrors,
    oracle_rotation,
    oracle_translations,
)

from arcsmith.client import ClientConfig, ModelClient
from arcsmith.grid import (
    Color,
    Grid,
    Task,
    apply_augmentations,
    decode_grid_text,
    encode_grid_text,
    invert_augmentations,
    parse_task,
    task_to_json,
)
from arcsmith.gridlib import find_connected_components, random_sprite
from arcsmith.prompts import (
    INDUCTION_INSTRUCTION,
    INDUCTION_SYSTEM,
    TRANSDUCTION_INSTRUCTION,
    TRANSDUCTION_SYSTEM,
    codegen_prompt,
    description_block,
    description_prompt,
    few_shot_user_message,
)
from arcsmith.runtime import CandidateProgram, ExecLimits, ProgramRuntime, SeedProgram
from arcsmith.seeds import builtin_registry, builtin_seeds
from arcsmith.library import render_library_text
from arcsmith.solver import (
    BeamCandidate,
    FilteredProgram,
    SamplingConfig,
    build_ttt_dataset,
    default_rerank_transforms,
    ensemble_solve,
    false_positive_stats,
    induction_filter,
    majority_vote,
    rerank_with_augmentations,
)
from arcsmith.symmetry import (
    detect_mirror,
    detect_rotational,
    detect_translational,
    orbit,
)
from arcsmith.synthgen import SeedIndex, filter_problem, seed_to_problem
from arcsmith import presets

GENEROUS = ExecLimits(wall_timeout_ms=20000)


def report(name, ok, detail=""):
    print(f"[ACCEPTANCE] {name}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, f"{name}: {detail}"


@pytest.fixture(scope="module")
def runtime():
    return ProgramRuntime(builtin_registry(), limits=GENEROUS)


# -- 1. codec round trips ----------------------------------------------------------


def test_codec_round_trips():
    rng = random.Random(1001)
    start = time.perf_counter()
    for _ in range(1000):
        w, h = rng.randint(1, 30), rng.randint(1, 30)
        g = Grid(w, h, bytes(rng.randrange(10) for _ in range(w * h)))
        assert decode_grid_text(encode_grid_text(g)) == g
        assert Grid.from_rows(json.loads(json.dumps(g.rows()))) == g
    task = Task(((g, g),), (g,), (g,), "roundtrip")
    assert parse_task(task_to_json(task), task.id) == task
    elapsed = time.perf_counter() - start
    report("codec-round-trips", elapsed < 1.0,
           f"1000 grids through text+JSON codecs in {elapsed:.3f}s (< 1s)")


# -- 2. symmetry soundness / completeness / reconstruction -----------------------------


def _translation_ok(grid, dx, dy, ignored):
    for y in range(grid.height):
        for x in range(grid.width):
            x2, y2 = x + dx, y + dy
            if not grid.in_bounds(x2, y2):
                continue
            a, b = grid.at(x, y), grid.at(x2, y2)
            if a in ignored or b in ignored:
                continue
            if a != b:
                return False
    return True


def _mirror_ok(grid, mirror, ignored):
    for y in range(grid.height):
        for x in range(grid.width):
            if grid.at(x, y) in ignored:
                continue
            x2, y2 = mirror.apply(x, y)
            if not grid.in_bounds(x2, y2):
                return False
            if grid.at(x2, y2) in ignored:
                continue
            if grid.at(x, y) != grid.at(x2, y2):
                return False
    return True


def _rotation_ok(grid, rot, ignored):
    for y in range(grid.height):
        for x in range(grid.width):
            if grid.at(x, y) in ignored:
                continue
            x2, y2 = rot.apply(x, y)
            if not grid.in_bounds(x2, y2):
                return False
            if grid.at(x2, y2) in ignored:
                continue
            if grid.at(x, y) != grid.at(x2, y2):
                return False
    return True


def test_symmetry_suite():
    rng = random.Random(2002)
    start = time.perf_counter()

    # translations: 200 tilings, half occluded
    for i in range(200):
        g = make_tiling(rng, rng.randint(1, 4), rng.randint(1, 4),
                        rng.randint(6, 12), rng.randint(6, 12))
        if i % 2:
            g = occlude(g, rng, rng.uniform(0.05, 0.3))
            ignore = [int(Color.BLACK)]
        else:
            ignore = []
        gens = [(t.dx, t.dy) for t in detect_translational(g, ignore)]
        valid = oracle_translations(g, ignore)
        for dx, dy in gens:
            assert _translation_ok(g, dx, dy, set(ignore)), (dx, dy)
            assert (dx, dy) in valid
        for shift in valid:
            assert is_integer_combo(shift, gens), (shift, gens)

    # mirrors: 200 symmetrized grids, half occluded
    for i in range(200):
        w, h = rng.randint(1, 12), rng.randint(1, 12)
        rows = [[rng.randint(1, 9) for _ in range(w)] for _ in range(h)]
        rows = mirror_symmetrize(rows, rng.choice(["vertical", "horizontal"]))
        g = Grid.from_rows(rows)
        if i % 2:
            g = occlude(g, rng, rng.uniform(0.05, 0.3))
            ignore = [int(Color.BLACK)]
        else:
            ignore = []
        mirrors = detect_mirror(g, ignore)
        got = {(m.axis, round(2 * (m.mirror_x if m.axis == "vertical" else m.mirror_y)))
               for m in mirrors}
        assert got == oracle_mirrors(g, ignore)
        for m in mirrors:
            assert _mirror_ok(g, m, set(ignore))

    # rotations: 200 radial sprites, half occluded
    for i in range(200):
        n = rng.randint(2, 12)
        g = random_sprite(n, n, rng, density=1.0, symmetry="radial",
                          color_palette=rng.sample(range(1, 10), rng.randint(1, 3)))
        if i % 2:
            g = occlude(g, rng, rng.uniform(0.05, 0.3))
            ignore = [int(Color.BLACK)]
        else:
            ignore = []
        rot = detect_rotational(g, ignore)
        expected = oracle_rotation(g, ignore)
        if expected is None:
            assert rot is None
        else:
            assert rot is not None
            assert (round(2 * rot.center_x), round(2 * rot.center_y)) == expected
            assert _rotation_ok(g, rot, set(ignore))

    # occluded-tiling reconstruction, 200 clean instances recovered exactly
    recovered = 0
    attempts = 0
    while recovered < 200 and attempts < 3000:
        attempts += 1
        tw, th = rng.randint(2, 4), rng.randint(2, 4)
        full = make_tiling(rng, tw, th, rng.randint(9, 14), rng.randint(9, 14))
        occluded = occlude(full, rng, rng.uniform(0.05, 0.3))
        if occluded == full:
            continue
        # preconditions: no spurious shifts, every orbit keeps a visible cell
        valid = oracle_translations(occluded, [Color.BLACK])
        if not all(is_integer_combo(s, [(tw, 0), (0, th)]) for s in valid):
            continue
        syms = detect_translational(occluded, [Color.BLACK])
        out = occluded
        ok = True
        for x, y in occluded.coords():
            if occluded.at(x, y) != Color.BLACK:
                continue
            colors = {occluded.at(px, py)
                      for px, py in orbit(occluded, x, y, syms)} - {int(Color.BLACK)}
            if len(colors) != 1:
                ok = False
                break
            out = out.with_cell(x, y, colors.pop())
        if not ok:
            continue
        assert out == full, "reconstruction must recover the original exactly"
        recovered += 1
    assert recovered == 200, f"only {recovered} reconstructions in {attempts} attempts"

    elapsed = time.perf_counter() - start
    report("symmetry-soundness-completeness", elapsed < 30.0,
           f"3x200 detector cases + 200 reconstructions in {elapsed:.1f}s (< 30s)")


# -- 3. connected components vs BFS oracle ------------------------------------------------


def test_component_oracle():
    rng = random.Random(3003)
    checked = 0
    for _ in range(500):
        w, h = rng.randint(1, 10), rng.randint(1, 10)
        g = Grid(w, h, bytes(rng.randrange(4) for _ in range(w * h)))
        for connectivity in (4, 8):
            for mono in (True, False):
                got = find_connected_components(g, Color.BLACK, connectivity, mono)
                got_sets = sorted(
                    tuple(sorted((x, y) for x, y in s.coords()
                                 if s.at(x, y) != Color.BLACK)) for s in got
                )
                expected = sorted(tuple(sorted(c)) for c in
                                  oracle_components(g, Color.BLACK, connectivity, mono))
                assert got_sets == expected
                checked += 1
    report("component-oracle", checked == 2000,
           f"500 grids x 4 connectivity/color modes, 100% agreement")


# -- 4. seed pipeline + mutated negatives ---------------------------------------------------


from test_synthgen import (  # the canonical mutants live beside the filter tests
    MUTANT_COLOR_ARITHMETIC,
    MUTANT_IDENTITY,
    MUTANT_NONDETERMINISTIC,
    MUTANT_OVERSIZE,
)


def test_seed_pipeline(runtime):
    seeds = builtin_seeds()
    assert len(seeds) >= 10
    assert {"0d3d703e", "1b2d62fb", "0dfd9992"} <= {s.id for s in seeds}
    for seed in seeds:
        problem = seed_to_problem(seed, runtime, GENEROUS, rng_seed=17)
        assert len(problem.examples) >= 4
        assert problem.filter_report.all_passed

    mutants = [
        (MUTANT_NONDETERMINISTIC, "deterministic"),
        (MUTANT_OVERSIZE, "grid_size"),
        (MUTANT_COLOR_ARITHMETIC, "color_invariance"),
        (MUTANT_IDENTITY, "non_identity"),
    ]
    for source, intended in mutants:
        mutant_report, _ = filter_problem(source, runtime, GENEROUS, rng_seed=17)
        assert mutant_report.failed() == [intended], mutant_report.to_json()
    report("seed-pipeline", True,
           f"{len(seeds)} seeds pass all five filters; 4 mutants fail exactly "
           f"their intended criterion")


# -- 5. filtered-set and ensemble semantics ---------------------------------------------------


def test_eq4_eq5_semantics():
    rng = random.Random(5005)

    def scripted_runtime(behaviors):
        registry = {
            name: SeedProgram(id=name, concepts=("t",), description="d", transform=fn,
                              generator=lambda r: Grid.filled(1, 1), source_text=name)
            for name, fn in behaviors.items()
        }
        return ProgramRuntime(registry)

    rt = scripted_runtime({
        "good": lambda g: g.transpose(),
        "bad": lambda g: Grid.filled(1, 1, 0),
    })

    deviations = 0
    solved = 0
    expected_solved = 0
    for i in range(100):
        pairs = []
        for _ in range(3):
            g = Grid.from_rows([[rng.randrange(10) for _ in range(3)] for _ in range(2)])
            pairs.append((g, g.transpose()))
        test_in = Grid.from_rows([[rng.randrange(10) for _ in range(4)] for _ in range(2)])
        task = Task(tuple(pairs), (test_in,), (test_in.transpose(),), f"mock{i}")
        ind_ok = rng.random() < 0.5
        trans_ok = rng.random() < 0.5

        programs = [CandidateProgram("registered", n, n)
                    for n in (["good", "bad"] if ind_ok else ["bad"])]
        F = induction_filter(task, programs, rt)
        # ground truth membership: exactly the programs reproducing the train pairs
        expected_members = {"good"} if ind_ok else set()
        if {f.program.entry for f in F} != expected_members:
            deviations += 1

        def sampler(t, count, progs=programs):
            return progs[:count]

        truth = task.test_outputs[0]

        def predictor(t, test_index, ok=trans_ok, truth=truth):
            return [BeamCandidate(truth if ok else Grid.filled(1, 1, 9), -1.0)]

        pred = ensemble_solve(task, sampler, predictor, rt, k=2,
                              config=SamplingConfig(budget=8), rng=random.Random(i))
        if (pred.provenance == "transduction") != (len(F) == 0):
            deviations += 1
        task_solved = any(attempt == task.test_outputs for attempt in pred.attempts)
        solved += task_solved
        expected_solved += ind_ok or trans_ok
    assert deviations == 0
    assert solved == expected_solved
    report("eq4-eq5-semantics", True,
           f"100 mock tasks: F membership exact, branch exclusivity exact, "
           f"ensemble solves {solved} = branch mixture {expected_solved}, 0 deviations")


# -- 6. majority vote squashes sub-half false positives -----------------------------------------


def test_majority_vote_property():
    rng = random.Random(6006)
    truth = (Grid.filled(2, 2, 6),)
    plurality_checks = 0
    fp_checks = 0
    for _ in range(10_000):
        n = rng.randint(1, 40)
        truth_share = rng.randint(0, n)
        F = [FilteredProgram(CandidateProgram("registered", f"t{i}", f"t{i}"), truth)
             for i in range(truth_share)]
        for i in range(n - truth_share):
            g = Grid.from_rows([[rng.randrange(10), rng.randrange(10)]])
            F.append(FilteredProgram(CandidateProgram("registered", f"o{i}", f"o{i}"), (g,)))
        rng.shuffle(F)
        pred = majority_vote(F, k=2)
        votes = pred.diagnostics["votes"]
        top_key, top_votes = max(votes.items(), key=lambda kv: (kv[1], kv[0]))
        if top_votes > n / 2:
            # an output with > 50% support must be attempt 1
            winner = next(f.test_outputs for f in F if f.output_key() == top_key)
            assert pred.attempts[0] == winner
            plurality_checks += 1
        stats = false_positive_stats(F, truth)
        if stats.rate < 0.5:
            assert pred.attempts[0] == truth
            fp_checks += 1
    report("majority-vote-property", plurality_checks > 0 and fp_checks > 0,
           f"10000 tallies: plurality rule held {plurality_checks} times, "
           f"fp-rate<0.5 implied attempt-1 correct {fp_checks} times")


# -- 7. rerank contract ---------------------------------------------------------------------


def test_rerank_contract():
    rng = random.Random(7007)

    # frequency beats score on constructed candidate sets
    y1, y2 = Grid.filled(1, 1, 1), Grid.filled(1, 1, 2)
    replies = iter([
        [BeamCandidate(y1, -1.2), BeamCandidate(y2, -0.5)],
        [BeamCandidate(y1, -1.2), BeamCandidate(y2, -0.5)],
        [BeamCandidate(y1, -1.2)],
    ])
    task0 = Task(((Grid.filled(1, 1), Grid.filled(1, 1, 1)),), (Grid.filled(1, 1),), id="c")
    ranked = rerank_with_augmentations(task0, lambda t, i: next(replies), [[], [], []])
    assert [r.output for r in ranked] == [y1, y2]
    assert ranked[0].frequency == 3 and ranked[1].frequency == 2

    # transpose-equivariant predictor: reranked top-1 equals baseline top-1, 50 tasks
    def equivariant(task, test_index):
        test_in = task.test_inputs[test_index]
        rot = Grid(test_in.width, test_in.height, test_in.cells[::-1])
        return [BeamCandidate(test_in, -1.0), BeamCandidate(rot, -2.0)]

    agreements = 0
    for i in range(50):
        g = Grid.from_rows([[rng.randrange(10) for _ in range(3)] for _ in range(2)])
        task = Task(((g, g.transpose()),),
                    (Grid.from_rows([[rng.randrange(10) for _ in range(4)]
                                     for _ in range(3)]),), id=f"r{i}")
        transforms = default_rerank_transforms(rng)
        ranked = rerank_with_augmentations(task, equivariant, transforms)
        baseline = equivariant(task, 0)[0].output
        assert ranked[0].output == baseline
        agreements += 1

        # every augmentation set inverts exactly on every grid of the task
        for augs in transforms:
            inverse = invert_augmentations(augs)
            for grid in task.all_grids():
                assert apply_augmentations(inverse, apply_augmentations(augs, grid)) == grid

    report("rerank-contract", agreements == 50,
           "frequency-before-score verified; 50/50 equivariant top-1 matches; "
           "all transforms invert exactly")


# -- 8. TTT dataset construction -------------------------------------------------------------


def test_ttt_builder():
    from arcsmith.synthgen import FinetuneExample

    rng = random.Random(8008)
    tasks = []
    for i in range(400):
        pairs = tuple(
            (Grid.from_rows([[rng.randrange(10) for _ in range(3)] for _ in range(3)]),
             Grid.from_rows([[rng.randrange(10) for _ in range(2)] for _ in range(2)]))
            for _ in range(3)
        )
        test_in = Grid.from_rows([[rng.randrange(10) for _ in range(3)] for _ in range(3)])
        # distinctive held-out truth that must never appear in any record
        test_out = Grid.filled(9, 9, Color.PINK).with_cell(i % 9, (i * 7) % 9, Color.TEAL)
        tasks.append(Task(pairs, (test_in,), (test_out,), f"ttt{i:03d}"))

    mix = [FinetuneExample("transduction", (("system", "s"), ("user", f"mix {j}"),
                                            ("assistant", "a")), uid=f"mix{j}")
           for j in range(10_000)]
    records = build_ttt_dataset(tasks, reps=10, mix=mix, rng=random.Random(88))

    pseudo = 400 * 3 * 10
    assert len(records) == pseudo + 10_000, len(records)

    truth_text = {t.id: encode_grid_text(t.test_outputs[0]) for t in tasks}
    for record in records:
        if record.augmentation == "mix":
            continue
        needle = truth_text[record.task_id]
        for _, content in record.example.messages:
            assert needle not in content
    report("ttt-builder", True,
           f"400 tasks x 3 pairs x 10 reps = {pseudo} pseudo records + 10000 mixed "
           f"= {len(records)} total; no true test output leaked")


# -- 9. pipeline determinism -----------------------------------------------------------------


def _canned(fixture_dir, request, response):
    client = ModelClient(ClientConfig(mode="replay", fixture_dir=fixture_dir))
    key = client.request_key(request)
    (fixture_dir / f"{key}.json").write_text(
        json.dumps({"request": request, "response": response}))


def _chat_req(prompt, n=None, temperature=None):
    cfg = ClientConfig()
    req = {"kind": "chat", "model": cfg.chat_model,
           "messages": [{"role": "user", "content": prompt}],
           "temperature": cfg.temperature if temperature is None else temperature,
           "max_tokens": cfg.max_tokens}
    if n is not None:
        req["n"] = n
    return req


def _messages_req(messages, n, temperature):
    cfg = ClientConfig()
    return {"kind": "chat", "model": cfg.chat_model, "messages": messages,
            "temperature": temperature, "max_tokens": cfg.max_tokens, "n": n}


DESCRIPTION_REPLY = """```python
# concepts:
# reflection

# description:
# The output is the input mirrored left to right.
```"""

CODE_REPLY = '''```python
from arcsmith.grid import Grid

# concepts:
# reflection

# description:
# The output is the input mirrored left to right.

def transform(grid):
    return Grid.from_rows([list(reversed(row)) for row in grid.rows()])

def generate(rng):
    while True:
        g = Grid.from_rows([[rng.randint(0, 9) for _ in range(4)] for _ in range(3)])
        if g != Grid.from_rows([list(reversed(row)) for row in g.rows()]):
            return g
```'''


def test_pipeline_determinism(tmp_path):
    from arcsmith.cli import main
    from arcsmith.synthgen import embedding_text

    fixtures = tmp_path / "fixtures"
    fixtures.mkdir()
    seeds = builtin_seeds()

    # --- generate fixtures: description sampling, index embeddings, codegen
    index_vectors = [[1.0 if i == j else 0.0 for j in range(len(seeds))]
                     for i in range(len(seeds))]
    _canned(fixtures, {"kind": "embed", "model": ClientConfig().embed_model,
                       "input": [embedding_text(s.concepts, s.description) for s in seeds]},
            index_vectors)
    sampled = random.Random(0).sample(seeds, 3)
    desc_prompt = description_prompt(
        [description_block(s.concepts, s.description) for s in sampled], 2)
    _canned(fixtures, _chat_req(desc_prompt), DESCRIPTION_REPLY)
    desc_text = "The output is the input mirrored left to right."
    query_vec = [0.9] + [0.0] * (len(seeds) - 1)
    _canned(fixtures, {"kind": "embed", "model": ClientConfig().embed_model,
                       "input": [embedding_text(("reflection",), desc_text)]},
            [query_vec])
    retrieved = SeedIndex(seeds, index_vectors).retrieve(query_vec, 3)
    code_prompt = codegen_prompt(f"reflection: {desc_text}", render_library_text(),
                                 [s.source_text for s in retrieved])
    _canned(fixtures, _chat_req(code_prompt), CODE_REPLY)

    out1, out2 = tmp_path / "p1.jsonl", tmp_path / "p2.jsonl"
    for out in (out1, out2):
        code = main(["generate", "--fixtures", str(fixtures), "--num", "2",
                     "--out", str(out), "--rng-seed", "0", "--timeout-ms", "20000"])
        assert code == 0
    generate_ok = out1.read_bytes() == out2.read_bytes() and out1.stat().st_size > 0

    # --- filter determinism over the generated problems
    f1, f2 = tmp_path / "f1.jsonl", tmp_path / "f2.jsonl"
    for out in (f1, f2):
        assert main(["filter", "--problems", str(out1), "--out", str(out),
                     "--rng-seed", "5", "--timeout-ms", "20000"]) == 0
    filter_ok = f1.read_bytes() == f2.read_bytes() and f1.stat().st_size > 0

    # --- solve determinism with replay chat adapters
    task_dir = tmp_path / "tasks"
    task_dir.mkdir()
    rng = random.Random(9)
    tasks = []
    for i in range(2):
        pairs = []
        for _ in range(3):
            g = Grid.from_rows([[rng.randrange(10) for _ in range(3)] for _ in range(2)])
            pairs.append((g, Grid(g.width, g.height, g.cells[::-1])))
        task = Task(tuple(pairs[:-1]), (pairs[-1][0],), (pairs[-1][1],), f"det{i}")
        tasks.append(task)
        (task_dir / f"det{i}.json").write_text(task_to_json(task))

    budget = 2
    code_text = ("def transform(grid):\n"
                 "    from arcsmith.grid import Grid\n"
                 "    return Grid(grid.width, grid.height, grid.cells[::-1])\n")
    for task in tasks:
        ind_messages = [
            {"role": "system", "content": INDUCTION_SYSTEM},
            {"role": "user", "content": few_shot_user_message(
                list(task.train), task.test_inputs[0], INDUCTION_INSTRUCTION)},
        ]
        _canned(fixtures, _messages_req(ind_messages, budget, 0.8),
                [f"```python\n{code_text}```"] * budget)
        trans_messages = [
            {"role": "system", "content": TRANSDUCTION_SYSTEM},
            {"role": "user", "content": few_shot_user_message(
                list(task.train), task.test_inputs[0], TRANSDUCTION_INSTRUCTION)},
        ]
        _canned(fixtures, _messages_req(trans_messages, 3, 0.0),
                [f"```\n{encode_grid_text(task.test_outputs[0])}\n```"] * 3)

    s1, s2 = tmp_path / "s1.jsonl", tmp_path / "s2.jsonl"
    for out in (s1, s2):
        assert main(["solve", "--tasks", str(task_dir), "--strategy", "ensemble",
                     "--fixtures", str(fixtures), "--budget", str(budget),
                     "--attempts", "2", "--out", str(out), "--rng-seed", "4",
                     "--timeout-ms", "20000"]) == 0
    solve_ok = s1.read_bytes() == s2.read_bytes() and s1.stat().st_size > 0

    report("pipeline-determinism", generate_ok and filter_ok and solve_ok,
           f"generate={'ok' if generate_ok else 'DIFF'}, "
           f"filter={'ok' if filter_ok else 'DIFF'}, "
           f"solve={'ok' if solve_ok else 'DIFF'} (byte-identical across two runs)")


# -- 10. explicit non-reproducibility ----------------------------------------------------------


def test_reference_stats_are_metadata_only():
    # large fine-tuned-model results are presets/report metadata, not
    # desk-scale targets; the property suites above stand in for them
    assert presets.REFERENCE_STATS["ensemble_acc_base_2048"] == 0.2650
    assert presets.REFERENCE_STATS["ensemble_acc_potpourri_ttt_rerank"] == 0.5675
    assert presets.REFERENCE_STATS["ensemble_acc_private_small"] == 0.19
    assert presets.REFERENCE_STATS["induction_false_positive_rate"] == 0.09
    assert presets.PRESETS["small-336"].budget == 336
    assert presets.PRESETS["small-384"].budget == 384  # kept alongside 336 as recorded
    assert presets.PRESETS["heavy-10k"].budget == 10_000
    assert presets.PRESETS["potpourri-20k"].budget == 20_000
    assert presets.PRESETS["base-2048"].beam_width == 20
    report("non-reproducibility-encoded", True,
           "reference accuracies (26.50%, 56.75%, 19%, fp 9%) are config metadata; "
           "no desk-scale test claims them")
