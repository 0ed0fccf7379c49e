"""Decision rules: filtering, selection, voting, reranking, ensemble, TTT."""

import random

import pytest

from arcsmith.grid import (
    Color,
    Grid,
    Task,
    apply_augmentations,
    encode_grid_text,
    hash_grids,
    invert_augmentations,
    transpose_augmentation,
)
from arcsmith.runtime import CandidateProgram, ProgramRuntime, SeedProgram
from arcsmith.solver import (
    BeamCandidate,
    FilteredProgram,
    Prediction,
    SamplingConfig,
    SolverError,
    build_ttt_dataset,
    default_rerank_transforms,
    ensemble_solve,
    false_positive_stats,
    fp_histogram,
    induction_filter,
    majority_vote,
    rerank_with_augmentations,
    save_ttt_dataset,
    select_uniform,
    transduction_predict,
)


def grid_of(rows):
    return Grid.from_rows(rows)


def scripted_runtime(behaviors):
    """Registry of programs keyed by name; each is a grid -> grid function."""
    registry = {}
    for name, fn in behaviors.items():
        registry[name] = SeedProgram(
            id=name, concepts=("t",), description="scripted", transform=fn,
            generator=lambda rng: Grid.filled(1, 1), source_text=name,
        )
    return ProgramRuntime(registry)


def prog(name):
    return CandidateProgram("registered", name, name)


def transpose_task(task_id="t", n_train=3, seed=0):
    rng = random.Random(seed)
    pairs = []
    while len(pairs) < n_train:
        g = Grid.from_rows([[rng.randrange(10) for _ in range(3)] for _ in range(2)])
        pairs.append((g, g.transpose()))
    test_in = Grid.from_rows([[rng.randrange(10) for _ in range(4)] for _ in range(2)])
    return Task(tuple(pairs), (test_in,), (test_in.transpose(),), task_id)


# -- induction filter -----------------------------------------------------------------


def test_filter_keeps_train_consistent_program():
    task = transpose_task()
    rt = scripted_runtime({"good": lambda g: g.transpose()})
    F = induction_filter(task, [prog("good")], rt)
    assert len(F) == 1
    assert F[0].test_outputs == task.test_outputs


def test_filter_excludes_partial_match():
    task = transpose_task(n_train=3)
    hit = task.train[0][0]

    def flaky(g):
        if g == hit:
            return Grid.filled(1, 1, 9)  # wrong on one train pair
        return g.transpose()

    rt = scripted_runtime({"flaky": flaky})
    assert induction_filter(task, [prog("flaky")], rt) == []


def test_filter_excludes_test_failures():
    task = transpose_task()
    test_in = task.test_inputs[0]

    def fits_train_dies_on_test(g):
        if g == test_in:
            raise RuntimeError("no")
        return g.transpose()

    rt = scripted_runtime({"p": fits_train_dies_on_test})
    assert induction_filter(task, [prog("p")], rt) == []


def test_filter_keeps_false_positives():
    # fits the train pairs but answers the test input wrongly: still in F
    task = transpose_task()
    test_in = task.test_inputs[0]
    wrong = Grid.filled(2, 2, 7)

    def false_positive(g):
        return wrong if g == test_in else g.transpose()

    rt = scripted_runtime({"fp": false_positive})
    F = induction_filter(task, [prog("fp")], rt)
    assert len(F) == 1 and F[0].test_outputs == (wrong,)


def test_filter_matches_hand_computed_membership_on_mixed_batch():
    task = transpose_task(n_train=2, seed=3)
    test_in = task.test_inputs[0]
    wrong = Grid.filled(3, 3, 5)

    behaviors = {}
    expected_member = {}
    for i in range(20):
        kind = i % 5
        name = f"p{i}"
        if kind == 0:  # correct everywhere
            behaviors[name] = lambda g: g.transpose()
            expected_member[name] = True
        elif kind == 1:  # identity: fails train
            behaviors[name] = lambda g: g
            expected_member[name] = False
        elif kind == 2:  # crashes always
            behaviors[name] = lambda g: (_ for _ in ()).throw(ValueError("x"))
            expected_member[name] = False
        elif kind == 3:  # false positive: fits train, wrong on test
            behaviors[name] = lambda g, w=wrong, t=test_in: w if g == t else g.transpose()
            expected_member[name] = True
        else:  # crashes only on the test input
            behaviors[name] = (
                lambda g, t=test_in: (_ for _ in ()).throw(RuntimeError("t"))
                if g == t else g.transpose()
            )
            expected_member[name] = False

    rt = scripted_runtime(behaviors)
    F = induction_filter(task, [prog(f"p{i}") for i in range(20)], rt)
    got_members = {fp.program.entry for fp in F}
    assert got_members == {n for n, m in expected_member.items() if m}
    # soundness: every member re-verifies on all train pairs
    for fp in F:
        for gin, gout in task.train:
            res = rt.run_transform(fp.program, gin)
            assert res.status == "ok" and res.output == gout


# -- uniform selection ------------------------------------------------------------------


def fp_of(grid, tag):
    return FilteredProgram(CandidateProgram("registered", tag, tag), (grid,))


def test_select_uniform_single_output():
    a = Grid.filled(1, 1, 1)
    pred = select_uniform([fp_of(a, "p1")], k=2, rng=random.Random(0))
    assert pred.attempts == ((a,),)
    assert pred.provenance == "induction"


def test_select_uniform_weights_by_program_multiplicity():
    a, b = Grid.filled(1, 1, 1), Grid.filled(1, 1, 2)
    F = [fp_of(a, "p1"), fp_of(a, "p2"), fp_of(b, "p3")]
    rng = random.Random(42)
    first_a = 0
    for _ in range(10_000):
        pred = select_uniform(F, k=2, rng=rng)
        assert {hash_grids(at) for at in pred.attempts} == {hash_grids([a]), hash_grids([b])}
        if pred.attempts[0] == (a,):
            first_a += 1
    assert abs(first_a / 10_000 - 2 / 3) < 0.02


def test_select_uniform_caps_attempts_at_k():
    grids = [Grid.filled(1, 1, c) for c in (1, 2, 3)]
    F = [fp_of(g, f"p{i}") for i, g in enumerate(grids)]
    pred = select_uniform(F, k=2, rng=random.Random(1))
    assert len(pred.attempts) == 2


def test_select_uniform_empty_errors():
    with pytest.raises(SolverError):
        select_uniform([], 2, random.Random(0))


# -- majority vote -----------------------------------------------------------------------


def test_majority_vote_orders_by_count():
    a, b = Grid.filled(1, 1, 1), Grid.filled(1, 1, 2)
    F = [fp_of(a, "1"), fp_of(a, "2"), fp_of(a, "3"), fp_of(b, "4")]
    pred = majority_vote(F, k=2)
    assert pred.attempts == ((a,), (b,))


def test_majority_vote_tie_breaks_by_hash():
    a, b = Grid.filled(1, 1, 1), Grid.filled(1, 1, 2)
    F = [fp_of(a, "1"), fp_of(a, "2"), fp_of(b, "3"), fp_of(b, "4")]
    winner = majority_vote(F, k=1).attempts[0]
    expected = (a,) if hash_grids([a]) < hash_grids([b]) else (b,)
    assert winner == expected
    # stable across orderings of F
    assert majority_vote(list(reversed(F)), k=1).attempts[0] == winner


def test_majority_vote_plurality_property():
    # an output with > 50% support is always attempt 1
    rng = random.Random(7)
    for _ in range(2000):
        n = rng.randint(1, 30)
        majority_share = rng.randint(n // 2 + 1, n)
        winner_grid = Grid.filled(1, 1, rng.randrange(10))
        F = [fp_of(winner_grid, f"w{i}") for i in range(majority_share)]
        others = n - majority_share
        for i in range(others):
            g = Grid.from_rows([[rng.randrange(10), rng.randrange(10)]])
            F.append(fp_of(g, f"o{i}"))
        rng.shuffle(F)
        pred = majority_vote(F, k=2)
        assert pred.attempts[0] == (winner_grid,)


# -- false positives ------------------------------------------------------------------------


def test_false_positive_rate_values():
    truth = Grid.filled(2, 2, 3)
    right = fp_of(truth, "r")
    wrong = fp_of(Grid.filled(2, 2, 4), "w")
    assert false_positive_stats([right, right], [truth]).rate == 0.0
    stats = false_positive_stats([right, right, right, wrong], [truth])
    assert stats.rate == 0.25 and stats.wrong == 1


def test_false_positive_empty_excluded():
    with pytest.raises(SolverError):
        false_positive_stats([], [Grid.filled(1, 1)])


def test_low_fp_rate_implies_majority_correct():
    rng = random.Random(9)
    truth = Grid.filled(2, 2, 6)
    for _ in range(500):
        n = rng.randint(1, 40)
        wrong_n = rng.randint(0, n)
        F = [fp_of(truth, f"r{i}") for i in range(n - wrong_n)]
        for i in range(wrong_n):
            F.append(fp_of(Grid.from_rows([[rng.randrange(10)] * 2] * 2), f"w{i}"))
        rng.shuffle(F)
        stats = false_positive_stats(F, [truth])
        if stats.rate < 0.5:
            assert majority_vote(F, k=2).attempts[0] == (truth,)


def test_fp_histogram_bins():
    assert fp_histogram([0.0, 0.05, 0.5, 0.99, 1.0], 10) == [2, 0, 0, 0, 0, 1, 0, 0, 0, 2]


# -- reranking --------------------------------------------------------------------------------


def equivariant_predictor(task, test_index):
    # structural candidates commute with transposition and color relabeling
    test_in = task.test_inputs[test_index]
    rot180 = Grid(test_in.width, test_in.height, test_in.cells[::-1])
    return [BeamCandidate(test_in, -1.0), BeamCandidate(rot180, -2.0)]


def test_rerank_identity_only_keeps_beam_order():
    task = transpose_task(seed=5)
    ranked = rerank_with_augmentations(task, equivariant_predictor, [[]])
    baseline = equivariant_predictor(task, 0)
    assert [r.output for r in ranked] == [c.output for c in baseline]


def test_rerank_frequency_beats_score():
    y1 = Grid.filled(1, 1, 1)
    y2 = Grid.filled(1, 1, 2)
    calls = iter([
        [BeamCandidate(y1, -1.2), BeamCandidate(y2, -0.5)],
        [BeamCandidate(y1, -1.2), BeamCandidate(y2, -0.5)],
        [BeamCandidate(y1, -1.2)],
    ])

    def predictor(task, test_index):
        return next(calls)

    task = Task(((Grid.filled(1, 1), Grid.filled(1, 1, 1)),), (Grid.filled(1, 1),), id="x")
    ranked = rerank_with_augmentations(task, predictor, [[], [], []])
    assert ranked[0].output == y1 and ranked[0].frequency == 3
    assert ranked[0].mean_score == pytest.approx(-1.2)
    assert ranked[1].output == y2 and ranked[1].frequency == 2
    assert ranked[1].mean_score == pytest.approx(-0.5)


def test_rerank_equivariant_top1_matches_baseline():
    rng = random.Random(13)
    for i in range(20):
        task = transpose_task(seed=100 + i)
        transforms = default_rerank_transforms(rng)
        ranked = rerank_with_augmentations(task, equivariant_predictor, transforms)
        baseline = equivariant_predictor(task, 0)[0].output
        assert ranked[0].output == baseline
        assert ranked[0].frequency == len(transforms)


def test_rerank_order_independent_of_transform_order():
    rng = random.Random(14)
    task = transpose_task(seed=77)
    transforms = default_rerank_transforms(rng)
    a = rerank_with_augmentations(task, equivariant_predictor, transforms)
    b = rerank_with_augmentations(task, equivariant_predictor, list(reversed(transforms)))
    assert [r.output for r in a] == [r.output for r in b]


def test_rerank_predictor_failure_skips_transform_only():
    y = Grid.filled(1, 1, 3)

    def sometimes(task, test_index):
        if task.test_inputs[0].width != 1:  # fails on the transposed variant
            raise RuntimeError("no")
        return [BeamCandidate(y, -1.0)]

    task = Task(((Grid.filled(1, 2), Grid.filled(1, 2, 1)),), (Grid.filled(1, 2),), id="x")
    ranked = rerank_with_augmentations(task, sometimes, [[], [transpose_augmentation()]])
    assert ranked[0].output == y and ranked[0].frequency == 1


def test_rerank_all_transforms_failing_errors():
    def never(task, test_index):
        raise RuntimeError("no")

    task = transpose_task()
    with pytest.raises(SolverError):
        rerank_with_augmentations(task, never, [[], [transpose_augmentation()]])


def test_augmentation_sets_invert_on_every_grid():
    rng = random.Random(15)
    task = transpose_task(seed=55)
    for augs in default_rerank_transforms(rng):
        inverse = invert_augmentations(augs)
        for grid in task.all_grids():
            assert apply_augmentations(inverse, apply_augmentations(augs, grid)) == grid


# -- ensemble ------------------------------------------------------------------------------------


def make_mock_suite(n_tasks, seed):
    """Tasks with scripted induction/transduction solvability flags."""
    rng = random.Random(seed)
    suite = []
    for i in range(n_tasks):
        task = transpose_task(task_id=f"mock{i}", seed=1000 + i)
        suite.append((task, rng.random() < 0.5, rng.random() < 0.5))
    return suite


def run_mock_ensemble(task, induction_solves, transduction_solves, rt):
    truth = task.test_outputs[0]

    def sampler(t, count):
        return [prog("good" if induction_solves else "bad")] * min(count, 3)

    def predictor(t, test_index):
        if transduction_solves:
            return [BeamCandidate(truth, -1.0)]
        return [BeamCandidate(Grid.filled(1, 1, 9), -1.0)]

    return ensemble_solve(task, sampler, predictor, rt, k=2,
                          config=SamplingConfig(budget=8), rng=random.Random(0))


def test_ensemble_branching_and_exact_mixture():
    rt = scripted_runtime({
        "good": lambda g: g.transpose(),
        "bad": lambda g: Grid.filled(1, 1, 0),
    })
    suite = make_mock_suite(100, seed=21)
    solved = 0
    expected_solved = 0
    for task, ind_ok, trans_ok in suite:
        pred = run_mock_ensemble(task, ind_ok, trans_ok, rt)
        # branch exclusivity: transduction provenance iff F is empty
        assert (pred.provenance == "transduction") == (not ind_ok)
        assert (pred.diagnostics["F_size"] == 0) == (not ind_ok)
        truth = task.test_outputs
        task_solved = any(attempt == truth for attempt in pred.attempts)
        solved += task_solved
        expected_solved += ind_ok or (not ind_ok and trans_ok)
    assert solved == expected_solved


def test_ensemble_rejects_over_budget_sampler():
    rt = scripted_runtime({"good": lambda g: g.transpose()})
    task = transpose_task()

    def greedy(t, count):
        return [prog("good")] * (count + 1)

    with pytest.raises(SolverError):
        ensemble_solve(task, greedy, equivariant_predictor, rt,
                       config=SamplingConfig(budget=4))


def test_transduction_multi_test_attempts():
    g1 = Grid.filled(2, 2, 1)
    g2 = Grid.filled(3, 3, 2)
    task = Task(((Grid.filled(1, 1), Grid.filled(1, 1, 1)),),
                (Grid.filled(2, 2), Grid.filled(3, 3)), id="m")

    def predictor(t, test_index):
        target = g1 if test_index == 0 else g2
        other = Grid.filled(t.test_inputs[test_index].width,
                            t.test_inputs[test_index].height, 5)
        return [BeamCandidate(target, -1.0), BeamCandidate(other, -2.0)]

    pred = transduction_predict(task, predictor, k=2)
    assert len(pred.attempts) == 2
    assert pred.attempts[0] == (g1, g2)


# -- TTT dataset ------------------------------------------------------------------------------


def make_task_with_tests(task_id, n_train, seed):
    rng = random.Random(seed)
    pairs = tuple(
        (Grid.from_rows([[rng.randrange(10) for _ in range(3)] for _ in range(3)]),
         Grid.from_rows([[rng.randrange(10) for _ in range(2)] for _ in range(2)]))
        for _ in range(n_train)
    )
    test_in = Grid.from_rows([[rng.randrange(10) for _ in range(3)] for _ in range(3)])
    # a distinctive true test output that must never leak into records
    test_out = Grid.filled(7, 7, Color.PINK).with_cell(3, 3, Color.TEAL)
    return Task(pairs, (test_in,), (test_out,), task_id)


def test_ttt_count_formula():
    tasks = [make_task_with_tests(f"t{i}", 3, i) for i in range(4)]
    records = build_ttt_dataset(tasks, reps=10, rng=random.Random(0))
    assert len(records) == 4 * 3 * 10


def test_ttt_skips_single_pair_tasks(caplog):
    tasks = [make_task_with_tests("solo", 1, 0), make_task_with_tests("duo", 2, 1)]
    records = build_ttt_dataset(tasks, reps=2, rng=random.Random(0))
    assert {r.task_id for r in records} == {"duo"}
    assert len(records) == 2 * 2


def test_ttt_records_never_contain_true_test_output():
    tasks = [make_task_with_tests(f"t{i}", 3, 50 + i) for i in range(10)]
    records = build_ttt_dataset(tasks, reps=5, rng=random.Random(1))
    forbidden = {encode_grid_text(t.test_outputs[0]) for t in tasks}
    for record in records:
        for _, content in record.example.messages:
            for text in forbidden:
                assert text not in content


def test_ttt_mix_appended_verbatim():
    from arcsmith.synthgen import FinetuneExample

    tasks = [make_task_with_tests("t", 2, 3)]
    extra = [FinetuneExample("transduction", (("system", "s"), ("user", "u"),
                                              ("assistant", "a")), uid="mix1")]
    records = build_ttt_dataset(tasks, reps=1, mix=extra, rng=random.Random(0))
    assert len(records) == 2 + 1
    assert records[-1].augmentation == "mix"
    assert records[-1].example is extra[0]


def test_ttt_fake_test_is_augmented_train_pair():
    task = make_task_with_tests("t", 3, 9)
    records = build_ttt_dataset([task], reps=3, rng=random.Random(4))
    for record in records:
        k = record.fake_index
        # the assistant answer decodes to an augmentation of train pair k's output
        answer = record.example.messages[-1][1]
        from arcsmith.grid import decode_grid_text
        fenced = answer.split("```")[1].strip("\n")
        got = decode_grid_text(fenced)
        # invertibility: some augmentation sequence maps the train output to it
        _, train_out = task.train[k]
        assert (got.width, got.height) in {
            (train_out.width, train_out.height),
            (train_out.height, train_out.width),
        }


def test_ttt_deterministic_given_seed(tmp_path):
    tasks = [make_task_with_tests(f"t{i}", 3, i) for i in range(3)]
    a = build_ttt_dataset(tasks, reps=4, rng=random.Random(8))
    b = build_ttt_dataset(tasks, reps=4, rng=random.Random(8))
    assert a == b
    p1, p2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    save_ttt_dataset(a, p1)
    save_ttt_dataset(b, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_prediction_attempts_must_be_distinct():
    g = Grid.filled(1, 1, 1)
    with pytest.raises(SolverError):
        Prediction(((g,), (g,)), "induction")
