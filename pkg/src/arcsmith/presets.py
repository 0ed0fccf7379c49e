"""Named configuration presets and reference-run metadata.

The reference numbers are recorded results of large fine-tuned models; they
are metadata for report schemas and flag defaults, not targets this package
reproduces (doing so needs the trained models and their sampling budgets).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Preset:
    name: str
    budget: int
    beam_width: int
    attempts: int
    selection: str  # uniform | majority
    ttt: bool
    rerank: bool
    reference_accuracy: float | None = None  # recorded result, not reproduced here


PRESETS: dict[str, Preset] = {
    p.name: p
    for p in (
        # scaled-down configuration for constrained compute: budget 336 per
        # the prose description; the results table lists 384 for the same
        # run, and both are preserved rather than reconciled
        Preset("small-336", budget=336, beam_width=3, attempts=2,
               selection="uniform", ttt=False, rerank=False, reference_accuracy=0.19),
        Preset("small-384", budget=384, beam_width=3, attempts=2,
               selection="uniform", ttt=False, rerank=False, reference_accuracy=0.14),
        Preset("base-2048", budget=2048, beam_width=20, attempts=2,
               selection="uniform", ttt=False, rerank=False, reference_accuracy=0.2650),
        Preset("heavy-10k", budget=10_000, beam_width=20, attempts=2,
               selection="majority", ttt=False, rerank=False, reference_accuracy=0.3050),
        Preset("potpourri-20k", budget=20_000, beam_width=40, attempts=2,
               selection="majority", ttt=True, rerank=True, reference_accuracy=0.5675),
    )
}

#: Attempts per task by benchmark convention.
DEFAULT_ATTEMPTS = {"arc": 2, "concept_arc": 3}

#: Recorded reference statistics from large fine-tuned runs (metadata only).
REFERENCE_STATS = {
    "ensemble_acc_base_2048": 0.2650,
    "ensemble_acc_potpourri_ttt_rerank": 0.5675,
    "ensemble_acc_private_small": 0.19,
    "induction_false_positive_rate": 0.09,
    "human_avg_acc": 0.602,
    "human_best_acc": 0.978,
}

#: Induction sampling defaults.
INDUCTION_TEMPERATURE = 0.8
INDUCTION_TOP_P = 1.0
