"""Pluggable sampler/predictor adapters for the solver.

The chat adapters speak to a (live or replayed) chat endpoint using the
few-shot prompt formats; the registry adapter proposes the bundled seed
transforms, which is a fully offline way to exercise the solving path.
"""

from __future__ import annotations

import logging
import re

from .client import ModelClient
from .grid import Grid, GridError, Task, decode_grid_text
from .prompts import (
    INDUCTION_INSTRUCTION,
    INDUCTION_SYSTEM,
    TRANSDUCTION_INSTRUCTION,
    TRANSDUCTION_SYSTEM,
    few_shot_user_message,
)
from .runtime import CandidateProgram, SeedProgram
from .solver import BeamCandidate

log = logging.getLogger(__name__)

_FENCE_RE = re.compile(r"```(?:python)?[ \t]*\n(.*?)```", re.DOTALL)


class ChatInductionSampler:
    """Samples candidate programs from a chat endpoint.

    Each completion's first fenced code block becomes an external candidate
    program; completions without one are dropped.
    """

    def __init__(self, client: ModelClient, temperature: float = 0.8):
        self.client = client
        self.temperature = temperature

    def __call__(self, task: Task, count: int) -> list[CandidateProgram]:
        messages = [
            {"role": "system", "content": INDUCTION_SYSTEM},
            {"role": "user", "content": few_shot_user_message(
                list(task.train), task.test_inputs[0], INDUCTION_INSTRUCTION)},
        ]
        replies = self.client.chat_many(messages, count, temperature=self.temperature)
        programs = []
        for reply in replies:
            blocks = _FENCE_RE.findall(reply)
            if not blocks:
                log.info("completion without a code block dropped (task %s)", task.id)
                continue
            programs.append(CandidateProgram.from_python_source(blocks[0]))
        return programs[:count]


class ChatTransductionPredictor:
    """Predicts output grids directly from a chat endpoint.

    Completions are parsed as fenced grid text; the i-th distinct parseable
    grid gets score -i (this client surface exposes no token scores, so rank
    order stands in for them).
    """

    def __init__(self, client: ModelClient, beam_width: int = 3, temperature: float = 0.0):
        self.client = client
        self.beam_width = beam_width
        self.temperature = temperature

    def __call__(self, task: Task, test_index: int) -> list[BeamCandidate]:
        messages = [
            {"role": "system", "content": TRANSDUCTION_SYSTEM},
            {"role": "user", "content": few_shot_user_message(
                list(task.train), task.test_inputs[test_index], TRANSDUCTION_INSTRUCTION)},
        ]
        replies = self.client.chat_many(messages, self.beam_width,
                                        temperature=self.temperature)
        candidates = []
        seen = set()
        for reply in replies:
            grid = _parse_grid_reply(reply)
            if grid is None or grid.cells in seen:
                continue
            seen.add(grid.cells)
            candidates.append(BeamCandidate(grid, -float(len(candidates))))
        return candidates


def _parse_grid_reply(reply: str) -> Grid | None:
    fenced = re.findall(r"```[ \t]*\n(.*?)```", reply, re.DOTALL)
    texts = fenced if fenced else [reply]
    for text in texts:
        try:
            return decode_grid_text(text.strip("\n"))
        except GridError:
            continue
    return None


class RegistrySampler:
    """Proposes bundled seed transforms as candidates, offline."""

    def __init__(self, seeds: list[SeedProgram]):
        self.seeds = seeds

    def __call__(self, task: Task, count: int) -> list[CandidateProgram]:
        return [seed.as_candidate() for seed in self.seeds[:count]]
