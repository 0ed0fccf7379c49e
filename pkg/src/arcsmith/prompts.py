"""Prompt templates for description sampling, code generation, and
fine-tuning message construction.

The few-shot message builders embed grids through the textual codec and are
shared by dataset emission and the live solver adapters. Template text is
frozen; golden tests pin it byte for byte.
"""

from __future__ import annotations

from .descriptions import render_header
from .grid import Grid, encode_grid_text

DESCRIPTION_PROMPT_TEMPLATE = """You've generated these on previous requests:

{examples}

Brainstorm {num_generations} more, using similar thinking:

```python
# concepts:
# <concepts in your new generation>

# description:
# <description of your new generation>
```
"""

CODEGEN_PROMPT_TEMPLATE = """You are a puzzle maker designing geometric, physical, and topological puzzles for curious middle-schoolers.

Each puzzle consists of uncovering a deterministic rule, pattern, procedure, algorithm, or transformation law that maps inputs to outputs.
Both the inputs and outputs are 2D grids of colored pixels. There are 10 colors, but the order of the colors is never relevant to the puzzle.

The middle schoolers are trying to discover this deterministic transformation, which can be implemented as a Python function called `main`.
Designing a puzzle involves also creating example inputs, which can be implemented as a Python function called `generate_input`. Unlike `main`, the `generate_input` function should be stochastic, so that every time you run it, you get another good example of what the transformation can be applied to.

Here is a overview of the puzzle you are designing:

{description}

Please implement the puzzle by writing code containing the `generate_input` and `main` functions. Use the following standard library (`common.py`):

```python
{common_lib}
```

Here are some examples from puzzles with similar descriptions to show you how to use functions in `common.py`:

{examples}

Your task is to implement the puzzle, following these steps:

1. Inspect the example puzzle implementations, making note of the functions used and the physical/geometric/topological/logical details
2. Inspect the new puzzle's description
3. Brainstorm a possible implementation for the new puzzle
4. Generate a code block formatted like the earlier examples with a comment starting `# concepts:` listing the concepts and `# description:` describing the inputs and transformation from the given description.

Be sure to make the transformation `main` deterministic. Follow the description closely.
"""

TRANSDUCTION_SYSTEM = (
    "You are a world-class puzzle solver with exceptional pattern recognition skills. "
    "Your task is to analyze puzzles, spot patterns, and provide direct solutions."
)

INDUCTION_SYSTEM = (
    "You are a world-class puzzle solver with exceptional pattern recognition skills "
    "and expertise in Python programming. Your task is to analyze puzzles and provide "
    "Python solutions."
)

_USER_PREAMBLE = (
    "Given input-output grid pairs as reference examples, carefully observe the patterns "
    "to predict the output grid for new test input. Each pair follows the same "
    "transformation rule. Grids are 2D arrays represented as strings, with cells (colors) "
    "separated by spaces and rows by newlines.\n"
    "Here are the input and output grids for the reference examples:\n"
)

TRANSDUCTION_INSTRUCTION = (
    "Directly provide the output grids corresponding to the given test input grids, "
    "based on the patterns observed in the reference examples."
)

INDUCTION_INSTRUCTION = (
    "Write a Python function `transform` that can convert any given input grid to its "
    "corresponding output grid based on the pattern observed in the reference examples."
)

INDUCTION_ANSWER_PREAMBLE = (
    "Let's solve this puzzle using Python code with the common library functions. "
    "We'll first reason about the problem and then write the code to solve it. "
    "The `transform` function will take the input grid and return the output grid. "
    "Here is the Python code with the comments describing how to solve the problem:"
)


def description_block(concepts, description: str) -> str:
    """One seed description rendered the way the sampling prompt shows them."""
    return f"```python\n{render_header(tuple(concepts), description)}\n```"


def description_prompt(example_blocks: list[str], num_generations: int) -> str:
    return DESCRIPTION_PROMPT_TEMPLATE.format(
        examples="\n\n".join(example_blocks), num_generations=num_generations
    )


def codegen_prompt(description: str, common_lib: str, example_sources: list[str]) -> str:
    examples = "\n\n".join(f"```python\n{src.rstrip()}\n```" for src in example_sources)
    return CODEGEN_PROMPT_TEMPLATE.format(
        description=description, common_lib=common_lib, examples=examples
    )


def few_shot_user_message(
    train_pairs: list[tuple[Grid, Grid]], test_input: Grid, instruction: str
) -> str:
    parts = [_USER_PREAMBLE]
    for k, (gin, gout) in enumerate(train_pairs, start=1):
        parts.append(
            f"Example {k}\nInput:\n{encode_grid_text(gin)}\n\n"
            f"Output:\n{encode_grid_text(gout)}\n\n\n"
        )
    parts.append(
        f"Here is the input grid for the test example:\nInput:\n"
        f"{encode_grid_text(test_input)}\n\n{instruction}"
    )
    return "".join(parts)


def transduction_messages(
    train_pairs: list[tuple[Grid, Grid]], test_input: Grid, test_output: Grid
) -> list[tuple[str, str]]:
    return [
        ("system", TRANSDUCTION_SYSTEM),
        ("user", few_shot_user_message(train_pairs, test_input, TRANSDUCTION_INSTRUCTION)),
        ("assistant", transduction_answer(test_output)),
    ]


def transduction_answer(test_output: Grid) -> str:
    return (
        "The output grid for the test input grid is:\n```\n"
        f"{encode_grid_text(test_output)}\n```"
    )


def induction_messages(
    train_pairs: list[tuple[Grid, Grid]], test_input: Grid, code: str
) -> list[tuple[str, str]]:
    return [
        ("system", INDUCTION_SYSTEM),
        ("user", few_shot_user_message(train_pairs, test_input, INDUCTION_INSTRUCTION)),
        ("assistant", f"{INDUCTION_ANSWER_PREAMBLE}\n```python\n{code.rstrip()}\n```"),
    ]
