"""Start the service with two deterministic fixture exercises for the UI
end-to-end test.

The store starts empty; the first student request triggers generation from
the canned model response below, which yields exactly two valid exercises
served in a fixed order.

Usage: python3 serve.py [port]
"""

import json
import sys
import tempfile
from pathlib import Path

import uvicorn

from bugspotter.generation import GenerationConfig, build_prompt
from bugspotter.llm import prompt_key
from bugspotter.problems import (
    Language,
    Parameter,
    Problem,
    Signature,
    TestCase,
)
from bugspotter.service import ServiceSettings, create_app
from bugspotter.values import ValueType

REFERENCE = """\
def sum_positives(numbers):
    total = 0
    for n in numbers:
        if n > 0:
            total += n
    return total
"""

SPEC = """\
Sum of positives

Write a function sum_positives(numbers) that returns the sum of the
strictly positive values in the list numbers. The sum of an empty list
is 0.
"""

BUGGY_THRESHOLD = """\
def sum_positives(numbers):
    total = 0
    for n in numbers:
        if n > 1:
            total += n
    return total
"""

BUGGY_SUM_ALL = """\
def sum_positives(numbers):
    total = 0
    for n in numbers:
        total += n
    return total
"""


def build_problem() -> Problem:
    return Problem(
        id="sum-positives",
        language=Language.PYTHON,
        specification=SPEC,
        function_name="sum_positives",
        signature=Signature(
            parameters=(Parameter("numbers", ValueType.LIST_OF_INTEGERS),),
            return_type=ValueType.INTEGER,
        ),
        reference_solution=REFERENCE,
        test_suite=(
            TestCase(inputs=([1, -2, 3],), expected_output=4),
            TestCase(inputs=([],), expected_output=0),
            TestCase(inputs=([-5, -1],), expected_output=0),
        ),
    )


def main() -> None:
    port = int(sys.argv[1]) if len(sys.argv) > 1 else 8765
    problem = build_problem()
    config = GenerationConfig(n_candidates=2)
    response = json.dumps(
        {
            "reasoning": "two canned buggy variants",
            "content": [
                {
                    "code": BUGGY_THRESHOLD,
                    "fixed_code": REFERENCE,
                    "explanation": "The comparison starts at 2, so ones are skipped.",
                },
                {
                    "code": BUGGY_SUM_ALL,
                    "fixed_code": REFERENCE,
                    "explanation": "Negative values are summed as well.",
                },
            ],
        }
    )
    fixture_dir = Path(tempfile.mkdtemp(prefix="bugspotter-e2e-"))
    key = prompt_key(build_prompt(problem, config))
    (fixture_dir / f"{key}.txt").write_text(response, encoding="utf-8")

    settings = ServiceSettings(fixture_dir=str(fixture_dir), n_candidates=2)
    app = create_app(settings, problems={problem.id: problem})
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")


if __name__ == "__main__":
    main()
