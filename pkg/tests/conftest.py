"""Shared fixtures: authored problems and a hand-built candidate batch.

Every candidate in AUTHORED_BATCH carries the rejection/acceptance
expectation it was written to exercise, plus (where one exists) an input
on which buggy and fixed code agree, so judge tests can check the
not-a-failing-test-case path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import pytest

from bugspotter.problems import (
    Language,
    Parameter,
    Problem,
    Signature,
    TestCase,
)
from bugspotter.values import ValueType

SUM_POS_REFERENCE = """\
def sum_positives(numbers):
    total = 0
    for n in numbers:
        if n > 0:
            total += n
    return total
"""

SUM_POS_SPEC = """\
Sum of positives

Write a function sum_positives(numbers) that returns the sum of the
strictly positive values in the list numbers. The sum of an empty list
is 0.
"""


def sum_positives_problem() -> Problem:
    return Problem(
        id="sum-positives",
        language=Language.PYTHON,
        specification=SUM_POS_SPEC,
        function_name="sum_positives",
        signature=Signature(
            parameters=(Parameter("numbers", ValueType.LIST_OF_INTEGERS),),
            return_type=ValueType.INTEGER,
        ),
        reference_solution=SUM_POS_REFERENCE,
        test_suite=(
            TestCase(inputs=([1, -2, 3],), expected_output=4),
            TestCase(inputs=([],), expected_output=0),
            TestCase(inputs=([-5, -1],), expected_output=0),
        ),
    )


SUM_POS_C_REFERENCE = """\
int sum_positives(int *numbers, int numbers_len) {
    int total = 0;
    for (int i = 0; i < numbers_len; i++) {
        if (numbers[i] > 0) {
            total += numbers[i];
        }
    }
    return total;
}
"""


def sum_positives_c_problem() -> Problem:
    base = sum_positives_problem()
    return Problem(
        id="sum-positives-c",
        language=Language.C,
        specification=base.specification,
        function_name="sum_positives",
        signature=base.signature,
        reference_solution=SUM_POS_C_REFERENCE,
        test_suite=base.test_suite,
    )


MEAN_REFERENCE = """\
def mean_value(numbers):
    if not numbers:
        return 0.0
    return sum(numbers) / len(numbers)
"""

MEAN_BUGGY_NO_GUARD = """\
def mean_value(numbers):
    return sum(numbers) / len(numbers)
"""

MEAN_SPEC = """\
Mean value

Write a function mean_value(numbers) that returns the arithmetic mean
of the list numbers as a float. The mean of an empty list is 0.0.
"""


def mean_value_problem() -> Problem:
    return Problem(
        id="mean-value",
        language=Language.PYTHON,
        specification=MEAN_SPEC,
        function_name="mean_value",
        signature=Signature(
            parameters=(Parameter("numbers", ValueType.LIST_OF_FLOATS),),
            return_type=ValueType.FLOAT,
        ),
        reference_solution=MEAN_REFERENCE,
        test_suite=(
            TestCase(inputs=([1.0, 2.0, 3.0],), expected_output=2.0),
            TestCase(inputs=([],), expected_output=0.0),
            TestCase(inputs=([5.0],), expected_output=5.0),
        ),
    )


@dataclass(frozen=True)
class AuthoredCandidate:
    name: str
    buggy_code: str
    fixed_code: str
    explanation: str
    expect_accepted: bool
    # which validation flag the rejection must show up in, if rejected
    rejected_by: str | None = None
    expected_bug_type: str | None = None
    # an input tuple on which buggy and fixed agree, when one exists
    non_diverging_input: tuple | None = None


def _py(body: str) -> str:
    return "def sum_positives(numbers):\n" + body


AUTHORED_BATCH: list[AuthoredCandidate] = [
    AuthoredCandidate(
        name="strict_gt_one",
        buggy_code=_py(
            "    total = 0\n"
            "    for n in numbers:\n"
            "        if n > 1:\n"
            "            total += n\n"
            "    return total\n"
        ),
        fixed_code=SUM_POS_REFERENCE,
        explanation="The comparison starts at 2, so positive ones are skipped.",
        expect_accepted=True,
        expected_bug_type="Type1",
        non_diverging_input=([5],),
    ),
    AuthoredCandidate(
        name="sum_all",
        buggy_code=_py(
            "    total = 0\n"
            "    for n in numbers:\n"
            "        total += n\n"
            "    return total\n"
        ),
        fixed_code=SUM_POS_REFERENCE,
        explanation="Negative values are summed as well.",
        expect_accepted=True,
        expected_bug_type="Type1",
        non_diverging_input=([3],),
    ),
    AuthoredCandidate(
        name="count_positives",
        buggy_code=_py(
            "    total = 0\n"
            "    for n in numbers:\n"
            "        if n > 0:\n"
            "            total += 1\n"
            "    return total\n"
        ),
        fixed_code=SUM_POS_REFERENCE,
        explanation="Counts the positive values instead of summing them.",
        expect_accepted=True,
        expected_bug_type="Type1",
        non_diverging_input=([1],),
    ),
    AuthoredCandidate(
        name="max_or_one",
        buggy_code=_py(
            "    if not numbers:\n"
            "        return 1\n"
            "    return max(numbers)\n"
        ),
        fixed_code=SUM_POS_REFERENCE,
        explanation="Returns the largest element instead of the positive sum.",
        expect_accepted=True,
        expected_bug_type="Type2",
        non_diverging_input=([4],),
    ),
    AuthoredCandidate(
        name="floor_div_first",
        buggy_code=_py(
            "    total = 0\n"
            "    for n in numbers:\n"
            "        if n > 0:\n"
            "            total += n\n"
            "    return total // numbers[0]\n"
        ),
        fixed_code=SUM_POS_REFERENCE,
        explanation="Divides by the first element, which crashes on an empty list.",
        expect_accepted=True,
        expected_bug_type="Type3",
        non_diverging_input=([1],),
    ),
    AuthoredCandidate(
        name="crash_pass_none",
        buggy_code=_py(
            "    total = 0\n"
            "    for n in numbers:\n"
            "        if n > 0:\n"
            "            total += n\n"
            "    return (total + 1) // numbers[0]\n"
        ),
        fixed_code=SUM_POS_REFERENCE,
        explanation="Off-by-one plus a divide by the first element.",
        expect_accepted=True,
        expected_bug_type="Type3",
    ),
    AuthoredCandidate(
        name="abs_sum",
        buggy_code=_py(
            "    total = 0\n"
            "    for n in numbers:\n"
            "        if n < 0:\n"
            "            total += -n\n"
            "        else:\n"
            "            total += n\n"
            "    return total\n"
        ),
        fixed_code=SUM_POS_REFERENCE,
        explanation="Sums absolute values instead of positives.",
        expect_accepted=True,
        expected_bug_type="Type1",
        non_diverging_input=([7],),
    ),
    AuthoredCandidate(
        name="skip_first",
        buggy_code=_py(
            "    total = 0\n"
            "    for n in numbers[1:]:\n"
            "        if n > 0:\n"
            "            total += n\n"
            "    return total\n"
        ),
        fixed_code=SUM_POS_REFERENCE,
        explanation="The loop starts at the second element.",
        expect_accepted=True,
        expected_bug_type="Type1",
        non_diverging_input=([0, 5],),
    ),
    AuthoredCandidate(
        name="wrong_init",
        buggy_code=_py(
            "    total = 1\n"
            "    for n in numbers:\n"
            "        if n > 0:\n"
            "            total += n\n"
            "    return total\n"
        ),
        fixed_code=SUM_POS_REFERENCE,
        explanation="The accumulator starts at 1 instead of 0.",
        expect_accepted=True,
        expected_bug_type="Type2",
    ),
    AuthoredCandidate(
        name="last_positive",
        buggy_code=_py(
            "    total = 0\n"
            "    for n in numbers:\n"
            "        if n > 0:\n"
            "            total = n\n"
            "    return total\n"
        ),
        fixed_code=SUM_POS_REFERENCE,
        explanation="Assignment instead of addition keeps only the last positive.",
        expect_accepted=True,
        expected_bug_type="Type1",
        non_diverging_input=([2],),
    ),
    AuthoredCandidate(
        name="negative_sum",
        buggy_code=_py(
            "    total = 0\n"
            "    for n in numbers:\n"
            "        if n < 0:\n"
            "            total += n\n"
            "    return total\n"
        ),
        fixed_code=SUM_POS_REFERENCE,
        explanation="The comparison is flipped, summing negatives.",
        expect_accepted=True,
        expected_bug_type="Type1",
        non_diverging_input=([0],),
    ),
    AuthoredCandidate(
        name="early_return",
        buggy_code=_py(
            "    for n in numbers:\n"
            "        if n > 0:\n"
            "            return n\n"
            "    return 0\n"
        ),
        fixed_code=SUM_POS_REFERENCE,
        explanation="Returns on the first positive instead of accumulating.",
        expect_accepted=True,
        expected_bug_type="Type1",
        non_diverging_input=([9],),
    ),
    AuthoredCandidate(
        name="bad_syntax_buggy",
        buggy_code="def sum_positives(numbers)\n    return 0\n",
        fixed_code=SUM_POS_REFERENCE,
        explanation="",
        expect_accepted=False,
        rejected_by="compiled_both",
    ),
    AuthoredCandidate(
        name="bad_syntax_fixed",
        buggy_code=_py(
            "    total = 0\n"
            "    for n in numbers:\n"
            "        total += n\n"
            "    return total\n"
        ),
        fixed_code="def sum_positives(numbers:\n    return 0\n",
        explanation="",
        expect_accepted=False,
        rejected_by="compiled_both",
    ),
    AuthoredCandidate(
        name="unbalanced_paren_buggy",
        buggy_code=_py("    return sum((n for n in numbers if n > 0)\n"),
        fixed_code=SUM_POS_REFERENCE,
        explanation="",
        expect_accepted=False,
        rejected_by="compiled_both",
    ),
    AuthoredCandidate(
        name="fixed_fails_suite",
        buggy_code=_py(
            "    total = 0\n"
            "    for n in numbers:\n"
            "        total += n\n"
            "    return total\n"
        ),
        fixed_code=_py(
            "    total = 0\n"
            "    for n in numbers:\n"
            "        if n > 0:\n"
            "            total += 1\n"
            "    return total\n"
        ),
        explanation="",
        expect_accepted=False,
        rejected_by="fixed_passes_suite",
    ),
    AuthoredCandidate(
        name="fixed_is_abs_sum",
        buggy_code=_py(
            "    total = 0\n"
            "    for n in numbers:\n"
            "        if n > 1:\n"
            "            total += n\n"
            "    return total\n"
        ),
        fixed_code=_py(
            "    total = 0\n"
            "    for n in numbers:\n"
            "        total += abs(n)\n"
            "    return total\n"
        ),
        explanation="",
        expect_accepted=False,
        rejected_by="fixed_passes_suite",
    ),
    AuthoredCandidate(
        name="buggy_is_correct",
        buggy_code=_py(
            "    result = 0\n"
            "    for value in numbers:\n"
            "        if value > 0:\n"
            "            result += value\n"
            "    return result\n"
        ),
        fixed_code=SUM_POS_REFERENCE,
        explanation="",
        expect_accepted=False,
        rejected_by="buggy_fails_some",
    ),
    AuthoredCandidate(
        name="buggy_correct_with_noise",
        buggy_code=_py(
            "    total = 0\n"
            "    for n in numbers:\n"
            "        if n > 0:\n"
            "            total += n\n"
            "        total += 0\n"
            "    return total\n"
        ),
        fixed_code=SUM_POS_REFERENCE,
        explanation="",
        expect_accepted=False,
        rejected_by="buggy_fails_some",
    ),
    AuthoredCandidate(
        name="buggy_hangs",
        buggy_code=_py(
            "    total = 0\n"
            "    while True:\n"
            "        total += 1\n"
            "    return total\n"
        ),
        fixed_code=SUM_POS_REFERENCE,
        explanation="",
        expect_accepted=False,
        rejected_by="within_time_limit",
    ),
]

assert len(AUTHORED_BATCH) == 20


def batch_response_json(candidates) -> str:
    """Model-response text for a list of authored candidates."""
    return json.dumps(
        {
            "reasoning": "Reasoning about the bugs",
            "content": [
                {
                    "code": c.buggy_code,
                    "fixed_code": c.fixed_code,
                    "explanation": c.explanation,
                }
                for c in candidates
            ],
        }
    )


@pytest.fixture(scope="session")
def sum_pos() -> Problem:
    return sum_positives_problem()


@pytest.fixture(scope="session")
def sum_pos_c() -> Problem:
    return sum_positives_c_problem()


@pytest.fixture(scope="session")
def mean_value() -> Problem:
    return mean_value_problem()
