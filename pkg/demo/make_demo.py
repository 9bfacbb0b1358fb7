"""Regenerate the demo assets.

Writes the problem document, the canned model response for `generate
--fixture-dir`, and analytics inputs (ranking, annotations, submission log)
whose exercise ids match what generation actually produces.

Run from the repository root: python3 demo/make_demo.py
"""

import json
from pathlib import Path

from bugspotter.generation import GenerationConfig, build_prompt, run_generation_batch
from bugspotter.llm import FixtureLLMClient, prompt_key
from bugspotter.problems import (
    Language,
    Parameter,
    Problem,
    Signature,
    TestCase,
    problem_to_dict,
)
from bugspotter.values import ValueType

HERE = Path(__file__).resolve().parent

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


def body(lines: str) -> str:
    return "def sum_positives(numbers):\n" + lines


CANDIDATES = [
    {
        "code": body(
            "    total = 0\n"
            "    for n in numbers:\n"
            "        if n > 1:\n"
            "            total += n\n"
            "    return total\n"
        ),
        "fixed_code": REFERENCE,
        "explanation": "The comparison starts at 2, so positive ones are skipped.",
    },
    {
        "code": body(
            "    total = 0\n"
            "    for n in numbers:\n"
            "        total += n\n"
            "    return total\n"
        ),
        "fixed_code": REFERENCE,
        "explanation": "Negative values are summed as well.",
    },
    {
        "code": body(
            "    total = 0\n"
            "    for n in numbers:\n"
            "        if n > 0:\n"
            "            total += 1\n"
            "    return total\n"
        ),
        "fixed_code": REFERENCE,
        "explanation": "Counts the positive values instead of summing them.",
    },
    {
        "code": body("    if not numbers:\n        return 1\n    return max(numbers)\n"),
        "fixed_code": REFERENCE,
        "explanation": "Returns the largest element instead of the positive sum.",
    },
    {
        "code": body(
            "    total = 0\n"
            "    for n in numbers:\n"
            "        if n > 0:\n"
            "            total += n\n"
            "    return total // numbers[0]\n"
        ),
        "fixed_code": REFERENCE,
        "explanation": "Divides by the first element, which crashes on an empty list.",
    },
    {
        "code": "def sum_positives(numbers)\n    return 0\n",
        "fixed_code": REFERENCE,
        "explanation": "Missing colon; rejected by the compile step.",
    },
    {
        "code": REFERENCE,
        "fixed_code": REFERENCE,
        "explanation": "Not actually buggy; rejected because it fails no test case.",
    },
]


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
    problem = build_problem()
    config = GenerationConfig(n_candidates=len(CANDIDATES))

    (HERE / "problems").mkdir(exist_ok=True)
    (HERE / "fixtures").mkdir(exist_ok=True)
    problem_path = HERE / "problems" / "sum-positives.json"
    problem_path.write_text(json.dumps(problem_to_dict(problem), indent=2) + "\n")

    response = json.dumps(
        {"reasoning": "seven candidate pairs for the demo", "content": CANDIDATES},
        indent=2,
    )
    key = prompt_key(build_prompt(problem, config))
    fixture_path = HERE / "fixtures" / f"{key}.txt"
    for stale in (HERE / "fixtures").glob("*.txt"):
        stale.unlink()
    fixture_path.write_text(response + "\n")

    batch = run_generation_batch(problem, config, FixtureLLMClient(HERE / "fixtures"))
    ids = [e.id for e in batch.exercises]
    assert len(ids) == 5, f"demo expects 5 valid exercises, got {len(ids)}"

    # easiest (1) to hardest (5): a made-up expert ranking over the batch
    ranking_lines = ["problem_id,exercise_id,rank"]
    for rank, exercise_id in enumerate(ids, start=1):
        ranking_lines.append(f"{problem.id},{exercise_id},{rank}")
    (HERE / "ranking.csv").write_text("\n".join(ranking_lines) + "\n")

    annotation_lines = ["exercise_id,evaluator_id,diverse_flag,bug_prob_related,nb_bugs"]
    for exercise_id in ids:
        annotation_lines.append(f"{exercise_id},expert-a,1,1,1")
        annotation_lines.append(f"{exercise_id},expert-b,1,1,1")
    # one disagreement so kappa is not trivially 1.0
    annotation_lines[2] = f"{ids[0]},expert-b,0,1,1"
    (HERE / "annotations.csv").write_text("\n".join(annotation_lines) + "\n")

    outcomes = [True, True, False, True, False, True, False, False, True, False]
    records = []
    for i, success in enumerate(outcomes):
        records.append(
            {
                "student_id": f"s{i + 1:02d}",
                "exercise_id": ids[i % len(ids)],
                "problem_id": problem.id,
                "source": "llm" if i < 6 else "instructor",
                "success": success,
                "timestamp": f"2026-03-02T10:{i:02d}:00+00:00",
            }
        )
    (HERE / "log.jsonl").write_text("\n".join(json.dumps(r) for r in records) + "\n")

    print(f"problem:     {problem_path.relative_to(HERE.parent)}")
    print(f"fixture:     {fixture_path.relative_to(HERE.parent)}")
    print(f"exercises:   {len(ids)} valid of {len(CANDIDATES)} candidates")


if __name__ == "__main__":
    main()
