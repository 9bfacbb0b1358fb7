"""Problems, test cases, candidate codes, and exercises.

Owns the on-disk problem format: one UTF-8 JSON document per problem with
keys id, language, specification, function_name, signature, reference_solution
and test_suite. Exercises persist as JSON mirroring the Exercise type.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Any, Sequence

from .errors import InputTypeError, ParseError
from .values import ValueType, coerce_value, render_value


class Language(str, Enum):
    C = "C"
    PYTHON = "Python"


class BugType(str, Enum):
    """Behavioral class of a buggy code on the reference suite."""

    TYPE1 = "Type1"  # passes some cases, no runtime error
    TYPE2 = "Type2"  # passes no case, no runtime error
    TYPE3 = "Type3"  # runtime error (incl. division by zero) on some case


class ExerciseStatus(str, Enum):
    VALIDATED = "validated"
    PRESELECTED = "pre-selected"
    RETIRED = "retired"


@dataclass(frozen=True)
class Parameter:
    name: str
    type: ValueType


@dataclass(frozen=True)
class Signature:
    parameters: tuple[Parameter, ...]
    return_type: ValueType

    @property
    def input_types(self) -> tuple[ValueType, ...]:
        return tuple(p.type for p in self.parameters)

    def coerce_inputs(self, raw_inputs: Sequence[Any]) -> tuple[Any, ...]:
        """Validate arity and per-parameter types; returns typed values."""
        if len(raw_inputs) != len(self.parameters):
            raise InputTypeError(
                f"expected {len(self.parameters)} inputs, got {len(raw_inputs)}"
            )
        coerced = []
        for raw, param in zip(raw_inputs, self.parameters):
            try:
                coerced.append(coerce_value(raw, param.type))
            except ValueError as exc:
                raise InputTypeError(f"parameter {param.name!r}: {exc}") from exc
        return tuple(coerced)


@dataclass(frozen=True)
class TestCase:
    inputs: tuple[Any, ...]
    expected_output: Any


@dataclass(frozen=True)
class Problem:
    id: str
    language: Language
    specification: str
    function_name: str
    signature: Signature
    reference_solution: str
    test_suite: tuple[TestCase, ...]

    @property
    def title(self) -> str:
        for line in self.specification.splitlines():
            if line.strip():
                return line.strip()
        return self.id

    def expected_output_text(self, tc: TestCase) -> str:
        return render_value(tc.expected_output, self.signature.return_type)


@dataclass(frozen=True)
class ExerciseCandidate:
    buggy_code: str
    fixed_code: str
    explanation: str


@dataclass(frozen=True)
class Exercise:
    id: str
    problem_id: str
    candidate: ExerciseCandidate
    bug_type: BugType
    edit_tokens: int
    status: ExerciseStatus = ExerciseStatus.VALIDATED
    source: str = "llm"

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "problem_id": self.problem_id,
            "candidate": {
                "buggy_code": self.candidate.buggy_code,
                "fixed_code": self.candidate.fixed_code,
                "explanation": self.candidate.explanation,
            },
            "bug_type": self.bug_type.value,
            "edit_tokens": self.edit_tokens,
            "status": self.status.value,
            "source": self.source,
        }

    def with_status(self, status: ExerciseStatus) -> "Exercise":
        return replace(self, status=status)

    @staticmethod
    def from_dict(data: dict) -> "Exercise":
        cand = data["candidate"]
        return Exercise(
            id=data["id"],
            problem_id=data["problem_id"],
            candidate=ExerciseCandidate(
                buggy_code=cand["buggy_code"],
                fixed_code=cand["fixed_code"],
                explanation=cand["explanation"],
            ),
            bug_type=BugType(data["bug_type"]),
            edit_tokens=int(data["edit_tokens"]),
            status=ExerciseStatus(data["status"]),
            source=data.get("source", "llm"),
        )


def make_exercise_id(problem_id: str, candidate: ExerciseCandidate) -> str:
    """Content-derived id so repeated generation runs stay reproducible."""
    digest = hashlib.sha256(
        (candidate.buggy_code + "\x00" + candidate.fixed_code).encode("utf-8")
    ).hexdigest()
    return f"{problem_id}-{digest[:12]}"


def render_test_case_input(tc: TestCase) -> str:
    """Canonical text fed to the driver: one argument per line.

    Values are typed (coerced at load time), so rendering dispatches on
    the runtime type; distinct typed tuples give distinct texts.
    """
    return "\n".join(_render_typed(v) for v in tc.inputs)


def _render_typed(value: Any) -> str:
    if isinstance(value, bool):
        return render_value(value, ValueType.BOOLEAN)
    if isinstance(value, int):
        return render_value(value, ValueType.INTEGER)
    if isinstance(value, float):
        return render_value(value, ValueType.FLOAT)
    if isinstance(value, str):
        return render_value(value, ValueType.STRING)
    if isinstance(value, list):
        if any(isinstance(v, float) for v in value):
            return render_value(value, ValueType.LIST_OF_FLOATS)
        return render_value(value, ValueType.LIST_OF_INTEGERS)
    raise ValueError(f"unrenderable value {value!r}")


def parse_problem(document: str | dict) -> Problem:
    """Structural parse of a problem document; no execution happens here."""
    if isinstance(document, str):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"problem document is not valid JSON: {exc}") from exc
    else:
        data = document
    if not isinstance(data, dict):
        raise ParseError("problem document must be a JSON object")

    for key in (
        "id",
        "language",
        "specification",
        "function_name",
        "signature",
        "reference_solution",
        "test_suite",
    ):
        if key not in data:
            raise ParseError(f"problem document missing key {key!r}")

    problem_id = data["id"]
    if not isinstance(problem_id, str) or not problem_id:
        raise ParseError("problem id must be a non-empty string")
    try:
        language = Language(data["language"])
    except ValueError:
        raise ParseError(f"unsupported language {data['language']!r}") from None

    function_name = data["function_name"]
    if not isinstance(function_name, str) or not function_name:
        raise ParseError("function_name must be a non-empty string")
    reference_solution = data["reference_solution"]
    if not isinstance(reference_solution, str) or not reference_solution.strip():
        raise ParseError("reference_solution must be non-empty source text")
    if function_name not in reference_solution:
        raise ParseError(
            f"function_name {function_name!r} does not appear in reference_solution"
        )

    signature = _parse_signature(data["signature"], language)

    suite_data = data["test_suite"]
    if not isinstance(suite_data, list) or not suite_data:
        raise ParseError("test_suite must be a non-empty list")
    suite = []
    for i, case in enumerate(suite_data):
        if not isinstance(case, dict) or "inputs" not in case or "expected_output" not in case:
            raise ParseError(f"test case {i}: need keys 'inputs' and 'expected_output'")
        if not isinstance(case["inputs"], list):
            raise ParseError(f"test case {i}: inputs must be a list")
        try:
            inputs = signature.coerce_inputs(case["inputs"])
        except InputTypeError as exc:
            raise ParseError(f"test case {i}: {exc}") from exc
        try:
            expected = coerce_value(case["expected_output"], signature.return_type)
        except ValueError as exc:
            raise ParseError(f"test case {i}: expected_output: {exc}") from exc
        suite.append(TestCase(inputs=inputs, expected_output=expected))

    return Problem(
        id=problem_id,
        language=language,
        specification=str(data["specification"]),
        function_name=function_name,
        signature=signature,
        reference_solution=reference_solution,
        test_suite=tuple(suite),
    )


def _parse_signature(data: Any, language: Language) -> Signature:
    if not isinstance(data, dict) or "parameters" not in data or "return_type" not in data:
        raise ParseError("signature must be an object with 'parameters' and 'return_type'")
    params = []
    if not isinstance(data["parameters"], list):
        raise ParseError("signature.parameters must be a list")
    for i, entry in enumerate(data["parameters"]):
        if not isinstance(entry, dict) or "name" not in entry or "type" not in entry:
            raise ParseError(f"signature parameter {i}: need keys 'name' and 'type'")
        try:
            kind = ValueType(entry["type"])
        except ValueError:
            raise ParseError(f"signature parameter {i}: unknown type {entry['type']!r}") from None
        name = entry["name"]
        if not isinstance(name, str) or not name.isidentifier():
            raise ParseError(f"signature parameter {i}: bad name {name!r}")
        params.append(Parameter(name=name, type=kind))
    try:
        return_type = ValueType(data["return_type"])
    except ValueError:
        raise ParseError(f"unknown return type {data['return_type']!r}") from None
    if language is Language.C and return_type.is_list:
        # The C driver convention passes lists as pointer+length arguments;
        # there is no counterpart for returning one.
        raise ParseError("C problems cannot declare a list return type")
    return Signature(parameters=tuple(params), return_type=return_type)


def problem_to_dict(problem: Problem) -> dict:
    return {
        "id": problem.id,
        "language": problem.language.value,
        "specification": problem.specification,
        "function_name": problem.function_name,
        "signature": {
            "parameters": [
                {"name": p.name, "type": p.type.value} for p in problem.signature.parameters
            ],
            "return_type": problem.signature.return_type.value,
        },
        "reference_solution": problem.reference_solution,
        "test_suite": [
            {"inputs": list(tc.inputs), "expected_output": tc.expected_output}
            for tc in problem.test_suite
        ],
    }


def load_problem(source: str | Path, *, verify: bool = True, limits=None) -> Problem:
    """Load a problem file and, unless disabled, verify the reference solution.

    Verification compiles and runs the reference solution against the full
    suite; any failure raises ReferenceSolutionInvalid since it signals an
    authoring bug, not a student-facing condition.
    """
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read problem file {path}: {exc}") from exc
    problem = parse_problem(text)
    if verify:
        from .sandbox import DEFAULT_LIMITS, verify_reference_solution

        verify_reference_solution(problem, limits=limits or DEFAULT_LIMITS)
    return problem


def load_problem_dir(directory: str | Path, *, verify: bool = True, limits=None) -> list[Problem]:
    problems = []
    for path in sorted(Path(directory).glob("*.json")):
        problems.append(load_problem(path, verify=verify, limits=limits))
    return problems
