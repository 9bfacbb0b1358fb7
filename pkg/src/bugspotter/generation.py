"""Prompt building, response parsing, and the four-step validation stage.

A generation batch asks the model for n buggy/fixed/explanation tuples,
then keeps only candidates that survive validation: both codes compile,
the fixed code passes the whole reference suite, the buggy code fails at
least one case, and nothing exceeds the time limit.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources

from . import metrics
from .errors import NoValidExercise, PromptBuildError, ResponseUnparseable
from .llm import LLMClient, LLMUnavailable
from .problems import (
    Exercise,
    ExerciseCandidate,
    ExerciseStatus,
    Language,
    Problem,
    make_exercise_id,
)
from .sandbox import (
    DEFAULT_LIMITS,
    OutcomeKind,
    RunLimits,
    SuiteEntry,
    compile_code,
    run_case,
)

PROMPT_RESOURCE = "buggy_codes_v1.txt"

_LIBRARY_NOTES = {
    Language.C: "The `stdio.h' library is already included and other libraries are not allowed.",
    Language.PYTHON: "Use only built-in language features; importing libraries is not allowed.",
}


@dataclass(frozen=True)
class GenerationConfig:
    n_candidates: int = 10
    temperature: float = 0.7
    model_id: str = ""
    limits: RunLimits = DEFAULT_LIMITS
    max_retries: int = 2

    def __post_init__(self):
        if self.n_candidates < 1:
            raise ValueError("n_candidates must be >= 1")
        if not 0.0 <= self.temperature <= 2.0:
            raise ValueError("temperature must be within [0, 2]")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")


@dataclass(frozen=True)
class ValidationReport:
    compiled_both: bool
    fixed_passes_suite: bool
    buggy_fails_some: bool
    within_time_limit: bool
    accepted: bool
    failing_indices: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "compiled_both": self.compiled_both,
            "fixed_passes_suite": self.fixed_passes_suite,
            "buggy_fails_some": self.buggy_fails_some,
            "within_time_limit": self.within_time_limit,
            "accepted": self.accepted,
            "failing_indices": list(self.failing_indices),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ValidationReport":
        return cls(
            compiled_both=bool(data["compiled_both"]),
            fixed_passes_suite=bool(data["fixed_passes_suite"]),
            buggy_fails_some=bool(data["buggy_fails_some"]),
            within_time_limit=bool(data["within_time_limit"]),
            accepted=bool(data["accepted"]),
            failing_indices=tuple(data.get("failing_indices", ())),
        )


@dataclass(frozen=True)
class GenerationBatch:
    """Everything one model call produced, in candidate order."""

    prompt: str
    response: str
    candidates: tuple[ExerciseCandidate, ...]
    reports: tuple[ValidationReport, ...]
    exercises: tuple[Exercise, ...]


def _prompt_template() -> str:
    return (
        resources.files("bugspotter")
        .joinpath("prompts", PROMPT_RESOURCE)
        .read_text(encoding="utf-8")
    )


def build_prompt(problem: Problem, config: GenerationConfig) -> str:
    if not problem.specification.strip():
        raise PromptBuildError(f"problem {problem.id} has an empty specification")
    text = _prompt_template()
    for placeholder, value in (
        ("{language}", problem.language.value),
        ("{n_candidates}", str(config.n_candidates)),
        ("{function_name}", problem.function_name),
        ("{library_note}", _LIBRARY_NOTES[problem.language]),
        ("{problem_specification}", problem.specification),
    ):
        text = text.replace(placeholder, value)
    return text


def _decoded_values(text: str):
    """Yield every JSON value decodable at some `{` or `[` in the text."""
    decoder = json.JSONDecoder()
    index = 0
    while True:
        starts = [i for i in (text.find("{", index), text.find("[", index)) if i != -1]
        if not starts:
            return
        index = min(starts)
        try:
            value, end = decoder.raw_decode(text, index)
        except ValueError:
            index += 1
            continue
        yield value
        index = max(end, index + 1)


def _find_content_dict(value):
    if isinstance(value, dict):
        if isinstance(value.get("content"), list):
            return value
        for child in value.values():
            found = _find_content_dict(child)
            if found is not None:
                return found
    elif isinstance(value, list):
        for child in value:
            found = _find_content_dict(child)
            if found is not None:
                return found
    return None


def parse_response(response: str) -> list[ExerciseCandidate]:
    """Extract candidates from the model response.

    Tolerates prose and code fences around the JSON object; skips
    malformed list elements; raises ResponseUnparseable when no object
    with a `content` list can be recovered.
    """
    for value in _decoded_values(response):
        obj = _find_content_dict(value)
        if obj is None:
            continue
        content = obj["content"]
        candidates = []
        for element in content:
            if not isinstance(element, dict):
                continue
            code = element.get("code")
            fixed_code = element.get("fixed_code")
            explanation = element.get("explanation")
            if not isinstance(code, str) or not code.strip():
                continue
            if not isinstance(fixed_code, str) or not fixed_code.strip():
                continue
            if not isinstance(explanation, str):
                continue
            candidates.append(
                ExerciseCandidate(buggy_code=code, fixed_code=fixed_code, explanation=explanation)
            )
        return candidates
    raise ResponseUnparseable("no JSON object with a `content` list found in response")


def _suite_failures(entries: list[SuiteEntry]) -> tuple[int, ...]:
    failing = []
    for index, entry in enumerate(entries):
        if entry.passed:
            continue
        if entry.outcome.kind in (OutcomeKind.OUTPUT, OutcomeKind.RUNTIME_ERROR):
            failing.append(index)
    return tuple(failing)


def _validate_with_entries(
    candidate: ExerciseCandidate, problem: Problem, limits: RunLimits
) -> tuple[ValidationReport, list[SuiteEntry] | None]:
    """Run the four validation steps; also return the buggy suite entries
    when they were executed, so callers can classify without re-running."""
    report = dict(
        compiled_both=False,
        fixed_passes_suite=False,
        buggy_fails_some=False,
        within_time_limit=True,
        failing_indices=(),
    )

    def finish(buggy_entries=None):
        accepted = (
            report["compiled_both"]
            and report["fixed_passes_suite"]
            and report["buggy_fails_some"]
            and report["within_time_limit"]
        )
        return ValidationReport(accepted=accepted, **report), buggy_entries

    with compile_code(candidate.fixed_code, problem) as fixed_artifact:
        with compile_code(candidate.buggy_code, problem) as buggy_artifact:
            if not (fixed_artifact.ok and buggy_artifact.ok):
                return finish()
            report["compiled_both"] = True

            fixed_ok = True
            for tc in problem.test_suite:
                outcome = run_case(fixed_artifact, tc, limits)
                if outcome.kind is OutcomeKind.TIMEOUT:
                    report["within_time_limit"] = False
                if not (
                    outcome.kind is OutcomeKind.OUTPUT
                    and outcome.output_text == problem.expected_output_text(tc)
                ):
                    fixed_ok = False
                    break
            if not fixed_ok:
                return finish()
            report["fixed_passes_suite"] = True

            buggy_entries = []
            for tc in problem.test_suite:
                outcome = run_case(buggy_artifact, tc, limits)
                if outcome.kind is OutcomeKind.TIMEOUT:
                    report["within_time_limit"] = False
                passed = (
                    outcome.kind is OutcomeKind.OUTPUT
                    and outcome.output_text == problem.expected_output_text(tc)
                )
                buggy_entries.append(SuiteEntry(tc, outcome, passed))
            report["failing_indices"] = _suite_failures(buggy_entries)
            report["buggy_fails_some"] = bool(report["failing_indices"])
            return finish(buggy_entries)


def validate_candidate(
    candidate: ExerciseCandidate, problem: Problem, limits: RunLimits = DEFAULT_LIMITS
) -> ValidationReport:
    report, _ = _validate_with_entries(candidate, problem, limits)
    return report


def run_generation_batch(
    problem: Problem, config: GenerationConfig, client: LLMClient
) -> GenerationBatch:
    """One model call plus validation; retries unreachable/unparseable responses."""
    prompt = build_prompt(problem, config)
    attempts = config.max_retries + 1
    response = None
    last_error: Exception | None = None
    candidates: list[ExerciseCandidate] = []
    for _ in range(attempts):
        try:
            response = client.complete(
                prompt, temperature=config.temperature, model_id=config.model_id
            )
            candidates = parse_response(response)
            break
        except (LLMUnavailable, ResponseUnparseable) as exc:
            last_error = exc
            response = None
    if response is None:
        raise LLMUnavailable(f"generation failed after {attempts} attempts: {last_error}")

    reports = []
    exercises = []
    for candidate in candidates:
        report, buggy_entries = _validate_with_entries(candidate, problem, config.limits)
        reports.append(report)
        if not report.accepted:
            continue
        exercises.append(
            Exercise(
                id=make_exercise_id(problem.id, candidate),
                problem_id=problem.id,
                candidate=candidate,
                bug_type=metrics.classify_suite_entries(buggy_entries),
                edit_tokens=metrics.edit_tokens(
                    candidate.buggy_code, candidate.fixed_code, problem.language
                ),
                status=ExerciseStatus.VALIDATED,
            )
        )
    return GenerationBatch(
        prompt=prompt,
        response=response,
        candidates=tuple(candidates),
        reports=tuple(reports),
        exercises=tuple(exercises),
    )


def generate_exercises(
    problem: Problem, config: GenerationConfig, client: LLMClient
) -> list[Exercise]:
    """Validated exercises from one batch; raises when none survive."""
    batch = run_generation_batch(problem, config, client)
    if not batch.exercises:
        raise NoValidExercise(
            f"none of {len(batch.candidates)} candidates for problem {problem.id} "
            "passed validation"
        )
    return list(batch.exercises)


def _stable_index(student_id: str, problem_id: str, size: int) -> int:
    digest = hashlib.sha256(f"{student_id}\x00{problem_id}".encode("utf-8")).hexdigest()
    return int(digest[:8], 16) % size


def next_exercise(
    problem: Problem,
    student_id: str,
    store,
    client: LLMClient,
    config: GenerationConfig,
    random_assignment: bool = False,
) -> Exercise:
    """Serve an exercise this student has not seen before.

    Draws from the pre-selected set when one is pinned (rotated by a
    stable per-student hash in random-assignment mode), otherwise from
    the cache, generating a fresh batch when the cache is exhausted.
    Generation per problem is single-flight via the store's lock.
    """
    with store.generation_lock(problem.id):
        seen = store.served_ids(student_id, problem.id)
        pinned = store.preselected_ids(problem.id)
        if pinned:
            pool = [store.get(eid) for eid in pinned]
            if random_assignment:
                start = _stable_index(student_id, problem.id, len(pool))
                pool = pool[start:] + pool[:start]
            for exercise in pool:
                if exercise.id not in seen:
                    store.mark_served(student_id, problem.id, exercise.id)
                    return exercise
            raise NoValidExercise(
                f"student {student_id} has exhausted the pre-selected set "
                f"for problem {problem.id}"
            )
        for exercise in store.exercises_for(problem.id):
            if exercise.id not in seen:
                store.mark_served(student_id, problem.id, exercise.id)
                return exercise
        batch = run_generation_batch(problem, config, client)
        store.add_exercises(batch.exercises)
        store.record_batch(problem.id, batch.reports)
        for exercise in batch.exercises:
            if exercise.id not in seen:
                store.mark_served(student_id, problem.id, exercise.id)
                return exercise
        raise NoValidExercise(
            f"generation produced no unseen valid exercise for problem {problem.id}"
        )
