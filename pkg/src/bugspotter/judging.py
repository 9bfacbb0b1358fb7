"""Judging of student-designed failing test cases.

A submission is an input plus the claimed buggy and correct outputs.
Success needs all three criteria: (1) the buggy and fixed codes actually
diverge on the input, (2) the fixed code's output matches the claimed
correct output, and (3) the buggy code's behavior matches the claimed
buggy output. A crash is claimed with the literal sentinel ERROR.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ExerciseNotFound, SandboxError
from .problems import Exercise, Problem
from .sandbox import (
    DEFAULT_LIMITS,
    ExecutionOutcome,
    OutcomeKind,
    RunLimits,
    compile_code,
    run_input_text,
)
from .values import render_input_lines

ERROR_SENTINEL = "ERROR"

TIMEOUT_DETAIL = "the submitted input ran longer than the time limit"


@dataclass(frozen=True)
class TestCaseSubmission:
    __test__ = False  # not a test class, despite the name

    exercise_id: str
    inputs: tuple
    claimed_buggy_output: str
    claimed_correct_output: str


@dataclass(frozen=True)
class JudgeVerdict:
    criterion1_outputs_differ: bool
    criterion2_correct_matches: bool
    criterion3_buggy_matches: bool
    success: bool
    actual_buggy: ExecutionOutcome
    actual_fixed: ExecutionOutcome
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "criterion1_outputs_differ": self.criterion1_outputs_differ,
            "criterion2_correct_matches": self.criterion2_correct_matches,
            "criterion3_buggy_matches": self.criterion3_buggy_matches,
            "success": self.success,
            "actual_buggy": _outcome_dict(self.actual_buggy),
            "actual_fixed": _outcome_dict(self.actual_fixed),
            "detail": self.detail,
        }


def _outcome_dict(outcome: ExecutionOutcome) -> dict:
    return {
        "kind": outcome.kind.value,
        "output_text": outcome.output_text,
        "detail": outcome.detail,
    }


def canonicalize_claim(text: str) -> str:
    """Students type outputs by hand; only trailing whitespace is forgiven."""
    return text.rstrip()


def _outcomes_differ(buggy: ExecutionOutcome, fixed: ExecutionOutcome) -> bool:
    if buggy.kind is not fixed.kind:
        return True
    if buggy.kind is OutcomeKind.OUTPUT:
        return buggy.output_text != fixed.output_text
    # two crashes (or two timeouts) count as the same behavior
    return False


def _claim_matches(outcome: ExecutionOutcome, claim: str) -> bool:
    if outcome.kind is OutcomeKind.OUTPUT:
        return outcome.output_text is not None and outcome.output_text.rstrip() == claim
    if outcome.kind is OutcomeKind.RUNTIME_ERROR:
        return claim == ERROR_SENTINEL
    return False


def judge(
    submission: TestCaseSubmission,
    exercise: Exercise,
    problem: Problem,
    limits: RunLimits = DEFAULT_LIMITS,
) -> JudgeVerdict:
    if exercise.problem_id != problem.id:
        raise ExerciseNotFound(
            f"exercise {exercise.id} belongs to problem {exercise.problem_id}, not {problem.id}"
        )
    typed_inputs = problem.signature.coerce_inputs(submission.inputs)
    input_text = render_input_lines(typed_inputs, problem.signature.input_types)

    with compile_code(exercise.candidate.buggy_code, problem) as buggy_artifact:
        with compile_code(exercise.candidate.fixed_code, problem) as fixed_artifact:
            for artifact, label in ((buggy_artifact, "buggy"), (fixed_artifact, "fixed")):
                if not artifact.ok:
                    raise SandboxError(
                        f"validated exercise {exercise.id} no longer compiles ({label} code): "
                        f"{artifact.failure.detail}"
                    )
            actual_buggy = run_input_text(buggy_artifact, input_text, limits)
            actual_fixed = run_input_text(fixed_artifact, input_text, limits)

    claimed_buggy = canonicalize_claim(submission.claimed_buggy_output)
    claimed_correct = canonicalize_claim(submission.claimed_correct_output)

    criterion1 = _outcomes_differ(actual_buggy, actual_fixed)
    criterion2 = actual_fixed.kind is OutcomeKind.OUTPUT and _claim_matches(
        actual_fixed, claimed_correct
    )
    criterion3 = _claim_matches(actual_buggy, claimed_buggy)

    detail = ""
    if OutcomeKind.TIMEOUT in (actual_buggy.kind, actual_fixed.kind):
        detail = TIMEOUT_DETAIL

    return JudgeVerdict(
        criterion1_outputs_differ=criterion1,
        criterion2_correct_matches=criterion2,
        criterion3_buggy_matches=criterion3,
        success=criterion1 and criterion2 and criterion3,
        actual_buggy=actual_buggy,
        actual_fixed=actual_fixed,
        detail=detail,
    )
