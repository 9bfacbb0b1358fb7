"""Debugging exercises generated by an LLM and validated by execution.

The pipeline turns a problem (specification, signature, reference
solution, test suite) into buggy/fixed code pairs, keeps only pairs that
survive execution-based validation, and judges student-submitted failing
test cases by running both programs.
"""

from .errors import (
    BadRankingSize,
    BugSpotterError,
    DegenerateTable,
    ExerciseNotFound,
    InputTypeError,
    LengthMismatch,
    LexError,
    LLMUnavailable,
    NoValidExercise,
    ParseError,
    PromptBuildError,
    ReferenceSolutionInvalid,
    ResponseUnparseable,
    SandboxError,
    ToolchainUnavailable,
    UnknownExercise,
)
from .problems import (
    BugType,
    Exercise,
    ExerciseCandidate,
    ExerciseStatus,
    Language,
    Parameter,
    Problem,
    Signature,
    TestCase,
    load_problem,
    load_problem_dir,
    parse_problem,
)
from .sandbox import (
    ExecutionOutcome,
    OutcomeKind,
    RunLimits,
    compile_code,
    run_case,
    run_input_text,
    run_suite,
    verify_reference_solution,
)
from .values import ValueType, coerce_value, parse_rendered, render_value

__version__ = "0.1.0"

__all__ = [
    "BadRankingSize",
    "BugSpotterError",
    "BugType",
    "DegenerateTable",
    "Exercise",
    "ExerciseCandidate",
    "ExerciseNotFound",
    "ExerciseStatus",
    "ExecutionOutcome",
    "InputTypeError",
    "Language",
    "LengthMismatch",
    "LexError",
    "LLMUnavailable",
    "NoValidExercise",
    "OutcomeKind",
    "Parameter",
    "ParseError",
    "Problem",
    "PromptBuildError",
    "ReferenceSolutionInvalid",
    "ResponseUnparseable",
    "RunLimits",
    "SandboxError",
    "Signature",
    "TestCase",
    "ToolchainUnavailable",
    "UnknownExercise",
    "ValueType",
    "coerce_value",
    "compile_code",
    "load_problem",
    "load_problem_dir",
    "parse_problem",
    "parse_rendered",
    "render_value",
    "run_case",
    "run_input_text",
    "run_suite",
    "verify_reference_solution",
    "__version__",
]
