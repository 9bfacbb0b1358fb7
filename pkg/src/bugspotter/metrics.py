"""Automatic rubric attributes for validated exercises.

SuccOf10 counts how many of a generation batch survived validation.
EditTokens measures the token-level edit distance between buggy and
fixed code. BugType classifies the buggy code's behavior on the
reference suite. Human-judged attributes (diversity, bug plausibility,
bug count) are ingested from annotation files, never computed here.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .errors import ParseError, UnknownExercise
from .lexers import levenshtein, tokenize
from .problems import BugType, ExerciseCandidate, Language, Problem
from .sandbox import DEFAULT_LIMITS, OutcomeKind, RunLimits, SuiteEntry, run_suite

__all__ = [
    "BugType",
    "ExpertAnnotation",
    "BatchMetrics",
    "classify_bug_type",
    "classify_suite_entries",
    "tokenize",
    "edit_tokens",
    "succ_of_10",
    "ingest_annotations",
    "aggregate_annotations",
    "diverse_codes",
    "batch_metrics",
]


@dataclass(frozen=True)
class ExpertAnnotation:
    exercise_id: str
    evaluator_id: str
    diverse_flag: bool
    bug_prob_related: int
    nb_bugs: float

    def __post_init__(self):
        if self.bug_prob_related not in (0, 1):
            raise ParseError(f"bug_prob_related must be 0 or 1, got {self.bug_prob_related!r}")
        if self.nb_bugs < 1:
            raise ParseError(f"nb_bugs must be >= 1, got {self.nb_bugs!r}")


@dataclass(frozen=True)
class BatchMetrics:
    succ_of_10: int
    edit_tokens: dict[str, int]
    bug_type: dict[str, BugType]


def classify_suite_entries(entries: list[SuiteEntry]) -> BugType:
    """Type3 if any run crashed, else Type2 if nothing passed, else Type1."""
    if any(e.outcome.kind is OutcomeKind.RUNTIME_ERROR for e in entries):
        return BugType.TYPE3
    if not any(e.passed for e in entries):
        return BugType.TYPE2
    return BugType.TYPE1


def classify_bug_type(
    candidate: ExerciseCandidate, problem: Problem, limits: RunLimits = DEFAULT_LIMITS
) -> BugType:
    return classify_suite_entries(run_suite(candidate.buggy_code, problem, limits))


def edit_tokens(buggy: str, fixed: str, language: Language) -> int:
    return levenshtein(tokenize(buggy, language), tokenize(fixed, language))


def succ_of_10(reports) -> int:
    """Count of accepted validation reports in a batch."""
    return sum(1 for r in reports if r.accepted)


_ANNOTATION_HEADER = ["exercise_id", "evaluator_id", "diverse_flag", "bug_prob_related", "nb_bugs"]
_TRUE_WORDS = {"1", "true", "yes"}
_FALSE_WORDS = {"0", "false", "no"}


def _parse_flag(raw: str, field: str, line: int) -> bool:
    word = raw.strip().lower()
    if word in _TRUE_WORDS:
        return True
    if word in _FALSE_WORDS:
        return False
    raise ParseError(f"line {line}: {field} must be boolean-like, got {raw!r}")


def ingest_annotations(text: str, known_exercise_ids=None) -> list[ExpertAnnotation]:
    """Parse the annotation CSV; optionally enforce referential integrity."""
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        raise ParseError("annotation file is empty")
    header = [cell.strip() for cell in rows[0]]
    if header != _ANNOTATION_HEADER:
        raise ParseError(f"expected header {','.join(_ANNOTATION_HEADER)}, got {','.join(header)}")
    annotations = []
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) != len(_ANNOTATION_HEADER):
            raise ParseError(f"line {line_no}: expected {len(_ANNOTATION_HEADER)} fields")
        exercise_id, evaluator_id = row[0].strip(), row[1].strip()
        if not exercise_id or not evaluator_id:
            raise ParseError(f"line {line_no}: exercise_id and evaluator_id are required")
        if known_exercise_ids is not None and exercise_id not in known_exercise_ids:
            raise UnknownExercise(f"line {line_no}: unknown exercise id {exercise_id!r}")
        try:
            bug_prob_related = int(row[3].strip())
            nb_bugs = float(row[4].strip())
        except ValueError as exc:
            raise ParseError(f"line {line_no}: {exc}") from exc
        annotations.append(
            ExpertAnnotation(
                exercise_id=exercise_id,
                evaluator_id=evaluator_id,
                diverse_flag=_parse_flag(row[2], "diverse_flag", line_no),
                bug_prob_related=bug_prob_related,
                nb_bugs=nb_bugs,
            )
        )
    return annotations


def aggregate_annotations(annotations: list[ExpertAnnotation]) -> dict[str, dict[str, float]]:
    """Per-exercise means of each attribute across evaluators."""
    grouped: dict[str, list[ExpertAnnotation]] = {}
    for ann in annotations:
        grouped.setdefault(ann.exercise_id, []).append(ann)
    out = {}
    for exercise_id, group in sorted(grouped.items()):
        n = len(group)
        out[exercise_id] = {
            "diverse_flag": sum(1 for a in group if a.diverse_flag) / n,
            "bug_prob_related": sum(a.bug_prob_related for a in group) / n,
            "nb_bugs": sum(a.nb_bugs for a in group) / n,
        }
    return out


def diverse_codes(annotations: list[ExpertAnnotation]) -> int:
    """Count of exercises that every evaluator flagged as diverse."""
    grouped: dict[str, list[bool]] = {}
    for ann in annotations:
        grouped.setdefault(ann.exercise_id, []).append(ann.diverse_flag)
    return sum(1 for flags in grouped.values() if all(flags))


def batch_metrics(reports, exercises) -> BatchMetrics:
    """Rubric summary for one generation batch."""
    return BatchMetrics(
        succ_of_10=succ_of_10(reports),
        edit_tokens={e.id: e.edit_tokens for e in exercises},
        bug_type={e.id: e.bug_type for e in exercises},
    )
