"""Classroom analytics over judged submissions.

Success rates, expert difficulty bins, Pearson chi-square comparison of
exercise sources, and Cohen's kappa for annotator agreement. All
computations are pure functions over immutable snapshots of the
submission log.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from enum import Enum

from .errors import BadRankingSize, DegenerateTable, LengthMismatch, ParseError

SOURCES = ("llm", "instructor")
ALPHA = 0.05


class DifficultyLabel(str, Enum):
    EASY = "easy"
    MEDIUM = "medium"
    HARD = "hard"


@dataclass(frozen=True)
class SubmissionRecord:
    student_id: str
    exercise_id: str
    problem_id: str
    source: str
    success: bool
    timestamp: str

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ValueError(f"source must be one of {SOURCES}, got {self.source!r}")

    def to_dict(self) -> dict:
        return {
            "student_id": self.student_id,
            "exercise_id": self.exercise_id,
            "problem_id": self.problem_id,
            "source": self.source,
            "success": self.success,
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SubmissionRecord":
        try:
            return cls(
                student_id=str(data["student_id"]),
                exercise_id=str(data["exercise_id"]),
                problem_id=str(data["problem_id"]),
                source=str(data["source"]),
                success=bool(data["success"]),
                timestamp=str(data.get("timestamp", "")),
            )
        except KeyError as exc:
            raise ParseError(f"submission record missing field {exc}") from exc


@dataclass(frozen=True)
class ContingencyTable2x2:
    counts: tuple[tuple[float, float], tuple[float, float]]

    def __post_init__(self):
        rows = self.counts
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("table must be 2x2")
        if any(c < 0 for r in rows for c in r):
            raise ValueError("cell counts must be non-negative")
        if sum(c for r in rows for c in r) <= 0:
            raise ValueError("grand total must be positive")


@dataclass(frozen=True)
class Chi2Result:
    statistic: float
    p_value: float
    df: int = 1


@dataclass(frozen=True)
class SourceComparison:
    problem_id: str
    table: ContingencyTable2x2
    rates: dict[str, float]
    attempts: dict[str, int]
    statistic: float
    p_value: float
    significant: bool
    alpha: float = ALPHA
    dedupe: bool = True


def first_attempts(records: list[SubmissionRecord]) -> list[SubmissionRecord]:
    """Keep each student's first submission per exercise, in log order."""
    seen: set[tuple[str, str]] = set()
    kept = []
    for rec in records:
        key = (rec.student_id, rec.exercise_id)
        if key in seen:
            continue
        seen.add(key)
        kept.append(rec)
    return kept


def _group_key(group_by):
    if callable(group_by):
        return group_by
    return lambda rec: getattr(rec, group_by)


def success_rate(records, group_by="problem_id", dedupe: bool = True) -> dict:
    """Per-group successes / attempts; groups without records are absent."""
    if dedupe:
        records = first_attempts(list(records))
    key_of = _group_key(group_by)
    totals: dict = {}
    wins: dict = {}
    for rec in records:
        key = key_of(rec)
        totals[key] = totals.get(key, 0) + 1
        if rec.success:
            wins[key] = wins.get(key, 0) + 1
    return {key: wins.get(key, 0) / totals[key] for key in totals}


def assign_difficulty(ranking, bins: tuple[int, int, int] = (2, 2, 1)) -> dict:
    """Label a least-to-most-difficult exercise ranking easy/medium/hard."""
    ranking = list(ranking)
    if any(b < 0 for b in bins) or sum(bins) < 1:
        raise BadRankingSize(f"invalid bin scheme {bins!r}")
    if len(ranking) != sum(bins):
        raise BadRankingSize(
            f"ranking has {len(ranking)} exercises but bins {bins!r} need {sum(bins)}"
        )
    labels = {}
    cursor = 0
    for count, label in zip(bins, (DifficultyLabel.EASY, DifficultyLabel.MEDIUM, DifficultyLabel.HARD)):
        for exercise_id in ranking[cursor : cursor + count]:
            labels[exercise_id] = label
        cursor += count
    return labels


def _as_counts(table) -> tuple[tuple[float, float], tuple[float, float]]:
    if isinstance(table, ContingencyTable2x2):
        return table.counts
    rows = [tuple(float(c) for c in row) for row in table]
    ContingencyTable2x2(counts=(rows[0], rows[1]))
    return rows[0], rows[1]


def chi_square_2x2(table) -> Chi2Result:
    """Pearson independence test, df=1, no continuity correction."""
    (a, b), (c, d) = _as_counts(table)
    row1, row2 = a + b, c + d
    col1, col2 = a + c, b + d
    total = row1 + row2
    if min(row1, row2, col1, col2) <= 0:
        raise DegenerateTable("a row or column total is zero; expected counts undefined")
    stat = 0.0
    for observed, rt, ct in ((a, row1, col1), (b, row1, col2), (c, row2, col1), (d, row2, col2)):
        expected = rt * ct / total
        diff = observed - expected
        stat += diff * diff / expected
    # survival function of chi-square with one degree of freedom
    p_value = math.erfc(math.sqrt(stat / 2.0))
    return Chi2Result(statistic=stat, p_value=p_value, df=1)


def compare_sources(
    records, problem_id: str | None = None, alpha: float = ALPHA, dedupe: bool = True
) -> SourceComparison:
    """2x2 chi-square of llm vs instructor success counts."""
    pool = [r for r in records if problem_id is None or r.problem_id == problem_id]
    if dedupe:
        pool = first_attempts(pool)
    counts = {src: [0, 0] for src in SOURCES}
    for rec in pool:
        counts[rec.source][0 if rec.success else 1] += 1
    table = (
        (counts["llm"][0], counts["llm"][1]),
        (counts["instructor"][0], counts["instructor"][1]),
    )
    result = chi_square_2x2(table)
    attempts = {src: counts[src][0] + counts[src][1] for src in SOURCES}
    rates = {src: counts[src][0] / attempts[src] for src in SOURCES}
    return SourceComparison(
        problem_id=problem_id if problem_id is not None else "all",
        table=ContingencyTable2x2(counts=table),
        rates=rates,
        attempts=attempts,
        statistic=result.statistic,
        p_value=result.p_value,
        significant=result.p_value < alpha,
        alpha=alpha,
        dedupe=dedupe,
    )


def cohens_kappa(ratings_a, ratings_b) -> float:
    """Chance-corrected agreement between two raters."""
    a = list(ratings_a)
    b = list(ratings_b)
    if len(a) != len(b):
        raise LengthMismatch(f"rating vectors differ in length: {len(a)} vs {len(b)}")
    if not a:
        raise LengthMismatch("rating vectors are empty")
    n = len(a)
    observed = sum(1 for x, y in zip(a, b) if x == y) / n
    freq_a: dict = {}
    freq_b: dict = {}
    for x in a:
        freq_a[x] = freq_a.get(x, 0) + 1
    for y in b:
        freq_b[y] = freq_b.get(y, 0) + 1
    expected = sum(freq_a[c] * freq_b.get(c, 0) for c in freq_a) / (n * n)
    if expected == 1.0:
        return 1.0
    return (observed - expected) / (1.0 - expected)


_RANKING_HEADER = ["problem_id", "exercise_id", "rank"]


def load_ranking(text: str) -> dict[str, list[str]]:
    """Read the expert difficulty ranking CSV into per-problem orderings."""
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        raise ParseError("ranking file is empty")
    header = [cell.strip() for cell in rows[0]]
    if header != _RANKING_HEADER:
        raise ParseError(f"expected header {','.join(_RANKING_HEADER)}, got {','.join(header)}")
    by_problem: dict[str, list[tuple[int, str]]] = {}
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) != 3:
            raise ParseError(f"line {line_no}: expected 3 fields")
        problem_id, exercise_id = row[0].strip(), row[1].strip()
        try:
            rank = int(row[2].strip())
        except ValueError as exc:
            raise ParseError(f"line {line_no}: rank must be an integer") from exc
        entries = by_problem.setdefault(problem_id, [])
        if any(r == rank for r, _ in entries):
            raise ParseError(f"line {line_no}: duplicate rank {rank} for problem {problem_id}")
        entries.append((rank, exercise_id))
    return {
        pid: [exercise_id for _, exercise_id in sorted(entries)]
        for pid, entries in by_problem.items()
    }


def load_submission_log(text: str) -> list[SubmissionRecord]:
    records = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            records.append(SubmissionRecord.from_dict(json.loads(line)))
        except (ValueError, ParseError) as exc:
            raise ParseError(f"submission log line {line_no}: {exc}") from exc
    return records


def analytics_report(
    records,
    rankings: dict[str, list[str]] | None = None,
    annotations=None,
    alpha: float = ALPHA,
    dedupe: bool = True,
) -> dict:
    """JSON-ready summary: rates, difficulty bins, chi-square, agreement."""
    records = list(records)
    attempts = first_attempts(records) if dedupe else records
    report: dict = {
        "n_records": len(records),
        "n_first_attempts": len(attempts),
        "n_students": len({r.student_id for r in records}),
        "dedupe": dedupe,
        "success_rate_by_problem": _sorted_map(success_rate(records, "problem_id", dedupe=dedupe)),
        "success_rate_by_source": _sorted_map(success_rate(records, "source", dedupe=dedupe)),
    }

    if rankings:
        difficulty: dict[str, str] = {}
        for problem_id, ranking in sorted(rankings.items()):
            for exercise_id, label in assign_difficulty(ranking).items():
                difficulty[exercise_id] = label.value
        report["difficulty_labels"] = dict(sorted(difficulty.items()))
        labeled = [r for r in records if r.exercise_id in difficulty]
        if labeled:
            report["success_rate_by_difficulty"] = _sorted_map(
                success_rate(labeled, lambda r: difficulty[r.exercise_id], dedupe=dedupe)
            )

    comparisons = {}
    problem_ids = sorted({r.problem_id for r in records})
    for scope in [None, *problem_ids]:
        key = scope if scope is not None else "all"
        try:
            cmp = compare_sources(records, scope, alpha=alpha, dedupe=dedupe)
        except DegenerateTable as exc:
            comparisons[key] = {"skipped": str(exc)}
            continue
        comparisons[key] = {
            "table": [list(row) for row in cmp.table.counts],
            "rates": _sorted_map(cmp.rates),
            "attempts": dict(sorted(cmp.attempts.items())),
            "statistic": cmp.statistic,
            "p_value": cmp.p_value,
            "significant": cmp.significant,
            "alpha": alpha,
        }
    report["source_comparison"] = comparisons

    if annotations:
        report["annotation_agreement"] = annotation_agreement(annotations)

    return report


def annotation_agreement(annotations) -> dict:
    """Cohen's kappa per annotated attribute between two evaluators."""
    from .metrics import diverse_codes

    evaluators = sorted({a.evaluator_id for a in annotations})
    out: dict = {"evaluators": evaluators, "diverse_codes": diverse_codes(annotations)}
    if len(evaluators) != 2:
        out["kappa"] = None
        out["note"] = "kappa requires exactly two evaluators"
        return out
    first, second = evaluators
    by_eval = {
        ev: {a.exercise_id: a for a in annotations if a.evaluator_id == ev} for ev in evaluators
    }
    shared = sorted(set(by_eval[first]) & set(by_eval[second]))
    kappas = {}
    for attr in ("diverse_flag", "bug_prob_related", "nb_bugs"):
        a = [getattr(by_eval[first][x], attr) for x in shared]
        b = [getattr(by_eval[second][x], attr) for x in shared]
        kappas[attr] = cohens_kappa(a, b) if shared else None
    out["kappa"] = kappas
    out["n_shared_exercises"] = len(shared)
    return out


def _sorted_map(mapping: dict) -> dict:
    return {str(k): mapping[k] for k in sorted(mapping, key=str)}
