"""Append-only persistence for exercises, serving history, submissions.

State lives in memory guarded by one lock; every mutation is also
appended as a JSON line so a restart replays the log and lands in the
same state. Two files: events.jsonl (exercises, serving, preselection,
batch reports) and submissions.jsonl (one judged submission per line).
"""

from __future__ import annotations

import json
import os
import threading
from contextlib import contextmanager
from pathlib import Path

from .analytics import SubmissionRecord
from .errors import ExerciseNotFound, ParseError
from .generation import ValidationReport
from .problems import Exercise, ExerciseStatus

EVENTS_FILE = "events.jsonl"
SUBMISSIONS_FILE = "submissions.jsonl"


class ExerciseStore:
    def __init__(self, data_dir: str | os.PathLike | None = None):
        self._lock = threading.RLock()
        self._exercises: dict[str, Exercise] = {}
        self._by_problem: dict[str, list[str]] = {}
        self._served: dict[tuple[str, str], list[str]] = {}
        self._preselected: dict[str, tuple[str, ...]] = {}
        self._batches: dict[str, list[list[ValidationReport]]] = {}
        self._submissions: list[SubmissionRecord] = []
        self._generation_locks: dict[str, threading.Lock] = {}
        self.data_dir = Path(data_dir) if data_dir else None
        if self.data_dir:
            self.data_dir.mkdir(parents=True, exist_ok=True)
            self._replay()

    # ---- exercises ----

    def add_exercises(self, exercises) -> list[Exercise]:
        """Register validated exercises; ids already present are skipped."""
        added = []
        with self._lock:
            for exercise in exercises:
                if exercise.id in self._exercises:
                    continue
                self._apply_exercise(exercise)
                self._append_event({"event": "exercise_added", "exercise": exercise.to_dict()})
                added.append(exercise)
        return added

    def _apply_exercise(self, exercise: Exercise) -> None:
        self._exercises[exercise.id] = exercise
        self._by_problem.setdefault(exercise.problem_id, []).append(exercise.id)

    def get(self, exercise_id: str) -> Exercise:
        with self._lock:
            try:
                return self._exercises[exercise_id]
            except KeyError:
                raise ExerciseNotFound(f"no exercise with id {exercise_id!r}") from None

    def exercises_for(self, problem_id: str) -> list[Exercise]:
        with self._lock:
            return [self._exercises[eid] for eid in self._by_problem.get(problem_id, [])]

    # ---- preselection ----

    def preselect(self, problem_id: str, exercise_ids) -> None:
        """Pin serving for a problem to the given ids; empty list unpins."""
        ids = tuple(exercise_ids)
        with self._lock:
            for eid in ids:
                exercise = self.get(eid)
                if exercise.problem_id != problem_id:
                    raise ExerciseNotFound(
                        f"exercise {eid} belongs to problem {exercise.problem_id!r}, "
                        f"not {problem_id!r}"
                    )
            self._apply_preselect(problem_id, ids)
            self._append_event(
                {"event": "preselected", "problem_id": problem_id, "exercise_ids": list(ids)}
            )

    def _apply_preselect(self, problem_id: str, ids: tuple[str, ...]) -> None:
        if ids:
            self._preselected[problem_id] = ids
            for eid in ids:
                exercise = self._exercises[eid]
                if exercise.status is not ExerciseStatus.PRESELECTED:
                    self._exercises[eid] = exercise.with_status(ExerciseStatus.PRESELECTED)
        else:
            self._preselected.pop(problem_id, None)

    def preselected_ids(self, problem_id: str) -> tuple[str, ...] | None:
        with self._lock:
            return self._preselected.get(problem_id)

    # ---- serving history ----

    def mark_served(self, student_id: str, problem_id: str, exercise_id: str) -> None:
        with self._lock:
            self._apply_served(student_id, problem_id, exercise_id)
            self._append_event(
                {
                    "event": "served",
                    "student_id": student_id,
                    "problem_id": problem_id,
                    "exercise_id": exercise_id,
                }
            )

    def _apply_served(self, student_id: str, problem_id: str, exercise_id: str) -> None:
        key = (student_id, problem_id)
        served = self._served.setdefault(key, [])
        if exercise_id not in served:
            served.append(exercise_id)

    def served_ids(self, student_id: str, problem_id: str) -> set[str]:
        with self._lock:
            return set(self._served.get((student_id, problem_id), ()))

    def was_served(self, student_id: str, exercise_id: str) -> bool:
        with self._lock:
            exercise = self._exercises.get(exercise_id)
            if exercise is None:
                return False
            return exercise_id in self._served.get((student_id, exercise.problem_id), ())

    # ---- generation batches ----

    def record_batch(self, problem_id: str, reports) -> None:
        reports = list(reports)
        with self._lock:
            self._batches.setdefault(problem_id, []).append(reports)
            self._append_event(
                {
                    "event": "batch",
                    "problem_id": problem_id,
                    "reports": [r.to_dict() for r in reports],
                }
            )

    def batches_for(self, problem_id: str) -> list[list[ValidationReport]]:
        with self._lock:
            return [list(batch) for batch in self._batches.get(problem_id, [])]

    # ---- submissions ----

    def add_submission(self, record: SubmissionRecord) -> None:
        with self._lock:
            self._submissions.append(record)
            self._append_json(SUBMISSIONS_FILE, record.to_dict())

    def submissions(self) -> list[SubmissionRecord]:
        with self._lock:
            return list(self._submissions)

    # ---- generation single-flight ----

    @contextmanager
    def generation_lock(self, problem_id: str):
        with self._lock:
            lock = self._generation_locks.setdefault(problem_id, threading.Lock())
        with lock:
            yield

    # ---- persistence ----

    def _append_event(self, event: dict) -> None:
        self._append_json(EVENTS_FILE, event)

    def _append_json(self, filename: str, payload: dict) -> None:
        if not self.data_dir:
            return
        line = json.dumps(payload, sort_keys=True, ensure_ascii=False)
        with open(self.data_dir / filename, "a", encoding="utf-8") as fh:
            fh.write(line + "\n")

    def _replay(self) -> None:
        events_path = self.data_dir / EVENTS_FILE
        if events_path.exists():
            for line_no, line in enumerate(
                events_path.read_text(encoding="utf-8").splitlines(), start=1
            ):
                if not line.strip():
                    continue
                try:
                    event = json.loads(line)
                    kind = event["event"]
                    if kind == "exercise_added":
                        self._apply_exercise(Exercise.from_dict(event["exercise"]))
                    elif kind == "served":
                        self._apply_served(
                            event["student_id"], event["problem_id"], event["exercise_id"]
                        )
                    elif kind == "preselected":
                        self._apply_preselect(
                            event["problem_id"], tuple(event["exercise_ids"])
                        )
                    elif kind == "batch":
                        self._batches.setdefault(event["problem_id"], []).append(
                            [ValidationReport.from_dict(r) for r in event["reports"]]
                        )
                    else:
                        raise ParseError(f"unknown event kind {kind!r}")
                except (KeyError, ValueError) as exc:
                    raise ParseError(f"{events_path}:{line_no}: corrupt event: {exc}") from exc
        submissions_path = self.data_dir / SUBMISSIONS_FILE
        if submissions_path.exists():
            for line_no, line in enumerate(
                submissions_path.read_text(encoding="utf-8").splitlines(), start=1
            ):
                if not line.strip():
                    continue
                try:
                    self._submissions.append(SubmissionRecord.from_dict(json.loads(line)))
                except (KeyError, ValueError, ParseError) as exc:
                    raise ParseError(
                        f"{submissions_path}:{line_no}: corrupt submission: {exc}"
                    ) from exc

    def compact(self) -> None:
        """Rewrite the event log as a snapshot of current state."""
        if not self.data_dir:
            return
        with self._lock:
            tmp_path = self.data_dir / (EVENTS_FILE + ".tmp")
            with open(tmp_path, "w", encoding="utf-8") as fh:
                for problem_id in self._by_problem:
                    for eid in self._by_problem[problem_id]:
                        fh.write(
                            json.dumps(
                                {
                                    "event": "exercise_added",
                                    "exercise": self._exercises[eid].to_dict(),
                                },
                                sort_keys=True,
                                ensure_ascii=False,
                            )
                            + "\n"
                        )
                for problem_id, ids in self._preselected.items():
                    fh.write(
                        json.dumps(
                            {
                                "event": "preselected",
                                "problem_id": problem_id,
                                "exercise_ids": list(ids),
                            },
                            sort_keys=True,
                        )
                        + "\n"
                    )
                for (student_id, problem_id), ids in self._served.items():
                    for eid in ids:
                        fh.write(
                            json.dumps(
                                {
                                    "event": "served",
                                    "student_id": student_id,
                                    "problem_id": problem_id,
                                    "exercise_id": eid,
                                },
                                sort_keys=True,
                            )
                            + "\n"
                        )
                for problem_id, batches in self._batches.items():
                    for batch in batches:
                        fh.write(
                            json.dumps(
                                {
                                    "event": "batch",
                                    "problem_id": problem_id,
                                    "reports": [r.to_dict() for r in batch],
                                },
                                sort_keys=True,
                            )
                            + "\n"
                        )
            os.replace(tmp_path, self.data_dir / EVENTS_FILE)
