"""HTTP surface: serve exercises, judge submissions, admin operations.

Student routes identify the caller via the X-Student-Id header; admin
routes need a bearer token. No student-reachable response ever carries
fixed code, explanations, or reference solutions. Every judged
submission is persisted so analytics can be replayed from the log.
"""

from __future__ import annotations

import datetime
import json
import os
import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .analytics import SubmissionRecord, analytics_report
from .errors import (
    BugSpotterError,
    ExerciseNotFound,
    InputTypeError,
    LLMUnavailable,
    NoValidExercise,
    ParseError,
    PromptBuildError,
    ReferenceSolutionInvalid,
    SandboxError,
)
from .generation import GenerationConfig, next_exercise
from .judging import ERROR_SENTINEL, TestCaseSubmission, judge
from .metrics import succ_of_10
from .problems import Exercise, Problem, load_problem_dir, parse_problem, problem_to_dict
from .sandbox import DEFAULT_LIMITS, RunLimits, verify_reference_solution
from .store import ExerciseStore

STUDENT_HEADER = "X-Student-Id"


@dataclass
class ServiceSettings:
    data_dir: str | None = None
    problem_dir: str | None = None
    admin_token: str | None = None
    ui_origin: str = "*"
    fixture_dir: str | None = None
    model_id: str = ""
    n_candidates: int = 10
    temperature: float = 0.7
    limits: RunLimits = DEFAULT_LIMITS
    random_assignment: bool = False
    verify_problems_on_startup: bool = False

    @classmethod
    def from_env(cls) -> "ServiceSettings":
        data_dir = os.environ.get("BUGSPOTTER_DATA_DIR") or None
        return cls(
            data_dir=data_dir,
            problem_dir=None,
            admin_token=os.environ.get("BUGSPOTTER_ADMIN_TOKEN") or None,
            ui_origin=os.environ.get("BUGSPOTTER_UI_ORIGIN", "*"),
            model_id=os.environ.get("BUGSPOTTER_MODEL", ""),
        )

    def resolved_problem_dir(self) -> Path | None:
        if self.problem_dir:
            return Path(self.problem_dir)
        if self.data_dir:
            return Path(self.data_dir) / "problems"
        return None


class ApiException(Exception):
    def __init__(self, status_code: int, code: str, message: str):
        self.status_code = status_code
        self.code = code
        self.message = message


class _NullLLMClient:
    def complete(self, prompt: str, *, temperature: float, model_id: str) -> str:
        raise LLMUnavailable("no LLM client configured (set BUGSPOTTER_LLM_URL)")


def _default_client(settings: ServiceSettings):
    if settings.fixture_dir:
        from .llm import FixtureLLMClient

        return FixtureLLMClient(settings.fixture_dir)
    if os.environ.get("BUGSPOTTER_LLM_URL"):
        from .llm import HttpLLMClient

        return HttpLLMClient()
    return _NullLLMClient()


def _signature_schema(problem: Problem) -> dict:
    return {
        "parameters": [
            {"name": p.name, "type": p.type.value} for p in problem.signature.parameters
        ],
        "return_type": problem.signature.return_type.value,
    }


def _exercise_view(exercise: Exercise, problem: Problem) -> dict:
    """Student-visible projection; must never include solution material."""
    return {
        "exercise_id": exercise.id,
        "problem_id": problem.id,
        "language": problem.language.value,
        "specification": problem.specification,
        "function_name": problem.function_name,
        "signature": _signature_schema(problem),
        "buggy_code": exercise.candidate.buggy_code,
        "bug_type": exercise.bug_type.value,
        "error_sentinel": ERROR_SENTINEL,
    }


def _utc_now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")


def create_app(
    settings: ServiceSettings | None = None,
    problems: dict[str, Problem] | None = None,
    store: ExerciseStore | None = None,
    client=None,
) -> FastAPI:
    settings = settings or ServiceSettings.from_env()
    store = store or ExerciseStore(settings.data_dir)
    client = client or _default_client(settings)

    if problems is None:
        problems = {}
        problem_dir = settings.resolved_problem_dir()
        if problem_dir and problem_dir.is_dir():
            for problem in load_problem_dir(
                problem_dir, verify=settings.verify_problems_on_startup, limits=settings.limits
            ):
                problems[problem.id] = problem

    config = GenerationConfig(
        n_candidates=settings.n_candidates,
        temperature=settings.temperature,
        model_id=settings.model_id,
        limits=settings.limits,
    )

    app = FastAPI(title="bugspotter", docs_url=None, redoc_url=None)
    app.state.settings = settings
    app.state.store = store
    app.state.problems = problems
    app.state.client = client
    app.state.config = config

    if settings.ui_origin:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=[settings.ui_origin],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    judge_locks: dict[str, threading.Lock] = {}
    judge_locks_guard = threading.Lock()

    @app.exception_handler(ApiException)
    async def _api_exception_handler(request: Request, exc: ApiException):
        return JSONResponse(
            status_code=exc.status_code, content={"code": exc.code, "message": exc.message}
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400, content={"code": "bad_request", "message": str(exc)}
        )

    @app.exception_handler(Exception)
    async def _unexpected_handler(request: Request, exc: Exception):
        return JSONResponse(
            status_code=500, content={"code": "internal", "message": str(exc)}
        )

    def student_id_of(request: Request) -> str:
        student_id = request.headers.get(STUDENT_HEADER, "").strip()
        if not student_id:
            raise ApiException(400, "bad_request", f"missing {STUDENT_HEADER} header")
        return student_id

    def require_admin(request: Request) -> None:
        if not settings.admin_token:
            raise ApiException(401, "unauthorized", "admin token is not configured")
        header = request.headers.get("Authorization", "")
        if header != f"Bearer {settings.admin_token}":
            raise ApiException(401, "unauthorized", "invalid admin token")

    async def read_json(request: Request) -> dict:
        try:
            payload = await request.json()
        except ValueError:
            raise ApiException(400, "bad_request", "request body must be JSON") from None
        if not isinstance(payload, dict):
            raise ApiException(400, "bad_request", "request body must be a JSON object")
        return payload

    @app.get("/problems")
    async def list_problems():
        return [
            {"id": p.id, "title": p.title, "language": p.language.value}
            for p in sorted(problems.values(), key=lambda p: p.id)
        ]

    @app.post("/problems/{problem_id}/exercise")
    async def serve_exercise(problem_id: str, request: Request):
        student_id = student_id_of(request)
        problem = problems.get(problem_id)
        if problem is None:
            raise ApiException(404, "not_found", f"no problem with id {problem_id!r}")
        try:
            exercise = next_exercise(
                problem,
                student_id,
                store,
                client,
                config,
                random_assignment=settings.random_assignment,
            )
        except (LLMUnavailable, NoValidExercise) as exc:
            raise ApiException(502, "generation_failed", str(exc)) from exc
        except PromptBuildError as exc:
            raise ApiException(500, "internal", str(exc)) from exc
        return _exercise_view(exercise, problem)

    @app.post("/exercises/{exercise_id}/submit")
    async def submit(exercise_id: str, request: Request):
        student_id = student_id_of(request)
        payload = await read_json(request)
        try:
            exercise = store.get(exercise_id)
        except ExerciseNotFound as exc:
            raise ApiException(404, "not_found", str(exc)) from exc
        if not store.was_served(student_id, exercise_id):
            raise ApiException(
                404, "not_found", f"exercise {exercise_id} was not served to this student"
            )
        problem = problems.get(exercise.problem_id)
        if problem is None:
            raise ApiException(500, "internal", f"problem {exercise.problem_id} not loaded")

        inputs = payload.get("inputs")
        claimed_buggy = payload.get("claimed_buggy_output")
        claimed_correct = payload.get("claimed_correct_output")
        if not isinstance(inputs, list):
            raise ApiException(400, "bad_request", "inputs must be a list")
        if not isinstance(claimed_buggy, str) or not isinstance(claimed_correct, str):
            raise ApiException(
                400, "bad_request", "claimed_buggy_output and claimed_correct_output must be text"
            )
        submission = TestCaseSubmission(
            exercise_id=exercise_id,
            inputs=tuple(inputs),
            claimed_buggy_output=claimed_buggy,
            claimed_correct_output=claimed_correct,
        )

        with judge_locks_guard:
            lock = judge_locks.setdefault(student_id, threading.Lock())
        if not lock.acquire(blocking=False):
            raise ApiException(
                429, "rate_limited", "a submission from this student is already being judged"
            )
        try:
            try:
                verdict = judge(submission, exercise, problem, settings.limits)
            except InputTypeError as exc:
                raise ApiException(400, "bad_request", str(exc)) from exc
            except SandboxError as exc:
                raise ApiException(500, "judge_error", str(exc)) from exc
        finally:
            lock.release()

        store.add_submission(
            SubmissionRecord(
                student_id=student_id,
                exercise_id=exercise_id,
                problem_id=problem.id,
                source=exercise.source,
                success=verdict.success,
                timestamp=_utc_now(),
            )
        )
        view = verdict.to_dict()
        view["exercise_id"] = exercise_id
        return view

    @app.post("/admin/problems", status_code=201)
    async def upload_problem(request: Request):
        require_admin(request)
        payload = await read_json(request)
        try:
            problem = parse_problem(payload)
        except (ParseError, InputTypeError) as exc:
            raise ApiException(400, "bad_request", str(exc)) from exc
        if problem.id in problems:
            raise ApiException(400, "bad_request", f"problem {problem.id!r} already exists")
        try:
            verify_reference_solution(problem, settings.limits)
        except ReferenceSolutionInvalid as exc:
            raise ApiException(400, "bad_request", str(exc)) from exc
        problem_dir = settings.resolved_problem_dir()
        if problem_dir:
            problem_dir.mkdir(parents=True, exist_ok=True)
            (problem_dir / f"{problem.id}.json").write_text(
                json.dumps(problem_to_dict(problem), indent=2, sort_keys=True) + "\n",
                encoding="utf-8",
            )
        problems[problem.id] = problem
        return {"id": problem.id}

    @app.post("/admin/exercises/preselect")
    async def preselect(request: Request):
        require_admin(request)
        payload = await read_json(request)
        problem_id = payload.get("problem_id")
        exercise_ids = payload.get("exercise_ids")
        if not isinstance(problem_id, str) or not isinstance(exercise_ids, list):
            raise ApiException(
                400, "bad_request", "payload needs problem_id and exercise_ids fields"
            )
        if problem_id not in problems:
            raise ApiException(404, "not_found", f"no problem with id {problem_id!r}")
        try:
            store.preselect(problem_id, [str(e) for e in exercise_ids])
        except ExerciseNotFound as exc:
            raise ApiException(404, "not_found", str(exc)) from exc
        return {"problem_id": problem_id, "pinned": len(exercise_ids)}

    @app.post("/admin/exercises", status_code=201)
    async def upload_exercise(request: Request):
        """Register a hand-written exercise (e.g. instructor-designed)."""
        require_admin(request)
        payload = await read_json(request)
        problem_id = payload.get("problem_id")
        problem = problems.get(problem_id)
        if problem is None:
            raise ApiException(404, "not_found", f"no problem with id {problem_id!r}")
        buggy = payload.get("buggy_code")
        fixed = payload.get("fixed_code")
        explanation = payload.get("explanation", "")
        source = payload.get("source", "instructor")
        if not isinstance(buggy, str) or not isinstance(fixed, str):
            raise ApiException(400, "bad_request", "buggy_code and fixed_code must be text")
        if source not in ("llm", "instructor"):
            raise ApiException(400, "bad_request", "source must be llm or instructor")

        from . import metrics as metrics_mod
        from .generation import validate_candidate
        from .problems import ExerciseCandidate, make_exercise_id

        candidate = ExerciseCandidate(
            buggy_code=buggy, fixed_code=fixed, explanation=str(explanation)
        )
        report = validate_candidate(candidate, problem, settings.limits)
        if not report.accepted:
            raise ApiException(
                400, "bad_request", f"exercise failed validation: {report.to_dict()}"
            )
        exercise = Exercise(
            id=make_exercise_id(problem.id, candidate),
            problem_id=problem.id,
            candidate=candidate,
            bug_type=metrics_mod.classify_bug_type(candidate, problem, settings.limits),
            edit_tokens=metrics_mod.edit_tokens(buggy, fixed, problem.language),
            source=source,
        )
        store.add_exercises([exercise])
        return {"exercise_id": exercise.id, "bug_type": exercise.bug_type.value}

    @app.get("/admin/metrics")
    async def admin_metrics(request: Request):
        require_admin(request)
        out = {}
        for problem_id in sorted(problems):
            batches = store.batches_for(problem_id)
            exercises = store.exercises_for(problem_id)
            out[problem_id] = {
                "succ_of_10": [succ_of_10(batch) for batch in batches],
                "n_batches": len(batches),
                "exercises": {
                    e.id: {
                        "bug_type": e.bug_type.value,
                        "edit_tokens": e.edit_tokens,
                        "status": e.status.value,
                        "source": e.source,
                    }
                    for e in exercises
                },
            }
        return {"problems": out}

    @app.get("/admin/analytics")
    async def admin_analytics(request: Request):
        require_admin(request)
        return analytics_report(store.submissions())

    return app


def main() -> None:
    """Entry point for running the service directly."""
    import uvicorn

    addr = os.environ.get("BUGSPOTTER_ADDR", "127.0.0.1:8000")
    host, _, port = addr.rpartition(":")
    uvicorn.run(create_app(), host=host or "127.0.0.1", port=int(port or 8000))


if __name__ == "__main__":
    main()
