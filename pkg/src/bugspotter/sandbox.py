"""Process-isolated execution of candidate code.

Every run happens in a fresh subprocess started in its own session, so a
timeout can kill the whole process group. Workspaces are temporary
directories removed when the compiled artifact is closed. A global
semaphore caps how many sandboxed processes run at once.
"""

from __future__ import annotations

import os
import shutil
import signal
import subprocess
import sys
import tempfile
import threading
from dataclasses import dataclass, field
from enum import Enum

from . import drivers
from .errors import ReferenceSolutionInvalid, SandboxError, ToolchainUnavailable
from .problems import Language, Problem, TestCase, render_test_case_input

COMPILE_TIMEOUT_MS = 30_000
_DETAIL_LIMIT = 4000


class OutcomeKind(str, Enum):
    OUTPUT = "Output"
    RUNTIME_ERROR = "RuntimeError"
    TIMEOUT = "Timeout"
    COMPILE_FAILURE = "CompileFailure"


@dataclass(frozen=True)
class RunLimits:
    wall_clock_ms: int = 2000
    max_output_bytes: int = 65536

    def __post_init__(self):
        if self.wall_clock_ms <= 0 or self.max_output_bytes <= 0:
            raise ValueError("limits must be positive")


DEFAULT_LIMITS = RunLimits()


@dataclass(frozen=True)
class ExecutionOutcome:
    kind: OutcomeKind
    output_text: str | None = None
    detail: str = ""


@dataclass
class CompiledArtifact:
    """Handle for a compiled candidate; owns its temporary workspace."""

    language: Language
    command: tuple[str, ...] = ()
    workspace: str | None = None
    failure: ExecutionOutcome | None = None
    _closed: bool = field(default=False, repr=False)

    @property
    def ok(self) -> bool:
        return self.failure is None

    def close(self) -> None:
        if not self._closed and self.workspace:
            shutil.rmtree(self.workspace, ignore_errors=True)
        self._closed = True

    def __enter__(self) -> "CompiledArtifact":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


@dataclass(frozen=True)
class SuiteEntry:
    test_case: TestCase
    outcome: ExecutionOutcome
    passed: bool


_cap_lock = threading.Lock()
_cap_sem: threading.BoundedSemaphore | None = None
_cap_size = 0


def _process_slot() -> threading.BoundedSemaphore:
    global _cap_sem, _cap_size
    size = max(1, int(os.environ.get("BUGSPOTTER_MAX_PROCS", "8")))
    with _cap_lock:
        if _cap_sem is None or size != _cap_size:
            _cap_sem = threading.BoundedSemaphore(size)
            _cap_size = size
        return _cap_sem


def _workspace_root() -> str | None:
    root = os.environ.get("BUGSPOTTER_TMP")
    if root:
        os.makedirs(root, exist_ok=True)
    return root or None


def _python_interpreter() -> str:
    return os.environ.get("BUGSPOTTER_PY") or sys.executable


def _c_compiler() -> str:
    cc = os.environ.get("BUGSPOTTER_CC", "cc")
    if shutil.which(cc) is None:
        raise ToolchainUnavailable(f"C compiler {cc!r} not found on PATH")
    return cc


def _truncate(text: str) -> str:
    if len(text) > _DETAIL_LIMIT:
        return text[:_DETAIL_LIMIT] + "..."
    return text


def _read_capped(stream, cap: int, sink: list[bytes]) -> None:
    data = bytearray()
    while len(data) <= cap:
        chunk = stream.read(min(8192, cap + 1 - len(data)))
        if not chunk:
            break
        data.extend(chunk)
    sink.append(bytes(data))


def _execute(command, input_text: str, limits: RunLimits, cwd: str) -> ExecutionOutcome:
    with _process_slot():
        try:
            proc = subprocess.Popen(
                list(command),
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=subprocess.PIPE,
                cwd=cwd,
                start_new_session=True,
            )
        except OSError as exc:
            raise SandboxError(f"failed to start {command[0]}: {exc}") from exc

        out_sink: list[bytes] = []
        err_sink: list[bytes] = []
        readers = [
            threading.Thread(
                target=_read_capped, args=(proc.stdout, limits.max_output_bytes, out_sink)
            ),
            threading.Thread(
                target=_read_capped, args=(proc.stderr, limits.max_output_bytes, err_sink)
            ),
        ]
        for t in readers:
            t.start()
        try:
            proc.stdin.write(input_text.encode("utf-8"))
            proc.stdin.close()
        except BrokenPipeError:
            pass

        timed_out = False
        try:
            proc.wait(timeout=limits.wall_clock_ms / 1000.0)
        except subprocess.TimeoutExpired:
            timed_out = True
            _kill_group(proc)
        for t in readers:
            t.join()
        proc.wait()

    stdout = out_sink[0] if out_sink else b""
    stderr = err_sink[0] if err_sink else b""

    if len(stdout) > limits.max_output_bytes or len(stderr) > limits.max_output_bytes:
        if proc.returncode is None or timed_out:
            _kill_group(proc)
            proc.wait()
        return ExecutionOutcome(
            OutcomeKind.RUNTIME_ERROR,
            detail=f"output limit of {limits.max_output_bytes} bytes exceeded",
        )
    if timed_out:
        return ExecutionOutcome(
            OutcomeKind.TIMEOUT, detail=f"exceeded {limits.wall_clock_ms} ms wall clock"
        )

    rc = proc.returncode
    err_text = stderr.decode("utf-8", errors="replace")
    if rc == 0:
        text = stdout.decode("utf-8", errors="replace")
        if text.endswith("\n"):
            text = text[:-1]
        return ExecutionOutcome(OutcomeKind.OUTPUT, output_text=text)
    if rc < 0:
        try:
            name = signal.Signals(-rc).name
        except ValueError:
            name = str(-rc)
        detail = f"terminated by signal {name}"
        if -rc == signal.SIGFPE:
            detail += " (division by zero)"
        return ExecutionOutcome(OutcomeKind.RUNTIME_ERROR, detail=detail)
    detail = _truncate(err_text) or f"exit status {rc}"
    if "ZeroDivisionError" in err_text:
        detail = "division by zero\n" + detail
    return ExecutionOutcome(OutcomeKind.RUNTIME_ERROR, detail=detail)


def _kill_group(proc: subprocess.Popen) -> None:
    try:
        os.killpg(proc.pid, signal.SIGKILL)
    except (ProcessLookupError, PermissionError):
        pass


def compile_code(code: str, problem: Problem) -> CompiledArtifact:
    """Build a runnable artifact, or one carrying a CompileFailure outcome."""
    if problem.language is Language.PYTHON:
        return _compile_python(code, problem)
    return _compile_c(code, problem)


def _compile_python(code: str, problem: Problem) -> CompiledArtifact:
    try:
        compile(code, "<candidate>", "exec")
    except SyntaxError as exc:
        return CompiledArtifact(
            language=Language.PYTHON,
            failure=ExecutionOutcome(
                OutcomeKind.COMPILE_FAILURE, detail=_truncate(f"{exc.msg} (line {exc.lineno})")
            ),
        )
    workspace = tempfile.mkdtemp(prefix="bugspotter-", dir=_workspace_root())
    driver_path = os.path.join(workspace, "driver.py")
    with open(driver_path, "w", encoding="utf-8") as fh:
        fh.write(drivers.build_python_driver(code, problem))
    return CompiledArtifact(
        language=Language.PYTHON,
        command=(_python_interpreter(), driver_path),
        workspace=workspace,
    )


def _compile_c(code: str, problem: Problem) -> CompiledArtifact:
    cc = _c_compiler()
    workspace = tempfile.mkdtemp(prefix="bugspotter-", dir=_workspace_root())
    source_path = os.path.join(workspace, "driver.c")
    binary_path = os.path.join(workspace, "prog")
    with open(source_path, "w", encoding="utf-8") as fh:
        fh.write(drivers.build_c_driver(code, problem))
    try:
        result = subprocess.run(
            [cc, "-O0", "-o", binary_path, source_path, "-lm"],
            capture_output=True,
            timeout=COMPILE_TIMEOUT_MS / 1000.0,
        )
    except subprocess.TimeoutExpired:
        shutil.rmtree(workspace, ignore_errors=True)
        return CompiledArtifact(
            language=Language.C,
            failure=ExecutionOutcome(OutcomeKind.COMPILE_FAILURE, detail="compiler timed out"),
        )
    if result.returncode != 0:
        detail = _truncate(result.stderr.decode("utf-8", errors="replace"))
        shutil.rmtree(workspace, ignore_errors=True)
        return CompiledArtifact(
            language=Language.C,
            failure=ExecutionOutcome(OutcomeKind.COMPILE_FAILURE, detail=detail),
        )
    return CompiledArtifact(language=Language.C, command=(binary_path,), workspace=workspace)


def run_input_text(
    artifact: CompiledArtifact, input_text: str, limits: RunLimits = DEFAULT_LIMITS
) -> ExecutionOutcome:
    """Run the artifact on raw canonical input text."""
    if artifact.failure is not None:
        return artifact.failure
    if not artifact.workspace:
        raise SandboxError("artifact has no workspace")
    return _execute(artifact.command, input_text, limits, artifact.workspace)


def run_case(
    artifact: CompiledArtifact, test_case: TestCase, limits: RunLimits = DEFAULT_LIMITS
) -> ExecutionOutcome:
    return run_input_text(artifact, render_test_case_input(test_case), limits)


def run_suite(code: str, problem: Problem, limits: RunLimits = DEFAULT_LIMITS) -> list[SuiteEntry]:
    """Compile once and run every suite case; compile failures mark all cases."""
    with compile_code(code, problem) as artifact:
        entries = []
        for tc in problem.test_suite:
            outcome = run_case(artifact, tc, limits)
            passed = (
                outcome.kind is OutcomeKind.OUTPUT
                and outcome.output_text == problem.expected_output_text(tc)
            )
            entries.append(SuiteEntry(tc, outcome, passed))
        return entries


def verify_reference_solution(problem: Problem, limits: RunLimits = DEFAULT_LIMITS) -> None:
    """Raise ReferenceSolutionInvalid unless the reference passes every case."""
    entries = run_suite(problem.reference_solution, problem, limits)
    for entry in entries:
        if not entry.passed:
            got = entry.outcome.output_text
            if entry.outcome.kind is not OutcomeKind.OUTPUT:
                got = f"{entry.outcome.kind.value}: {entry.outcome.detail}"
            raise ReferenceSolutionInvalid(
                f"problem {problem.id}: reference solution failed on input "
                f"{list(entry.test_case.inputs)!r} "
                f"(expected {problem.expected_output_text(entry.test_case)!r}, got {got!r})"
            )
