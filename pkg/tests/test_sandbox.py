import shutil
import textwrap

import pytest

from bugspotter.errors import ReferenceSolutionInvalid
from bugspotter.sandbox import (
    DEFAULT_LIMITS,
    OutcomeKind,
    RunLimits,
    compile_code,
    run_case,
    run_input_text,
    run_suite,
    verify_reference_solution,
)

HAVE_CC = shutil.which("cc") is not None

FAST = RunLimits(wall_clock_ms=5000, max_output_bytes=65536)
TINY_CLOCK = RunLimits(wall_clock_ms=300, max_output_bytes=65536)
TINY_OUTPUT = RunLimits(wall_clock_ms=5000, max_output_bytes=256)


class TestCompilePython:
    def test_valid_code_compiles(self, sum_pos):
        with compile_code(sum_pos.reference_solution, sum_pos) as art:
            assert art.ok
            assert art.workspace is not None

    def test_syntax_error_is_compile_failure(self, sum_pos):
        with compile_code("def sum_positives(numbers)\n    return 0\n", sum_pos) as art:
            assert not art.ok
            assert art.failure.kind is OutcomeKind.COMPILE_FAILURE
            assert art.failure.detail

    def test_running_a_failed_artifact_returns_the_failure(self, sum_pos):
        with compile_code("def f(:\n", sum_pos) as art:
            outcome = run_input_text(art, "[]")
            assert outcome.kind is OutcomeKind.COMPILE_FAILURE

    def test_workspace_removed_on_close(self, sum_pos):
        import os

        art = compile_code(sum_pos.reference_solution, sum_pos)
        ws = art.workspace
        assert os.path.isdir(ws)
        art.close()
        assert not os.path.exists(ws)


class TestRunPython:
    def test_reference_output(self, sum_pos):
        with compile_code(sum_pos.reference_solution, sum_pos) as art:
            outcome = run_input_text(art, "[1, -2, 3]", FAST)
            assert outcome.kind is OutcomeKind.OUTPUT
            assert outcome.output_text == "4"

    def test_run_case_matches_expected(self, sum_pos):
        with compile_code(sum_pos.reference_solution, sum_pos) as art:
            for tc in sum_pos.test_suite:
                outcome = run_case(art, tc, FAST)
                assert outcome.output_text == sum_pos.expected_output_text(tc)

    def test_zero_division_detail(self, mean_value):
        code = "def mean_value(numbers):\n    return sum(numbers) / len(numbers)\n"
        with compile_code(code, mean_value) as art:
            outcome = run_input_text(art, "[]", FAST)
            assert outcome.kind is OutcomeKind.RUNTIME_ERROR
            assert outcome.detail.startswith("division by zero")

    def test_exception_is_runtime_error(self, sum_pos):
        code = "def sum_positives(numbers):\n    raise ValueError('boom')\n"
        with compile_code(code, sum_pos) as art:
            outcome = run_input_text(art, "[]", FAST)
            assert outcome.kind is OutcomeKind.RUNTIME_ERROR
            assert "ValueError" in outcome.detail

    def test_infinite_loop_times_out(self, sum_pos):
        code = "def sum_positives(numbers):\n    while True:\n        pass\n"
        with compile_code(code, sum_pos) as art:
            outcome = run_input_text(art, "[]", TINY_CLOCK)
            assert outcome.kind is OutcomeKind.TIMEOUT

    def test_output_flood_is_runtime_error(self, sum_pos):
        code = (
            "import sys\n"
            "def sum_positives(numbers):\n"
            "    for _ in range(100000):\n"
            "        sys.stdout.write('x' * 100)\n"
            "    return 0\n"
        )
        with compile_code(code, sum_pos) as art:
            outcome = run_input_text(art, "[]", TINY_OUTPUT)
            assert outcome.kind is OutcomeKind.RUNTIME_ERROR
            assert "output limit" in outcome.detail

    def test_flooding_hang_prefers_output_cap_over_timeout(self, sum_pos):
        # Floods stdout and never exits: the cap fires, not the clock.
        code = (
            "import sys\n"
            "def sum_positives(numbers):\n"
            "    while True:\n"
            "        sys.stdout.write('y' * 1000)\n"
        )
        with compile_code(code, sum_pos) as art:
            outcome = run_input_text(art, "[]", RunLimits(wall_clock_ms=800, max_output_bytes=256))
            assert outcome.kind is OutcomeKind.RUNTIME_ERROR
            assert "output limit" in outcome.detail

    def test_wrong_return_type_marker(self, sum_pos):
        code = "def sum_positives(numbers):\n    return 'four'\n"
        with compile_code(code, sum_pos) as art:
            outcome = run_input_text(art, "[1, -2, 3]", FAST)
            assert outcome.kind is OutcomeKind.OUTPUT
            assert outcome.output_text.startswith("<invalid ")

    def test_float_output_uses_repr_form(self, mean_value):
        with compile_code(mean_value.reference_solution, mean_value) as art:
            assert run_input_text(art, "[1.0, 2.0, 3.0]", FAST).output_text == "2.0"
            assert run_input_text(art, "[0.1, 0.2]", FAST).output_text == "0.15000000000000002"


class TestRunSuite:
    def test_reference_passes_everything(self, sum_pos):
        entries = run_suite(sum_pos.reference_solution, sum_pos, FAST)
        assert [e.passed for e in entries] == [True, True, True]

    def test_partial_failure(self, sum_pos):
        code = (
            "def sum_positives(numbers):\n"
            "    total = 0\n"
            "    for n in numbers:\n"
            "        total += n\n"
            "    return total\n"
        )
        entries = run_suite(code, sum_pos, FAST)
        assert [e.passed for e in entries] == [False, True, False]

    def test_compile_failure_marks_all_cases(self, sum_pos):
        entries = run_suite("def sum_positives(\n", sum_pos, FAST)
        assert len(entries) == len(sum_pos.test_suite)
        assert all(not e.passed for e in entries)
        assert all(e.outcome.kind is OutcomeKind.COMPILE_FAILURE for e in entries)

    def test_verify_reference_accepts_good(self, sum_pos):
        verify_reference_solution(sum_pos, FAST)

    def test_verify_reference_rejects_bad(self, sum_pos):
        from dataclasses import replace

        broken = replace(sum_pos, reference_solution="def sum_positives(numbers):\n    return 0\n")
        with pytest.raises(ReferenceSolutionInvalid, match="expected"):
            verify_reference_solution(broken, FAST)


@pytest.mark.skipif(not HAVE_CC, reason="no C compiler on PATH")
class TestCBackend:
    def test_reference_passes(self, sum_pos_c):
        entries = run_suite(sum_pos_c.reference_solution, sum_pos_c, FAST)
        assert all(e.passed for e in entries)

    def test_compile_failure(self, sum_pos_c):
        code = "int sum_positives(int *numbers, int numbers_len) { return }\n"
        with compile_code(code, sum_pos_c) as art:
            assert not art.ok
            assert art.failure.kind is OutcomeKind.COMPILE_FAILURE

    def test_flipped_comparison_fails_first_case(self, sum_pos_c):
        code = textwrap.dedent(
            """\
            int sum_positives(int *numbers, int numbers_len) {
                int total = 0;
                for (int i = 0; i < numbers_len; i++) {
                    if (numbers[i] < 0) {
                        total += numbers[i];
                    }
                }
                return total;
            }
            """
        )
        entries = run_suite(code, sum_pos_c, FAST)
        assert [e.passed for e in entries] == [False, True, False]

    def test_division_by_zero_signal(self, sum_pos_c):
        code = textwrap.dedent(
            """\
            int sum_positives(int *numbers, int numbers_len) {
                int total = 0;
                for (int i = 0; i < numbers_len; i++) {
                    total += numbers[i];
                }
                return total / numbers_len;
            }
            """
        )
        with compile_code(code, sum_pos_c) as art:
            outcome = run_input_text(art, "[]", FAST)
            assert outcome.kind is OutcomeKind.RUNTIME_ERROR
            assert "division by zero" in outcome.detail

    def test_infinite_loop_times_out(self, sum_pos_c):
        code = textwrap.dedent(
            """\
            int sum_positives(int *numbers, int numbers_len) {
                while (1) {}
                return 0;
            }
            """
        )
        with compile_code(code, sum_pos_c) as art:
            outcome = run_input_text(art, "[]", TINY_CLOCK)
            assert outcome.kind is OutcomeKind.TIMEOUT


class TestLimits:
    def test_defaults(self):
        assert DEFAULT_LIMITS.wall_clock_ms == 2000
        assert DEFAULT_LIMITS.max_output_bytes == 65536

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            RunLimits(wall_clock_ms=0)
        with pytest.raises(ValueError):
            RunLimits(max_output_bytes=-1)
