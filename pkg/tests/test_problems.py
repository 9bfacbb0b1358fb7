import json

import pytest

from bugspotter.errors import InputTypeError, ParseError
from bugspotter.problems import (
    BugType,
    Exercise,
    ExerciseCandidate,
    ExerciseStatus,
    Language,
    load_problem,
    make_exercise_id,
    parse_problem,
    problem_to_dict,
    render_test_case_input,
)
from bugspotter.values import ValueType


def doc_for(problem) -> dict:
    return problem_to_dict(problem)


class TestParseProblem:
    def test_round_trip(self, sum_pos):
        again = parse_problem(problem_to_dict(sum_pos))
        assert again == sum_pos

    def test_round_trip_through_json_text(self, mean_value):
        text = json.dumps(problem_to_dict(mean_value))
        assert parse_problem(text) == mean_value

    def test_not_json(self):
        with pytest.raises(ParseError):
            parse_problem("{nope")

    def test_not_an_object(self):
        with pytest.raises(ParseError):
            parse_problem("[1, 2]")

    def test_missing_key(self, sum_pos):
        doc = doc_for(sum_pos)
        del doc["test_suite"]
        with pytest.raises(ParseError, match="test_suite"):
            parse_problem(doc)

    def test_bad_language(self, sum_pos):
        doc = doc_for(sum_pos)
        doc["language"] = "fortran"
        with pytest.raises(ParseError, match="language"):
            parse_problem(doc)

    def test_function_name_must_appear_in_reference(self, sum_pos):
        doc = doc_for(sum_pos)
        doc["function_name"] = "other_name"
        with pytest.raises(ParseError, match="other_name"):
            parse_problem(doc)

    def test_empty_suite_rejected(self, sum_pos):
        doc = doc_for(sum_pos)
        doc["test_suite"] = []
        with pytest.raises(ParseError, match="test_suite"):
            parse_problem(doc)

    def test_case_input_type_checked(self, sum_pos):
        doc = doc_for(sum_pos)
        doc["test_suite"][0]["inputs"] = [["a", "b"]]
        with pytest.raises(ParseError, match="test case 0"):
            parse_problem(doc)

    def test_case_arity_checked(self, sum_pos):
        doc = doc_for(sum_pos)
        doc["test_suite"][0]["inputs"] = [[1], [2]]
        with pytest.raises(ParseError):
            parse_problem(doc)

    def test_expected_output_type_checked(self, sum_pos):
        doc = doc_for(sum_pos)
        doc["test_suite"][0]["expected_output"] = "four"
        with pytest.raises(ParseError, match="expected_output"):
            parse_problem(doc)

    def test_bad_parameter_name(self, sum_pos):
        doc = doc_for(sum_pos)
        doc["signature"]["parameters"][0]["name"] = "2bad"
        with pytest.raises(ParseError, match="bad name"):
            parse_problem(doc)

    def test_unknown_parameter_type(self, sum_pos):
        doc = doc_for(sum_pos)
        doc["signature"]["parameters"][0]["type"] = "matrix"
        with pytest.raises(ParseError, match="matrix"):
            parse_problem(doc)

    def test_c_list_return_rejected(self, sum_pos_c):
        doc = doc_for(sum_pos_c)
        doc["signature"]["return_type"] = "list-of-integers"
        with pytest.raises(ParseError, match="list return"):
            parse_problem(doc)

    def test_python_list_return_allowed(self, sum_pos):
        doc = doc_for(sum_pos)
        doc["signature"]["return_type"] = "list-of-integers"
        doc["test_suite"] = [{"inputs": [[1, 2]], "expected_output": [1, 2]}]
        parsed = parse_problem(doc)
        assert parsed.signature.return_type is ValueType.LIST_OF_INTEGERS


class TestProblemAccessors:
    def test_title_is_first_nonblank_line(self, sum_pos):
        assert sum_pos.title == "Sum of positives"

    def test_expected_output_text(self, mean_value):
        assert mean_value.expected_output_text(mean_value.test_suite[0]) == "2.0"

    def test_coerce_inputs_arity(self, sum_pos):
        with pytest.raises(InputTypeError):
            sum_pos.signature.coerce_inputs([])

    def test_coerce_inputs_type(self, sum_pos):
        with pytest.raises(InputTypeError):
            sum_pos.signature.coerce_inputs(["nope"])

    def test_input_types(self, sum_pos):
        assert sum_pos.signature.input_types == (ValueType.LIST_OF_INTEGERS,)

    def test_render_test_case_input(self, sum_pos):
        assert render_test_case_input(sum_pos.test_suite[0]) == "[1, -2, 3]"

    def test_render_empty_list_input(self, sum_pos):
        assert render_test_case_input(sum_pos.test_suite[1]) == "[]"


class TestExercise:
    def test_id_is_content_hash(self):
        cand = ExerciseCandidate(buggy_code="BUGGY", fixed_code="FIXED", explanation="")
        # sha256("BUGGY\x00FIXED") starts with 4a40dfd7e520
        assert make_exercise_id("p1", cand) == "p1-4a40dfd7e520"

    def test_id_changes_with_content(self):
        a = ExerciseCandidate(buggy_code="x", fixed_code="y", explanation="")
        b = ExerciseCandidate(buggy_code="x ", fixed_code="y", explanation="")
        assert make_exercise_id("p", a) != make_exercise_id("p", b)

    def test_dict_round_trip(self):
        ex = Exercise(
            id="p-abc",
            problem_id="p",
            candidate=ExerciseCandidate("b", "f", "why"),
            bug_type=BugType.TYPE2,
            edit_tokens=3,
            status=ExerciseStatus.PRESELECTED,
            source="instructor",
        )
        assert Exercise.from_dict(ex.to_dict()) == ex

    def test_source_defaults_to_llm(self):
        ex = Exercise(
            id="p-abc",
            problem_id="p",
            candidate=ExerciseCandidate("b", "f", ""),
            bug_type=BugType.TYPE1,
            edit_tokens=1,
        )
        data = ex.to_dict()
        assert data["source"] == "llm"
        del data["source"]
        assert Exercise.from_dict(data).source == "llm"

    def test_with_status(self):
        ex = Exercise(
            id="p-abc",
            problem_id="p",
            candidate=ExerciseCandidate("b", "f", ""),
            bug_type=BugType.TYPE1,
            edit_tokens=1,
        )
        marked = ex.with_status(ExerciseStatus.PRESELECTED)
        assert marked.status is ExerciseStatus.PRESELECTED
        assert ex.status is ExerciseStatus.VALIDATED


class TestLoadProblem:
    def test_load_verifies_reference(self, tmp_path, sum_pos):
        path = tmp_path / "p.json"
        path.write_text(json.dumps(problem_to_dict(sum_pos)))
        loaded = load_problem(path)
        assert loaded == sum_pos

    def test_load_rejects_wrong_reference(self, tmp_path, sum_pos):
        from bugspotter.errors import ReferenceSolutionInvalid

        doc = problem_to_dict(sum_pos)
        doc["reference_solution"] = "def sum_positives(numbers):\n    return 0\n"
        path = tmp_path / "p.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(ReferenceSolutionInvalid):
            load_problem(path)

    def test_load_without_verification(self, tmp_path, sum_pos):
        doc = problem_to_dict(sum_pos)
        doc["reference_solution"] = "def sum_positives(numbers):\n    return 0\n"
        path = tmp_path / "p.json"
        path.write_text(json.dumps(doc))
        loaded = load_problem(path, verify=False)
        assert loaded.id == sum_pos.id

    def test_language_enum_values(self):
        assert Language.PYTHON.value == "Python"
        assert Language.C.value == "C"
