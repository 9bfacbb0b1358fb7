"""Operator command line: generate, validate, judge, metrics, analyze.

Every command is a thin composition of module operations. Exit code 0
means accepted/success, 1 means rejected/failure, 2 means an
operational error. Artifacts written by `generate` are byte-stable for
identical inputs, so reruns can be diffed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .analytics import analytics_report, load_ranking, load_submission_log
from .errors import BugSpotterError, LLMUnavailable, NoValidExercise
from .generation import GenerationConfig, run_generation_batch, validate_candidate
from .judging import TestCaseSubmission, judge
from .metrics import ingest_annotations, succ_of_10
from .problems import Exercise, load_problem
from .values import parse_rendered


def _dump(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _client(args):
    if args.fixture_dir:
        from .llm import FixtureLLMClient

        return FixtureLLMClient(args.fixture_dir)
    from .llm import HttpLLMClient

    return HttpLLMClient()


def cmd_generate(args) -> int:
    problem = load_problem(args.problem, verify=False)
    config = GenerationConfig(
        n_candidates=args.n,
        temperature=args.temperature,
        model_id=args.model or os.environ.get("BUGSPOTTER_MODEL", ""),
    )
    batch = run_generation_batch(problem, config, _client(args))

    out = Path(args.out)
    _write(out / "prompt.txt", batch.prompt)
    _write(out / "response.txt", batch.response)
    _write(
        out / "candidates.json",
        _dump(
            {
                "problem_id": problem.id,
                "candidates": [
                    {
                        "buggy_code": c.buggy_code,
                        "fixed_code": c.fixed_code,
                        "explanation": c.explanation,
                    }
                    for c in batch.candidates
                ],
            }
        )
        + "\n",
    )
    _write(
        out / "reports.json",
        _dump(
            {
                "problem_id": problem.id,
                "n_candidates": len(batch.candidates),
                "reports": [r.to_dict() for r in batch.reports],
            }
        )
        + "\n",
    )
    for exercise in batch.exercises:
        _write(out / "exercises" / f"{exercise.id}.json", _dump(exercise.to_dict()) + "\n")
    accepted = succ_of_10(batch.reports)
    summary = {
        "problem_id": problem.id,
        "n_candidates": len(batch.candidates),
        "succ_of_10": accepted,
        "exercise_ids": [e.id for e in batch.exercises],
    }
    _write(out / "batch.json", _dump(summary) + "\n")

    if args.json:
        print(_dump(summary))
    else:
        print(f"{accepted}/{len(batch.candidates)} passed")
    if accepted == 0:
        raise NoValidExercise(f"no candidate for problem {problem.id} passed validation")
    return 0


def cmd_validate(args) -> int:
    problem = load_problem(args.problem, verify=False)
    from .problems import ExerciseCandidate

    candidate = ExerciseCandidate(
        buggy_code=Path(args.buggy).read_text(encoding="utf-8"),
        fixed_code=Path(args.fixed).read_text(encoding="utf-8"),
        explanation="",
    )
    report = validate_candidate(candidate, problem)
    if args.json:
        print(_dump(report.to_dict()))
    else:
        flags = report.to_dict()
        for name in (
            "compiled_both",
            "fixed_passes_suite",
            "buggy_fails_some",
            "within_time_limit",
        ):
            print(f"{name}: {'yes' if flags[name] else 'no'}")
        if report.failing_indices:
            print(f"failing suite cases: {', '.join(str(i) for i in report.failing_indices)}")
        print(f"accepted: {'yes' if report.accepted else 'no'}")
    return 0 if report.accepted else 1


def _criterion_line(number: int, met: bool, met_text: str, unmet_text: str) -> str:
    if met:
        return f"criterion ({number}) met: {met_text}"
    return f"criterion ({number}) not met: {unmet_text}"


def cmd_judge(args) -> int:
    problem = load_problem(args.problem, verify=False)
    exercise = Exercise.from_dict(json.loads(Path(args.exercise).read_text(encoding="utf-8")))

    lines: list[str] = []
    for chunk in args.input or []:
        lines.extend(chunk.split("\n"))
    kinds = problem.signature.input_types
    if len(lines) != len(kinds):
        print(
            f"error: expected {len(kinds)} input values (one per parameter), got {len(lines)}",
            file=sys.stderr,
        )
        return 2
    try:
        inputs = tuple(parse_rendered(text, kind) for text, kind in zip(lines, kinds))
    except ValueError as exc:
        print(f"error: bad input value: {exc}", file=sys.stderr)
        return 2

    submission = TestCaseSubmission(
        exercise_id=exercise.id,
        inputs=inputs,
        claimed_buggy_output=args.buggy_out,
        claimed_correct_output=args.correct_out,
    )
    verdict = judge(submission, exercise, problem)
    if args.json:
        print(_dump(verdict.to_dict()))
    else:
        print(
            _criterion_line(
                1,
                verdict.criterion1_outputs_differ,
                "the buggy and fixed outputs differ",
                "the buggy and fixed outputs do not differ (not a failing test case)",
            )
        )
        print(
            _criterion_line(
                2,
                verdict.criterion2_correct_matches,
                "the fixed code's output matches the claimed correct output",
                "the fixed code's output does not match the claimed correct output",
            )
        )
        print(
            _criterion_line(
                3,
                verdict.criterion3_buggy_matches,
                "the buggy code's behavior matches the claimed buggy output",
                "the buggy code's behavior does not match the claimed buggy output",
            )
        )
        if verdict.detail:
            print(f"note: {verdict.detail}")
        print(f"verdict: {'success' if verdict.success else 'failure'}")
    return 0 if verdict.success else 1


def cmd_metrics(args) -> int:
    batch_dir = Path(args.batch)
    reports_doc = json.loads((batch_dir / "reports.json").read_text(encoding="utf-8"))
    exercises = []
    exercises_dir = batch_dir / "exercises"
    if exercises_dir.is_dir():
        for path in sorted(exercises_dir.glob("*.json")):
            exercises.append(Exercise.from_dict(json.loads(path.read_text(encoding="utf-8"))))
    accepted = sum(1 for r in reports_doc["reports"] if r["accepted"])
    payload = {
        "problem_id": reports_doc["problem_id"],
        "n_candidates": reports_doc["n_candidates"],
        "succ_of_10": accepted,
        "exercises": {
            e.id: {"bug_type": e.bug_type.value, "edit_tokens": e.edit_tokens}
            for e in exercises
        },
    }
    if args.json:
        print(_dump(payload))
    else:
        print(f"SuccOf10: {accepted}/{reports_doc['n_candidates']}")
        for exercise in exercises:
            print(
                f"{exercise.id}: bug_type={exercise.bug_type.value} "
                f"edit_tokens={exercise.edit_tokens}"
            )
    return 0


def _percent(rate: float) -> str:
    return f"{rate * 100:.1f}%"


def cmd_analyze(args) -> int:
    records = load_submission_log(Path(args.log).read_text(encoding="utf-8"))
    rankings = load_ranking(Path(args.ranking).read_text(encoding="utf-8")) if args.ranking else None
    annotations = (
        ingest_annotations(Path(args.annotations).read_text(encoding="utf-8"))
        if args.annotations
        else None
    )
    report = analytics_report(
        records, rankings=rankings, annotations=annotations, dedupe=not args.no_dedupe
    )
    if args.json:
        print(_dump(report))
        return 0

    print(
        f"submissions: {report['n_records']} "
        f"({report['n_first_attempts']} first attempts, {report['n_students']} students)"
    )
    print("success rate by problem:")
    for problem_id, rate in report["success_rate_by_problem"].items():
        print(f"  {problem_id}: {_percent(rate)}")
    print("success rate by source:")
    for source, rate in report["success_rate_by_source"].items():
        print(f"  {source}: {_percent(rate)}")
    if "success_rate_by_difficulty" in report:
        print("success rate by difficulty:")
        for label in ("easy", "medium", "hard"):
            if label in report["success_rate_by_difficulty"]:
                print(f"  {label}: {_percent(report['success_rate_by_difficulty'][label])}")
    print("source comparison (chi-square):")
    for scope, cmp in report["source_comparison"].items():
        if "skipped" in cmp:
            print(f"  {scope}: skipped ({cmp['skipped']})")
            continue
        print(
            f"  {scope}: statistic={cmp['statistic']:.4f} p={cmp['p_value']:.4f} "
            f"significant at alpha={cmp['alpha']}: {'yes' if cmp['significant'] else 'no'}"
        )
    if "annotation_agreement" in report:
        agreement = report["annotation_agreement"]
        print(f"diverse codes (all evaluators agree): {agreement['diverse_codes']}")
        if agreement.get("kappa"):
            print("annotator agreement (Cohen's kappa):")
            for attr, value in agreement["kappa"].items():
                shown = "n/a" if value is None else f"{value:.4f}"
                print(f"  {attr}: {shown}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bugspotter",
        description="Generate, validate, judge, and analyze debugging exercises.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="generate and validate a batch of exercises")
    p_gen.add_argument("--problem", required=True, help="problem definition JSON file")
    p_gen.add_argument("--model", default="", help="model id (default: BUGSPOTTER_MODEL)")
    p_gen.add_argument("--n", type=int, default=10, help="candidates to request")
    p_gen.add_argument("--temperature", type=float, default=0.7)
    p_gen.add_argument("--fixture-dir", help="serve responses from fixture files")
    p_gen.add_argument("--out", required=True, help="directory for batch artifacts")
    p_gen.add_argument("--json", action="store_true")
    p_gen.set_defaults(func=cmd_generate)

    p_val = sub.add_parser("validate", help="run the four-step validation on one pair")
    p_val.add_argument("--problem", required=True)
    p_val.add_argument("--buggy", required=True, help="buggy code file")
    p_val.add_argument("--fixed", required=True, help="fixed code file")
    p_val.add_argument("--json", action="store_true")
    p_val.set_defaults(func=cmd_validate)

    p_judge = sub.add_parser("judge", help="judge a failing test case against an exercise")
    p_judge.add_argument("--problem", required=True)
    p_judge.add_argument("--exercise", required=True, help="exercise JSON file")
    p_judge.add_argument(
        "--input",
        action="append",
        help="input value in canonical form, one flag per parameter "
        "(or one flag with newline-separated values)",
    )
    p_judge.add_argument("--buggy-out", required=True, help="claimed buggy output (or ERROR)")
    p_judge.add_argument("--correct-out", required=True, help="claimed correct output")
    p_judge.add_argument("--json", action="store_true")
    p_judge.set_defaults(func=cmd_judge)

    p_metrics = sub.add_parser("metrics", help="report SuccOf10/BugType/EditTokens for a batch")
    p_metrics.add_argument("--batch", required=True, help="directory written by generate")
    p_metrics.add_argument("--json", action="store_true")
    p_metrics.set_defaults(func=cmd_metrics)

    p_analyze = sub.add_parser("analyze", help="classroom analytics from a submission log")
    p_analyze.add_argument("--log", required=True, help="submission log (JSON lines)")
    p_analyze.add_argument("--ranking", required=True, help="expert difficulty ranking CSV")
    p_analyze.add_argument("--annotations", help="expert annotation CSV")
    p_analyze.add_argument(
        "--no-dedupe",
        action="store_true",
        help="use every attempt instead of each student's first per exercise",
    )
    p_analyze.add_argument("--json", action="store_true")
    p_analyze.set_defaults(func=cmd_analyze)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoValidExercise as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (BugSpotterError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
