/** Verdict rendering as a pure function of the judge payload.
 *
 * The overall tick appears iff all three criteria are satisfied, which is
 * exactly the service's `success` flag; trust but verify so a malformed
 * payload can never show a tick next to a failed criterion.
 */

import type { VerdictView } from "./api.js";

export interface CriterionLine {
  met: boolean;
  title: string;
  message: string;
}

export interface VerdictModel {
  tick: boolean;
  criteria: [CriterionLine, CriterionLine, CriterionLine];
  detail: string;
  /** shown only when the instructor enables the reveal toggle */
  actualBuggy: string;
  actualFixed: string;
}

function describeOutcome(outcome: { kind: string; output_text: string | null; detail: string }): string {
  if (outcome.kind === "Output") return outcome.output_text ?? "";
  if (outcome.kind === "RuntimeError") return `runtime error: ${outcome.detail}`.trim();
  if (outcome.kind === "Timeout") return "timed out";
  return outcome.kind;
}

export function verdictModel(verdict: VerdictView): VerdictModel {
  const c1: CriterionLine = {
    met: verdict.criterion1_outputs_differ,
    title: "(1) the two codes disagree on this input",
    message: verdict.criterion1_outputs_differ
      ? "the buggy and fixed code behave differently here"
      : "not a failing test case: the buggy code gives the same result as the fixed code on this input",
  };
  const c2: CriterionLine = {
    met: verdict.criterion2_correct_matches,
    title: "(2) your correct output matches the fixed code",
    message: verdict.criterion2_correct_matches
      ? "your expected output is right"
      : "the fixed code does not produce the correct output you entered",
  };
  const c3: CriterionLine = {
    met: verdict.criterion3_buggy_matches,
    title: "(3) your buggy output matches the buggy code",
    message: verdict.criterion3_buggy_matches
      ? "you predicted the buggy behavior correctly"
      : "the buggy code does not produce the buggy output you entered",
  };
  const allMet = c1.met && c2.met && c3.met;
  return {
    tick: verdict.success && allMet,
    criteria: [c1, c2, c3],
    detail: verdict.detail,
    actualBuggy: describeOutcome(verdict.actual_buggy),
    actualFixed: describeOutcome(verdict.actual_fixed),
  };
}
