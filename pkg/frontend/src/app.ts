/** Single-page exercise loop: load an exercise, design a failing test case,
 * read the verdict, move on. Talks only to the student routes.
 */

import { ApiError, StudentApi } from "./api.js";
import type { ExerciseView, VerdictView } from "./api.js";
import { fieldSpecs, parseInputs } from "./schema.js";
import type { FieldSpec } from "./schema.js";
import { highlight } from "./highlight.js";
import { verdictModel } from "./verdict.js";

export interface AppOptions {
  api: StudentApi;
  problemId?: string;
  /** instructor toggle: reveal the actual executed outputs on each verdict */
  revealOutputs?: boolean;
}

export interface AttemptEntry {
  exerciseId: string;
  inputs: string;
  success: boolean;
}

const STUDENT_ID_KEY = "bugspotter-student-id";

export function studentIdFromStorage(storage: Storage): string {
  const existing = storage.getItem(STUDENT_ID_KEY);
  if (existing) return existing;
  const fresh = `s-${Math.random().toString(36).slice(2, 10)}`;
  storage.setItem(STUDENT_ID_KEY, fresh);
  return fresh;
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export class App {
  readonly root: HTMLElement;
  private readonly api: StudentApi;
  private readonly doc: Document;
  private problemId?: string;
  private revealOutputs: boolean;

  exercise: ExerciseView | null = null;
  private specs: FieldSpec[] = [];
  private inputFields: HTMLInputElement[] = [];
  private buggyField!: HTMLInputElement;
  private correctField!: HTMLInputElement;
  private crashBox: HTMLInputElement | null = null;
  private submitButton!: HTMLButtonElement;
  private nextButton!: HTMLButtonElement;
  private verdictPane!: HTMLElement;
  private errorPane!: HTMLElement;
  private historyPane!: HTMLElement;
  private history: AttemptEntry[] = [];
  private inFlight = false;

  constructor(root: HTMLElement, options: AppOptions) {
    this.root = root;
    this.api = options.api;
    this.doc = root.ownerDocument;
    this.problemId = options.problemId;
    this.revealOutputs = options.revealOutputs ?? false;
  }

  async start(): Promise<void> {
    if (!this.problemId) {
      const problems = await this.api.listProblems();
      if (problems.length === 0) {
        this.renderFatal("no problems are configured on this server");
        return;
      }
      this.problemId = problems[0].id;
    }
    await this.loadExercise();
  }

  async loadExercise(): Promise<void> {
    this.root.textContent = "";
    const loading = el(this.doc, "p", "loading", "fetching your exercise...");
    this.root.append(loading);
    try {
      this.exercise = await this.api.nextExercise(this.problemId!);
    } catch (err) {
      this.renderLoadError(err);
      return;
    }
    this.renderExercise();
  }

  private renderLoadError(err: unknown): void {
    this.root.textContent = "";
    const pane = el(this.doc, "div", "error-pane");
    pane.append(el(this.doc, "p", "error-text", describeError(err)));
    const retry = el(this.doc, "button", "retry", "Retry");
    retry.addEventListener("click", () => void this.loadExercise());
    pane.append(retry);
    this.root.append(pane);
  }

  private renderFatal(message: string): void {
    this.root.textContent = "";
    this.root.append(el(this.doc, "p", "error-text", message));
  }

  private renderExercise(): void {
    const exercise = this.exercise!;
    this.root.textContent = "";
    this.specs = fieldSpecs(exercise.signature);

    const header = el(this.doc, "header");
    header.append(el(this.doc, "h1", "", "Spot the bug"));
    header.append(
      el(this.doc, "p", "exercise-id", `exercise ${exercise.exercise_id} (${exercise.language})`),
    );
    this.root.append(header);

    const spec = el(this.doc, "section", "specification");
    spec.append(el(this.doc, "h2", "", "Problem"));
    spec.append(el(this.doc, "pre", "spec-text", exercise.specification));
    this.root.append(spec);

    const codePane = el(this.doc, "section", "buggy-code");
    codePane.append(el(this.doc, "h2", "", "Buggy code"));
    const pre = el(this.doc, "pre", "code");
    const codeNode = el(this.doc, "code");
    codeNode.innerHTML = highlight(exercise.buggy_code, exercise.language);
    pre.append(codeNode);
    codePane.append(pre);
    this.root.append(codePane);

    const form = el(this.doc, "section", "test-case-form");
    form.append(el(this.doc, "h2", "", "Design a failing test case"));
    form.append(
      el(
        this.doc,
        "p",
        "hint",
        `give an input to ${exercise.function_name}, the output the buggy code produces, ` +
          "and the output a correct implementation should produce",
      ),
    );

    this.inputFields = [];
    for (const fieldSpec of this.specs) {
      const row = el(this.doc, "label", "field-row", fieldSpec.label + " ");
      const input = el(this.doc, "input", "field-input");
      input.name = `input-${fieldSpec.name}`;
      input.placeholder = fieldSpec.placeholder;
      row.append(input);
      row.append(el(this.doc, "span", "field-error"));
      form.append(row);
      this.inputFields.push(input);
    }

    const buggyRow = el(this.doc, "label", "field-row", "buggy output ");
    this.buggyField = el(this.doc, "input", "field-input buggy-output");
    this.buggyField.name = "buggy-output";
    buggyRow.append(this.buggyField);
    form.append(buggyRow);

    this.crashBox = null;
    if (exercise.bug_type === "Type3") {
      const crashRow = el(this.doc, "label", "crash-row");
      this.crashBox = el(this.doc, "input", "crash-box");
      this.crashBox.type = "checkbox";
      crashRow.append(this.crashBox);
      crashRow.append(
        el(
          this.doc,
          "span",
          "",
          ` the buggy code crashes on this input (submits ${exercise.error_sentinel})`,
        ),
      );
      this.crashBox.addEventListener("change", () => {
        this.buggyField.disabled = this.crashBox!.checked;
        if (this.crashBox!.checked) this.buggyField.value = exercise.error_sentinel;
        else this.buggyField.value = "";
      });
      form.append(crashRow);
    }

    const correctRow = el(this.doc, "label", "field-row", "correct output ");
    this.correctField = el(this.doc, "input", "field-input correct-output");
    this.correctField.name = "correct-output";
    correctRow.append(this.correctField);
    form.append(correctRow);

    this.submitButton = el(this.doc, "button", "submit", "Submit test case");
    this.submitButton.addEventListener("click", () => void this.submit());
    form.append(this.submitButton);

    this.nextButton = el(this.doc, "button", "next-exercise", "Next exercise");
    this.nextButton.disabled = true;
    this.nextButton.addEventListener("click", () => void this.loadExercise());
    form.append(this.nextButton);

    this.errorPane = el(this.doc, "p", "error-text");
    form.append(this.errorPane);
    this.root.append(form);

    this.verdictPane = el(this.doc, "section", "verdict");
    this.root.append(this.verdictPane);

    this.historyPane = el(this.doc, "section", "history");
    this.root.append(this.historyPane);
    if (this.history.length > 0) this.renderHistory();
  }

  private fieldErrors(): HTMLElement[] {
    return Array.from(this.root.querySelectorAll(".field-error"));
  }

  async submit(): Promise<void> {
    if (this.inFlight || !this.exercise) return;
    this.errorPane.textContent = "";

    const texts = this.inputFields.map((f) => f.value);
    const parsed = parseInputs(texts, this.specs);
    const errorSlots = this.fieldErrors();
    if (!parsed.ok) {
      parsed.errors.forEach((error, i) => {
        errorSlots[i].textContent = error ?? "";
      });
      return;
    }
    errorSlots.forEach((slot) => (slot.textContent = ""));

    this.inFlight = true;
    this.submitButton.disabled = true;
    let verdict: VerdictView;
    try {
      verdict = await this.api.submit(this.exercise.exercise_id, {
        inputs: parsed.values,
        claimed_buggy_output: this.buggyField.value,
        claimed_correct_output: this.correctField.value,
      });
    } catch (err) {
      if (err instanceof ApiError && err.status === 429) {
        this.errorPane.textContent =
          "your previous test case is still being judged; wait a moment and try again";
      } else {
        this.errorPane.textContent = describeError(err);
      }
      return;
    } finally {
      this.inFlight = false;
      this.submitButton.disabled = false;
    }

    this.history.push({
      exerciseId: verdict.exercise_id,
      inputs: texts.join(" | "),
      success: verdict.success,
    });
    this.renderVerdict(verdict);
    this.renderHistory();
    if (verdict.success) this.nextButton.disabled = false;
  }

  private renderVerdict(verdict: VerdictView): void {
    const model = verdictModel(verdict);
    this.verdictPane.textContent = "";
    this.verdictPane.append(
      el(
        this.doc,
        "p",
        model.tick ? "verdict-tick" : "verdict-cross",
        model.tick ? "✓ you found a failing test case" : "✗ not accepted yet",
      ),
    );
    const list = el(this.doc, "ul", "criteria");
    model.criteria.forEach((criterion, index) => {
      const item = el(this.doc, "li", `criterion criterion-${index + 1}`);
      item.classList.add(criterion.met ? "met" : "not-met");
      item.append(
        el(this.doc, "span", "mark", criterion.met ? "✓ " : "✗ "),
        el(this.doc, "span", "title", criterion.title + ": "),
        el(this.doc, "span", "message", criterion.message),
      );
      list.append(item);
    });
    this.verdictPane.append(list);
    if (model.detail) {
      this.verdictPane.append(el(this.doc, "p", "verdict-detail", model.detail));
    }
    if (this.revealOutputs) {
      const reveal = el(this.doc, "div", "revealed-outputs");
      reveal.append(el(this.doc, "p", "actual-buggy", `buggy code produced: ${model.actualBuggy}`));
      reveal.append(
        el(this.doc, "p", "actual-fixed", `fixed code produced: ${model.actualFixed}`),
      );
      this.verdictPane.append(reveal);
    }
  }

  private renderHistory(): void {
    this.historyPane.textContent = "";
    this.historyPane.append(el(this.doc, "h2", "", "Attempts this session"));
    const list = el(this.doc, "ol", "attempts");
    for (const attempt of this.history) {
      list.append(
        el(
          this.doc,
          "li",
          attempt.success ? "attempt-success" : "attempt-failure",
          `${attempt.success ? "✓" : "✗"} ${attempt.exerciseId} inputs: ${attempt.inputs}`,
        ),
      );
    }
    this.historyPane.append(list);
  }
}

function describeError(err: unknown): string {
  if (err instanceof ApiError) return `${err.message} (${err.code})`;
  if (err instanceof Error) return `could not reach the server: ${err.message}`;
  return String(err);
}

export function initApp(root: HTMLElement, options: AppOptions): App {
  const app = new App(root, options);
  void app.start();
  return app;
}
