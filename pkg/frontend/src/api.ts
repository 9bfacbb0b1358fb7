/** Typed client for the student-facing routes. Admin routes are out of scope. */

export interface ParameterSchema {
  name: string;
  type: string;
}

export interface SignatureSchema {
  parameters: ParameterSchema[];
  return_type: string;
}

export interface ExerciseView {
  exercise_id: string;
  problem_id: string;
  language: string;
  specification: string;
  function_name: string;
  signature: SignatureSchema;
  buggy_code: string;
  bug_type: string;
  error_sentinel: string;
}

export interface ProblemListing {
  id: string;
  title: string;
  language: string;
}

export interface OutcomeView {
  kind: string;
  output_text: string | null;
  detail: string;
}

export interface VerdictView {
  exercise_id: string;
  criterion1_outputs_differ: boolean;
  criterion2_correct_matches: boolean;
  criterion3_buggy_matches: boolean;
  success: boolean;
  actual_buggy: OutcomeView;
  actual_fixed: OutcomeView;
  detail: string;
}

export interface SubmissionPayload {
  inputs: unknown[];
  claimed_buggy_output: string;
  claimed_correct_output: string;
}

/** Error envelope the service returns for every non-2xx response. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function throwEnvelope(response: Response): Promise<never> {
  let code = "internal";
  let message = `request failed with status ${response.status}`;
  try {
    const body = (await response.json()) as { code?: string; message?: string };
    if (typeof body.code === "string") code = body.code;
    if (typeof body.message === "string") message = body.message;
  } catch {
    // non-JSON error body; keep the status-derived message
  }
  throw new ApiError(response.status, code, message);
}

export class StudentApi {
  constructor(
    readonly baseUrl: string,
    readonly studentId: string,
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async request(path: string, init?: RequestInit): Promise<unknown> {
    const headers: Record<string, string> = {
      "X-Student-Id": this.studentId,
      ...((init?.headers as Record<string, string>) ?? {}),
    };
    const response = await this.fetchImpl(this.baseUrl + path, { ...init, headers });
    if (!response.ok) await throwEnvelope(response);
    return response.json();
  }

  async listProblems(): Promise<ProblemListing[]> {
    return (await this.request("/problems")) as ProblemListing[];
  }

  async nextExercise(problemId: string): Promise<ExerciseView> {
    return (await this.request(`/problems/${encodeURIComponent(problemId)}/exercise`, {
      method: "POST",
    })) as ExerciseView;
  }

  async submit(exerciseId: string, payload: SubmissionPayload): Promise<VerdictView> {
    return (await this.request(`/exercises/${encodeURIComponent(exerciseId)}/submit`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    })) as VerdictView;
  }
}
