/** Typed input fields derived from the problem signature, one per parameter.
 *
 * Parsing mirrors the service's value model: what validates here is exactly
 * what the judge will accept, so client-side validation can block a submit
 * without ever disagreeing with the server.
 */

import type { ParameterSchema, SignatureSchema } from "./api.js";

export interface FieldSpec {
  name: string;
  type: string;
  label: string;
  placeholder: string;
}

export type ParseResult =
  | { ok: true; value: unknown }
  | { ok: false; error: string };

const PLACEHOLDERS: Record<string, string> = {
  integer: "e.g. 42",
  float: "e.g. 2.5",
  string: "any text",
  "list-of-integers": "e.g. [1, -2, 3]",
  "list-of-floats": "e.g. [1.0, 2.5]",
  boolean: "true or false",
};

export function fieldSpecs(signature: SignatureSchema): FieldSpec[] {
  return signature.parameters.map((p: ParameterSchema) => ({
    name: p.name,
    type: p.type,
    label: `${p.name} (${p.type})`,
    placeholder: PLACEHOLDERS[p.type] ?? "",
  }));
}

const INTEGER_RE = /^[+-]?\d+$/;

function parseInteger(text: string): ParseResult {
  if (!INTEGER_RE.test(text)) {
    return { ok: false, error: "enter a whole number, like 7 or -3" };
  }
  return { ok: true, value: Number(text) };
}

function parseFloat_(text: string): ParseResult {
  if (text === "" || !Number.isFinite(Number(text))) {
    return { ok: false, error: "enter a number, like 2.5 or 1e-3" };
  }
  return { ok: true, value: Number(text) };
}

function parseBoolean(text: string): ParseResult {
  if (text === "true") return { ok: true, value: true };
  if (text === "false") return { ok: true, value: false };
  return { ok: false, error: "enter true or false" };
}

function parseList(text: string, elementKind: "integer" | "float"): ParseResult {
  let parsed: unknown;
  try {
    parsed = JSON.parse(text);
  } catch {
    return { ok: false, error: "enter a list in brackets, like [1, 2, 3]" };
  }
  if (!Array.isArray(parsed)) {
    return { ok: false, error: "enter a list in brackets, like [1, 2, 3]" };
  }
  for (const element of parsed) {
    if (typeof element !== "number" || !Number.isFinite(element)) {
      return { ok: false, error: "every list element must be a number" };
    }
    if (elementKind === "integer" && !Number.isInteger(element)) {
      return { ok: false, error: "every list element must be a whole number" };
    }
  }
  return { ok: true, value: parsed };
}

export function parseField(text: string, type: string): ParseResult {
  const trimmed = text.trim();
  switch (type) {
    case "integer":
      return parseInteger(trimmed);
    case "float":
      return parseFloat_(trimmed);
    case "boolean":
      return parseBoolean(trimmed);
    case "string":
      return { ok: true, value: text };
    case "list-of-integers":
      return parseList(trimmed, "integer");
    case "list-of-floats":
      return parseList(trimmed, "float");
    default:
      return { ok: false, error: `unsupported parameter type ${type}` };
  }
}

/** Parse every field; either all typed values or the first error per field. */
export function parseInputs(
  texts: string[],
  specs: FieldSpec[],
): { ok: true; values: unknown[] } | { ok: false; errors: (string | null)[] } {
  const values: unknown[] = [];
  const errors: (string | null)[] = [];
  let failed = false;
  for (let i = 0; i < specs.length; i++) {
    const result = parseField(texts[i] ?? "", specs[i].type);
    if (result.ok) {
      values.push(result.value);
      errors.push(null);
    } else {
      failed = true;
      errors.push(result.error);
    }
  }
  return failed ? { ok: false, errors } : { ok: true, values };
}
