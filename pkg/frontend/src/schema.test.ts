import { describe, expect, it } from "vitest";

import { fieldSpecs, parseField, parseInputs } from "./schema.js";

const SIGNATURE = {
  parameters: [
    { name: "numbers", type: "list-of-integers" },
    { name: "limit", type: "integer" },
  ],
  return_type: "integer",
};

describe("fieldSpecs", () => {
  it("emits one field per parameter, in order", () => {
    const specs = fieldSpecs(SIGNATURE);
    expect(specs.map((s) => s.name)).toEqual(["numbers", "limit"]);
    expect(specs[0].label).toBe("numbers (list-of-integers)");
    expect(specs[0].placeholder).toContain("[1, -2, 3]");
    expect(specs[1].placeholder).toContain("42");
  });
});

describe("parseField", () => {
  it("accepts integers with sign", () => {
    expect(parseField("42", "integer")).toEqual({ ok: true, value: 42 });
    expect(parseField(" -7 ", "integer")).toEqual({ ok: true, value: -7 });
    expect(parseField("+3", "integer")).toEqual({ ok: true, value: 3 });
  });

  it("rejects non-integers in integer fields", () => {
    for (const bad of ["3.5", "abc", "", "1e3", "[1]", "true"]) {
      expect(parseField(bad, "integer").ok).toBe(false);
    }
  });

  it("accepts floats including scientific notation", () => {
    expect(parseField("2.5", "float")).toEqual({ ok: true, value: 2.5 });
    expect(parseField("1e-3", "float")).toEqual({ ok: true, value: 0.001 });
    expect(parseField("3", "float")).toEqual({ ok: true, value: 3 });
  });

  it("rejects non-numeric floats", () => {
    for (const bad of ["", "abc", "1/2", "NaN", "Infinity"]) {
      expect(parseField(bad, "float").ok).toBe(false);
    }
  });

  it("parses booleans strictly", () => {
    expect(parseField("true", "boolean")).toEqual({ ok: true, value: true });
    expect(parseField("false", "boolean")).toEqual({ ok: true, value: false });
    expect(parseField("True", "boolean").ok).toBe(false);
    expect(parseField("1", "boolean").ok).toBe(false);
  });

  it("keeps strings verbatim, including spaces", () => {
    expect(parseField("  hello world ", "string")).toEqual({
      ok: true,
      value: "  hello world ",
    });
  });

  it("parses integer lists in bracket syntax", () => {
    expect(parseField("[1, -2, 3]", "list-of-integers")).toEqual({
      ok: true,
      value: [1, -2, 3],
    });
    expect(parseField("[]", "list-of-integers")).toEqual({ ok: true, value: [] });
  });

  it("rejects malformed or mistyped lists", () => {
    for (const bad of ["1, 2", "[1.5]", "[true]", '["a"]', "{1: 2}", "[1,", "7"]) {
      expect(parseField(bad, "list-of-integers").ok).toBe(false);
    }
  });

  it("allows whole numbers inside float lists", () => {
    expect(parseField("[1, 2.5]", "list-of-floats")).toEqual({
      ok: true,
      value: [1, 2.5],
    });
    expect(parseField('["x"]', "list-of-floats").ok).toBe(false);
  });

  it("fails closed on unknown types", () => {
    expect(parseField("anything", "matrix").ok).toBe(false);
  });
});

describe("parseInputs", () => {
  const specs = fieldSpecs(SIGNATURE);

  it("returns typed values when every field parses", () => {
    const result = parseInputs(["[1, 2]", "5"], specs);
    expect(result).toEqual({ ok: true, values: [[1, 2], 5] });
  });

  it("reports per-field errors and no values otherwise", () => {
    const result = parseInputs(["oops", "5"], specs);
    expect(result.ok).toBe(false);
    if (!result.ok) {
      expect(result.errors[0]).toMatch(/list in brackets/);
      expect(result.errors[1]).toBeNull();
    }
  });

  it("treats missing fields as empty text", () => {
    const result = parseInputs([], specs);
    expect(result.ok).toBe(false);
  });
});
