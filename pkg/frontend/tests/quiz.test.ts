import { readFileSync } from "node:fs";
import { resolve } from "node:path";

import { describe, expect, it } from "vitest";

import { grade, validateQuestions } from "../src/quiz.js";

// vitest runs from the package root; import.meta.url is not a file URL here.
const shipped = JSON.parse(
  readFileSync(resolve(process.cwd(), "static/quiz-questions.json"), "utf-8"),
) as unknown;

describe("shipped question file", () => {
  it("is a valid ten-question quiz", () => {
    const questions = validateQuestions(shipped);
    expect(questions).toHaveLength(10);
    const ids = new Set(questions.map((q) => q.id));
    expect(ids.size).toBe(10);
  });
});

describe("grading", () => {
  const questions = validateQuestions(shipped);

  it("all correct picks grade to ten trues", () => {
    const picks = questions.map((q) => q.answer_index);
    expect(grade(questions, picks)).toEqual(Array(10).fill(true));
  });

  it("a wrong pick grades false in place", () => {
    const picks = questions.map((q) => q.answer_index);
    picks[3] = (questions[3]!.answer_index + 1) % questions[3]!.options.length;
    const graded = grade(questions, picks);
    expect(graded[3]).toBe(false);
    expect(graded.filter(Boolean)).toHaveLength(9);
  });

  it("pick-count mismatch is rejected", () => {
    expect(() => grade(questions, [0, 1])).toThrow(/expected 10 picks/);
  });
});

describe("validation", () => {
  it("rejects a short quiz", () => {
    expect(() => validateQuestions([])).toThrow(/exactly 10/);
  });

  it("rejects an out-of-range answer index", () => {
    const bad = (shipped as object[]).map((q) => ({ ...q }));
    (bad[0] as { answer_index: number }).answer_index = 99;
    expect(() => validateQuestions(bad)).toThrow(/malformed/);
  });
});
