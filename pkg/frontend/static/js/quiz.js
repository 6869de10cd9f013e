/**
 * The ten-question awareness quiz. Questions ship as a static JSON file next
 * to the app; the client grades selections into the booleans the API wants.
 * Grading client-side is fine here: the quiz measures awareness, not game
 * score, and the server recomputes score_percent from the booleans anyway.
 */
export function validateQuestions(data) {
    if (!Array.isArray(data))
        throw new Error("quiz file must be an array");
    if (data.length !== 10) {
        throw new Error(`the quiz has exactly 10 questions, file has ${data.length}`);
    }
    return data.map((raw, i) => {
        const q = raw;
        if (typeof q.id !== "string" ||
            typeof q.prompt !== "string" ||
            !Array.isArray(q.options) ||
            q.options.length < 2 ||
            typeof q.answer_index !== "number" ||
            !Number.isInteger(q.answer_index) ||
            q.answer_index < 0 ||
            q.answer_index >= q.options.length) {
            throw new Error(`quiz question ${i + 1} is malformed`);
        }
        return q;
    });
}
/** One boolean per question: did the participant pick the right option. */
export function grade(questions, picks) {
    if (picks.length !== questions.length) {
        throw new Error(`expected ${questions.length} picks, got ${picks.length}`);
    }
    return questions.map((q, i) => picks[i] === q.answer_index);
}
