import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiFailure } from "../src/api.js";

interface Call {
  url: string;
  init: RequestInit;
}

function stubFetch(status: number, body: unknown): Call[] {
  const calls: Call[] = [];
  vi.stubGlobal(
    "fetch",
    async (url: string, init: RequestInit = {}): Promise<Response> => {
      calls.push({ url, init });
      return new Response(JSON.stringify(body), {
        status,
        headers: { "Content-Type": "application/json" },
      });
    },
  );
  return calls;
}

afterEach(() => vi.unstubAllGlobals());

describe("ApiClient", () => {
  it("register stores the token and later calls send it", async () => {
    const calls = stubFetch(201, {
      participant_id: "pt-1",
      display_name: "Ada",
      group: "Experimental",
      token: "tok-xyz",
    });
    const api = new ApiClient("http://range.test");
    await api.register("Ada", "Experimental");
    expect(api.token).toBe("tok-xyz");

    await api.createSession("pt-1", "Easy").catch(() => undefined);
    const second = calls[1]!;
    expect(second.url).toBe("http://range.test/sessions");
    const headers = second.init.headers as Record<string, string>;
    expect(headers["Authorization"]).toBe("Bearer tok-xyz");
    expect(JSON.parse(String(second.init.body))).toEqual({
      player_id: "pt-1",
      difficulty: "Easy",
    });
  });

  it("survey answers are flattened into the body", async () => {
    const calls = stubFetch(201, { stored: true });
    const api = new ApiClient("http://range.test");
    api.token = "t";
    await api.preSurvey("pt-1", {
      q1_familiarity: 3,
      q2_victim: "No",
      q3_clicked: "Maybe",
      q4_confidence: 2,
    });
    const body = JSON.parse(String(calls[0]!.init.body));
    expect(body).toEqual({
      participant_id: "pt-1",
      q1_familiarity: 3,
      q2_victim: "No",
      q3_clicked: "Maybe",
      q4_confidence: 2,
    });
  });

  it("server errors become ApiFailure with the stable code", async () => {
    stubFetch(409, {
      error: "duplicate_submission",
      detail: "stored, but ignored for analysis",
    });
    const api = new ApiClient("http://range.test");
    api.token = "t";
    const failure = await api
      .quizResults("pt-1", Array(10).fill(true))
      .then(() => null)
      .catch((e: unknown) => e);
    expect(failure).toBeInstanceOf(ApiFailure);
    const f = failure as ApiFailure;
    expect(f.status).toBe(409);
    expect(f.code).toBe("duplicate_submission");
    expect(f.detail).toMatch(/ignored for analysis/);
  });

  it("answer posts the challenge_ref and discriminated payload", async () => {
    const calls = stubFetch(200, { outcome: "Correct" });
    const api = new ApiClient("http://range.test");
    api.token = "t";
    await api.answer("sess-1", "sess-1-m1#0", { type: "mcq", option_index: 2 });
    expect(calls[0]!.url).toBe("http://range.test/sessions/sess-1/answers");
    expect(JSON.parse(String(calls[0]!.init.body))).toEqual({
      challenge_ref: "sess-1-m1#0",
      payload: { type: "mcq", option_index: 2 },
    });
  });
});
