/**
 * Thin typed client over the HTTP API. One method per endpoint, no retries,
 * no caching; errors surface as ApiFailure with the server's stable code.
 */

import type {
  AnswerPayload,
  AnswerResult,
  Group,
  LeaderboardEntry,
  Participant,
  PostSurveyAnswers,
  PreSurveyAnswers,
  QuizOutcome,
  SessionView,
  StartResponse,
} from "./types.js";

export class ApiFailure extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly detail: string,
  ) {
    super(`${code}: ${detail}`);
    this.name = "ApiFailure";
  }
}

async function parseFailure(response: Response): Promise<ApiFailure> {
  let code = "unknown";
  let detail = response.statusText;
  try {
    const body = (await response.json()) as { error?: string; detail?: string };
    if (typeof body.error === "string") code = body.error;
    if (typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiFailure(response.status, code, detail);
}

export class ApiClient {
  token: string | null = null;

  constructor(readonly base: string) {}

  private headers(json: boolean): Record<string, string> {
    const h: Record<string, string> = {};
    if (json) h["Content-Type"] = "application/json";
    if (this.token) h["Authorization"] = `Bearer ${this.token}`;
    return h;
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const response = await fetch(this.base + path, {
      method,
      headers: this.headers(body !== undefined),
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) throw await parseFailure(response);
    return (await response.json()) as T;
  }

  async register(displayName: string, group: Group): Promise<Participant> {
    const participant = await this.request<Participant>("POST", "/participants", {
      display_name: displayName,
      group,
    });
    this.token = participant.token;
    return participant;
  }

  preSurvey(participantId: string, answers: PreSurveyAnswers): Promise<unknown> {
    return this.request("POST", "/surveys/pre", {
      participant_id: participantId,
      ...answers,
    });
  }

  postSurvey(participantId: string, answers: PostSurveyAnswers): Promise<unknown> {
    return this.request("POST", "/surveys/post", {
      participant_id: participantId,
      ...answers,
    });
  }

  quizResults(participantId: string, answers: boolean[]): Promise<QuizOutcome> {
    return this.request("POST", "/quiz-results", {
      participant_id: participantId,
      answers,
    });
  }

  createSession(playerId: string, difficulty: string): Promise<SessionView> {
    return this.request("POST", "/sessions", {
      player_id: playerId,
      difficulty,
    });
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  move(sessionId: string, to: [number, number]): Promise<SessionView> {
    return this.request("POST", `/sessions/${sessionId}/move`, { to });
  }

  startChallenge(sessionId: string, missionId: string): Promise<StartResponse> {
    return this.request("POST", `/sessions/${sessionId}/challenges/start`, {
      mission_id: missionId,
    });
  }

  answer(
    sessionId: string,
    challengeRef: string,
    payload: AnswerPayload,
  ): Promise<AnswerResult> {
    return this.request("POST", `/sessions/${sessionId}/answers`, {
      challenge_ref: challengeRef,
      payload,
    });
  }

  leaderboard(limit = 10): Promise<{ entries: LeaderboardEntry[] }> {
    return this.request("GET", `/leaderboard?limit=${limit}`);
  }

  report(): Promise<unknown> {
    return this.request("GET", "/analytics/report");
  }
}
