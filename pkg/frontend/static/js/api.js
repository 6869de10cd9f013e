/**
 * Thin typed client over the HTTP API. One method per endpoint, no retries,
 * no caching; errors surface as ApiFailure with the server's stable code.
 */
export class ApiFailure extends Error {
    status;
    code;
    detail;
    constructor(status, code, detail) {
        super(`${code}: ${detail}`);
        this.status = status;
        this.code = code;
        this.detail = detail;
        this.name = "ApiFailure";
    }
}
async function parseFailure(response) {
    let code = "unknown";
    let detail = response.statusText;
    try {
        const body = (await response.json());
        if (typeof body.error === "string")
            code = body.error;
        if (typeof body.detail === "string")
            detail = body.detail;
    }
    catch {
        // non-JSON error body; keep the status text
    }
    return new ApiFailure(response.status, code, detail);
}
export class ApiClient {
    base;
    token = null;
    constructor(base) {
        this.base = base;
    }
    headers(json) {
        const h = {};
        if (json)
            h["Content-Type"] = "application/json";
        if (this.token)
            h["Authorization"] = `Bearer ${this.token}`;
        return h;
    }
    async request(method, path, body) {
        const response = await fetch(this.base + path, {
            method,
            headers: this.headers(body !== undefined),
            body: body === undefined ? undefined : JSON.stringify(body),
        });
        if (!response.ok)
            throw await parseFailure(response);
        return (await response.json());
    }
    async register(displayName, group) {
        const participant = await this.request("POST", "/participants", {
            display_name: displayName,
            group,
        });
        this.token = participant.token;
        return participant;
    }
    preSurvey(participantId, answers) {
        return this.request("POST", "/surveys/pre", {
            participant_id: participantId,
            ...answers,
        });
    }
    postSurvey(participantId, answers) {
        return this.request("POST", "/surveys/post", {
            participant_id: participantId,
            ...answers,
        });
    }
    quizResults(participantId, answers) {
        return this.request("POST", "/quiz-results", {
            participant_id: participantId,
            answers,
        });
    }
    createSession(playerId, difficulty) {
        return this.request("POST", "/sessions", {
            player_id: playerId,
            difficulty,
        });
    }
    getSession(sessionId) {
        return this.request("GET", `/sessions/${sessionId}`);
    }
    move(sessionId, to) {
        return this.request("POST", `/sessions/${sessionId}/move`, { to });
    }
    startChallenge(sessionId, missionId) {
        return this.request("POST", `/sessions/${sessionId}/challenges/start`, {
            mission_id: missionId,
        });
    }
    answer(sessionId, challengeRef, payload) {
        return this.request("POST", `/sessions/${sessionId}/answers`, {
            challenge_ref: challengeRef,
            payload,
        });
    }
    leaderboard(limit = 10) {
        return this.request("GET", `/leaderboard?limit=${limit}`);
    }
    report() {
        return this.request("GET", "/analytics/report");
    }
}
