/**
 * Controller: owns the state, talks to the API, drives rendering. Exported
 * as a class so tests can boot it against any server and script it like a
 * user would.
 */
import { ApiClient, ApiFailure } from "./api.js";
import { grade, validateQuestions } from "./quiz.js";
import { render } from "./screens.js";
import * as transitions from "./state.js";
import { Countdown } from "./timer.js";
export class App {
    root;
    state = transitions.initialState;
    api;
    assetBase;
    showTimer;
    questions = null;
    leaderboard = [];
    lastError = null;
    countdown = null;
    constructor(root, options = {}) {
        this.root = root;
        const origin = options.apiBase ?? window.location.origin;
        this.api = new ApiClient(origin);
        this.assetBase =
            options.assetBase ?? `${origin}${directoryOf(window.location.pathname)}`;
        this.showTimer = options.showTimer ?? true;
    }
    // --- rendering --------------------------------------------------------------
    renderNow() {
        this.stopCountdown();
        render(this);
        this.maybeStartCountdown();
    }
    showError(message) {
        this.lastError = message;
        this.renderNow();
    }
    transition(next) {
        this.state = next;
        this.lastError = null;
        this.renderNow();
    }
    async guard(work) {
        try {
            return await work();
        }
        catch (failure) {
            if (failure instanceof ApiFailure) {
                this.showError(failure.detail);
                return undefined;
            }
            this.showError(String(failure));
            return undefined;
        }
    }
    // --- countdown --------------------------------------------------------------
    maybeStartCountdown() {
        if (!this.showTimer)
            return;
        const screen = this.state.screen;
        if (screen.kind !== "challenge" || screen.start.deadline_seconds === null) {
            return;
        }
        const label = this.root.querySelector("#countdown");
        const bar = this.root.querySelector("#hazard-bar");
        this.countdown = new Countdown(screen.start.deadline_seconds, (remaining, fraction) => {
            if (label)
                label.textContent = `${remaining.toFixed(1)}s`;
            if (bar)
                bar.style.width = `${(fraction * 100).toFixed(1)}%`;
        });
        this.countdown.start();
    }
    stopCountdown() {
        this.countdown?.stop();
        this.countdown = null;
    }
    /** Server views carry remaining time; the display snaps to it. */
    reconcileTimer(view) {
        if (this.countdown && view.active) {
            this.countdown.reconcile(view.active.remaining_seconds);
        }
    }
    // --- study flow -------------------------------------------------------------
    async register(displayName, group) {
        if (!displayName) {
            this.showError("Pick a display name first.");
            return;
        }
        await this.guard(async () => {
            const participant = await this.api.register(displayName, group);
            this.transition(transitions.registered(this.state, participant));
        });
    }
    async submitPreSurvey(answers) {
        const participant = this.state.participant;
        if (!participant)
            return;
        await this.guard(async () => {
            await this.api.preSurvey(participant.participant_id, answers);
            this.transition(transitions.preSurveyDone(this.state));
        });
    }
    async submitPostSurvey(answers) {
        const participant = this.state.participant;
        if (!participant)
            return;
        await this.guard(async () => {
            await this.api.postSurvey(participant.participant_id, answers);
            this.transition(transitions.postSurveyDone(this.state));
        });
    }
    async loadQuestions() {
        await this.guard(async () => {
            const response = await fetch(`${this.assetBase}/quiz-questions.json`);
            if (!response.ok) {
                throw new Error(`quiz questions unavailable (${response.status})`);
            }
            this.questions = validateQuestions(await response.json());
            this.renderNow();
        });
    }
    async submitQuiz(picks) {
        const participant = this.state.participant;
        if (!participant || !this.questions)
            return;
        const answers = grade(this.questions, picks);
        await this.guard(async () => {
            const outcome = await this.api.quizResults(participant.participant_id, answers);
            this.leaderboard = (await this.api.leaderboard()).entries;
            this.transition(transitions.quizDone(this.state, outcome.score_percent ?? null));
        });
    }
    // --- game flow --------------------------------------------------------------
    async startSession(difficulty) {
        const participant = this.state.participant;
        if (!participant)
            return;
        await this.guard(async () => {
            const view = await this.api.createSession(participant.participant_id, difficulty);
            this.transition(transitions.sessionCreated(this.state, view));
        });
    }
    async moveTo(cell) {
        const session = this.state.session;
        if (!session)
            return;
        await this.guard(async () => {
            const view = await this.api.move(session.session_id, cell);
            this.transition(transitions.sessionRefreshed(this.state, view));
        });
    }
    async startChallenge(missionId) {
        const session = this.state.session;
        if (!session)
            return;
        await this.guard(async () => {
            const start = await this.api.startChallenge(session.session_id, missionId);
            this.transition(transitions.challengeStarted(this.state, start));
        });
    }
    async submitAnswer(payload) {
        const session = this.state.session;
        const screen = this.state.screen;
        if (!session || screen.kind !== "challenge")
            return;
        await this.guard(async () => {
            const result = await this.api.answer(session.session_id, screen.start.challenge_ref, payload);
            this.transition(transitions.answered(this.state, result, screen.start.challenge));
        });
    }
    async acknowledgeResult() {
        const session = this.state.session;
        const screen = this.state.screen;
        if (!session || screen.kind !== "result")
            return;
        const wasTimeout = screen.result.outcome === "TimedOut";
        await this.guard(async () => {
            const view = await this.api.getSession(session.session_id);
            this.transition(transitions.resultAcknowledged(this.state, view, wasTimeout));
        });
    }
    /**
     * Clone-frame load hook. The first load is the page itself; after the
     * player submits the form the debrief loads, the active judgment is gone
     * server-side, and the refreshed view moves us along.
     */
    async pollCapture() {
        const session = this.state.session;
        if (!session || this.state.screen.kind !== "challenge")
            return;
        await this.guard(async () => {
            const view = await this.api.getSession(session.session_id);
            if (view.active !== null) {
                this.reconcileTimer(view);
                this.state = transitions.sessionRefreshed(this.state, view);
                return;
            }
            this.transition(transitions.captureResolved(this.state, view));
        });
    }
}
function directoryOf(pathname) {
    const cut = pathname.lastIndexOf("/");
    return cut <= 0 ? "" : pathname.slice(0, cut);
}
export function boot(root, options = {}) {
    const app = new App(root, options);
    app.renderNow();
    return app;
}
