/**
 * Controller: owns the state, talks to the API, drives rendering. Exported
 * as a class so tests can boot it against any server and script it like a
 * user would.
 */

import { ApiClient, ApiFailure } from "./api.js";
import { grade, validateQuestions, type QuizQuestion } from "./quiz.js";
import { render } from "./screens.js";
import * as transitions from "./state.js";
import { Countdown } from "./timer.js";
import type {
  AnswerPayload,
  Group,
  LeaderboardEntry,
  PostSurveyAnswers,
  PreSurveyAnswers,
  SessionView,
} from "./types.js";

export interface AppOptions {
  /** API origin; defaults to the page's own origin. */
  apiBase?: string;
  /** Where quiz-questions.json lives; defaults to the page's directory. */
  assetBase?: string;
  /** Disable the local countdown display (the server still times out). */
  showTimer?: boolean;
}

export class App {
  state: transitions.AppState = transitions.initialState;
  readonly api: ApiClient;
  readonly assetBase: string;
  readonly showTimer: boolean;
  questions: QuizQuestion[] | null = null;
  leaderboard: LeaderboardEntry[] = [];
  lastError: string | null = null;
  private countdown: Countdown | null = null;

  constructor(
    readonly root: HTMLElement,
    options: AppOptions = {},
  ) {
    const origin = options.apiBase ?? window.location.origin;
    this.api = new ApiClient(origin);
    this.assetBase =
      options.assetBase ?? `${origin}${directoryOf(window.location.pathname)}`;
    this.showTimer = options.showTimer ?? true;
  }

  // --- rendering --------------------------------------------------------------

  renderNow(): void {
    this.stopCountdown();
    render(this);
    this.maybeStartCountdown();
  }

  showError(message: string): void {
    this.lastError = message;
    this.renderNow();
  }

  private transition(next: transitions.AppState): void {
    this.state = next;
    this.lastError = null;
    this.renderNow();
  }

  private async guard<T>(work: () => Promise<T>): Promise<T | undefined> {
    try {
      return await work();
    } catch (failure) {
      if (failure instanceof ApiFailure) {
        this.showError(failure.detail);
        return undefined;
      }
      this.showError(String(failure));
      return undefined;
    }
  }

  // --- countdown --------------------------------------------------------------

  private maybeStartCountdown(): void {
    if (!this.showTimer) return;
    const screen = this.state.screen;
    if (screen.kind !== "challenge" || screen.start.deadline_seconds === null) {
      return;
    }
    const label = this.root.querySelector<HTMLElement>("#countdown");
    const bar = this.root.querySelector<HTMLElement>("#hazard-bar");
    this.countdown = new Countdown(
      screen.start.deadline_seconds,
      (remaining, fraction) => {
        if (label) label.textContent = `${remaining.toFixed(1)}s`;
        if (bar) bar.style.width = `${(fraction * 100).toFixed(1)}%`;
      },
    );
    this.countdown.start();
  }

  private stopCountdown(): void {
    this.countdown?.stop();
    this.countdown = null;
  }

  /** Server views carry remaining time; the display snaps to it. */
  private reconcileTimer(view: SessionView): void {
    if (this.countdown && view.active) {
      this.countdown.reconcile(view.active.remaining_seconds);
    }
  }

  // --- study flow -------------------------------------------------------------

  async register(displayName: string, group: Group): Promise<void> {
    if (!displayName) {
      this.showError("Pick a display name first.");
      return;
    }
    await this.guard(async () => {
      const participant = await this.api.register(displayName, group);
      this.transition(transitions.registered(this.state, participant));
    });
  }

  async submitPreSurvey(answers: PreSurveyAnswers): Promise<void> {
    const participant = this.state.participant;
    if (!participant) return;
    await this.guard(async () => {
      await this.api.preSurvey(participant.participant_id, answers);
      this.transition(transitions.preSurveyDone(this.state));
    });
  }

  async submitPostSurvey(answers: PostSurveyAnswers): Promise<void> {
    const participant = this.state.participant;
    if (!participant) return;
    await this.guard(async () => {
      await this.api.postSurvey(participant.participant_id, answers);
      this.transition(transitions.postSurveyDone(this.state));
    });
  }

  async loadQuestions(): Promise<void> {
    await this.guard(async () => {
      const response = await fetch(`${this.assetBase}/quiz-questions.json`);
      if (!response.ok) {
        throw new Error(`quiz questions unavailable (${response.status})`);
      }
      this.questions = validateQuestions(await response.json());
      this.renderNow();
    });
  }

  async submitQuiz(picks: number[]): Promise<void> {
    const participant = this.state.participant;
    if (!participant || !this.questions) return;
    const answers = grade(this.questions, picks);
    await this.guard(async () => {
      const outcome = await this.api.quizResults(
        participant.participant_id,
        answers,
      );
      this.leaderboard = (await this.api.leaderboard()).entries;
      this.transition(
        transitions.quizDone(this.state, outcome.score_percent ?? null),
      );
    });
  }

  // --- game flow --------------------------------------------------------------

  async startSession(difficulty: string): Promise<void> {
    const participant = this.state.participant;
    if (!participant) return;
    await this.guard(async () => {
      const view = await this.api.createSession(
        participant.participant_id,
        difficulty,
      );
      this.transition(transitions.sessionCreated(this.state, view));
    });
  }

  async moveTo(cell: [number, number]): Promise<void> {
    const session = this.state.session;
    if (!session) return;
    await this.guard(async () => {
      const view = await this.api.move(session.session_id, cell);
      this.transition(transitions.sessionRefreshed(this.state, view));
    });
  }

  async startChallenge(missionId: string): Promise<void> {
    const session = this.state.session;
    if (!session) return;
    await this.guard(async () => {
      const start = await this.api.startChallenge(session.session_id, missionId);
      this.transition(transitions.challengeStarted(this.state, start));
    });
  }

  async submitAnswer(payload: AnswerPayload): Promise<void> {
    const session = this.state.session;
    const screen = this.state.screen;
    if (!session || screen.kind !== "challenge") return;
    await this.guard(async () => {
      const result = await this.api.answer(
        session.session_id,
        screen.start.challenge_ref,
        payload,
      );
      this.transition(
        transitions.answered(this.state, result, screen.start.challenge),
      );
    });
  }

  async acknowledgeResult(): Promise<void> {
    const session = this.state.session;
    const screen = this.state.screen;
    if (!session || screen.kind !== "result") return;
    const wasTimeout = screen.result.outcome === "TimedOut";
    await this.guard(async () => {
      const view = await this.api.getSession(session.session_id);
      this.transition(
        transitions.resultAcknowledged(this.state, view, wasTimeout),
      );
    });
  }

  /**
   * Clone-frame load hook. The first load is the page itself; after the
   * player submits the form the debrief loads, the active judgment is gone
   * server-side, and the refreshed view moves us along.
   */
  async pollCapture(): Promise<void> {
    const session = this.state.session;
    if (!session || this.state.screen.kind !== "challenge") return;
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

function directoryOf(pathname: string): string {
  const cut = pathname.lastIndexOf("/");
  return cut <= 0 ? "" : pathname.slice(0, cut);
}

export function boot(root: HTMLElement, options: AppOptions = {}): App {
  const app = new App(root, options);
  app.renderNow();
  return app;
}
