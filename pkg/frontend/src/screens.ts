/**
 * DOM rendering, one function per screen. Screens are dumb: they draw the
 * current AppState and forward user intent to controller methods on App.
 * All game-relevant numbers (score, outcome, health, remaining time) come
 * from server responses held in the state.
 */

import type { App } from "./main.js";
import {
  isAdjacent,
  missionAt,
  missionsRemaining,
  standingMission,
} from "./state.js";
import type {
  ArtifactView,
  ChallengeView,
  MissionView,
  SessionView,
} from "./types.js";

type Child = Node | string;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: Child[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  for (const child of children) node.append(child);
  return node;
}

function likertRow(name: string, label: string): HTMLElement {
  const row = el("fieldset", { class: "question", "data-q": name });
  row.append(el("legend", {}, label));
  for (const v of [1, 2, 3, 4, 5]) {
    const lab = el("label", { class: "likert" });
    const input = el("input", {
      type: "radio",
      name,
      value: String(v),
    });
    lab.append(input, String(v));
    row.append(lab);
  }
  return row;
}

function choiceRow(name: string, label: string, options: string[]): HTMLElement {
  const row = el("fieldset", { class: "question", "data-q": name });
  row.append(el("legend", {}, label));
  for (const option of options) {
    const lab = el("label", { class: "choice" });
    const input = el("input", { type: "radio", name, value: option });
    lab.append(input, option);
    row.append(lab);
  }
  return row;
}

function radioValue(root: HTMLElement, name: string): string | null {
  const checked = root.querySelector<HTMLInputElement>(
    `input[name="${name}"]:checked`,
  );
  return checked ? checked.value : null;
}

function textValue(root: HTMLElement, name: string): string {
  const area = root.querySelector<HTMLTextAreaElement>(
    `textarea[name="${name}"]`,
  );
  return area ? area.value : "";
}

// --- screens ------------------------------------------------------------------

function welcome(app: App): HTMLElement {
  const box = el("section", { class: "card", "data-screen": "welcome" });
  box.append(
    el("h1", {}, "phish-range"),
    el(
      "p",
      {},
      "A training range: explore the map, judge messages and pages, beat the clock.",
    ),
  );
  const name = el("input", {
    id: "display-name",
    type: "text",
    placeholder: "Display name",
    maxlength: "80",
  });
  const group = el("select", { id: "group" });
  group.append(
    el("option", { value: "Experimental" }, "Experimental (play the game)"),
    el("option", { value: "Control" }, "Control (survey and quiz only)"),
  );
  const button = el("button", { id: "register", class: "primary" }, "Start");
  button.addEventListener("click", () => {
    void app.register(name.value.trim(), group.value as "Experimental" | "Control");
  });
  box.append(name, group, button);
  return box;
}

function preSurvey(app: App): HTMLElement {
  const box = el("section", { class: "card", "data-screen": "pre-survey" });
  box.append(el("h2", {}, "Before you start"));
  box.append(
    likertRow("q1_familiarity", "How familiar are you with phishing attacks?"),
    choiceRow("q2_victim", "Have you ever fallen victim to a phishing attack?", [
      "Yes",
      "No",
      "Maybe",
    ]),
    choiceRow(
      "q3_clicked",
      "Have you ever clicked a link in a message that later seemed suspicious?",
      ["Yes", "No", "Maybe"],
    ),
    likertRow(
      "q4_confidence",
      "How confident are you in spotting a phishing attempt?",
    ),
  );
  const button = el("button", { id: "submit-pre", class: "primary" }, "Continue");
  button.addEventListener("click", () => {
    const q1 = radioValue(box, "q1_familiarity");
    const q2 = radioValue(box, "q2_victim");
    const q3 = radioValue(box, "q3_clicked");
    const q4 = radioValue(box, "q4_confidence");
    if (!q1 || !q2 || !q3 || !q4) {
      app.showError("Please answer every question.");
      return;
    }
    void app.submitPreSurvey({
      q1_familiarity: Number(q1),
      q2_victim: q2 as "Yes" | "No" | "Maybe",
      q3_clicked: q3 as "Yes" | "No" | "Maybe",
      q4_confidence: Number(q4),
    });
  });
  box.append(button);
  return box;
}

function lobby(app: App): HTMLElement {
  const box = el("section", { class: "card", "data-screen": "lobby" });
  box.append(el("h2", {}, "Pick a difficulty"));
  const table: Array<[string, string]> = [
    ["Easy", "3 challenges per mission, 90 seconds each"],
    ["Medium", "4 challenges per mission, 60 seconds each"],
    ["Hard", "5 challenges per mission, 40 seconds each"],
  ];
  for (const [label, blurb] of table) {
    const button = el(
      "button",
      { class: "difficulty", "data-difficulty": label },
      `${label} — ${blurb}`,
    );
    button.addEventListener("click", () => void app.startSession(label));
    box.append(button);
  }
  return box;
}

const KIND_GLYPH: Record<MissionView["kind"], string> = {
  Smish: "S",
  Spear: "@",
  Clone: "W",
};

function statusBar(view: SessionView): HTMLElement {
  const bar = el("div", { class: "status-bar" });
  bar.append(
    el("span", { id: "score" }, `Score ${view.score}`),
    el("span", { id: "badges" }, `Badges ${view.badges.length}`),
    el(
      "span",
      { id: "missions-left" },
      `Missions left ${missionsRemaining(view)}`,
    ),
  );
  return bar;
}

function mapScreen(app: App, notice?: string): HTMLElement {
  const view = app.state.session;
  if (!view) throw new Error("map without a session");
  const box = el("section", { class: "card wide", "data-screen": "map" });
  box.append(statusBar(view));
  if (notice) box.append(el("p", { class: "notice", id: "map-notice" }, notice));

  const [w, h] = view.map_size;
  const grid = el("div", { class: "grid", id: "map-grid" });
  grid.style.gridTemplateColumns = `repeat(${w}, 2em)`;
  for (let y = 0; y < h; y += 1) {
    for (let x = 0; x < w; x += 1) {
      const cell: [number, number] = [x, y];
      const here =
        view.player_position[0] === x && view.player_position[1] === y;
      const mission = missionAt(view, cell);
      const classes = ["cell"];
      if (here) classes.push("player");
      if (mission) classes.push("mission", mission.kind.toLowerCase());
      if (mission?.completed) classes.push("completed");
      const adjacent = isAdjacent(view.player_position, cell);
      if (adjacent) classes.push("adjacent");
      const tile = el(
        "div",
        { class: classes.join(" "), "data-cell": `${x},${y}` },
        here ? "●" : mission ? KIND_GLYPH[mission.kind] : "",
      );
      if (adjacent) {
        tile.addEventListener("click", () => void app.moveTo(cell));
      }
      grid.append(tile);
    }
  }
  box.append(grid);

  const standing = standingMission(view);
  if (standing) {
    const button = el(
      "button",
      { id: "enter-mission", class: "primary" },
      `Enter ${standing.kind} mission (attempt ${standing.attempt + 1})`,
    );
    button.addEventListener(
      "click",
      () => void app.startChallenge(standing.mission_id),
    );
    box.append(button);
  }
  const legend = el(
    "p",
    { class: "legend" },
    "● you · S text message · @ email · W website",
  );
  box.append(legend);
  return box;
}

function artifactView(app: App, artifact: ArtifactView): HTMLElement {
  if (artifact.type === "Email") {
    const mail = el("div", { class: "artifact email" });
    mail.append(
      el("div", { class: "mail-header" }, `From: ${artifact.from}`),
      el("div", { class: "mail-header" }, `Subject: ${artifact.subject}`),
      el("pre", { class: "mail-body" }, artifact.body),
    );
    return mail;
  }
  if (artifact.type === "Sms") {
    const sms = el("div", { class: "artifact sms" });
    sms.append(
      el("div", { class: "sms-sender" }, artifact.sender),
      el("div", { class: "sms-bubble" }, artifact.body),
    );
    return sms;
  }
  const site = el("div", { class: "artifact webpage" });
  site.append(el("div", { class: "address-bar", id: "address-bar" }, artifact.displayed_url));
  const sessionId = app.state.session?.session_id ?? "";
  const frame = el("iframe", {
    id: "clone-frame",
    // Forms must work (that is the lesson); scripts and top navigation must not.
    sandbox: "allow-forms",
    src: `${artifact.clone_path}?pr_session=${encodeURIComponent(sessionId)}`,
  });
  frame.addEventListener("load", () => void app.pollCapture());
  site.append(frame);
  return site;
}

function challengeBody(app: App, challenge: ChallengeView): HTMLElement {
  const body = el("div", { class: "challenge-body" });
  if (challenge.type === "dialogue") {
    const turns = el("div", { class: "turns" });
    for (const turn of challenge.turns) {
      const row = el("p", { class: "turn" });
      row.append(el("strong", {}, `${turn.speaker}: `), turn.text);
      turns.append(row);
    }
    body.append(turns, el("p", { class: "stem" }, challenge.question));
    challenge.options.forEach((option, index) => {
      const button = el(
        "button",
        { class: "option", "data-option": String(index) },
        option,
      );
      button.addEventListener(
        "click",
        () => void app.submitAnswer({ type: "mcq", option_index: index }),
      );
      body.append(button);
    });
    return body;
  }
  body.append(artifactView(app, challenge.artifact));
  const verdict = el("div", { class: "verdict" });
  verdict.append(el("p", { class: "stem" }, "Is this a phishing attempt?"));
  const phish = el("button", { id: "verdict-phish" }, "Phishing");
  phish.addEventListener(
    "click",
    () => void app.submitAnswer({ type: "judgment", is_phishing: true }),
  );
  const legit = el("button", { id: "verdict-legit" }, "Legitimate");
  legit.addEventListener(
    "click",
    () => void app.submitAnswer({ type: "judgment", is_phishing: false }),
  );
  verdict.append(phish, legit);
  body.append(verdict);
  return body;
}

function challengeScreen(app: App): HTMLElement {
  if (app.state.screen.kind !== "challenge") throw new Error("wrong screen");
  const { start } = app.state.screen;
  const box = el("section", { class: "card wide", "data-screen": "challenge" });
  if (app.state.session) box.append(statusBar(app.state.session));
  if (start.deadline_seconds !== null) {
    const hazard = el("div", { class: "hazard" });
    hazard.append(
      el("span", { id: "countdown" }, `${start.deadline_seconds.toFixed(1)}s`),
      el("div", { class: "hazard-track" }, el("div", { id: "hazard-bar" })),
    );
    box.append(hazard);
  }
  box.append(challengeBody(app, start.challenge));
  return box;
}

function resultScreen(app: App): HTMLElement {
  if (app.state.screen.kind !== "result") throw new Error("wrong screen");
  const { result } = app.state.screen;
  const box = el("section", { class: "card", "data-screen": "result" });
  const banner = el(
    "h2",
    { id: "outcome", class: `outcome ${result.outcome.toLowerCase()}` },
    result.outcome === "TimedOut" ? "Too late!" : result.outcome,
  );
  box.append(banner);
  if (result.points_delta > 0) {
    box.append(el("p", { id: "points" }, `+${result.points_delta} points`));
  }
  if (result.outcome === "TimedOut") {
    box.append(
      el(
        "p",
        {},
        "The server clock decides: the answer arrived after the deadline, so the mission failed and will be re-dealt.",
      ),
    );
  }
  if (result.ground_truth !== undefined) {
    box.append(
      el(
        "p",
        { id: "ground-truth" },
        result.ground_truth
          ? "That was a phishing attempt."
          : "That one was legitimate.",
      ),
    );
    for (const cue of result.cue_notes ?? []) {
      box.append(el("p", { class: "cue" }, `Tell: ${cue}`));
    }
  }
  if (result.badge_id) {
    box.append(el("p", { id: "badge" }, `Badge earned: ${result.badge_id}`));
  }
  const button = el("button", { id: "continue", class: "primary" }, "Continue");
  button.addEventListener("click", () => void app.acknowledgeResult());
  box.append(button);
  return box;
}

function postSurvey(app: App): HTMLElement {
  const box = el("section", { class: "card", "data-screen": "post-survey" });
  box.append(el("h2", {}, "After the game"));
  box.append(
    likertRow(
      "q1_understanding",
      "How well do you now understand common phishing tactics?",
    ),
    likertRow("q2_recommend", "Would you recommend this training to a colleague?"),
    likertRow(
      "q3_confidence",
      "How confident are you now in spotting a phishing attempt?",
    ),
  );
  const texts: Array<[string, string]> = [
    ["q4_helpful", "What was most helpful?"],
    ["q5_unclear", "Was anything unclear?"],
    ["q6_changes", "What would you change?"],
    ["q7_suggestions", "Any other suggestions?"],
  ];
  for (const [name, label] of texts) {
    const field = el("fieldset", { class: "question", "data-q": name });
    field.append(el("legend", {}, label), el("textarea", { name, rows: "2" }));
    box.append(field);
  }
  const button = el("button", { id: "submit-post", class: "primary" }, "Continue");
  button.addEventListener("click", () => {
    const q1 = radioValue(box, "q1_understanding");
    const q2 = radioValue(box, "q2_recommend");
    const q3 = radioValue(box, "q3_confidence");
    if (!q1 || !q2 || !q3) {
      app.showError("Please answer the three rating questions.");
      return;
    }
    void app.submitPostSurvey({
      q1_understanding: Number(q1),
      q2_recommend: Number(q2),
      q3_confidence: Number(q3),
      q4_helpful: textValue(box, "q4_helpful"),
      q5_unclear: textValue(box, "q5_unclear"),
      q6_changes: textValue(box, "q6_changes"),
      q7_suggestions: textValue(box, "q7_suggestions"),
    });
  });
  box.append(button);
  return box;
}

function quizScreen(app: App): HTMLElement {
  const box = el("section", { class: "card", "data-screen": "quiz" });
  box.append(el("h2", {}, "Awareness quiz"));
  const questions = app.questions;
  if (!questions) {
    box.append(el("p", {}, "Loading questions..."));
    void app.loadQuestions();
    return box;
  }
  questions.forEach((q, i) => {
    const field = el("fieldset", { class: "question", "data-q": q.id });
    field.append(el("legend", {}, `${i + 1}. ${q.prompt}`));
    q.options.forEach((option, j) => {
      const lab = el("label", { class: "choice" });
      lab.append(
        el("input", { type: "radio", name: q.id, value: String(j) }),
        option,
      );
      field.append(lab);
    });
    box.append(field);
  });
  const button = el("button", { id: "submit-quiz", class: "primary" }, "Finish");
  button.addEventListener("click", () => {
    const picks: number[] = [];
    for (const q of questions) {
      const v = radioValue(box, q.id);
      if (v === null) {
        app.showError("Please answer every question.");
        return;
      }
      picks.push(Number(v));
    }
    void app.submitQuiz(picks);
  });
  box.append(button);
  return box;
}

function doneScreen(app: App): HTMLElement {
  if (app.state.screen.kind !== "done") throw new Error("wrong screen");
  const box = el("section", { class: "card", "data-screen": "done" });
  box.append(el("h2", {}, "All done"));
  const score = app.state.screen.scorePercent;
  if (score !== null) {
    box.append(el("p", { id: "quiz-score" }, `Quiz score: ${score.toFixed(0)}%`));
  }
  if (app.leaderboard.length > 0) {
    const table = el("table", { id: "leaderboard" });
    const head = el("tr", {});
    for (const col of ["Player", "Score", "Badges"]) {
      head.append(el("th", {}, col));
    }
    table.append(head);
    for (const entry of app.leaderboard) {
      const row = el("tr", {});
      row.append(
        el("td", {}, entry.display_name),
        el("td", {}, String(entry.total_score)),
        el("td", {}, String(entry.badges_count)),
      );
      table.append(row);
    }
    box.append(el("h3", {}, "Leaderboard"), table);
  }
  box.append(el("p", {}, "Thanks for taking part. You can close this tab."));
  return box;
}

export function render(app: App): void {
  const root = app.root;
  root.replaceChildren();
  if (app.lastError) {
    root.append(el("p", { class: "error", id: "error" }, app.lastError));
  }
  const screen = app.state.screen;
  switch (screen.kind) {
    case "welcome":
      root.append(welcome(app));
      break;
    case "preSurvey":
      root.append(preSurvey(app));
      break;
    case "lobby":
      root.append(lobby(app));
      break;
    case "map":
      root.append(mapScreen(app, screen.notice));
      break;
    case "challenge":
      root.append(challengeScreen(app));
      break;
    case "result":
      root.append(resultScreen(app));
      break;
    case "postSurvey":
      root.append(postSurvey(app));
      break;
    case "quiz":
      root.append(quizScreen(app));
      break;
    case "done":
      root.append(doneScreen(app));
      break;
  }
}
