import { describe, expect, it } from "vitest";

import {
  initialState,
  isAdjacent,
  missionAt,
  missionsRemaining,
  preSurveyDone,
  registered,
  resultAcknowledged,
  sessionCreated,
  standingMission,
  captureResolved,
} from "../src/state.js";
import { participant, sessionView } from "./fixtures.js";

describe("study flow gating", () => {
  it("control participants skip the game entirely", () => {
    let state = registered(initialState, participant("Control"));
    expect(state.screen.kind).toBe("preSurvey");
    state = preSurveyDone(state);
    expect(state.screen.kind).toBe("quiz");
  });

  it("experimental participants go to the lobby", () => {
    let state = registered(initialState, participant("Experimental"));
    state = preSurveyDone(state);
    expect(state.screen.kind).toBe("lobby");
  });

  it("pre-survey before registration is a bug", () => {
    expect(() => preSurveyDone(initialState)).toThrow();
  });
});

describe("result acknowledgement", () => {
  const base = sessionCreated(
    registered(initialState, participant("Experimental")),
    sessionView(),
  );

  it("timeout returns to the map with the retry notice", () => {
    const next = resultAcknowledged(base, sessionView(), true);
    expect(next.screen.kind).toBe("map");
    if (next.screen.kind === "map") {
      expect(next.screen.notice).toMatch(/reset/i);
    }
  });

  it("ordinary answers return to a clean map", () => {
    const next = resultAcknowledged(base, sessionView(), false);
    expect(next.screen.kind).toBe("map");
    if (next.screen.kind === "map") {
      expect(next.screen.notice).toBeUndefined();
    }
  });

  it("a completed session moves on to the post-survey", () => {
    const done = sessionView({ status: "Completed" });
    const next = resultAcknowledged(base, done, false);
    expect(next.screen.kind).toBe("postSurvey");
    expect(next.session?.status).toBe("Completed");
  });

  it("a capture that finishes the session also reaches the post-survey", () => {
    const next = captureResolved(base, sessionView({ status: "Completed" }));
    expect(next.screen.kind).toBe("postSurvey");
  });

  it("a mid-session capture lands on the map with a notice", () => {
    const next = captureResolved(base, sessionView());
    expect(next.screen.kind).toBe("map");
    if (next.screen.kind === "map") {
      expect(next.screen.notice).toMatch(/cloned page/i);
    }
  });
});

describe("map helpers", () => {
  it("adjacency is the eight surrounding cells only", () => {
    expect(isAdjacent([4, 4], [5, 5])).toBe(true);
    expect(isAdjacent([4, 4], [4, 3])).toBe(true);
    expect(isAdjacent([4, 4], [4, 4])).toBe(false);
    expect(isAdjacent([4, 4], [6, 4])).toBe(false);
  });

  it("finds missions by cell and by the player's feet", () => {
    const view = sessionView({ player_position: [2, 3] });
    expect(missionAt(view, [2, 3])?.kind).toBe("Smish");
    expect(missionAt(view, [0, 0])).toBeUndefined();
    expect(standingMission(view)?.kind).toBe("Smish");
  });

  it("a completed mission is not enterable", () => {
    const view = sessionView({ player_position: [2, 3] });
    const done = {
      ...view,
      missions: view.missions.map((m) =>
        m.kind === "Smish" ? { ...m, completed: true } : m,
      ),
    };
    expect(standingMission(done)).toBeUndefined();
    expect(missionsRemaining(done)).toBe(2);
  });
});
