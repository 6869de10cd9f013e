/** Hand-rolled server views for unit tests; shapes mirror docs/api.md. */

import type {
  AnswerResult,
  ChallengeView,
  MissionView,
  Participant,
  SessionView,
  StartResponse,
} from "../src/types.js";

export function participant(group: "Experimental" | "Control"): Participant {
  return {
    participant_id: "pt-11112222",
    display_name: "Ada",
    group,
    token: "tok-secret",
  };
}

export function dialogueChallenge(): ChallengeView {
  return {
    type: "dialogue",
    script_ref: "scr-1",
    question_index: 0,
    turns: [
      { speaker: "Dana", text: "I got a weird text about a parcel." },
      { speaker: "You", text: "What does it ask for?" },
    ],
    question: "What should Dana do?",
    options: ["Pay the fee", "Check the courier's real site", "Reply STOP"],
    deadline_seconds: 90,
  };
}

export function smsJudgment(): ChallengeView {
  return {
    type: "judgment",
    artifact: { type: "Sms", sender: "+15550100", body: "Your parcel is held." },
    deadline_seconds: 90,
  };
}

export function webJudgment(): ChallengeView {
  return {
    type: "judgment",
    artifact: {
      type: "WebPage",
      cloned_site_ref: "cl-nordbank-s1",
      displayed_url: "https://nordbank-login.example/",
      clone_path: "/clone/cl-nordbank-s1/",
    },
    deadline_seconds: 90,
  };
}

export function mission(
  id: string,
  kind: MissionView["kind"],
  position: [number, number],
  completed = false,
): MissionView {
  return {
    mission_id: id,
    kind,
    position,
    reward_points: 20,
    badge_id: `bdg-${kind.toLowerCase()}`,
    attempt: 0,
    next_ordinal: completed ? 3 : 0,
    challenge_count: 3,
    completed,
    challenges: [dialogueChallenge(), smsJudgment(), webJudgment()],
  };
}

export function sessionView(over: Partial<SessionView> = {}): SessionView {
  return {
    session_id: "sess-abc",
    player_id: "pt-11112222",
    difficulty: {
      label: "Easy",
      challenge_count: 3,
      timer_seconds: 90,
      lure_subtlety: 1,
    },
    map_size: [10, 10],
    player_position: [0, 0],
    score: 0,
    badges: [],
    status: "Active",
    expired: false,
    missions: [
      mission("sess-abc-m1", "Smish", [2, 3]),
      mission("sess-abc-m2", "Spear", [5, 5]),
      mission("sess-abc-m3", "Clone", [8, 1]),
    ],
    active: null,
    hazard_health: 100,
    event_count: 0,
    ...over,
  };
}

export function startResponse(challenge: ChallengeView): StartResponse {
  return {
    challenge_ref: "sess-abc-m1#0",
    challenge,
    deadline_seconds: challenge.deadline_seconds ?? null,
  };
}

export function answerResult(over: Partial<AnswerResult> = {}): AnswerResult {
  return {
    outcome: "Correct",
    correct: true,
    points_delta: 10,
    score: 10,
    hazard_health: 80,
    mission_completed: false,
    badge_id: null,
    session_completed: false,
    status: "Active",
    ...over,
  };
}
