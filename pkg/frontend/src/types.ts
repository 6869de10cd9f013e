/**
 * Mirrors of the server's JSON views (docs/api.md). These are read-only
 * shapes: the client renders them and never derives game outcomes from them.
 */

export type Group = "Experimental" | "Control";

export interface Participant {
  participant_id: string;
  display_name: string;
  group: Group;
  token: string;
}

export interface DifficultyView {
  label: string;
  challenge_count: number;
  timer_seconds: number;
  lure_subtlety: number;
}

export type MissionKind = "Clone" | "Smish" | "Spear";

export interface EmailArtifact {
  type: "Email";
  from: string;
  subject: string;
  body: string;
}

export interface SmsArtifact {
  type: "Sms";
  sender: string;
  body: string;
}

export interface WebPageArtifact {
  type: "WebPage";
  cloned_site_ref: string;
  displayed_url: string;
  clone_path: string;
}

export type ArtifactView = EmailArtifact | SmsArtifact | WebPageArtifact;

export interface DialogueTurn {
  speaker: string;
  text: string;
}

export interface DialogueChallengeView {
  type: "dialogue";
  script_ref: string;
  question_index: number;
  turns: DialogueTurn[];
  question: string;
  options: string[];
  deadline_seconds?: number;
}

export interface JudgmentChallengeView {
  type: "judgment";
  artifact: ArtifactView;
  deadline_seconds?: number;
}

export type ChallengeView = DialogueChallengeView | JudgmentChallengeView;

export interface MissionView {
  mission_id: string;
  kind: MissionKind;
  position: [number, number];
  reward_points: number;
  badge_id: string;
  attempt: number;
  next_ordinal: number;
  challenge_count: number;
  completed: boolean;
  challenges: ChallengeView[];
}

export interface ActiveView {
  mission_id: string;
  challenge_index: number;
  challenge_ref: string;
  elapsed_seconds: number;
  deadline_seconds: number | null;
  remaining_seconds: number | null;
  hazard_health: number;
}

export type SessionStatus = "Active" | "Completed" | "Failed";

export interface SessionView {
  session_id: string;
  player_id: string;
  difficulty: DifficultyView;
  map_size: [number, number];
  player_position: [number, number];
  score: number;
  badges: string[];
  status: SessionStatus;
  expired: boolean;
  missions: MissionView[];
  active: ActiveView | null;
  hazard_health: number;
  event_count: number;
}

export interface StartResponse {
  challenge_ref: string;
  challenge: ChallengeView;
  deadline_seconds: number | null;
}

export type Outcome = "Correct" | "Incorrect" | "TimedOut";

export interface AnswerResult {
  outcome: Outcome;
  correct: boolean | null;
  points_delta: number;
  score: number;
  hazard_health: number;
  mission_completed: boolean;
  badge_id: string | null;
  session_completed: boolean;
  status: SessionStatus;
  ground_truth?: boolean;
  cue_notes?: string[];
}

export type AnswerPayload =
  | { type: "mcq"; option_index: number }
  | { type: "judgment"; is_phishing: boolean };

export interface LeaderboardEntry {
  player_id: string;
  display_name: string;
  total_score: number;
  badges_count: number;
  completed_at: number;
}

export interface PreSurveyAnswers {
  q1_familiarity: number;
  q2_victim: "Yes" | "No" | "Maybe";
  q3_clicked: "Yes" | "No" | "Maybe";
  q4_confidence: number;
}

export interface PostSurveyAnswers {
  q1_understanding: number;
  q2_recommend: number;
  q3_confidence: number;
  q4_helpful: string;
  q5_unclear: string;
  q6_changes: string;
  q7_suggestions: string;
}

export interface QuizOutcome {
  stored?: boolean;
  score_percent: number;
}
