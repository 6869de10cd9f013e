/**
 * The client state machine. Pure data and transitions; no DOM, no fetch.
 *
 * Screens gate the study flow: everyone registers and takes the pre-survey,
 * the Control group goes straight to the quiz, the Experimental group plays
 * a full session and takes the post-survey first. Every transition is fed by
 * a server response; nothing here computes a game outcome.
 */
export const initialState = {
    participant: null,
    session: null,
    screen: { kind: "welcome" },
};
export function registered(state, participant) {
    return { ...state, participant, screen: { kind: "preSurvey" } };
}
export function preSurveyDone(state) {
    if (!state.participant)
        throw new Error("pre-survey before registration");
    const next = state.participant.group === "Control" ? { kind: "quiz" } : { kind: "lobby" };
    return { ...state, screen: next };
}
export function sessionCreated(state, view) {
    return { ...state, session: view, screen: { kind: "map" } };
}
/** Refresh the session snapshot without leaving the current screen. */
export function sessionRefreshed(state, view) {
    return { ...state, session: view };
}
export function challengeStarted(state, start) {
    return { ...state, screen: { kind: "challenge", start } };
}
export function answered(state, result, challenge) {
    return { ...state, screen: { kind: "result", result, challenge } };
}
/**
 * Leaving the result screen with a fresh session view. Completion moves the
 * player on to the post-survey; a timeout returns to the map with the retry
 * notice (the server already re-dealt the mission); anything else is simply
 * the next stop on the map.
 */
export function resultAcknowledged(state, view, wasTimeout) {
    if (view.status === "Completed") {
        return { ...state, session: view, screen: { kind: "postSurvey" } };
    }
    const notice = wasTimeout
        ? "Too slow: the hazard got you. The mission reset with a fresh challenge order."
        : undefined;
    return { ...state, session: view, screen: { kind: "map", notice } };
}
/**
 * A clone-form submission was detected (the capture consumed the active
 * judgment server-side). The refreshed view decides where we land, same
 * rules as an ordinary answer.
 */
export function captureResolved(state, view) {
    if (view.status === "Completed") {
        return { ...state, session: view, screen: { kind: "postSurvey" } };
    }
    return {
        ...state,
        session: view,
        screen: { kind: "map", notice: "You submitted the form on a cloned page." },
    };
}
export function postSurveyDone(state) {
    return { ...state, screen: { kind: "quiz" } };
}
export function quizDone(state, scorePercent) {
    return { ...state, screen: { kind: "done", scorePercent } };
}
// --- map helpers -------------------------------------------------------------
/** Chebyshev adjacency: the eight surrounding cells are one step away. */
export function isAdjacent(a, b) {
    const dx = Math.abs(a[0] - b[0]);
    const dy = Math.abs(a[1] - b[1]);
    return Math.max(dx, dy) === 1;
}
export function missionAt(view, cell) {
    return view.missions.find((m) => m.position[0] === cell[0] && m.position[1] === cell[1]);
}
export function standingMission(view) {
    const m = missionAt(view, view.player_position);
    return m && !m.completed ? m : undefined;
}
export function missionsRemaining(view) {
    return view.missions.filter((m) => !m.completed).length;
}
