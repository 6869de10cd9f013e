"""Session operations and the event fold.

Every mutating operation validates its preconditions against the current
session, builds one or more events, and folds them through ``_apply``. Replay
is the same fold over a stored log, so live state and replayed state agree by
construction.
"""

from __future__ import annotations

import hashlib
from dataclasses import replace
from random import Random
from typing import Iterable, Protocol, Sequence

from phishrange.engine.types import (
    ActiveChallenge,
    AnswerPayload,
    Challenge,
    DialogueMcq,
    Difficulty,
    EventKind,
    JudgmentAnswer,
    LegitimacyJudgment,
    McqAnswer,
    McqKey,
    Mission,
    Outcome,
    PhishingKind,
    Session,
    SessionEvent,
    SessionStatus,
    TimedHazard,
    points_for,
    reward_for,
    unwrap,
)
from phishrange.errors import (
    ChallengeAlreadyActive,
    CorruptLog,
    InsufficientContent,
    MissionAlreadyComplete,
    NoActiveChallenge,
    NotAtMission,
    OutOfBounds,
    PayloadShapeMismatch,
    SessionNotActive,
)

DEFAULT_MAP_SIZE = (10, 10)
START_POSITION = (0, 0)


class ContentSource(Protocol):
    """What the engine needs from a content bundle."""

    def challenges_for(self, kind: PhishingKind) -> Sequence[Challenge]: ...

    def mcq_keys_for(self, script_ref: str) -> tuple[McqKey, ...]: ...


# --- construction -----------------------------------------------------------

def _session_id(player_id: str, difficulty: Difficulty, seed: int) -> str:
    digest = hashlib.sha256(f"{player_id}|{difficulty.label}|{seed}".encode()).hexdigest()
    return f"sess-{digest[:16]}"


def _challenge_order(seed: int, mission_id: str, attempt: int, n: int) -> tuple[int, ...]:
    rng = Random(f"{seed}:{mission_id}:order:{attempt}")
    order = list(range(n))
    rng.shuffle(order)
    return tuple(order)


def create_session(
    player_id: str,
    difficulty: Difficulty,
    seed: int,
    content: ContentSource,
    map_size: tuple[int, int] = DEFAULT_MAP_SIZE,
) -> Session:
    """Build an Active session: one mission per phishing kind, player at (0,0).

    Mission positions and challenge selection are functions of ``seed`` (and
    the bundle's deterministic ordering) only, so identical inputs rebuild an
    identical session.
    """
    width, height = map_size
    session_id = _session_id(player_id, difficulty, seed)

    cells = [(x, y) for y in range(height) for x in range(width) if (x, y) != START_POSITION]
    kinds = list(PhishingKind)
    if len(cells) < len(kinds):
        raise ValueError(f"map {map_size} too small for {len(kinds)} missions")
    positions = Random(f"{seed}:positions").sample(cells, k=len(kinds))

    missions = []
    mcq_keys: dict[str, tuple[McqKey, ...]] = {}
    for kind, position in zip(kinds, positions):
        pool = content.challenges_for(kind)
        if len(pool) < difficulty.challenge_count:
            raise InsufficientContent(
                f"{kind.value}: bundle has {len(pool)} challenges, "
                f"difficulty {difficulty.label!r} needs {difficulty.challenge_count}"
            )
        picks = Random(f"{seed}:challenges:{kind.value}").sample(
            range(len(pool)), k=difficulty.challenge_count
        )
        challenges = tuple(_with_timer(pool[i], difficulty.timer_seconds) for i in picks)
        mission_id = f"{session_id}-{kind.value.lower()}"
        for challenge in challenges:
            inner, _ = unwrap(challenge)
            if isinstance(inner, DialogueMcq) and inner.script_ref not in mcq_keys:
                mcq_keys[inner.script_ref] = content.mcq_keys_for(inner.script_ref)
        missions.append(
            Mission(
                mission_id=mission_id,
                kind=kind,
                position=position,
                challenges=challenges,
                reward_points=reward_for(difficulty),
                badge_id=f"badge-{kind.value.lower()}",
                attempt=0,
                order=_challenge_order(seed, mission_id, 0, len(challenges)),
                next_ordinal=0,
                completed=False,
            )
        )

    return Session(
        session_id=session_id,
        player_id=player_id,
        difficulty=difficulty,
        seed=seed,
        map_size=map_size,
        player_position=START_POSITION,
        missions=tuple(missions),
        active_challenge=None,
        hazard_health=100.0,
        score=0,
        badges=frozenset(),
        event_log=(),
        status=SessionStatus.ACTIVE,
        mcq_keys=mcq_keys,
    )


def _with_timer(challenge: Challenge, timer_seconds: int) -> Challenge:
    # Every challenge runs under the difficulty timer; bundles that wrapped
    # a challenge themselves keep their own deadline (never double-wrapped).
    if isinstance(challenge, TimedHazard):
        return challenge
    return TimedHazard(inner=challenge, deadline_seconds=float(timer_seconds))


# --- pure helpers -----------------------------------------------------------

def hazard_health_at(deadline_seconds: float, elapsed_seconds: float) -> float:
    """Linear decay from 100 to 0 over the deadline; 0 for anything later."""
    if deadline_seconds <= 0:
        raise ValueError("deadline_seconds must be positive")
    if elapsed_seconds < 0:
        raise ValueError("elapsed_seconds must be non-negative")
    return 100.0 * max(0.0, 1.0 - elapsed_seconds / deadline_seconds)


def _last_time(session: Session) -> int:
    return session.event_log[-1].logical_time if session.event_log else 0


def _stamp(session: Session, now: int | None) -> int:
    # Logical times never run backwards, whatever the caller hands us.
    last = _last_time(session)
    if now is None:
        return last
    return max(int(now), last)


def _require_active(session: Session) -> None:
    if session.status is not SessionStatus.ACTIVE:
        raise SessionNotActive(f"session is {session.status.value}")


# --- operations -------------------------------------------------------------

def move_player(session: Session, to: tuple[int, int], now: int | None = None) -> Session:
    _require_active(session)
    x, y = to
    width, height = session.map_size
    if not (0 <= x < width and 0 <= y < height):
        raise OutOfBounds(f"{to} outside 0..{width - 1} x 0..{height - 1}")
    event = SessionEvent(
        logical_time=_stamp(session, now),
        kind=EventKind.MOVED,
        payload={"to": [x, y]},
    )
    return _apply(session, event)


def start_challenge(session: Session, mission_id: str, now: int) -> Session:
    _require_active(session)
    if session.active_challenge is not None:
        raise ChallengeAlreadyActive(session.active_challenge.mission_id)
    mission = session.mission(mission_id)
    if mission is None or session.player_position != mission.position:
        raise NotAtMission(mission_id)
    index = mission.current_challenge_index
    if mission.completed or index is None:
        raise MissionAlreadyComplete(mission_id)
    _, deadline = unwrap(mission.challenges[index])
    event = SessionEvent(
        logical_time=_stamp(session, now),
        kind=EventKind.CHALLENGE_STARTED,
        payload={
            "mission_id": mission_id,
            "challenge_index": index,
            "ordinal": mission.next_ordinal,
            "attempt": mission.attempt,
            "deadline_seconds": deadline,
        },
    )
    return _apply(session, event)


def submit_answer(
    session: Session, answer: AnswerPayload, now: int
) -> tuple[Session, Outcome]:
    _require_active(session)
    active = session.active_challenge
    if active is None:
        raise NoActiveChallenge()
    mission = session.mission(active.mission_id)
    assert mission is not None  # active always references a session mission
    challenge = mission.challenges[active.challenge_index]
    inner, deadline = unwrap(challenge)

    stamp = _stamp(session, now)
    elapsed = (stamp - active.started_at) / 1000.0

    # Timer dominance: the deadline is checked before the payload is even
    # looked at, so lateness can never be converted into a scored answer.
    if deadline is not None and elapsed >= deadline:
        events = [
            SessionEvent(stamp, EventKind.TIMED_OUT, {
                "mission_id": mission.mission_id,
                "challenge_index": active.challenge_index,
                "elapsed_seconds": elapsed,
            }),
            SessionEvent(stamp, EventKind.MISSION_FAILED, {
                "mission_id": mission.mission_id,
                "attempt": mission.attempt + 1,
            }),
        ]
        return _fold(session, events), Outcome.TIMED_OUT

    correct, answer_record = _grade(session, inner, answer)
    points = points_for(session.difficulty) if correct else 0
    events = [
        SessionEvent(stamp, EventKind.ANSWERED, {
            "mission_id": mission.mission_id,
            "challenge_index": active.challenge_index,
            "ordinal": mission.next_ordinal,
            "answer": answer_record,
            "correct": correct,
            "points_delta": points,
        }),
    ]

    last_of_mission = mission.next_ordinal + 1 >= len(mission.order)
    if last_of_mission:
        events.append(SessionEvent(stamp, EventKind.MISSION_COMPLETED, {
            "mission_id": mission.mission_id,
            "points_delta": mission.reward_points,
        }))
        if mission.badge_id:
            events.append(SessionEvent(stamp, EventKind.BADGE_AWARDED, {
                "mission_id": mission.mission_id,
                "badge_id": mission.badge_id,
            }))
        others_done = all(
            m.completed for m in session.missions if m.mission_id != mission.mission_id
        )
        if others_done:
            total = session.score + points + mission.reward_points
            events.append(SessionEvent(stamp, EventKind.SESSION_COMPLETED, {
                "total_score": total,
            }))

    return _fold(session, events), Outcome.CORRECT if correct else Outcome.INCORRECT


def _grade(
    session: Session, inner: Challenge, answer: AnswerPayload
) -> tuple[bool, dict[str, object]]:
    if isinstance(inner, DialogueMcq):
        if not isinstance(answer, McqAnswer):
            raise PayloadShapeMismatch("dialogue question takes an option index")
        keys = session.mcq_keys.get(inner.script_ref)
        if keys is None or inner.question_index >= len(keys):
            raise PayloadShapeMismatch(f"no grading key for script {inner.script_ref!r}")
        key = keys[inner.question_index]
        if not 0 <= answer.option_index < key.option_count:
            raise PayloadShapeMismatch(
                f"option_index {answer.option_index} outside 0..{key.option_count - 1}"
            )
        return answer.option_index == key.correct_index, {"option_index": answer.option_index}
    if isinstance(inner, LegitimacyJudgment):
        if not isinstance(answer, JudgmentAnswer):
            raise PayloadShapeMismatch("legitimacy judgment takes a boolean verdict")
        return answer.is_phishing == inner.ground_truth, {"is_phishing": answer.is_phishing}
    raise PayloadShapeMismatch(f"challenge {type(inner).__name__} is not answerable")


# --- the fold ---------------------------------------------------------------

def _fold(session: Session, events: Iterable[SessionEvent]) -> Session:
    for event in events:
        session = _apply(session, event)
    return session


def _replace_mission(session: Session, mission: Mission) -> tuple[Mission, ...]:
    return tuple(
        mission if m.mission_id == mission.mission_id else m for m in session.missions
    )


def _apply(session: Session, event: SessionEvent) -> Session:
    """One fold step; total over events this engine produces."""
    p = event.payload
    log = session.event_log + (event,)
    kind = event.kind

    if kind is EventKind.MOVED:
        to = p["to"]
        return replace(session, player_position=(int(to[0]), int(to[1])), event_log=log)

    if kind is EventKind.CHALLENGE_STARTED:
        active = ActiveChallenge(
            mission_id=str(p["mission_id"]),
            challenge_index=int(p["challenge_index"]),
            started_at=event.logical_time,
        )
        return replace(session, active_challenge=active, hazard_health=100.0, event_log=log)

    if kind is EventKind.ANSWERED:
        mission = session.mission(str(p["mission_id"]))
        assert mission is not None
        mission = replace(mission, next_ordinal=mission.next_ordinal + 1)
        return replace(
            session,
            missions=_replace_mission(session, mission),
            score=session.score + int(p["points_delta"]),
            active_challenge=None,
            event_log=log,
        )

    if kind is EventKind.TIMED_OUT:
        return replace(session, hazard_health=0.0, active_challenge=None, event_log=log)

    if kind is EventKind.MISSION_FAILED:
        mission = session.mission(str(p["mission_id"]))
        assert mission is not None
        attempt = int(p["attempt"])
        mission = replace(
            mission,
            attempt=attempt,
            next_ordinal=0,
            order=_challenge_order(
                session.seed, mission.mission_id, attempt, len(mission.challenges)
            ),
        )
        return replace(session, missions=_replace_mission(session, mission), event_log=log)

    if kind is EventKind.MISSION_COMPLETED:
        mission = session.mission(str(p["mission_id"]))
        assert mission is not None
        mission = replace(mission, completed=True)
        return replace(
            session,
            missions=_replace_mission(session, mission),
            score=session.score + int(p["points_delta"]),
            event_log=log,
        )

    if kind is EventKind.BADGE_AWARDED:
        return replace(session, badges=session.badges | {str(p["badge_id"])}, event_log=log)

    if kind is EventKind.SESSION_COMPLETED:
        return replace(session, status=SessionStatus.COMPLETED, event_log=log)

    raise CorruptLog(f"unknown event kind {event.kind!r}")


def replay(
    events: Sequence[SessionEvent],
    player_id: str,
    difficulty: Difficulty,
    seed: int,
    content: ContentSource,
    map_size: tuple[int, int] = DEFAULT_MAP_SIZE,
) -> Session:
    """Rebuild a session from its creation inputs plus the stored event log."""
    session = create_session(player_id, difficulty, seed, content, map_size)
    last = 0
    for event in events:
        if event.logical_time < last:
            raise CorruptLog(
                f"logical_time went backwards: {event.logical_time} after {last}"
            )
        last = event.logical_time
        session = _apply(session, event)
    return session
