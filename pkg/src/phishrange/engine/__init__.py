"""Deterministic, event-sourced game-core state machine.

Everything in here is pure: operations take a session value plus
caller-supplied monotonic timestamps and return a new session value. The
engine never reads a clock, so the service stays time-authoritative and
tests stay exact.
"""

from phishrange.engine.core import (
    DEFAULT_MAP_SIZE,
    create_session,
    hazard_health_at,
    move_player,
    replay,
    start_challenge,
    submit_answer,
)
from phishrange.engine.serialize import event_from_dict, event_to_dict, session_to_dict
from phishrange.engine.types import (
    DEFAULT_DIFFICULTIES,
    ActiveChallenge,
    AnswerPayload,
    Artifact,
    Challenge,
    DialogueMcq,
    Difficulty,
    Email,
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
    Sms,
    TimedHazard,
    WebPage,
    points_for,
    reward_for,
    unwrap,
)

__all__ = [
    "DEFAULT_DIFFICULTIES",
    "DEFAULT_MAP_SIZE",
    "ActiveChallenge",
    "AnswerPayload",
    "Artifact",
    "Challenge",
    "DialogueMcq",
    "Difficulty",
    "Email",
    "EventKind",
    "JudgmentAnswer",
    "LegitimacyJudgment",
    "McqAnswer",
    "McqKey",
    "Mission",
    "Outcome",
    "PhishingKind",
    "Session",
    "SessionEvent",
    "SessionStatus",
    "Sms",
    "TimedHazard",
    "WebPage",
    "create_session",
    "event_from_dict",
    "event_to_dict",
    "hazard_health_at",
    "move_player",
    "points_for",
    "replay",
    "reward_for",
    "session_to_dict",
    "start_challenge",
    "submit_answer",
    "unwrap",
]
