"""Domain types for the game core.

All state types are frozen dataclasses; operations in
:mod:`phishrange.engine.core` produce new values via ``dataclasses.replace``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Union
from urllib.parse import urlparse


class PhishingKind(str, Enum):
    CLONE = "Clone"
    SMISH = "Smish"
    SPEAR = "Spear"


class SessionStatus(str, Enum):
    ACTIVE = "Active"
    COMPLETED = "Completed"
    FAILED = "Failed"


class Outcome(str, Enum):
    CORRECT = "Correct"
    INCORRECT = "Incorrect"
    TIMED_OUT = "TimedOut"


class EventKind(str, Enum):
    MOVED = "Moved"
    CHALLENGE_STARTED = "ChallengeStarted"
    ANSWERED = "Answered"
    TIMED_OUT = "TimedOut"
    MISSION_COMPLETED = "MissionCompleted"
    BADGE_AWARDED = "BadgeAwarded"
    SESSION_COMPLETED = "SessionCompleted"
    MISSION_FAILED = "MissionFailed"


@dataclass(frozen=True)
class Difficulty:
    label: str
    challenge_count: int
    timer_seconds: int
    lure_subtlety: int

    def __post_init__(self) -> None:
        if self.challenge_count < 1:
            raise ValueError("challenge_count must be >= 1")
        if self.timer_seconds < 1:
            raise ValueError("timer_seconds must be positive")
        if self.lure_subtlety not in (1, 2, 3):
            raise ValueError("lure_subtlety must be 1..3")


DEFAULT_DIFFICULTIES: Mapping[str, Difficulty] = {
    "Easy": Difficulty("Easy", challenge_count=3, timer_seconds=90, lure_subtlety=1),
    "Medium": Difficulty("Medium", challenge_count=4, timer_seconds=60, lure_subtlety=2),
    "Hard": Difficulty("Hard", challenge_count=5, timer_seconds=40, lure_subtlety=3),
}

# Scoring is deliberately config, not physics: monotone with difficulty,
# mission reward is twice the per-answer award. Unknown custom labels fall
# back to the Easy row.
_POINTS_BY_LABEL = {"Easy": 10, "Medium": 15, "Hard": 20}
_REWARD_BY_LABEL = {"Easy": 20, "Medium": 30, "Hard": 40}


def points_for(difficulty: Difficulty) -> int:
    """Points for one correct answer at this difficulty."""
    return _POINTS_BY_LABEL.get(difficulty.label, 10)


def reward_for(difficulty: Difficulty) -> int:
    """Bonus points for completing a whole mission."""
    return _REWARD_BY_LABEL.get(difficulty.label, 20)


# --- artifacts --------------------------------------------------------------

@dataclass(frozen=True)
class Email:
    from_addr: str
    subject: str
    body: str

    def __post_init__(self) -> None:
        if not self.subject or not self.body:
            raise ValueError("email subject and body must be non-empty")


@dataclass(frozen=True)
class Sms:
    sender: str
    body: str

    def __post_init__(self) -> None:
        if not self.body:
            raise ValueError("sms body must be non-empty")


@dataclass(frozen=True)
class WebPage:
    cloned_site_ref: str
    displayed_url: str

    def __post_init__(self) -> None:
        parts = urlparse(self.displayed_url)
        if not parts.scheme or not parts.netloc:
            raise ValueError(f"displayed_url is not a valid URL: {self.displayed_url!r}")


Artifact = Union[Email, Sms, WebPage]


# --- challenges -------------------------------------------------------------

@dataclass(frozen=True)
class DialogueMcq:
    script_ref: str
    question_index: int


@dataclass(frozen=True)
class LegitimacyJudgment:
    artifact: Artifact
    ground_truth: bool  # true = phishing
    cue_notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class TimedHazard:
    inner: "Challenge"
    deadline_seconds: float

    def __post_init__(self) -> None:
        if isinstance(self.inner, TimedHazard):
            raise ValueError("TimedHazard must not directly nest another TimedHazard")
        if self.deadline_seconds <= 0:
            raise ValueError("deadline_seconds must be positive")


Challenge = Union[DialogueMcq, LegitimacyJudgment, TimedHazard]


def unwrap(challenge: Challenge) -> tuple[Challenge, float | None]:
    """Strip an optional hazard wrapper, returning (inner, deadline or None)."""
    if isinstance(challenge, TimedHazard):
        return challenge.inner, challenge.deadline_seconds
    return challenge, None


@dataclass(frozen=True)
class McqKey:
    """Grading key for one dialogue question: shape + the single correct index."""

    option_count: int
    correct_index: int


# --- answers ----------------------------------------------------------------

@dataclass(frozen=True)
class McqAnswer:
    option_index: int


@dataclass(frozen=True)
class JudgmentAnswer:
    is_phishing: bool


AnswerPayload = Union[McqAnswer, JudgmentAnswer]


# --- session state ----------------------------------------------------------

@dataclass(frozen=True)
class SessionEvent:
    logical_time: int  # monotonic ms since session start
    kind: EventKind
    payload: Mapping[str, object]


@dataclass(frozen=True)
class ActiveChallenge:
    mission_id: str
    challenge_index: int
    started_at: int


@dataclass(frozen=True)
class Mission:
    mission_id: str
    kind: PhishingKind
    position: tuple[int, int]
    challenges: tuple[Challenge, ...]
    reward_points: int
    badge_id: str | None
    # attempt-local progress
    attempt: int = 0
    order: tuple[int, ...] = ()
    next_ordinal: int = 0
    completed: bool = False

    def __post_init__(self) -> None:
        if not self.challenges:
            raise ValueError("mission needs at least one challenge")
        if self.reward_points <= 0:
            raise ValueError("reward_points must be positive")

    @property
    def current_challenge_index(self) -> int | None:
        if self.completed or self.next_ordinal >= len(self.order):
            return None
        return self.order[self.next_ordinal]


@dataclass(frozen=True)
class Session:
    session_id: str
    player_id: str
    difficulty: Difficulty
    seed: int
    map_size: tuple[int, int]
    player_position: tuple[int, int]
    missions: tuple[Mission, ...]
    active_challenge: ActiveChallenge | None
    hazard_health: float
    score: int
    badges: frozenset[str]
    event_log: tuple[SessionEvent, ...]
    status: SessionStatus
    # Grading keys for every DialogueMcq script this session references.
    # Derived from the content bundle at creation; not serialized.
    mcq_keys: Mapping[str, tuple[McqKey, ...]] = field(default_factory=dict)

    def mission(self, mission_id: str) -> Mission | None:
        for m in self.missions:
            if m.mission_id == mission_id:
                return m
        return None

    def is_enterable(self, mission: Mission) -> bool:
        return self.player_position == mission.position
