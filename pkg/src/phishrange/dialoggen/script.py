"""Dialogue script types, validation, and the canonical text form.

Constructors here are deliberately loose: a script that fails its checks must
still be representable so it can sit in the store as Rejected with its reasons
attached. The hard invariants (two-plus turns, exactly one correct option per
question) are enforced by validate_script and gate entry into content bundles.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace
from enum import Enum

from phishrange.engine import PhishingKind


class Provenance(str, Enum):
    GENERATED = "Generated"
    CANNED = "Canned"


class ReviewState(str, Enum):
    PENDING = "Pending"
    APPROVED = "Approved"
    REJECTED = "Rejected"


@dataclass(frozen=True)
class Review:
    state: ReviewState
    reason: str | None = None

    def __post_init__(self):
        if self.state is ReviewState.REJECTED and not self.reason:
            raise ValueError("a rejection must say why")
        if self.state is not ReviewState.REJECTED and self.reason is not None:
            raise ValueError("only rejections carry a reason")


PENDING = Review(ReviewState.PENDING)
APPROVED = Review(ReviewState.APPROVED)


def rejected(reason: str) -> Review:
    return Review(ReviewState.REJECTED, reason)


@dataclass(frozen=True)
class ReviewEvent:
    reviewer_id: str
    decided_at: float
    decision: ReviewState
    reason: str | None = None


@dataclass(frozen=True)
class Turn:
    speaker: str  # "player" or "NPC"
    text: str


@dataclass(frozen=True)
class McqOption:
    text: str
    is_correct: bool


@dataclass(frozen=True)
class Mcq:
    stem: str
    options: tuple[McqOption, ...]

    @property
    def correct_index(self) -> int:
        """Index of the single correct option; meaningful on valid questions."""
        for i, option in enumerate(self.options):
            if option.is_correct:
                return i
        raise ValueError(f"question {self.stem!r} has no correct option")


@dataclass(frozen=True)
class DialogueScript:
    script_id: str
    kind: PhishingKind
    turns: tuple[Turn, ...]
    questions: tuple[Mcq, ...]
    provenance: Provenance
    review: Review
    audit: tuple[ReviewEvent, ...] = field(default=())


@dataclass(frozen=True)
class ValidationItem:
    check: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    items: tuple[ValidationItem, ...]

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    @property
    def failures(self) -> tuple[str, ...]:
        seen = []
        for item in self.items:
            if not item.passed and item.detail not in seen:
                seen.append(item.detail)
        return tuple(seen)


_SPEAKERS = ("player", "NPC")


def validate_script(script: DialogueScript) -> ValidationReport:
    """Mechanical checks only; approving content is still a human decision."""
    items: list[ValidationItem] = []

    if len(script.turns) == 0:
        items.append(ValidationItem("turn-count", False, "no turns found"))
    elif len(script.turns) == 1:
        items.append(ValidationItem("turn-count", False, "only one turn found"))
    else:
        items.append(ValidationItem("turn-count", True))

    bad_speakers = sorted({t.speaker for t in script.turns if t.speaker not in _SPEAKERS})
    items.append(
        ValidationItem("speaker-tags", not bad_speakers,
                       f"illegal speaker tags: {', '.join(bad_speakers)}" if bad_speakers else "")
    )

    empty_turns = any(not t.text.strip() for t in script.turns)
    items.append(ValidationItem("turn-texts", not empty_turns,
                                "empty turn text" if empty_turns else ""))

    for q in script.questions:
        correct_count = sum(1 for o in q.options if o.is_correct)
        if not q.stem.strip():
            items.append(ValidationItem("question-stems", False, "empty question stem"))
        if len(q.options) < 2:
            items.append(ValidationItem("option-counts", False, "fewer than 2 options"))
        if correct_count == 0:
            items.append(ValidationItem("single-correct", False, "no correct option"))
        elif correct_count > 1:
            items.append(ValidationItem("single-correct", False, "multiple correct options"))
        if any(not o.text.strip() for o in q.options):
            items.append(ValidationItem("option-texts", False, "empty option text"))

    return ValidationReport(tuple(items))


def screen(script: DialogueScript) -> DialogueScript:
    """Set the initial review state from the mechanical checks.

    Passing scripts become Pending (a human still has to approve them);
    failing ones are Rejected with the joined failure reasons.
    """
    report = validate_script(script)
    if report.passed:
        return replace(script, review=PENDING)
    return replace(script, review=rejected("; ".join(report.failures)))


def script_to_text(script: DialogueScript) -> str:
    """Canonical textual form: dialogue block, then each question block."""
    lines: list[str] = []
    for turn in script.turns:
        lines.append(f"{turn.speaker}: {turn.text}")
        lines.append("")
    for q in script.questions:
        lines.append(f"Question: {q.stem}")
        for i, option in enumerate(q.options, start=1):
            marker = "correct" if option.is_correct else "incorrect"
            lines.append(f"Option {i} ({marker}): {option.text}")
        lines.append("")
    while lines and lines[-1] == "":
        lines.pop()
    return "\n".join(lines) + "\n"


def content_id(kind: PhishingKind, turns, questions) -> str:
    """Script id derived from canonical content, so the same dialogue parsed
    from differently-formatted text ends up with the same id."""
    probe = DialogueScript(
        script_id="", kind=kind, turns=tuple(turns), questions=tuple(questions),
        provenance=Provenance.GENERATED, review=PENDING,
    )
    digest = hashlib.sha256(
        f"{kind.value}\n{script_to_text(probe)}".encode("utf-8")
    ).hexdigest()
    return f"scr-{digest[:12]}"
