"""Total parser for model completions.

Keys off ``player:`` / ``NPC:`` / ``Question:`` / ``Option N (...)`` prefixes
only; ``//`` comment lines are skipped, speaker tags are case-insensitive, and
lines that match nothing are continuations of whatever came before them.
Nothing here raises on bad input: a completion that cannot be shaped into a
valid script comes back Rejected with the reasons in its review field.
"""

from __future__ import annotations

import re

from phishrange.engine import PhishingKind
from phishrange.dialoggen.script import (
    PENDING,
    DialogueScript,
    Mcq,
    McqOption,
    Provenance,
    Turn,
    content_id,
    screen,
)

_SPEAKER_RE = re.compile(r"^\s*(player|npc)\s*:\s?(.*)$", re.IGNORECASE)
_QUESTION_RE = re.compile(r"^\s*question\s*:\s?(.*)$", re.IGNORECASE)
_OPTION_RE = re.compile(
    r"^\s*option\s*\d+\s*(?:\((correct|incorrect)\))?\s*:\s?(.*)$", re.IGNORECASE
)

_CANON_SPEAKER = {"player": "player", "npc": "NPC"}


def parse_completion(
    text: str,
    *,
    kind: PhishingKind = PhishingKind.SPEAR,
    provenance: Provenance = Provenance.GENERATED,
) -> DialogueScript:
    """Shape arbitrary completion text into a screened DialogueScript."""
    turns: list[list[str]] = []  # [speaker, text...] , joined later
    questions: list[dict] = []  # {"stem": [...], "options": [[marker, text...]]}

    for raw_line in text.splitlines():
        line = raw_line.rstrip()
        stripped = line.strip()
        if not stripped or stripped.startswith("//"):
            continue

        current_q = questions[-1] if questions else None

        if m := _QUESTION_RE.match(line):
            questions.append({"stem": [m[1].strip()], "options": []})
            continue
        if current_q is not None and (m := _OPTION_RE.match(line)):
            marker = (m[1] or "incorrect").lower()
            current_q["options"].append([marker, m[2].strip()])
            continue
        if m := _SPEAKER_RE.match(line):
            turns.append([_CANON_SPEAKER[m[1].lower()], m[2].strip()])
            continue

        # Continuation: attach to the innermost open element.
        if current_q is not None:
            if current_q["options"]:
                current_q["options"][-1].append(stripped)
            else:
                current_q["stem"].append(stripped)
        elif turns:
            turns[-1].append(stripped)
        # Preamble before any structure ("Sure, here's a dialogue:") is dropped.

    built_turns = tuple(
        Turn(speaker=t[0], text="\n".join(part for part in t[1:] if part)) for t in turns
    )
    built_questions = tuple(
        Mcq(
            stem="\n".join(part for part in q["stem"] if part),
            options=tuple(
                McqOption(text="\n".join(part for part in o[1:] if part),
                          is_correct=o[0] == "correct")
                for o in q["options"]
            ),
        )
        for q in questions
    )

    script = DialogueScript(
        script_id=content_id(kind, built_turns, built_questions),
        kind=kind,
        turns=built_turns,
        questions=built_questions,
        provenance=provenance,
        review=PENDING,  # screen() settles the real state
    )
    return screen(script)
