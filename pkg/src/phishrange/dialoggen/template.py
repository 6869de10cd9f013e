"""Prompt template for the dialogue generator.

The default template is the known-good prompt the reference transcripts came
from; treat its wording as frozen. Section bodies are plain text, rendered in
a fixed order with comment-style headings so a human can read the request the
model actually receives.
"""

from __future__ import annotations

from dataclasses import dataclass

from phishrange.engine import PhishingKind

SECTION_NAMES = ("Initialization", "Context", "Roles", "DialogueFormat")

_HEADINGS = {
    "Initialization": "// Initialization",
    "Context": "// Context setting",
    "Roles": "// Roles",
    "DialogueFormat": "// Dialogue format",
}

_KIND_PHRASE = {
    PhishingKind.CLONE: "clone phishing",
    PhishingKind.SMISH: "SMS phishing",
    PhishingKind.SPEAR: "spear phishing",
}


@dataclass(frozen=True)
class PromptTemplate:
    sections: tuple[tuple[str, str], ...]
    kind: PhishingKind

    def __post_init__(self):
        names = tuple(name for name, _ in self.sections)
        if names != SECTION_NAMES:
            raise ValueError(
                f"template sections must be exactly {SECTION_NAMES} in order, got {names}"
            )
        for name, text in self.sections:
            if not text.strip():
                raise ValueError(f"template section {name!r} is empty")


def default_template(kind: PhishingKind) -> PromptTemplate:
    phrase = _KIND_PHRASE[kind]
    return PromptTemplate(
        sections=(
            ("Initialization", "make a simple dialogue between player and NPC."),
            (
                "Context",
                f"It is a serious game about {phrase} to increase the player skill.",
            ),
            ("Roles", "The player is the cybersecurity expert and the NPC is the victim."),
            ("DialogueFormat", "player:\nNPC:\nplayer:\nNPC:\nand so on"),
        ),
        kind=kind,
    )


def render_prompt(
    kind: PhishingKind,
    template: PromptTemplate | None = None,
    *,
    questions: int = 0,
) -> str:
    """Render the prompt text sent to the model.

    With questions=0 the default template renders the frozen prompt exactly.
    A positive count appends an explicit multiple-choice request; the
    generator passes 1 by default.
    """
    if template is None:
        template = default_template(kind)
    if questions < 0:
        raise ValueError("questions must be non-negative")
    blocks = [
        f"{_HEADINGS[name]}\n{text}" for name, text in template.sections
    ]
    if questions:
        noun = "question" if questions == 1 else "questions"
        blocks.append(
            f"After the dialogue, ask {questions} multiple-choice {noun} about it, "
            'marking exactly one option "(correct)" and the others "(incorrect)".'
        )
    return "\n\n".join(blocks) + "\n"
