"""Dialogue and question generation: prompt, LLM client, parser, review gate."""

from phishrange.dialoggen.canned import BUNDLED_REVIEWER, canned_scripts
from phishrange.dialoggen.llm import (
    GenerationOutcome,
    LlmConfig,
    complete,
    generate,
)
from phishrange.dialoggen.parse import parse_completion
from phishrange.dialoggen.review import (
    ScriptStore,
    apply_review,
    script_from_dict,
    script_to_dict,
)
from phishrange.dialoggen.script import (
    APPROVED,
    PENDING,
    DialogueScript,
    Mcq,
    McqOption,
    Provenance,
    Review,
    ReviewEvent,
    ReviewState,
    Turn,
    ValidationItem,
    ValidationReport,
    rejected,
    screen,
    script_to_text,
    validate_script,
)
from phishrange.dialoggen.template import (
    PromptTemplate,
    default_template,
    render_prompt,
)

__all__ = [
    "APPROVED",
    "BUNDLED_REVIEWER",
    "DialogueScript",
    "GenerationOutcome",
    "LlmConfig",
    "Mcq",
    "McqOption",
    "PENDING",
    "PromptTemplate",
    "Provenance",
    "Review",
    "ReviewEvent",
    "ReviewState",
    "ScriptStore",
    "Turn",
    "ValidationItem",
    "ValidationReport",
    "apply_review",
    "canned_scripts",
    "complete",
    "default_template",
    "generate",
    "parse_completion",
    "rejected",
    "render_prompt",
    "screen",
    "script_from_dict",
    "script_to_dict",
    "script_to_text",
    "validate_script",
]
