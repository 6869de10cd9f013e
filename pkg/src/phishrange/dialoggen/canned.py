"""Bundled dialogue scripts so the game is playable with no model endpoint.

Each file is canonical dialogue text; on load it goes through the same parser
and screening as a live completion, then gets the bundled approval stamp.
A bundled script that failed its own screening would be a packaging bug, so
the loader refuses to return it.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from phishrange.engine import PhishingKind
from phishrange.dialoggen.parse import parse_completion
from phishrange.dialoggen.review import apply_review
from phishrange.dialoggen.script import DialogueScript, Provenance, ReviewState

BUNDLED_REVIEWER = "bundled-review"
_PER_KIND = 3


@lru_cache(maxsize=None)
def canned_scripts(kind: PhishingKind) -> tuple[DialogueScript, ...]:
    root = resources.files("phishrange.dialoggen") / "canned"
    scripts = []
    for i in range(1, _PER_KIND + 1):
        name = f"{kind.value.lower()}-{i}.txt"
        text = (root / name).read_text(encoding="utf-8")
        script = parse_completion(text, kind=kind, provenance=Provenance.CANNED)
        if script.review.state is not ReviewState.PENDING:
            raise RuntimeError(
                f"bundled script {name} failed screening: {script.review.reason}"
            )
        scripts.append(
            apply_review(script, ReviewState.APPROVED, BUNDLED_REVIEWER, decided_at=0.0)
        )
    return tuple(scripts)
