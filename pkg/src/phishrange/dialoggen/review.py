"""Human review queue: one JSON document per script, decisions audited."""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import replace
from pathlib import Path

from phishrange.engine import PhishingKind
from phishrange.errors import NotPending
from phishrange.dialoggen.script import (
    APPROVED,
    DialogueScript,
    Mcq,
    McqOption,
    Provenance,
    Review,
    ReviewEvent,
    ReviewState,
    Turn,
    rejected,
)


def apply_review(
    script: DialogueScript,
    decision: ReviewState,
    reviewer_id: str,
    *,
    reason: str | None = None,
    decided_at: float | None = None,
) -> DialogueScript:
    """Pure review transition; only Pending scripts accept a decision."""
    if script.review.state is not ReviewState.PENDING:
        raise NotPending(
            f"script {script.script_id} is {script.review.state.value}, not Pending"
        )
    if decision is ReviewState.APPROVED:
        review = APPROVED
    elif decision is ReviewState.REJECTED:
        review = rejected(reason or "rejected by reviewer")
    else:
        raise ValueError("decision must be Approved or Rejected")
    stamp = time.time() if decided_at is None else decided_at
    event = ReviewEvent(reviewer_id, stamp, decision, review.reason)
    return replace(script, review=review, audit=script.audit + (event,))


def script_to_dict(script: DialogueScript) -> dict:
    return {
        "script_id": script.script_id,
        "kind": script.kind.value,
        "turns": [{"speaker": t.speaker, "text": t.text} for t in script.turns],
        "questions": [
            {
                "stem": q.stem,
                "options": [
                    {"text": o.text, "is_correct": o.is_correct} for o in q.options
                ],
            }
            for q in script.questions
        ],
        "provenance": script.provenance.value,
        "review": {"state": script.review.state.value, "reason": script.review.reason},
        "audit": [
            {
                "reviewer_id": e.reviewer_id,
                "decided_at": e.decided_at,
                "decision": e.decision.value,
                "reason": e.reason,
            }
            for e in script.audit
        ],
    }


def script_from_dict(doc: dict) -> DialogueScript:
    return DialogueScript(
        script_id=doc["script_id"],
        kind=PhishingKind(doc["kind"]),
        turns=tuple(Turn(t["speaker"], t["text"]) for t in doc["turns"]),
        questions=tuple(
            Mcq(
                stem=q["stem"],
                options=tuple(McqOption(o["text"], o["is_correct"]) for o in q["options"]),
            )
            for q in doc["questions"]
        ),
        provenance=Provenance(doc["provenance"]),
        review=Review(ReviewState(doc["review"]["state"]), doc["review"]["reason"]),
        audit=tuple(
            ReviewEvent(
                e["reviewer_id"], e["decided_at"], ReviewState(e["decision"]), e["reason"]
            )
            for e in doc["audit"]
        ),
    )


class ScriptStore:
    """Script documents under a directory, serialized writes."""

    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    def _path(self, script_id: str) -> Path:
        return self.root / f"{script_id}.json"

    def save(self, script: DialogueScript) -> None:
        with self._lock:
            tmp = self._path(script.script_id).with_suffix(".tmp")
            tmp.write_text(
                json.dumps(script_to_dict(script), indent=1, sort_keys=True), "utf-8"
            )
            os.replace(tmp, self._path(script.script_id))

    def get(self, script_id: str) -> DialogueScript:
        path = self._path(script_id)
        if not path.exists():
            raise KeyError(script_id)
        return script_from_dict(json.loads(path.read_text("utf-8")))

    def ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.json"))

    def all(self) -> list[DialogueScript]:
        return [self.get(script_id) for script_id in self.ids()]

    def review(
        self,
        script_id: str,
        decision: ReviewState,
        reviewer_id: str,
        *,
        reason: str | None = None,
        decided_at: float | None = None,
    ) -> DialogueScript:
        updated = apply_review(
            self.get(script_id), decision, reviewer_id, reason=reason, decided_at=decided_at
        )
        self.save(updated)
        return updated
