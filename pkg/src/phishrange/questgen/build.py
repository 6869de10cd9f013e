"""Turn corpus samples into playable legitimacy-judgment challenges."""

from __future__ import annotations

from phishrange.engine import Email, LegitimacyJudgment, PhishingKind, Sms
from phishrange.questgen.cues import annotate_cues
from phishrange.questgen.ingest import Label, MessageSample

# Fallbacks for corpora that ship bare bodies. The .local TLD cannot
# resolve, so a synthesized sender can never point at a real mailbox.
SYNTH_SENDER = "unknown@dataset.local"
_SUBJECT_CHARS = 60


def build_judgment(sample: MessageSample) -> LegitimacyJudgment:
    """Wrap a message sample in the artifact type its kind calls for."""
    sender = sample.metadata.get("sender", "")
    if sample.kind is PhishingKind.SMISH:
        artifact = Sms(sender=sender or "unknown", body=sample.text)
    else:
        subject = sample.metadata.get("subject") or sample.text[:_SUBJECT_CHARS]
        artifact = Email(
            from_addr=sender or SYNTH_SENDER,
            subject=subject,
            body=sample.text,
        )
    return LegitimacyJudgment(
        artifact=artifact,
        ground_truth=sample.label is Label.PHISH,
        cue_notes=tuple(annotate_cues(sample.text, sender=sender or None)),
    )
