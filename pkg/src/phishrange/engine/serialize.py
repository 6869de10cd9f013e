"""JSON-shaped dict conversion for sessions, events, and challenges.

Dict field names follow the domain types one-to-one (the email sender field
is serialized as ``from``, which Python cannot use as an attribute name).
Sessions are persisted as creation inputs plus an event log and rebuilt via
:func:`phishrange.engine.core.replay`, so only events and challenges need a
reverse direction.
"""

from __future__ import annotations

from typing import Any, Mapping

from phishrange.engine.types import (
    ActiveChallenge,
    Artifact,
    Challenge,
    DialogueMcq,
    Email,
    EventKind,
    LegitimacyJudgment,
    Mission,
    Session,
    SessionEvent,
    Sms,
    TimedHazard,
    WebPage,
)


def artifact_to_dict(artifact: Artifact) -> dict[str, Any]:
    if isinstance(artifact, Email):
        return {
            "type": "Email",
            "from": artifact.from_addr,
            "subject": artifact.subject,
            "body": artifact.body,
        }
    if isinstance(artifact, Sms):
        return {"type": "Sms", "sender": artifact.sender, "body": artifact.body}
    return {
        "type": "WebPage",
        "cloned_site_ref": artifact.cloned_site_ref,
        "displayed_url": artifact.displayed_url,
    }


def artifact_from_dict(d: Mapping[str, Any]) -> Artifact:
    tag = d["type"]
    if tag == "Email":
        return Email(from_addr=d["from"], subject=d["subject"], body=d["body"])
    if tag == "Sms":
        return Sms(sender=d["sender"], body=d["body"])
    if tag == "WebPage":
        return WebPage(cloned_site_ref=d["cloned_site_ref"], displayed_url=d["displayed_url"])
    raise ValueError(f"unknown artifact type {tag!r}")


def challenge_to_dict(challenge: Challenge) -> dict[str, Any]:
    if isinstance(challenge, DialogueMcq):
        return {
            "type": "DialogueMcq",
            "script_ref": challenge.script_ref,
            "question_index": challenge.question_index,
        }
    if isinstance(challenge, LegitimacyJudgment):
        return {
            "type": "LegitimacyJudgment",
            "artifact": artifact_to_dict(challenge.artifact),
            "ground_truth": challenge.ground_truth,
            "cue_notes": list(challenge.cue_notes),
        }
    return {
        "type": "TimedHazard",
        "inner": challenge_to_dict(challenge.inner),
        "deadline_seconds": challenge.deadline_seconds,
    }


def challenge_from_dict(d: Mapping[str, Any]) -> Challenge:
    tag = d["type"]
    if tag == "DialogueMcq":
        return DialogueMcq(script_ref=d["script_ref"], question_index=int(d["question_index"]))
    if tag == "LegitimacyJudgment":
        return LegitimacyJudgment(
            artifact=artifact_from_dict(d["artifact"]),
            ground_truth=bool(d["ground_truth"]),
            cue_notes=tuple(d.get("cue_notes", ())),
        )
    if tag == "TimedHazard":
        return TimedHazard(
            inner=challenge_from_dict(d["inner"]),
            deadline_seconds=float(d["deadline_seconds"]),
        )
    raise ValueError(f"unknown challenge type {tag!r}")


def event_to_dict(event: SessionEvent) -> dict[str, Any]:
    return {
        "logical_time": event.logical_time,
        "kind": event.kind.value,
        "payload": dict(event.payload),
    }


def event_from_dict(d: Mapping[str, Any]) -> SessionEvent:
    return SessionEvent(
        logical_time=int(d["logical_time"]),
        kind=EventKind(d["kind"]),
        payload=dict(d["payload"]),
    )


def _mission_to_dict(mission: Mission) -> dict[str, Any]:
    return {
        "mission_id": mission.mission_id,
        "kind": mission.kind.value,
        "position": list(mission.position),
        "challenges": [challenge_to_dict(c) for c in mission.challenges],
        "reward_points": mission.reward_points,
        "badge_id": mission.badge_id,
        "attempt": mission.attempt,
        "order": list(mission.order),
        "next_ordinal": mission.next_ordinal,
        "completed": mission.completed,
    }


def _active_to_dict(active: ActiveChallenge | None) -> dict[str, Any] | None:
    if active is None:
        return None
    return {
        "mission_id": active.mission_id,
        "challenge_index": active.challenge_index,
        "started_at": active.started_at,
    }


def session_to_dict(session: Session) -> dict[str, Any]:
    """Full-fidelity session dict (includes ground truths; not a client view)."""
    return {
        "session_id": session.session_id,
        "player_id": session.player_id,
        "difficulty": {
            "label": session.difficulty.label,
            "challenge_count": session.difficulty.challenge_count,
            "timer_seconds": session.difficulty.timer_seconds,
            "lure_subtlety": session.difficulty.lure_subtlety,
        },
        "seed": session.seed,
        "map_size": list(session.map_size),
        "player_position": list(session.player_position),
        "missions": [_mission_to_dict(m) for m in session.missions],
        "active_challenge": _active_to_dict(session.active_challenge),
        "hazard_health": session.hazard_health,
        "score": session.score,
        "badges": sorted(session.badges),
        "event_log": [event_to_dict(e) for e in session.event_log],
        "status": session.status.value,
    }
