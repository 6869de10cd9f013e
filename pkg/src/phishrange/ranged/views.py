"""Client-facing projections of engine state.

Ground truths, cue notes, and grading keys never appear in these dicts.
What a challenge reveals after being answered is the answer endpoint's
business; everything here is safe to show before the first keypress.
"""

from __future__ import annotations

from typing import Mapping

from phishrange.content import ContentBundle
from phishrange.engine import (
    Challenge,
    DialogueMcq,
    LegitimacyJudgment,
    Mission,
    Session,
    SessionStatus,
    WebPage,
    hazard_health_at,
    unwrap,
)
from phishrange.engine.serialize import artifact_to_dict


def challenge_ref(mission_id: str, challenge_index: int) -> str:
    return f"{mission_id}:{challenge_index}"


def challenge_view(challenge: Challenge, bundle: ContentBundle) -> dict:
    inner, deadline = unwrap(challenge)
    if isinstance(inner, DialogueMcq):
        script = bundle.script(inner.script_ref)
        question = script.questions[inner.question_index]
        view: dict = {
            "type": "dialogue",
            "script_ref": inner.script_ref,
            "question_index": inner.question_index,
            "turns": [{"speaker": t.speaker, "text": t.text} for t in script.turns],
            "question": question.stem,
            "options": [option.text for option in question.options],
        }
    elif isinstance(inner, LegitimacyJudgment):
        view = {"type": "judgment", "artifact": _artifact_view(inner)}
    else:
        view = {"type": type(inner).__name__}
    if deadline is not None:
        view["deadline_seconds"] = deadline
    return view


def _artifact_view(judgment: LegitimacyJudgment) -> dict:
    view = artifact_to_dict(judgment.artifact)
    if isinstance(judgment.artifact, WebPage):
        view["clone_path"] = f"/clone/{judgment.artifact.cloned_site_ref}/"
    return view


def mission_view(mission: Mission, bundle: ContentBundle) -> dict:
    return {
        "mission_id": mission.mission_id,
        "kind": mission.kind.value,
        "position": list(mission.position),
        "reward_points": mission.reward_points,
        "badge_id": mission.badge_id,
        "attempt": mission.attempt,
        "next_ordinal": mission.next_ordinal,
        "challenge_count": len(mission.challenges),
        "completed": mission.completed,
        "challenges": [challenge_view(c, bundle) for c in mission.challenges],
    }


def active_view(session: Session, now_ms: int) -> dict | None:
    active = session.active_challenge
    if active is None:
        return None
    mission = session.mission(active.mission_id)
    assert mission is not None
    _, deadline = unwrap(mission.challenges[active.challenge_index])
    elapsed = max(0.0, (max(now_ms, active.started_at) - active.started_at) / 1000.0)
    view = {
        "mission_id": active.mission_id,
        "challenge_index": active.challenge_index,
        "challenge_ref": challenge_ref(active.mission_id, active.challenge_index),
        "elapsed_seconds": round(elapsed, 3),
        "deadline_seconds": deadline,
        "remaining_seconds": None,
        "hazard_health": session.hazard_health,
    }
    if deadline is not None:
        view["remaining_seconds"] = round(max(0.0, deadline - elapsed), 3)
        view["hazard_health"] = hazard_health_at(deadline, elapsed)
    return view


def session_view(
    session: Session, bundle: ContentBundle, *, now_ms: int, expired: bool
) -> dict:
    active = active_view(session, now_ms)
    status = SessionStatus.FAILED.value if expired else session.status.value
    return {
        "session_id": session.session_id,
        "player_id": session.player_id,
        "difficulty": {
            "label": session.difficulty.label,
            "challenge_count": session.difficulty.challenge_count,
            "timer_seconds": session.difficulty.timer_seconds,
            "lure_subtlety": session.difficulty.lure_subtlety,
        },
        "map_size": list(session.map_size),
        "player_position": list(session.player_position),
        "score": session.score,
        "badges": sorted(session.badges),
        "status": status,
        "expired": expired,
        "missions": [mission_view(m, bundle) for m in session.missions],
        "active": active,
        "hazard_health": active["hazard_health"] if active else session.hazard_health,
        "event_count": len(session.event_log),
    }


def leaderboard_entry(
    session: Session, completed_at: float, display_name: str
) -> Mapping[str, object]:
    return {
        "player_id": session.player_id,
        "display_name": display_name,
        "total_score": session.score,
        "badges_count": len(session.badges),
        "completed_at": completed_at,
    }
