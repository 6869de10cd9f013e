"""Shared test helpers: a deterministic in-memory content source and a
driver that plays sessions through the engine."""

from __future__ import annotations

from phishrange.engine import (
    Challenge,
    DialogueMcq,
    Email,
    JudgmentAnswer,
    LegitimacyJudgment,
    McqAnswer,
    McqKey,
    PhishingKind,
    Session,
    Sms,
    TimedHazard,
    WebPage,
    start_challenge,
    submit_answer,
    unwrap,
)


class FakeContent:
    """Six challenges per kind, ground truths alternating, one MCQ script."""

    def __init__(self, per_kind: int = 6, with_mcq: bool = True):
        self._keys: dict[str, tuple[McqKey, ...]] = {
            "scr-a": (McqKey(option_count=3, correct_index=1),
                      McqKey(option_count=4, correct_index=2)),
        }
        self._pools: dict[PhishingKind, list[Challenge]] = {
            PhishingKind.CLONE: [
                LegitimacyJudgment(
                    artifact=WebPage(f"site-{i}", f"https://login-{i}.example/"),
                    ground_truth=i % 2 == 0,
                    cue_notes=(f"cue {i}",),
                )
                for i in range(per_kind)
            ],
            PhishingKind.SMISH: [
                LegitimacyJudgment(
                    artifact=Sms(sender=f"+4479460{i:04d}", body=f"message {i}"),
                    ground_truth=i % 2 == 0,
                )
                for i in range(per_kind)
            ],
            PhishingKind.SPEAR: [],
        }
        for i in range(per_kind):
            if with_mcq and i % 3 == 2:
                self._pools[PhishingKind.SPEAR].append(
                    DialogueMcq(script_ref="scr-a", question_index=i % 2)
                )
            else:
                self._pools[PhishingKind.SPEAR].append(
                    LegitimacyJudgment(
                        artifact=Email(
                            from_addr=f"it-desk{i}@corp.example",
                            subject=f"subject {i}",
                            body=f"body {i}",
                        ),
                        ground_truth=i % 2 == 0,
                    )
                )

    def challenges_for(self, kind: PhishingKind):
        return self._pools[kind]

    def mcq_keys_for(self, script_ref: str):
        return self._keys[script_ref]

    def drop_kind(self, kind: PhishingKind) -> "FakeContent":
        self._pools[kind] = []
        return self


def correct_payload(session: Session, mission_id: str, challenge_index: int):
    mission = session.mission(mission_id)
    inner, _ = unwrap(mission.challenges[challenge_index])
    if isinstance(inner, LegitimacyJudgment):
        return JudgmentAnswer(is_phishing=inner.ground_truth)
    key = session.mcq_keys[inner.script_ref][inner.question_index]
    return McqAnswer(option_index=key.correct_index)


def wrong_payload(session: Session, mission_id: str, challenge_index: int):
    mission = session.mission(mission_id)
    inner, _ = unwrap(mission.challenges[challenge_index])
    if isinstance(inner, LegitimacyJudgment):
        return JudgmentAnswer(is_phishing=not inner.ground_truth)
    key = session.mcq_keys[inner.script_ref][inner.question_index]
    return McqAnswer(option_index=(key.correct_index + 1) % key.option_count)


def play_mission_correctly(session: Session, mission_id: str, t: int, step_ms: int = 1000):
    """Start and correctly answer every remaining challenge of one mission."""
    from phishrange.engine import move_player

    mission = session.mission(mission_id)
    if session.player_position != mission.position:
        session = move_player(session, mission.position, now=t)
    while not session.mission(mission_id).completed:
        session = start_challenge(session, mission_id, now=t)
        t += step_ms
        index = session.active_challenge.challenge_index
        session, outcome = submit_answer(
            session, correct_payload(session, mission_id, index), now=t
        )
        assert outcome.value == "Correct"
        t += step_ms
    return session, t
