"""Append-only JSON-lines persistence with in-memory indexes rebuilt at boot.

One file per collection under ``data/store/``. Every write is a whole line,
so a crash can at worst truncate the final record; everything before it
stays readable. Reads happen once at startup, writes happen forever.
"""

from __future__ import annotations

import hashlib
import json
import secrets
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from phishrange.analytics.report import QuizRow, StudyRecords, SurveyRow
from phishrange.engine import SessionEvent, event_from_dict, event_to_dict
from phishrange.errors import StoreError


class JsonlStore:
    """One JSON object per line; appends are atomic per record."""

    def __init__(self, path: Path | str):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    def append(self, record: Mapping) -> None:
        line = json.dumps(record, sort_keys=True, ensure_ascii=False)
        with self._lock:
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(line + "\n")

    def rows(self) -> list[dict]:
        if not self.path.exists():
            return []
        out = []
        with self.path.open("r", encoding="utf-8") as fh:
            for i, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    out.append(json.loads(line))
                except json.JSONDecodeError as exc:
                    raise StoreError(f"{self.path}:{i}: bad JSON line: {exc}") from None
        return out


# --- participants -------------------------------------------------------------

def token_sha256(token: str) -> str:
    return hashlib.sha256(token.encode("utf-8")).hexdigest()


class ParticipantStore:
    """Registered participants and their bearer tokens.

    Only the sha256 of a token is persisted; the plaintext exists once, in
    the registration response. Losing a token means registering again.
    """

    def __init__(self, path: Path | str):
        self._store = JsonlStore(path)
        self._by_id: dict[str, dict] = {}
        self._by_token_sha: dict[str, str] = {}
        self._lock = threading.Lock()
        for row in self._store.rows():
            self._index(row)

    def _index(self, row: dict) -> None:
        self._by_id[row["participant_id"]] = row
        self._by_token_sha[row["token_sha256"]] = row["participant_id"]

    def register(self, display_name: str, group: str, *, created_at: float) -> tuple[dict, str]:
        token = secrets.token_urlsafe(24)
        with self._lock:
            participant_id = f"pt-{secrets.token_hex(4)}"
            while participant_id in self._by_id:
                participant_id = f"pt-{secrets.token_hex(4)}"
            row = {
                "participant_id": participant_id,
                "display_name": display_name,
                "group": group,
                "token_sha256": token_sha256(token),
                "created_at": created_at,
            }
            self._store.append(row)
            self._index(row)
        return row, token

    def get(self, participant_id: str) -> dict | None:
        return self._by_id.get(participant_id)

    def by_token(self, token: str) -> dict | None:
        participant_id = self._by_token_sha.get(token_sha256(token))
        return self._by_id.get(participant_id) if participant_id else None

    def __len__(self) -> int:
        return len(self._by_id)


# --- surveys and quiz results ---------------------------------------------------

_COLLECTIONS = ("pre", "post", "quiz")


class StudyStore:
    """Survey and quiz rows, stored append-only and never rewritten.

    Duplicate submissions from the same participant are stored too, marked
    ``superseded_for_analysis`` so the file is self-describing; the report
    additionally applies the first-response rule itself, so analysis output
    is identical whether or not a consumer honors the flag.
    """

    def __init__(self, root: Path | str):
        root = Path(root)
        self._stores = {
            "pre": JsonlStore(root / "pre_surveys.jsonl"),
            "post": JsonlStore(root / "post_surveys.jsonl"),
            "quiz": JsonlStore(root / "quiz_results.jsonl"),
        }
        self._lock = threading.Lock()
        self._seen: dict[str, set[str]] = {
            name: {row["participant_id"] for row in store.rows()}
            for name, store in self._stores.items()
        }

    def add(
        self,
        collection: str,
        participant_id: str,
        group: str,
        answers: Mapping[str, object],
        *,
        received_at: float,
        extra: Mapping[str, object] | None = None,
    ) -> tuple[dict, bool]:
        """Append one row; returns (row, was_duplicate)."""
        if collection not in _COLLECTIONS:
            raise ValueError(f"unknown collection {collection!r}")
        with self._lock:
            duplicate = participant_id in self._seen[collection]
            row = {
                "participant_id": participant_id,
                "group": group,
                "answers": dict(answers),
                "received_at": received_at,
                "superseded_for_analysis": duplicate,
            }
            if extra:
                row.update(extra)
            self._stores[collection].append(row)
            self._seen[collection].add(participant_id)
        return row, duplicate

    def has(self, collection: str, participant_id: str) -> bool:
        return participant_id in self._seen[collection]

    def rows(self, collection: str) -> list[dict]:
        return self._stores[collection].rows()

    def study_records(self) -> StudyRecords:
        """Adapter for the report builder; passes every stored row through.

        The builder's own first-response filter picks the earliest row per
        participant, so superseded duplicates get dropped there.
        """
        def survey_rows(collection: str) -> list[SurveyRow]:
            return [
                SurveyRow(
                    participant_id=row["participant_id"],
                    group=row["group"],
                    answers=row["answers"],
                    received_at=float(row["received_at"]),
                )
                for row in self.rows(collection)
            ]

        quiz = [
            QuizRow(
                participant_id=row["participant_id"],
                group=row["group"],
                score_percent=float(row["score_percent"]),
                received_at=float(row["received_at"]),
            )
            for row in self.rows("quiz")
        ]
        return StudyRecords(
            pre_surveys=survey_rows("pre"),
            post_surveys=survey_rows("post"),
            quiz_results=quiz,
        )


# --- sessions -------------------------------------------------------------------

@dataclass
class StoredSession:
    session_id: str
    player_id: str
    difficulty_label: str
    seed: int
    map_size: tuple[int, int]
    created_wall: float
    events: list[tuple[SessionEvent, float]] = field(default_factory=list)


class SessionLog:
    """Creation inputs plus one row per engine event, with wall receipt times.

    Engine state is never persisted directly; boot replays each event list
    over a fresh session, so the store stays valid across code changes that
    keep the event vocabulary.
    """

    def __init__(self, path: Path | str):
        self._store = JsonlStore(path)

    def record_created(
        self,
        *,
        session_id: str,
        player_id: str,
        difficulty_label: str,
        seed: int,
        map_size: tuple[int, int],
        wall_time: float,
    ) -> None:
        self._store.append({
            "type": "created",
            "session_id": session_id,
            "player_id": player_id,
            "difficulty": difficulty_label,
            "seed": seed,
            "map_size": list(map_size),
            "wall_time": wall_time,
        })

    def record_events(
        self, session_id: str, events: Sequence[SessionEvent], wall_time: float
    ) -> None:
        for event in events:
            self._store.append({
                "type": "event",
                "session_id": session_id,
                "event": event_to_dict(event),
                "wall_time": wall_time,
            })

    def load(self) -> list[StoredSession]:
        """All stored sessions in creation order."""
        by_id: dict[str, StoredSession] = {}
        for row in self._store.rows():
            kind = row.get("type")
            if kind == "created":
                stored = StoredSession(
                    session_id=row["session_id"],
                    player_id=row["player_id"],
                    difficulty_label=row["difficulty"],
                    seed=int(row["seed"]),
                    map_size=(int(row["map_size"][0]), int(row["map_size"][1])),
                    created_wall=float(row["wall_time"]),
                )
                by_id[stored.session_id] = stored
            elif kind == "event":
                stored = by_id.get(row["session_id"])
                if stored is None:
                    raise StoreError(
                        f"event row for unknown session {row['session_id']!r}"
                    )
                stored.events.append(
                    (event_from_dict(row["event"]), float(row["wall_time"]))
                )
            else:
                raise StoreError(f"unknown session row type {kind!r}")
        return list(by_id.values())
