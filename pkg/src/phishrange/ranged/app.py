"""HTTP face of the range: a FastAPI app factory over the game engine.

The server is the sole timing authority. A session's logical time is
milliseconds of the server's monotonic clock since that session was
created; no request body anywhere carries a timestamp. Engine state lives
in memory and is rebuilt at boot by replaying the persisted event log.
"""

from __future__ import annotations

import html
import re
import threading
from dataclasses import dataclass, field
from typing import Annotated, Literal, Union
from urllib.parse import parse_qsl

from fastapi import FastAPI, Header, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import HTMLResponse, JSONResponse, Response
from pydantic import BaseModel, Field

from phishrange import __version__
from phishrange.analytics.report import EXPERIMENTAL, build_report
from phishrange.content import ContentBundle
from phishrange.engine import (
    EventKind,
    JudgmentAnswer,
    LegitimacyJudgment,
    McqAnswer,
    Outcome,
    Session,
    SessionStatus,
    WebPage,
    create_session,
    hazard_health_at,
    move_player,
    replay,
    start_challenge,
    submit_answer,
    unwrap,
)
from phishrange.errors import (
    ChallengeAlreadyActive,
    MissionAlreadyComplete,
    NoActiveChallenge,
    NotAtMission,
    OutOfBounds,
    PayloadShapeMismatch,
    PhishRangeError,
    SessionNotActive,
    StoreError,
    UnknownSite,
)
from phishrange.ranged.config import ServiceConfig
from phishrange.ranged.stores import (
    ParticipantStore,
    SessionLog,
    StudyStore,
)
from phishrange.ranged.views import (
    challenge_ref,
    challenge_view,
    mission_view,
    session_view,
)
from phishrange.webgen import CaptureStore, ClonedSite, capture_submission

_SESSION_ID_RE = re.compile(r"[A-Za-z0-9_-]{1,128}")
_FORM_OPEN_RE = re.compile(r"<form\b[^>]*>", re.IGNORECASE)


class ApiError(Exception):
    """Service-level error carrying its HTTP status and a stable code."""

    def __init__(self, status: int, code: str, detail: str):
        super().__init__(detail)
        self.status = status
        self.code = code
        self.detail = detail


# Engine and store errors mapped onto HTTP. Anything not listed is a bug
# and surfaces as a 500 rather than being dressed up as client error.
_DOMAIN_STATUS: tuple[tuple[type[PhishRangeError], int, str], ...] = (
    (OutOfBounds, 400, "out_of_bounds"),
    (PayloadShapeMismatch, 400, "payload_shape_mismatch"),
    (NotAtMission, 409, "not_at_mission"),
    (MissionAlreadyComplete, 409, "mission_already_complete"),
    (ChallengeAlreadyActive, 409, "challenge_already_active"),
    (NoActiveChallenge, 409, "no_active_challenge"),
    (SessionNotActive, 409, "session_not_active"),
    (UnknownSite, 404, "unknown_site"),
)


@dataclass
class SessionRuntime:
    """One live session: engine state plus server-side timing anchors."""

    session: Session
    t0: float  # monotonic seconds at logical time zero
    created_at_wall: float
    last_activity_wall: float
    completed_at_wall: float | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)


class RangeService:
    """All state behind the HTTP handlers; handlers stay thin."""

    def __init__(self, config: ServiceConfig):
        self.config = config
        store = config.store_dir
        self.bundle: ContentBundle = config.bundle
        self.participants = ParticipantStore(store / "participants.jsonl")
        self.study = StudyStore(store)
        self.session_log = SessionLog(store / "sessions.jsonl")
        self.captures = CaptureStore(store / "captures.jsonl")
        self._sites: dict[str, ClonedSite] = {s.site_id: s for s in self.bundle.sites}
        self._runtimes: dict[str, SessionRuntime] = {}
        self._registry_lock = threading.Lock()
        self._rebuild()

    # --- boot ------------------------------------------------------------

    def _rebuild(self) -> None:
        for stored in self.session_log.load():
            difficulty = self.config.difficulties.get(stored.difficulty_label)
            if difficulty is None:
                raise StoreError(
                    f"stored session {stored.session_id} has unknown "
                    f"difficulty {stored.difficulty_label!r}"
                )
            events = [event for event, _ in stored.events]
            session = replay(
                events,
                stored.player_id,
                difficulty,
                stored.seed,
                self.bundle,
                stored.map_size,
            )
            last_logical = events[-1].logical_time if events else 0
            last_wall = stored.events[-1][1] if stored.events else stored.created_wall
            completed_at = next(
                (
                    wall
                    for event, wall in stored.events
                    if event.kind is EventKind.SESSION_COMPLETED
                ),
                None,
            )
            # Wall time since the last recorded event counts as logical time
            # too, so a mid-challenge deadline keeps running across restarts
            # instead of resetting to the moment of the last event.
            downtime = max(0.0, self.config.wall() - last_wall)
            self._runtimes[session.session_id] = SessionRuntime(
                session=session,
                t0=self.config.clock() - (last_logical / 1000.0 + downtime),
                created_at_wall=stored.created_wall,
                last_activity_wall=last_wall,
                completed_at_wall=completed_at,
            )

    # --- timing ------------------------------------------------------------

    def now_ms(self, runtime: SessionRuntime) -> int:
        return int((self.config.clock() - runtime.t0) * 1000)

    def is_expired(self, runtime: SessionRuntime) -> bool:
        idle = self.config.wall() - runtime.last_activity_wall
        return (
            runtime.session.status is SessionStatus.ACTIVE
            and idle > self.config.session_idle_seconds
        )

    # --- session registry ----------------------------------------------------

    def get_runtime(self, session_id: str) -> SessionRuntime:
        runtime = self._runtimes.get(session_id)
        if runtime is None:
            raise ApiError(404, "unknown_session", f"no session {session_id!r}")
        return runtime

    def create(self, player_id: str, difficulty_label: str) -> SessionRuntime:
        difficulty = self.config.difficulties.get(difficulty_label)
        if difficulty is None:
            known = ", ".join(sorted(self.config.difficulties))
            raise ApiError(
                400,
                "unknown_difficulty",
                f"difficulty must be one of: {known}",
            )
        with self._registry_lock:
            seed = self.config.seed_source()
            session = create_session(
                player_id, difficulty, seed, self.bundle, self.config.map_size
            )
            # Session ids are a function of (player, difficulty, seed); on a
            # seed collision for the same player just walk forward.
            while session.session_id in self._runtimes:
                seed += 1
                session = create_session(
                    player_id, difficulty, seed, self.bundle, self.config.map_size
                )
            wall = self.config.wall()
            runtime = SessionRuntime(
                session=session,
                t0=self.config.clock(),
                created_at_wall=wall,
                last_activity_wall=wall,
            )
            self._runtimes[session.session_id] = runtime
            self.session_log.record_created(
                session_id=session.session_id,
                player_id=player_id,
                difficulty_label=difficulty_label,
                seed=seed,
                map_size=self.config.map_size,
                wall_time=wall,
            )
        return runtime

    def run(self, session_id: str, op) -> tuple[SessionRuntime, Session, object]:
        """Run one engine command under the session lock and persist its events.

        ``op(session, now_ms)`` returns ``(new_session, extra)``; the logical
        timestamp is taken inside the lock, so commands on one session are
        totally ordered.
        """
        runtime = self.get_runtime(session_id)
        with runtime.lock:
            if self.is_expired(runtime):
                raise ApiError(
                    409,
                    "session_expired",
                    "session was idle past the expiry window and is Failed",
                )
            old = runtime.session
            new_session, extra = op(old, self.now_ms(runtime))
            fresh = new_session.event_log[len(old.event_log):]
            wall = self.config.wall()
            self.session_log.record_events(session_id, fresh, wall)
            runtime.session = new_session
            runtime.last_activity_wall = wall
            if any(e.kind is EventKind.SESSION_COMPLETED for e in fresh):
                runtime.completed_at_wall = wall
            return runtime, old, extra

    # --- leaderboard ---------------------------------------------------------

    def leaderboard(self, limit: int) -> list[dict]:
        best: dict[str, tuple[tuple, SessionRuntime]] = {}
        for runtime in self._runtimes.values():
            session = runtime.session
            if session.status is not SessionStatus.COMPLETED:
                continue
            completed_at = runtime.completed_at_wall
            if completed_at is None:
                continue
            key = (-session.score, completed_at, session.player_id)
            current = best.get(session.player_id)
            if current is None or key < current[0]:
                best[session.player_id] = (key, runtime)
        ranked = sorted(best.values(), key=lambda pair: pair[0])
        entries = []
        for _, runtime in ranked[:limit]:
            participant = self.participants.get(runtime.session.player_id)
            display = (
                participant["display_name"]
                if participant
                else runtime.session.player_id
            )
            entries.append({
                "player_id": runtime.session.player_id,
                "display_name": display,
                "total_score": runtime.session.score,
                "badges_count": len(runtime.session.badges),
                "completed_at": runtime.completed_at_wall,
            })
        return entries

    # --- clone proxy ----------------------------------------------------------

    def site(self, site_id: str) -> ClonedSite:
        site = self._sites.get(site_id)
        if site is None:
            raise UnknownSite(site_id)
        return site

    def has_session(self, session_id: str) -> bool:
        return session_id in self._runtimes

    def auto_judgment(self, site_id: str, session_id: str | None):
        """Submitting a clone form counts as judging the page legitimate.

        Returns (outcome, judgment) when the session's active challenge is a
        judgment on this site, else None. Never raises: the capture itself
        must succeed whatever state the session is in.
        """
        if not session_id or session_id not in self._runtimes:
            return None

        def op(session: Session, now: int):
            active = session.active_challenge
            if active is None:
                raise NoActiveChallenge()
            mission = session.mission(active.mission_id)
            assert mission is not None
            inner, _ = unwrap(mission.challenges[active.challenge_index])
            if not (
                isinstance(inner, LegitimacyJudgment)
                and isinstance(inner.artifact, WebPage)
                and inner.artifact.cloned_site_ref == site_id
            ):
                raise PayloadShapeMismatch("active challenge is not this site")
            new_session, outcome = submit_answer(
                session, JudgmentAnswer(is_phishing=False), now
            )
            return new_session, (outcome, inner)

        try:
            _, _, extra = self.run(session_id, op)
        except (ApiError, PhishRangeError):
            return None
        return extra


# --- request models --------------------------------------------------------


class RegisterRequest(BaseModel):
    display_name: str = Field(min_length=1, max_length=80)
    group: Literal["Experimental", "Control"]


class CreateSessionRequest(BaseModel):
    player_id: str = Field(min_length=1)
    difficulty: str


class MoveRequest(BaseModel):
    to: tuple[int, int]


class StartChallengeRequest(BaseModel):
    mission_id: str


class McqPayload(BaseModel):
    type: Literal["mcq"]
    option_index: int = Field(ge=0)


class JudgmentPayload(BaseModel):
    type: Literal["judgment"]
    is_phishing: bool


class AnswerRequest(BaseModel):
    challenge_ref: str
    payload: Annotated[
        Union[McqPayload, JudgmentPayload], Field(discriminator="type")
    ]


class PreSurveyRequest(BaseModel):
    participant_id: str
    q1_familiarity: int = Field(ge=1, le=5)
    q2_victim: Literal["Yes", "No", "Maybe"]
    q3_clicked: Literal["Yes", "No", "Maybe"]
    q4_confidence: int = Field(ge=1, le=5)


class PostSurveyRequest(BaseModel):
    participant_id: str
    q1_understanding: int = Field(ge=1, le=5)
    q2_recommend: int = Field(ge=1, le=5)
    q3_confidence: int = Field(ge=1, le=5)
    q4_helpful: str = ""
    q5_unclear: str = ""
    q6_changes: str = ""
    q7_suggestions: str = ""


class QuizResultRequest(BaseModel):
    participant_id: str
    answers: list[bool]


AuthHeader = Annotated[str | None, Header(alias="Authorization")]


# --- app factory ------------------------------------------------------------


def create_app(config: ServiceConfig) -> FastAPI:
    service = RangeService(config)
    app = FastAPI(title="phishrange", version=__version__)
    app.state.service = service

    # -- error shape: every failure is {"error": code, "detail": text} --

    @app.exception_handler(ApiError)
    async def api_error(request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.status,
            content={"error": exc.code, "detail": exc.detail},
        )

    @app.exception_handler(PhishRangeError)
    async def domain_error(request: Request, exc: PhishRangeError) -> JSONResponse:
        for cls, status, code in _DOMAIN_STATUS:
            if isinstance(exc, cls):
                return JSONResponse(
                    status_code=status,
                    content={"error": code, "detail": str(exc)},
                )
        return JSONResponse(
            status_code=500,
            content={"error": "internal", "detail": str(exc)},
        )

    @app.exception_handler(RequestValidationError)
    async def validation_error(
        request: Request, exc: RequestValidationError
    ) -> JSONResponse:
        problems = "; ".join(
            ".".join(str(part) for part in err["loc"]) + ": " + err["msg"]
            for err in exc.errors()
        )
        return JSONResponse(
            status_code=400,
            content={"error": "invalid_request", "detail": problems},
        )

    # -- auth --

    def require_participant(authorization: str | None) -> dict:
        if not authorization or not authorization.startswith("Bearer "):
            raise ApiError(
                401, "missing_token", "send Authorization: Bearer <token>"
            )
        participant = service.participants.by_token(authorization[7:].strip())
        if participant is None:
            raise ApiError(401, "bad_token", "token not recognized")
        return participant

    def require_match(participant: dict, claimed_id: str, what: str) -> None:
        if participant["participant_id"] != claimed_id:
            raise ApiError(
                403, "participant_mismatch", f"token does not own this {what}"
            )

    # -- meta --

    @app.get("/")
    def root() -> dict:
        return {"service": "phishrange", "version": __version__, "docs": "/docs"}

    @app.get("/healthz")
    def healthz() -> dict:
        return {
            "status": "ok",
            "sessions": len(service._runtimes),
            "participants": len(service.participants),
        }

    # -- participants --

    @app.post("/participants", status_code=201)
    def register(body: RegisterRequest) -> dict:
        row, token = service.participants.register(
            body.display_name, body.group, created_at=config.wall()
        )
        return {
            "participant_id": row["participant_id"],
            "display_name": row["display_name"],
            "group": row["group"],
            "token": token,
        }

    # -- sessions --

    def view_of(runtime: SessionRuntime) -> dict:
        return session_view(
            runtime.session,
            service.bundle,
            now_ms=service.now_ms(runtime),
            expired=service.is_expired(runtime),
        )

    @app.post("/sessions", status_code=201)
    def create_session_endpoint(
        body: CreateSessionRequest, authorization: AuthHeader = None
    ) -> dict:
        participant = require_participant(authorization)
        require_match(participant, body.player_id, "player_id")
        runtime = service.create(body.player_id, body.difficulty)
        return view_of(runtime)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        return view_of(service.get_runtime(session_id))

    @app.post("/sessions/{session_id}/move")
    def move(
        session_id: str, body: MoveRequest, authorization: AuthHeader = None
    ) -> dict:
        participant = require_participant(authorization)
        runtime = service.get_runtime(session_id)
        require_match(participant, runtime.session.player_id, "session")

        def op(session: Session, now: int):
            return move_player(session, body.to, now), None

        runtime, _, _ = service.run(session_id, op)
        return view_of(runtime)

    @app.post("/sessions/{session_id}/challenges/start")
    def start(
        session_id: str, body: StartChallengeRequest, authorization: AuthHeader = None
    ) -> dict:
        participant = require_participant(authorization)
        runtime = service.get_runtime(session_id)
        require_match(participant, runtime.session.player_id, "session")

        def op(session: Session, now: int):
            return start_challenge(session, body.mission_id, now), None

        runtime, _, _ = service.run(session_id, op)
        session = runtime.session
        active = session.active_challenge
        assert active is not None
        mission = session.mission(active.mission_id)
        assert mission is not None
        challenge = mission.challenges[active.challenge_index]
        _, deadline = unwrap(challenge)
        return {
            "challenge_ref": challenge_ref(active.mission_id, active.challenge_index),
            "challenge": challenge_view(challenge, service.bundle),
            "deadline_seconds": deadline,
            "hazard_health": session.hazard_health,
            "session": view_of(runtime),
        }

    @app.post("/sessions/{session_id}/answers")
    def answer(
        session_id: str, body: AnswerRequest, authorization: AuthHeader = None
    ) -> dict:
        participant = require_participant(authorization)
        runtime = service.get_runtime(session_id)
        require_match(participant, runtime.session.player_id, "session")

        def op(session: Session, now: int):
            active = session.active_challenge
            if active is None:
                raise NoActiveChallenge()
            current_ref = challenge_ref(active.mission_id, active.challenge_index)
            if body.challenge_ref != current_ref:
                raise ApiError(
                    409,
                    "challenge_mismatch",
                    f"active challenge is {current_ref}, not {body.challenge_ref}",
                )
            mission = session.mission(active.mission_id)
            assert mission is not None
            challenge = mission.challenges[active.challenge_index]
            if body.payload.type == "mcq":
                payload = McqAnswer(option_index=body.payload.option_index)
            else:
                payload = JudgmentAnswer(is_phishing=body.payload.is_phishing)
            new_session, outcome = submit_answer(session, payload, now)
            return new_session, (outcome, challenge, active.started_at)

        runtime, old, (outcome, challenge, started_at) = service.run(session_id, op)
        new = runtime.session
        fresh = new.event_log[len(old.event_log):]
        answered = next(
            (e for e in fresh if e.kind is EventKind.ANSWERED), None
        )
        badge_id = next(
            (
                str(e.payload["badge_id"])
                for e in fresh
                if e.kind is EventKind.BADGE_AWARDED
            ),
            None,
        )
        inner, deadline = unwrap(challenge)
        if outcome is Outcome.TIMED_OUT:
            hazard = 0.0
        elif deadline is not None and fresh:
            elapsed = (fresh[0].logical_time - started_at) / 1000.0
            hazard = hazard_health_at(deadline, max(0.0, elapsed))
        else:
            hazard = new.hazard_health

        result: dict = {
            "outcome": outcome.value,
            "correct": bool(answered.payload["correct"]) if answered else None,
            "points_delta": new.score - old.score,
            "score": new.score,
            "hazard_health": hazard,
            "mission_completed": any(
                e.kind is EventKind.MISSION_COMPLETED for e in fresh
            ),
            "badge_id": badge_id,
            "session_completed": any(
                e.kind is EventKind.SESSION_COMPLETED for e in fresh
            ),
            "status": new.status.value,
        }
        # The teaching moment: reveal the ground truth and its tells, but
        # only once this challenge has actually been answered.
        if outcome is not Outcome.TIMED_OUT and isinstance(inner, LegitimacyJudgment):
            result["ground_truth"] = inner.ground_truth
            result["cue_notes"] = list(inner.cue_notes)
        return result

    # -- missions --

    @app.get("/missions/{mission_id}")
    def get_mission(mission_id: str) -> dict:
        session_id = mission_id.rsplit("-", 1)[0]
        runtime = service._runtimes.get(session_id)
        mission = runtime.session.mission(mission_id) if runtime else None
        if mission is None:
            raise ApiError(404, "unknown_mission", f"no mission {mission_id!r}")
        return {"session_id": session_id, **mission_view(mission, service.bundle)}

    # -- leaderboard --

    @app.get("/leaderboard")
    def leaderboard(
        limit: Annotated[int, Query(ge=1, le=100)] = 10,
    ) -> dict:
        return {"entries": service.leaderboard(limit)}

    # -- surveys and quiz --

    def stored_response(duplicate: bool) -> Response:
        if duplicate:
            return JSONResponse(
                status_code=409,
                content={
                    "error": "duplicate_submission",
                    "detail": "stored, but ignored for analysis; the first "
                    "response per participant is the one analyzed",
                },
            )
        return JSONResponse(
            status_code=201,
            content={"stored": True, "superseded_for_analysis": False},
        )

    @app.post("/surveys/pre", status_code=201)
    def pre_survey(
        body: PreSurveyRequest, authorization: AuthHeader = None
    ) -> Response:
        participant = require_participant(authorization)
        require_match(participant, body.participant_id, "participant_id")
        answers = {
            "q1_familiarity": body.q1_familiarity,
            "q2_victim": body.q2_victim,
            "q3_clicked": body.q3_clicked,
            "q4_confidence": body.q4_confidence,
        }
        _, duplicate = service.study.add(
            "pre",
            body.participant_id,
            participant["group"],
            answers,
            received_at=config.wall(),
        )
        return stored_response(duplicate)

    @app.post("/surveys/post", status_code=201)
    def post_survey(
        body: PostSurveyRequest, authorization: AuthHeader = None
    ) -> Response:
        participant = require_participant(authorization)
        require_match(participant, body.participant_id, "participant_id")
        if participant["group"] != EXPERIMENTAL:
            raise ApiError(
                403,
                "wrong_group",
                "the post-survey is only taken by the Experimental group",
            )
        answers = {
            "q1_understanding": body.q1_understanding,
            "q2_recommend": body.q2_recommend,
            "q3_confidence": body.q3_confidence,
            "q4_helpful": body.q4_helpful,
            "q5_unclear": body.q5_unclear,
            "q6_changes": body.q6_changes,
            "q7_suggestions": body.q7_suggestions,
        }
        _, duplicate = service.study.add(
            "post",
            body.participant_id,
            participant["group"],
            answers,
            received_at=config.wall(),
        )
        return stored_response(duplicate)

    @app.post("/quiz-results", status_code=201)
    def quiz_result(
        body: QuizResultRequest, authorization: AuthHeader = None
    ) -> Response:
        participant = require_participant(authorization)
        require_match(participant, body.participant_id, "participant_id")
        if len(body.answers) != 10:
            raise ApiError(
                400,
                "invalid_request",
                f"the quiz has exactly 10 questions, got {len(body.answers)} answers",
            )
        score = 10.0 * sum(body.answers)
        _, duplicate = service.study.add(
            "quiz",
            body.participant_id,
            participant["group"],
            {"answers": body.answers},
            received_at=config.wall(),
            extra={"score_percent": score},
        )
        if duplicate:
            return stored_response(True)
        return JSONResponse(
            status_code=201,
            content={
                "stored": True,
                "superseded_for_analysis": False,
                "score_percent": score,
            },
        )

    # -- analytics --

    @app.get("/analytics/report")
    def analytics_report() -> dict:
        return build_report(service.study).to_dict()

    # -- clone proxy --

    def render_clone_html(site: ClonedSite, text: str, pr_session: str | None) -> str:
        if pr_session and _SESSION_ID_RE.fullmatch(pr_session):
            marker = (
                '<input type="hidden" name="pr_session" '
                f'value="{html.escape(pr_session, quote=True)}">'
            )
            text = _FORM_OPEN_RE.sub(lambda m: m.group(0) + marker, text)
        return text

    @app.get("/clone/{site_id}/")
    def clone_index(site_id: str, pr_session: str | None = None) -> HTMLResponse:
        site = service.site(site_id)
        return HTMLResponse(render_clone_html(site, site.rewritten_html, pr_session))

    @app.post("/clone/{site_id}/capture")
    async def clone_capture(site_id: str, request: Request) -> HTMLResponse:
        site = service.site(site_id)
        raw = (await request.body()).decode("utf-8", errors="replace")
        session_id: str | None = None
        fields: list[tuple[str, str]] = []
        for name, value in parse_qsl(raw, keep_blank_values=True):
            if name == "pr_session" and session_id is None:
                session_id = value
            else:
                fields.append((name, value))
        if session_id is not None and not service.has_session(session_id):
            # An unknown id references nothing and would persist an arbitrary
            # client-chosen string; the record only keeps ids this server minted.
            session_id = None
        record = capture_submission(
            site_id, session_id, fields, received_at=config.wall()
        )
        service.captures.append(record)
        auto = service.auto_judgment(site_id, session_id)
        return HTMLResponse(_reveal_page(site, auto, session_id))

    @app.get("/clone/{site_id}/{asset_path:path}")
    def clone_asset(
        site_id: str, asset_path: str, pr_session: str | None = None
    ) -> Response:
        site = service.site(site_id)
        if asset_path in ("", "index.html"):
            return HTMLResponse(
                render_clone_html(site, site.rewritten_html, pr_session)
            )
        asset = site.assets.get(asset_path)
        if asset is None:
            raise ApiError(
                404,
                "asset_not_found",
                f"site {site_id!r} has no asset {asset_path!r}; "
                "the proxy never fetches from the origin",
            )
        if asset.content_type.startswith("text/html"):
            text = render_clone_html(
                site, asset.body.decode("utf-8", errors="replace"), pr_session
            )
            return HTMLResponse(text, media_type=asset.content_type)
        return Response(content=asset.body, media_type=asset.content_type)

    # -- optional static UI --

    if config.webui_dir is not None and config.webui_dir.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount(
            "/app",
            StaticFiles(directory=str(config.webui_dir), html=True),
            name="webui",
        )

    return app


def _reveal_page(site: ClonedSite, auto, session_id: str | None) -> str:
    """The training debrief shown instead of whatever the form promised."""
    lure = html.escape(site.lure_url)
    origin = html.escape(site.origin)
    lines = [
        "<html><head><title>Training checkpoint</title></head><body>",
        "<h1>Stop: this was a training capture</h1>",
        f"<p>The page shown as <strong>{lure}</strong> is a training clone "
        f"of <strong>{origin}</strong>. Nothing you typed was stored in "
        "plaintext; the exercise keeps only salted digests.</p>",
    ]
    for mutation in site.mutations:
        lines.append(
            f"<p>How the address was disguised: {html.escape(mutation.detail)}</p>"
        )
    if auto is not None:
        outcome, judgment = auto
        lines.append(
            "<p>Submitting the form counted as judging the page legitimate. "
            f"Outcome for session {html.escape(session_id or '')}: "
            f"<strong>{html.escape(outcome.value)}</strong>.</p>"
        )
        if judgment.cue_notes:
            lines.append("<ul>")
            lines.extend(
                f"<li>{html.escape(note)}</li>" for note in judgment.cue_notes
            )
            lines.append("</ul>")
    lines.append("</body></html>")
    return "\n".join(lines)
