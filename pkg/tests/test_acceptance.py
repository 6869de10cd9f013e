"""Acceptance gate: one test per numbered criterion, one verdict line each.

Run with ``pytest -v tests/test_acceptance.py``; each line is the pass/fail
verdict for its criterion. Criterion 1 pins the originally reported t
statistic, which the accompanying group summaries do not actually produce;
it is kept failing as stated rather than loosened (README, "Known failing
check").
"""

from __future__ import annotations

import json
import re
import math
import random
import socket
import subprocess
import sys
import time
import urllib.error
import urllib.parse
import urllib.request
from html.parser import HTMLParser
from pathlib import Path
from urllib.parse import urljoin, urlsplit

import pytest
from starlette.testclient import TestClient

from phishrange.analytics.stats import (
    GroupStats,
    awareness_gap,
    proportion_at_least,
    student_t_two_tailed_p,
    t_test_pooled,
)
from phishrange.cli import main as cli_main
from phishrange.content import default_bundle, load_bundle
from phishrange.dialoggen.parse import parse_completion
from phishrange.dialoggen.script import script_to_text
from phishrange.engine import (
    DEFAULT_DIFFICULTIES,
    DialogueMcq,
    JudgmentAnswer,
    LegitimacyJudgment,
    McqAnswer,
    Outcome,
    PhishingKind,
    SessionStatus,
    create_session,
    move_player,
    replay,
    start_challenge,
    submit_answer,
    unwrap,
)
from phishrange.fixtures import dataset_path, sites_root
from phishrange.ranged import ServiceConfig, create_app
from phishrange.webgen import clone_page

# --- 1..4: statistical reproduction -----------------------------------------


def test_criterion_01_reported_t_statistic_from_group_summaries():
    """t_test_pooled((14, 62.14, 15.78), (14, 85.71, 11.87)) pinned at the
    reported t = 4.4677 +/- 0.001.

    The summaries themselves yield t = 4.46626..., 0.0014 away from the
    reported figure, so the final assertion fails by design; df and p do
    reproduce. The tolerance stays as stated instead of being widened to
    mask the discrepancy.
    """
    control = GroupStats(14, 62.14, 15.78)
    experimental = GroupStats(14, 85.71, 11.87)
    started = time.perf_counter()
    for _ in range(100):
        report = t_test_pooled(control, experimental)
    per_call = (time.perf_counter() - started) / 100
    assert per_call < 0.001, f"runtime {per_call * 1e3:.3f} ms per call"
    assert report.df == 26.0
    assert abs(report.p_two_tailed - 0.00014) <= 0.00002
    assert abs(report.t - 4.4677) <= 0.001, (
        f"pinned t = 4.4677 +/- 0.001, computed t = {report.t}"
    )


def test_criterion_02_awareness_gap_rounds_to_24_points():
    gap = awareness_gap(GroupStats(14, 62.14, 15.78), GroupStats(14, 85.71, 11.87))
    assert round(gap, 2) == 23.57
    assert round(gap) == 24


def test_criterion_03_control_benchmark_proportion():
    scores = [30, 40, 50, 50, 60, 60, 60, 60, 70, 70, 80, 80, 80, 80]
    assert len(scores) == 14
    assert sum(1 for s in scores if s >= 75) == 4
    proportion = proportion_at_least(scores, 75)
    assert round(proportion, 4) == 0.2857
    assert proportion == 4 / 14


def _tail_by_integration(t: float, df: int) -> float:
    # Independent oracle: P(T >= t) for Student's t via the substitution
    # x = sqrt(df) tan(theta), which turns the infinite tail into
    # C sqrt(df) * integral of cos^(df-1) over [atan(t/sqrt(df)), pi/2],
    # evaluated with composite Simpson. No incomplete-beta machinery.
    const = math.exp(math.lgamma((df + 1) / 2) - math.lgamma(df / 2))
    const /= math.sqrt(df * math.pi)
    lo = math.atan(t / math.sqrt(df))
    hi = math.pi / 2
    n = 2048
    h = (hi - lo) / n
    total = 0.0
    for i in range(n + 1):
        weight = 1 if i in (0, n) else (4 if i % 2 else 2)
        total += weight * math.cos(lo + i * h) ** (df - 1)
    return const * math.sqrt(df) * total * h / 3


def test_criterion_04_p_value_engine_matches_integration_oracle():
    started = time.perf_counter()
    for df in (1, 4, 26, 100):
        for t in (0.5, 1.0, 2.0, 3.0, 4.4677):
            engine = student_t_two_tailed_p(t, df)
            oracle = 2.0 * _tail_by_integration(t, df)
            assert abs(engine - oracle) < 1e-5, (t, df, engine, oracle)
    assert time.perf_counter() - started < 1.0


# --- 5: reference dialogue golden parse --------------------------------------

REFERENCE_DIALOGUE = (
    Path(__file__).parent / "data" / "spear_dialogue_sample.txt"
).read_text("utf-8")


def test_criterion_05_reference_dialogue_parse_and_fixpoint():
    script = parse_completion(REFERENCE_DIALOGUE)
    assert len(script.turns) == 9
    assert len(script.questions) == 1
    question = script.questions[0]
    assert len(question.options) == 3
    assert question.correct_index == 0  # option 1 in 1-based listing terms
    again = parse_completion(script_to_text(script))
    assert again == script


# --- 6: bundle sampling ------------------------------------------------------


def _write_corpus(path: Path, stem: str, rows: int) -> None:
    lines = ["text,label"]
    for i in range(rows):
        label = "phishing" if i % 2 else "ham"
        lines.append(f"{stem} number {i} token {i * 7919},{label}")
    path.write_text("\n".join(lines) + "\n")


def test_criterion_06_bundle_sampling_deterministic_and_distinct(tmp_path):
    smish_csv = tmp_path / "big_smish.csv"
    spear_csv = tmp_path / "small_spear.csv"
    _write_corpus(smish_csv, "synthetic text message", 5971)
    _write_corpus(spear_csv, "synthetic targeted mail", 333)
    outs = (tmp_path / "one.json", tmp_path / "two.json")
    for out in outs:
        code = cli_main(
            [
                "bundle",
                "--out", str(out),
                "--seed", "1234",
                "--smish", str(smish_csv),
                "--spear", str(spear_csv),
                "--smish-n", "20",
                "--spear-n", "20",
            ]
        )
        assert code == 0
    assert outs[0].read_bytes() == outs[1].read_bytes()
    bundle = load_bundle(outs[0])
    for kind, stem in (
        (PhishingKind.SMISH, "text message"),
        (PhishingKind.SPEAR, "targeted mail"),
    ):
        judgments = [
            c for c in bundle.challenges_for(kind) if isinstance(c, LegitimacyJudgment)
        ]
        assert len(judgments) == 20
        assert len(set(judgments)) == 20, "samples must be distinct"
        for judgment in judgments:
            assert stem in str(judgment.artifact)


# --- 7: clone rewriting over the corpus --------------------------------------


class _AttributeScan(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.urls: list[str] = []
        self.form_actions: list[str] = []
        self.form_count = 0

    def handle_starttag(self, tag, attrs):
        attr_map = dict(attrs)
        if tag == "form":
            self.form_count += 1
            if attr_map.get("action"):
                self.form_actions.append(attr_map["action"])
        for name, value in attrs:
            if name in ("href", "src", "action") and value:
                self.urls.append(value)

    handle_startendtag = handle_starttag


def test_criterion_07_clone_rewriting_purges_origin_and_captures_forms():
    root = sites_root()
    pages = []
    for site_dir in sorted(root.iterdir(), key=lambda d: d.name):
        if not site_dir.is_dir():
            continue
        origin = f"https://{site_dir.name}.example/"
        for child in sorted(site_dir.iterdir(), key=lambda c: c.name):
            if child.name.endswith(".html"):
                page_url = urljoin(origin, child.name)
                pages.append((site_dir.name, origin, page_url, child.read_text("utf-8")))
    assert len(pages) >= 20, "fixture corpus must stay substantial"

    total_forms = 0
    capture_forms = 0
    for slug, origin, page_url, html in pages:
        site_id = f"acc7-{slug}"
        site = clone_page(html, page_url, site_id=site_id)
        origin_host = urlsplit(origin).hostname
        scan = _AttributeScan()
        scan.feed(site.rewritten_html)
        scan.close()
        for value in scan.urls:
            assert origin_host not in value, (page_url, value)
            resolved_host = urlsplit(
                urljoin(f"http://127.0.0.1/clone/{site_id}/", value)
            ).hostname
            if resolved_host is not None:
                assert resolved_host != origin_host
                assert not resolved_host.endswith("." + origin_host)
        total_forms += scan.form_count
        capture_forms += sum(
            1 for action in scan.form_actions if action == f"/clone/{site_id}/capture"
        )
        assert len(scan.form_actions) == scan.form_count, "form without action"
        again = clone_page(site.rewritten_html, page_url, site_id=site_id)
        assert again.rewritten_html == site.rewritten_html, "rewrite not idempotent"
    assert total_forms > 0
    assert capture_forms == total_forms, "every form must post to the capture path"


# --- 8: engine replay fuzz ---------------------------------------------------


def _random_answer(session, inner, rng):
    if isinstance(inner, DialogueMcq):
        key = session.mcq_keys[inner.script_ref][inner.question_index]
        return McqAnswer(option_index=rng.randrange(key.option_count))
    return JudgmentAnswer(is_phishing=rng.random() < 0.5)


def test_criterion_08_randomized_sessions_replay_exactly():
    bundle = default_bundle(seed=11)
    rng = random.Random(0xACC8)
    started = time.perf_counter()
    late_timeouts = 0
    answers = 0
    for i in range(1000):
        seed = rng.randrange(2**31)
        difficulty = rng.choice(list(DEFAULT_DIFFICULTIES.values()))
        session = create_session(f"plr-{i % 97}", difficulty, seed, bundle)
        clock = 0
        for _ in range(rng.randrange(4, 40)):
            if session.status is not SessionStatus.ACTIVE:
                break
            clock += rng.randrange(0, 5000)
            active = session.active_challenge
            if active is None:
                open_missions = [m for m in session.missions if not m.completed]
                if not open_missions:
                    break
                mission = rng.choice(open_missions)
                if rng.random() < 0.3:
                    width, height = session.map_size
                    session = move_player(
                        session,
                        (rng.randrange(width), rng.randrange(height)),
                        clock,
                    )
                else:
                    session = move_player(session, mission.position, clock)
                    clock += rng.randrange(0, 2000)
                    session = start_challenge(session, mission.mission_id, clock)
            else:
                mission = session.mission(active.mission_id)
                inner, deadline = unwrap(mission.challenges[active.challenge_index])
                deadline_ms = int(deadline * 1000)
                if rng.random() < 0.25:
                    delay_ms = deadline_ms + rng.randrange(0, 60_000)
                else:
                    delay_ms = rng.randrange(0, deadline_ms)
                clock = active.started_at + delay_ms
                session, outcome = submit_answer(
                    session, _random_answer(session, inner, rng), clock
                )
                answers += 1
                if delay_ms >= deadline_ms:
                    assert outcome is Outcome.TIMED_OUT, (
                        "an answer at elapsed >= deadline must time out"
                    )
                    late_timeouts += 1
                else:
                    assert outcome in (Outcome.CORRECT, Outcome.INCORRECT)
        replayed = replay(
            session.event_log,
            session.player_id,
            difficulty,
            seed,
            bundle,
            session.map_size,
        )
        assert replayed == session, f"replay diverged for seed {seed}"
    elapsed = time.perf_counter() - started
    assert answers > 3000
    assert late_timeouts > 300
    assert elapsed < 30.0, f"fuzz took {elapsed:.1f}s"


# --- 9: capture plaintext fuzz -----------------------------------------------


def test_criterion_09_capture_fuzz_leaves_no_marker_in_any_store(tmp_path):
    bundle = default_bundle(seed=3)
    config = ServiceConfig(data_dir=tmp_path / "d", bundle=bundle)
    rng = random.Random(0xACC9)
    with TestClient(create_app(config)) as client:
        markers = []
        for i in range(500):
            marker = f"MARKER{i}Z{rng.getrandbits(64):016x}"
            if i % 3 == 1:
                marker += "&= +%25;#"  # encoding-hostile tail
            markers.append(marker)
            site = bundle.sites[i % len(bundle.sites)]
            fields = {
                "username": f"user-{i}@example.test",
                "password": marker,
                f"extra_{rng.randrange(10)}": marker,
            }
            if i % 5 == 0:
                # A marker in the session slot exercises the injected-field
                # path; it must be consumed, not persisted.
                fields["pr_session"] = f"sess{i}x{rng.getrandbits(32):08x}"
                markers.append(fields["pr_session"])
            response = client.post(f"/clone/{site.site_id}/capture", data=fields)
            assert response.status_code == 200
            assert marker not in response.text
    stored_files = [p for p in (tmp_path / "d").rglob("*") if p.is_file()]
    assert stored_files, "capture must persist something"
    joined = "\n".join(p.read_text(encoding="utf-8") for p in stored_files)
    # Every persisted capture keeps only digests: 64-hex values under a fresh
    # per-record salt, never the submitted plaintext.
    records = [
        json.loads(line)
        for p in stored_files
        if p.suffix == ".jsonl" and "capture" in p.name
        for line in p.read_text(encoding="utf-8").splitlines()
    ]
    assert len(records) == 500
    salts = set()
    for record in records:
        assert record["form_field_names"]
        assert record["value_digests"]
        for digest in record["value_digests"]:
            assert re.fullmatch(r"[0-9a-f]{64}", digest)
        salts.add(record["salt"])
    assert len(salts) == 500, "salt must be fresh per record"
    for marker in markers:
        assert marker not in joined


# --- 10: resubmission idempotence --------------------------------------------


def _register(client, name, group):
    response = client.post("/participants", json={"display_name": name, "group": group})
    assert response.status_code == 201
    doc = response.json()
    return doc["participant_id"], {"Authorization": f"Bearer {doc['token']}"}


PRE_ANSWERS = {
    "q1_familiarity": 3,
    "q2_victim": "No",
    "q3_clicked": "Maybe",
    "q4_confidence": 2,
}
POST_ANSWERS = {
    "q1_understanding": 4,
    "q2_recommend": 4,
    "q3_confidence": 4,
    "q4_helpful": "the clone debrief",
    "q5_unclear": "",
    "q6_changes": "",
}


def test_criterion_10_resubmissions_never_change_the_report(tmp_path):
    config = ServiceConfig(data_dir=tmp_path / "d", bundle=default_bundle(seed=2))
    with TestClient(create_app(config)) as client:
        people = []
        for index, group in enumerate(
            ("Experimental", "Experimental", "Control", "Control")
        ):
            pid, headers = _register(client, f"Person {index}", group)
            people.append((pid, group, headers))
        for index, (pid, group, headers) in enumerate(people):
            r = client.post(
                "/surveys/pre",
                json={"participant_id": pid, **PRE_ANSWERS},
                headers=headers,
            )
            assert r.status_code == 201
            r = client.post(
                "/quiz-results",
                json={"participant_id": pid, "answers": [True] * (5 + index) + [False] * (5 - index)},
                headers=headers,
            )
            assert r.status_code == 201
            if group == "Experimental":
                r = client.post(
                    "/surveys/post",
                    json={"participant_id": pid, **POST_ANSWERS},
                    headers=headers,
                )
                assert r.status_code == 201
        baseline = client.get("/analytics/report")
        assert baseline.status_code == 200

        different_pre = dict(PRE_ANSWERS, q4_confidence=5)
        different_post = dict(POST_ANSWERS, q3_confidence=1)
        for _ in range(3):
            for pid, group, headers in people:
                r = client.post(
                    "/surveys/pre",
                    json={"participant_id": pid, **different_pre},
                    headers=headers,
                )
                assert r.status_code == 409
                r = client.post(
                    "/quiz-results",
                    json={"participant_id": pid, "answers": [False] * 10},
                    headers=headers,
                )
                assert r.status_code == 409
                if group == "Experimental":
                    r = client.post(
                        "/surveys/post",
                        json={"participant_id": pid, **different_post},
                        headers=headers,
                    )
                    assert r.status_code == 409
        after = client.get("/analytics/report")
        assert after.content == baseline.content
        assert after.json()["quiz"]["t_test"] is not None


# --- 11: headless end to end -------------------------------------------------


def _http(base, method, path, *, token=None, body=None, form=None):
    request = urllib.request.Request(base + path, method=method)
    data = None
    if body is not None:
        data = json.dumps(body).encode("utf-8")
        request.add_header("Content-Type", "application/json")
    if form is not None:
        data = urllib.parse.urlencode(form).encode("utf-8")
        request.add_header("Content-Type", "application/x-www-form-urlencoded")
    if token:
        request.add_header("Authorization", f"Bearer {token}")
    with urllib.request.urlopen(request, data=data, timeout=10) as response:
        raw = response.read()
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw.decode("utf-8", errors="replace")


def _wait_up(base):
    deadline = time.monotonic() + 30
    while time.monotonic() < deadline:
        try:
            return _http(base, "GET", "/healthz")
        except OSError:
            time.sleep(0.2)
    raise AssertionError("service never came up")


def test_criterion_11_headless_end_to_end(tmp_path, capsys):
    data_dir = tmp_path / "data"
    bundle_path = tmp_path / "range-bundle.json"

    assert cli_main(["ingest", "--file", str(dataset_path("smish")), "--kind", "smish"]) == 0
    assert cli_main(["bundle", "--out", str(bundle_path), "--seed", "9"]) == 0

    with socket.socket() as probe:
        probe.bind(("127.0.0.1", 0))
        port = probe.getsockname()[1]
    base = f"http://127.0.0.1:{port}"
    server = subprocess.Popen(
        [
            sys.executable, "-m", "phishrange.cli",
            "serve",
            "--bind", f"127.0.0.1:{port}",
            "--data-dir", str(data_dir),
            "--content-bundle", str(bundle_path),
        ],
        stdout=subprocess.DEVNULL,
        stderr=subprocess.DEVNULL,
        cwd=tmp_path,
    )
    try:
        _wait_up(base)

        # The web client is never built, never mounted.
        with pytest.raises(urllib.error.HTTPError) as no_app:
            _http(base, "GET", "/app")
        assert no_app.value.code == 404

        # Deterministic proxy leg: the cloned page serves and its form
        # captures even with no session attached.
        site_id = json.loads(bundle_path.read_text())["sites"][0]["site_id"]
        clone_html = _http(base, "GET", f"/clone/{site_id}/")
        assert "<form" in clone_html
        debrief = _http(
            base, "POST", f"/clone/{site_id}/capture",
            form={"username": "walk-in", "password": "hunter2"},
        )
        assert "training" in debrief.lower()

        registered = _http(
            base, "POST", "/participants",
            body={"display_name": "Headless Harrier", "group": "Experimental"},
        )
        token = registered["token"]
        pid = registered["participant_id"]

        stored = _http(
            base, "POST", "/surveys/pre", token=token,
            body={"participant_id": pid, **PRE_ANSWERS},
        )
        assert stored["stored"] is True

        view = _http(
            base, "POST", "/sessions", token=token,
            body={"player_id": pid, "difficulty": "Easy"},
        )
        session_id = view["session_id"]
        assert view["status"] == "Active"
        assert len(view["missions"]) == 3

        captured_in_session = False
        for _ in range(60):
            view = _http(base, "GET", f"/sessions/{session_id}")
            if view["status"] != "Active":
                break
            mission = next(m for m in view["missions"] if not m["completed"])
            _http(
                base, "POST", f"/sessions/{session_id}/move", token=token,
                body={"to": mission["position"]},
            )
            started = _http(
                base, "POST", f"/sessions/{session_id}/challenges/start",
                token=token, body={"mission_id": mission["mission_id"]},
            )
            challenge = started["challenge"]
            if (
                not captured_in_session
                and challenge["type"] == "judgment"
                and challenge["artifact"]["type"] == "WebPage"
            ):
                # Falling for the clone: fetch the page, submit its login
                # form. The capture consumes the active judgment server-side.
                clone_path = challenge["artifact"]["clone_path"]
                page = _http(
                    base, "GET", clone_path + f"?pr_session={session_id}"
                )
                assert "pr_session" in page
                debrief = _http(
                    base, "POST", clone_path + "capture",
                    form={
                        "username": "harrier",
                        "password": "hunter2",
                        "pr_session": session_id,
                    },
                )
                assert "training" in debrief.lower()
                captured_in_session = True
                continue
            if challenge["type"] == "dialogue":
                payload = {"type": "mcq", "option_index": 0}
            else:
                payload = {"type": "judgment", "is_phishing": True}
            answered = _http(
                base, "POST", f"/sessions/{session_id}/answers",
                token=token,
                body={
                    "challenge_ref": started["challenge_ref"],
                    "payload": payload,
                },
            )
            assert answered["outcome"] in ("Correct", "Incorrect")

        final = _http(base, "GET", f"/sessions/{session_id}")
        assert final["status"] == "Completed"
        assert len(final["badges"]) == 3

        board = _http(base, "GET", "/leaderboard")
        names = [entry["display_name"] for entry in board["entries"]]
        assert "Headless Harrier" in names

        posted = _http(
            base, "POST", "/surveys/post", token=token,
            body={"participant_id": pid, **POST_ANSWERS},
        )
        assert posted["stored"] is True
        quiz = _http(
            base, "POST", "/quiz-results", token=token,
            body={"participant_id": pid, "answers": [True] * 7 + [False] * 3},
        )
        assert quiz["score_percent"] == 70.0
    finally:
        server.terminate()
        server.wait(timeout=10)

    capsys.readouterr()
    code = cli_main(["analyze", "--data-dir", str(data_dir), "--format", "json"])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert "quiz" in report and "surveys" in report
    assert report["surveys"]["pre"] is not None
    assert report["surveys"]["post"] is not None
