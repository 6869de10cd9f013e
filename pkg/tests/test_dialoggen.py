"""Prompt rendering, completion parsing, review gate, canned library, client."""

import json
from pathlib import Path

import httpx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phishrange.engine import PhishingKind
from phishrange.errors import LlmUnavailable, NotPending
from phishrange.dialoggen import (
    BUNDLED_REVIEWER,
    LlmConfig,
    PromptTemplate,
    Provenance,
    ReviewState,
    ScriptStore,
    apply_review,
    canned_scripts,
    default_template,
    generate,
    parse_completion,
    render_prompt,
    script_from_dict,
    script_to_dict,
    script_to_text,
    validate_script,
)

SAMPLE = (Path(__file__).parent / "data" / "spear_dialogue_sample.txt").read_text("utf-8")


# --- prompt template -----------------------------------------------------------

def test_default_spear_prompt_is_the_frozen_text():
    expected = (
        "// Initialization\n"
        "make a simple dialogue between player and NPC.\n"
        "\n"
        "// Context setting\n"
        "It is a serious game about spear phishing to increase the player skill.\n"
        "\n"
        "// Roles\n"
        "The player is the cybersecurity expert and the NPC is the victim.\n"
        "\n"
        "// Dialogue format\n"
        "player:\n"
        "NPC:\n"
        "player:\n"
        "NPC:\n"
        "and so on\n"
    )
    assert render_prompt(PhishingKind.SPEAR) == expected


def test_prompt_contains_roles_sentence():
    text = render_prompt(PhishingKind.SPEAR)
    assert "The player is the cybersecurity expert and the NPC is the victim." in text


def test_prompt_interpolates_kind():
    assert "SMS phishing" in render_prompt(PhishingKind.SMISH)
    assert "clone phishing" in render_prompt(PhishingKind.CLONE)


def test_prompt_render_is_deterministic():
    a = render_prompt(PhishingKind.SMISH, questions=2)
    b = render_prompt(PhishingKind.SMISH, questions=2)
    assert a == b


def test_question_request_is_appended_when_asked():
    text = render_prompt(PhishingKind.SPEAR, questions=1)
    assert text.startswith(render_prompt(PhishingKind.SPEAR).rstrip("\n"))
    assert "ask 1 multiple-choice question" in text


def test_template_missing_section_rejected_at_construction():
    with pytest.raises(ValueError):
        PromptTemplate(
            sections=(
                ("Initialization", "x"),
                ("Context", "y"),
                ("DialogueFormat", "z"),
            ),
            kind=PhishingKind.SPEAR,
        )


def test_template_wrong_order_rejected():
    good = default_template(PhishingKind.SPEAR)
    shuffled = (good.sections[1], good.sections[0], *good.sections[2:])
    with pytest.raises(ValueError):
        PromptTemplate(sections=shuffled, kind=PhishingKind.SPEAR)


def test_template_empty_section_rejected():
    sections = tuple(
        (name, "" if name == "Roles" else text)
        for name, text in default_template(PhishingKind.SPEAR).sections
    )
    with pytest.raises(ValueError):
        PromptTemplate(sections=sections, kind=PhishingKind.SPEAR)


# --- parser ---------------------------------------------------------------------

def test_reference_dialogue_parses_to_expected_shape():
    script = parse_completion(SAMPLE, kind=PhishingKind.SPEAR)
    assert len(script.turns) == 9
    assert sum(1 for t in script.turns if t.speaker == "player") == 5
    assert sum(1 for t in script.turns if t.speaker == "NPC") == 4
    assert len(script.questions) == 1
    q = script.questions[0]
    assert q.stem == "What is the primary purpose of the dialogue?"
    assert len(q.options) == 3
    assert q.correct_index == 0
    assert script.review.state is ReviewState.PENDING
    assert script.provenance is Provenance.GENERATED


def test_turn_texts_survive_parsing():
    script = parse_completion(SAMPLE)
    assert script.turns[0].text.startswith("Excuse me, but you seem")
    assert script.turns[-1].text.endswith("overall security posture.")


def test_two_correct_options_rejected():
    text = (
        "player: hello there\n"
        "NPC: hi\n"
        "Question: pick one\n"
        "Option 1 (correct): a\n"
        "Option 2 (correct): b\n"
    )
    script = parse_completion(text)
    assert script.review.state is ReviewState.REJECTED
    assert script.review.reason == "multiple correct options"


def test_empty_string_rejected():
    script = parse_completion("")
    assert script.review.state is ReviewState.REJECTED
    assert script.review.reason == "no turns found"


def test_single_turn_rejected():
    script = parse_completion("player: alone out here")
    assert script.review.state is ReviewState.REJECTED
    assert "only one turn found" in script.review.reason


def test_speaker_tags_are_case_insensitive():
    script = parse_completion("PLAYER: hi\nNpc: hello\nnpc: again")
    assert [t.speaker for t in script.turns] == ["player", "NPC", "NPC"]


def test_continuation_lines_join_the_previous_turn():
    text = "player: first line\nsecond line\nNPC: reply"
    script = parse_completion(text)
    assert script.turns[0].text == "first line\nsecond line"
    assert script.turns[1].text == "reply"


def test_leading_preamble_is_dropped():
    text = "Sure! Here is a dialogue for you.\nplayer: hi\nNPC: hello"
    script = parse_completion(text)
    assert len(script.turns) == 2
    assert script.review.state is ReviewState.PENDING


def test_comment_lines_are_skipped():
    text = "//Dialogue\nplayer: a\n// note\nNPC: b"
    script = parse_completion(text)
    assert [t.text for t in script.turns] == ["a", "b"]


def test_unmarked_option_counts_as_incorrect():
    text = (
        "player: q\nNPC: a\n"
        "Question: stem here\n"
        "Option 1 (correct): yes\n"
        "Option 2: no marker\n"
    )
    script = parse_completion(text)
    assert [o.is_correct for o in script.questions[0].options] == [True, False]


def test_option_line_outside_question_is_continuation():
    text = "player: I said\nOption 1 (correct): just quoting\nNPC: ok"
    script = parse_completion(text)
    assert len(script.questions) == 0
    assert "just quoting" in script.turns[0].text


def test_question_with_no_options_rejected():
    script = parse_completion("player: a\nNPC: b\nQuestion: floating\n")
    assert script.review.state is ReviewState.REJECTED
    assert "fewer than 2 options" in script.review.reason


def test_script_id_depends_on_content_not_formatting():
    spaced = SAMPLE.replace("\n\n", "\n\n\n")
    assert parse_completion(SAMPLE).script_id == parse_completion(spaced).script_id


def test_round_trip_is_a_fixpoint_on_the_reference_dialogue():
    once = parse_completion(SAMPLE)
    twice = parse_completion(script_to_text(once))
    assert once == twice


@given(st.text(max_size=600))
@settings(max_examples=150)
def test_parser_is_total_and_round_trip_stable(text):
    once = parse_completion(text)
    assert once.review.state in (ReviewState.PENDING, ReviewState.REJECTED)
    twice = parse_completion(script_to_text(once))
    assert once == twice


# --- validation and review --------------------------------------------------------

def test_validation_report_items_carry_pass_fail():
    report = validate_script(parse_completion(SAMPLE))
    assert report.passed
    assert all(item.passed for item in report.items)
    bad = validate_script(parse_completion(""))
    assert not bad.passed
    assert ("turn-count", False) in [(i.check, i.passed) for i in bad.items]


def test_mechanically_valid_scripts_still_need_a_human():
    assert parse_completion(SAMPLE).review.state is ReviewState.PENDING


def test_approve_appends_audit_entry():
    script = parse_completion(SAMPLE)
    approved = apply_review(script, ReviewState.APPROVED, "rev-1", decided_at=99.0)
    assert approved.review.state is ReviewState.APPROVED
    assert approved.audit[-1].reviewer_id == "rev-1"
    assert approved.audit[-1].decided_at == 99.0


def test_reject_records_reason():
    script = parse_completion(SAMPLE)
    rejected_script = apply_review(
        script, ReviewState.REJECTED, "rev-2", reason="stem is misleading"
    )
    assert rejected_script.review.reason == "stem is misleading"


def test_double_review_raises_not_pending():
    script = apply_review(parse_completion(SAMPLE), ReviewState.APPROVED, "rev-1")
    with pytest.raises(NotPending):
        apply_review(script, ReviewState.APPROVED, "rev-1")


def test_script_store_round_trip_and_review(tmp_path):
    store = ScriptStore(tmp_path / "scripts")
    script = parse_completion(SAMPLE)
    store.save(script)
    assert store.get(script.script_id) == script

    updated = store.review(script.script_id, ReviewState.APPROVED, "rev-9", decided_at=5.0)
    assert updated.review.state is ReviewState.APPROVED
    assert store.get(script.script_id) == updated
    with pytest.raises(NotPending):
        store.review(script.script_id, ReviewState.APPROVED, "rev-9")


def test_store_get_unknown_id(tmp_path):
    with pytest.raises(KeyError):
        ScriptStore(tmp_path).get("scr-missing")


def test_serialization_round_trip():
    script = apply_review(parse_completion(SAMPLE), ReviewState.APPROVED, "r", decided_at=1.0)
    assert script_from_dict(script_to_dict(script)) == script


# --- canned library ---------------------------------------------------------------

@pytest.mark.parametrize("kind", list(PhishingKind))
def test_three_approved_canned_scripts_per_kind(kind):
    scripts = canned_scripts(kind)
    assert len(scripts) == 3
    for script in scripts:
        assert script.provenance is Provenance.CANNED
        assert script.review.state is ReviewState.APPROVED
        assert script.audit[-1].reviewer_id == BUNDLED_REVIEWER
        assert validate_script(script).passed
        assert len(script.turns) >= 2
        assert script.questions, "canned scripts must carry at least one question"
        for q in script.questions:
            assert len(q.options) >= 2
            assert sum(o.is_correct for o in q.options) == 1


def test_canned_correct_answers_vary_in_position():
    positions = {
        q.correct_index
        for kind in PhishingKind
        for script in canned_scripts(kind)
        for q in script.questions
    }
    assert len(positions) >= 2


def test_canned_loader_is_stable():
    assert canned_scripts(PhishingKind.SMISH) == canned_scripts(PhishingKind.SMISH)


# --- llm client --------------------------------------------------------------------

def make_client(handler):
    return httpx.Client(transport=httpx.MockTransport(handler))


def test_generate_success_path():
    seen = {}

    def handler(request):
        seen["url"] = str(request.url)
        seen["auth"] = request.headers.get("authorization")
        seen["payload"] = json.loads(request.content)
        return httpx.Response(
            200,
            json={"choices": [{"message": {"content": SAMPLE}}]},
        )

    config = LlmConfig(base_url="http://llm.internal/v1", model="m-1", api_key="k-1")
    with make_client(handler) as client:
        outcome = generate(PhishingKind.SPEAR, config, client=client)

    assert seen["url"] == "http://llm.internal/v1/chat/completions"
    assert seen["auth"] == "Bearer k-1"
    assert seen["payload"]["model"] == "m-1"
    assert seen["payload"]["messages"][0]["role"] == "user"
    assert "spear phishing" in seen["payload"]["messages"][0]["content"]
    assert "multiple-choice" in seen["payload"]["messages"][0]["content"]
    assert not outcome.fell_back
    assert outcome.script.provenance is Provenance.GENERATED
    assert outcome.script.review.state is ReviewState.PENDING
    assert outcome.raw_text == SAMPLE


def test_transport_failure_falls_back_to_canned():
    def handler(request):
        raise httpx.ConnectError("nope", request=request)

    config = LlmConfig(base_url="http://llm.internal/v1", model="m", api_key="")
    with make_client(handler) as client:
        outcome = generate(PhishingKind.SMISH, config, client=client, fallback_pick=1)

    assert outcome.fell_back
    assert "endpoint failure" in outcome.fallback_reason
    assert outcome.script == canned_scripts(PhishingKind.SMISH)[1]
    assert outcome.script.provenance is Provenance.CANNED


def test_http_error_status_falls_back():
    def handler(request):
        return httpx.Response(503, text="overloaded")

    config = LlmConfig(base_url="http://llm.internal/v1", model="m")
    with make_client(handler) as client:
        outcome = generate(PhishingKind.CLONE, config, client=client)
    assert outcome.fell_back


def test_malformed_response_falls_back():
    def handler(request):
        return httpx.Response(200, json={"unexpected": True})

    config = LlmConfig(base_url="http://llm.internal/v1", model="m")
    with make_client(handler) as client:
        outcome = generate(PhishingKind.CLONE, config, client=client)
    assert outcome.fell_back
    assert "malformed" in outcome.fallback_reason


def test_no_endpoint_configured_falls_back():
    outcome = generate(PhishingKind.SPEAR, LlmConfig())
    assert outcome.fell_back
    assert outcome.script.review.state is ReviewState.APPROVED


def test_fallback_disabled_raises():
    with pytest.raises(LlmUnavailable):
        generate(PhishingKind.SPEAR, LlmConfig(fallback=False))


def test_config_from_env():
    env = {
        "PR_LLM_BASE_URL": "http://x/v1",
        "PR_LLM_MODEL": "big-model",
        "PR_LLM_API_KEY": "sk-1",
    }
    config = LlmConfig.from_env(env)
    assert (config.base_url, config.model, config.api_key) == ("http://x/v1", "big-model", "sk-1")
