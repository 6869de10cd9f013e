"""Chat-completions client with an offline canned fallback.

The endpoint is provider-agnostic: POST {"model", "messages"} JSON, read the
first choice's message content back. Config comes from PR_LLM_* environment
variables; with no endpoint configured the generator falls straight back to
the bundled scripts so the game works offline.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import httpx

from phishrange.engine import PhishingKind
from phishrange.errors import LlmUnavailable
from phishrange.dialoggen.canned import canned_scripts
from phishrange.dialoggen.parse import parse_completion
from phishrange.dialoggen.script import DialogueScript, script_to_text
from phishrange.dialoggen.template import PromptTemplate, render_prompt

ENV_BASE_URL = "PR_LLM_BASE_URL"
ENV_MODEL = "PR_LLM_MODEL"
ENV_API_KEY = "PR_LLM_API_KEY"


@dataclass(frozen=True)
class LlmConfig:
    base_url: str = ""
    model: str = ""
    api_key: str = ""
    timeout: float = 30.0
    fallback: bool = True
    questions: int = 1

    @classmethod
    def from_env(cls, env=os.environ) -> "LlmConfig":
        return cls(
            base_url=env.get(ENV_BASE_URL, ""),
            model=env.get(ENV_MODEL, ""),
            api_key=env.get(ENV_API_KEY, ""),
        )


@dataclass(frozen=True)
class GenerationOutcome:
    script: DialogueScript
    raw_text: str
    fell_back: bool
    fallback_reason: str | None = None


def _endpoint(base_url: str) -> str:
    trimmed = base_url.rstrip("/")
    if trimmed.endswith("/chat/completions"):
        return trimmed
    return trimmed + "/chat/completions"


def complete(prompt: str, config: LlmConfig, *, client: httpx.Client | None = None) -> str:
    """One round trip to the completions endpoint; raises LlmUnavailable on
    any transport or shape problem."""
    if not config.base_url:
        raise LlmUnavailable(f"no endpoint configured (set {ENV_BASE_URL})")
    headers = {"Content-Type": "application/json"}
    if config.api_key:
        headers["Authorization"] = f"Bearer {config.api_key}"
    payload = {
        "model": config.model,
        "messages": [{"role": "user", "content": prompt}],
    }
    try:
        if client is None:
            with httpx.Client(timeout=config.timeout) as own:
                response = own.post(_endpoint(config.base_url), json=payload, headers=headers)
        else:
            response = client.post(_endpoint(config.base_url), json=payload, headers=headers)
        response.raise_for_status()
        data = response.json()
        content = data["choices"][0]["message"]["content"]
    except httpx.HTTPError as exc:
        raise LlmUnavailable(f"endpoint failure: {exc}") from exc
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise LlmUnavailable(f"malformed completion response: {exc}") from exc
    if not isinstance(content, str) or not content.strip():
        raise LlmUnavailable("completion contained no text")
    return content


def generate(
    kind: PhishingKind,
    config: LlmConfig,
    *,
    template: PromptTemplate | None = None,
    client: httpx.Client | None = None,
    fallback_pick: int = 0,
) -> GenerationOutcome:
    """Produce a DialogueScript for the kind, falling back to a bundled
    pre-approved script when the endpoint cannot deliver."""
    prompt = render_prompt(kind, template, questions=config.questions)
    try:
        text = complete(prompt, config, client=client)
    except LlmUnavailable as exc:
        if not config.fallback:
            raise
        canned = canned_scripts(kind)
        script = canned[fallback_pick % len(canned)]
        return GenerationOutcome(
            script=script,
            raw_text=script_to_text(script),
            fell_back=True,
            fallback_reason=str(exc),
        )
    script = parse_completion(text, kind=kind)
    return GenerationOutcome(script=script, raw_text=text, fell_back=False)
