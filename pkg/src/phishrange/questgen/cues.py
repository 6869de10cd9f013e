"""Rule-based phishing cue annotator.

The notes get shown to players after they answer, so each one is a short
human-readable sentence naming the evidence it fired on. One note per
category; the category vocabulary is frozen by a golden file in the tests.
"""

from __future__ import annotations

import re
from urllib.parse import urlsplit

_URL_RE = re.compile(r"https?://[^\s<>\"')\]]+", re.IGNORECASE)

_URGENCY_RE = re.compile(
    r"""\b(
        urgent(?:ly)?
      | immediate(?:ly)?
      | right\ away
      | act\ now
      | asap
      | expir(?:e[sd]?|ing|y)
      | suspend(?:ed)?
      | deactivat(?:e[d]?|ion)
      | within\ 24\ hours?
      | final\ notice
      | last\ chance
      | hurry
      | lock(?:ed)?\ (?:your\ )?account
      | account\ will\ be\ (?:closed|locked|suspended)
    )\b""",
    re.IGNORECASE | re.VERBOSE,
)

_CREDENTIAL_RE = re.compile(
    r"""\b(
        password
      | passcode
      | one.?time\ (?:code|password)
      | otp
      | pin
      | ssn
      | social\ security
      | credit\ card
      | card\ number
      | cvv
      | bank\ details
      | account\ (?:number|details)
      | log\ ?in
      | sign\ ?in
      | credentials
      | (?:verify|confirm|validate)\ your\ (?:account|identity|details)
      | update\ your\ (?:payment|billing)
      | security\ question
    )\b""",
    re.IGNORECASE | re.VERBOSE,
)

_IPV4_RE = re.compile(r"^\d{1,3}(?:\.\d{1,3}){3}$")


def _dedupe(matches: list[str]) -> list[str]:
    seen = set()
    out = []
    for hit in matches:
        key = hit.lower()
        if key not in seen:
            seen.add(key)
            out.append(hit)
    return out


def _is_ip(host: str) -> bool:
    return bool(_IPV4_RE.match(host)) or ":" in host


def annotate_cues(text: str, *, sender: str | None = None) -> list[str]:
    """Scan a message body for telltale phishing signs.

    Categories, in emission order: urgency language, raw-IP link hosts,
    non-ascii (lookalike) link hosts, '@' host obfuscation, credential or
    account-action requests, and sender/link domain mismatch (only when a
    sender address is supplied). An empty list means no rule fired, not
    that the message is safe.
    """
    cues: list[str] = []

    urgency = _dedupe(_URGENCY_RE.findall(text))
    if urgency:
        cues.append("urgency language: " + ", ".join(repr(w) for w in urgency))

    hosts: list[str] = []
    ip_hosts: list[str] = []
    lookalike_hosts: list[str] = []
    userinfo_urls: list[str] = []
    for url in _URL_RE.findall(text):
        parts = urlsplit(url)
        host = parts.hostname or ""
        if not host:
            continue
        hosts.append(host)
        if _is_ip(host):
            ip_hosts.append(host)
        elif not host.isascii():
            lookalike_hosts.append(host)
        if parts.username is not None:
            userinfo_urls.append(host)
    if ip_hosts:
        cues.append("link host is a raw IP address: " + ", ".join(_dedupe(ip_hosts)))
    if lookalike_hosts:
        cues.append(
            "link host contains non-ascii lookalike characters: "
            + ", ".join(_dedupe(lookalike_hosts))
        )
    if userinfo_urls:
        cues.append(
            "'@' in link hides the real destination: " + ", ".join(_dedupe(userinfo_urls))
        )

    credential = _dedupe(_CREDENTIAL_RE.findall(text))
    if credential:
        cues.append(
            "asks for credentials or account action: "
            + ", ".join(repr(w) for w in credential)
        )

    if sender and "@" in sender and hosts:
        sender_domain = sender.rsplit("@", 1)[1].strip().strip(">").lower()
        if sender_domain and not any(
            h.lower() == sender_domain or h.lower().endswith("." + sender_domain)
            for h in hosts
        ):
            cues.append(
                f"sender domain {sender_domain!r} does not match any linked host"
            )

    return cues
