"""Lure URL generation via typosquat mutations.

Every strategy edits the host part of the origin URL only, deterministically
in (origin, strategy, subtlety, seed). The recorded ``UrlMutation.detail`` is
a small machine-applicable grammar, so :func:`apply_mutation` can reproduce
the lure from the origin exactly — that round trip is the module's core
invariant.

Subtlety steers *where* in the host the edit lands: 1 picks from the first
third of eligible positions (obvious, near the start people actually read),
3 from the last third (easy to miss). Strategies without a positional choice
use subtlety to pick less conspicuous material instead.
"""

from __future__ import annotations

import ipaddress
import re
import string
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from random import Random
from typing import Mapping, Sequence
from urllib.parse import urlsplit, urlunsplit

from phishrange.errors import UnmutableUrl

_ALNUM = set(string.ascii_letters + string.digits)

SUBDOMAIN_TIERS: Mapping[int, tuple[str, ...]] = {
    1: ("login", "signin", "verify"),
    2: ("secure", "account", "update"),
    3: ("sso", "auth", "portal"),
}

DEFAULT_TLD_TABLE: Mapping[str, tuple[str, ...]] = {
    "com": ("net", "co", "cm", "org"),
    "net": ("com", "org"),
    "org": ("com", "net"),
    "io": ("co", "com"),
    "co": ("com", "io"),
    "edu": ("com", "org"),
    "gov": ("com", "org"),
    "uk": ("com", "net"),
    "de": ("com", "net"),
    "example": ("com", "net"),
}


class MutationStrategy(str, Enum):
    CHAR_SWAP = "CharSwap"
    HOMOGLYPH = "Homoglyph"
    EXTRA_SUBDOMAIN = "ExtraSubdomain"
    TLD_SWAP = "TldSwap"
    IDENTITY = "Identity"


@dataclass(frozen=True)
class UrlMutation:
    strategy: MutationStrategy
    detail: str


def load_confusables(path: str | None = None) -> dict[str, list[str]]:
    """Read a two-column ``char<TAB>replacement`` table (UTF-8, # comments)."""
    if path is None:
        text = (resources.files("phishrange.webgen") / "data" / "confusables.txt").read_text(
            "utf-8"
        )
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    table: dict[str, list[str]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise ValueError(f"confusables line {lineno}: expected 'char<TAB>replacement'")
        char, repl = parts
        if repl != char:
            table.setdefault(char, []).append(repl)
    return table


_DEFAULT_CONFUSABLES: dict[str, list[str]] | None = None


def _confusables() -> dict[str, list[str]]:
    global _DEFAULT_CONFUSABLES
    if _DEFAULT_CONFUSABLES is None:
        _DEFAULT_CONFUSABLES = load_confusables()
    return _DEFAULT_CONFUSABLES


def _split_netloc(netloc: str) -> tuple[str, str, str]:
    """netloc -> (userinfo prefix, host, port suffix), all verbatim slices."""
    creds, sep, hostport = netloc.rpartition("@")
    prefix = creds + sep
    if hostport.startswith("["):
        end = hostport.find("]")
        if end == -1:
            return prefix, hostport, ""
        return prefix, hostport[: end + 1], hostport[end + 1 :]
    host, colon, port = hostport.partition(":")
    return prefix, host, colon + port


def _is_ip_literal(host: str) -> bool:
    try:
        ipaddress.ip_address(host.strip("[]"))
        return True
    except ValueError:
        return False


def _rebuild(origin: str, new_host: str) -> str:
    parts = urlsplit(origin)
    prefix, _, port = _split_netloc(parts.netloc)
    return urlunsplit(parts._replace(netloc=prefix + new_host + port))


def _window(positions: Sequence[int], subtlety: int) -> Sequence[int]:
    if not positions:
        return positions
    chunk = -(-len(positions) // 3)  # ceil division
    start = (subtlety - 1) * chunk
    picked = positions[start : start + chunk]
    return picked or positions


def mutate_url(
    origin: str,
    strategy: MutationStrategy,
    subtlety: int,
    seed: int,
    *,
    tld_table: Mapping[str, Sequence[str]] | None = None,
    confusables: Mapping[str, Sequence[str]] | None = None,
) -> tuple[str, UrlMutation]:
    """Produce (lure_url, mutation record) for one strategy.

    Raises :class:`UnmutableUrl` when the strategy has nothing to edit: no
    host at all, a homoglyph/char-swap request against an IP literal or a
    host without eligible characters, or a TLD absent from the table.
    """
    if subtlety not in (1, 2, 3):
        raise ValueError("subtlety must be 1..3")
    strategy = MutationStrategy(strategy)
    parts = urlsplit(origin)
    _, host, _ = _split_netloc(parts.netloc)
    if not host:
        raise UnmutableUrl(f"no host in {origin!r}")

    rng = Random(f"{seed}:{strategy.value}:{subtlety}:{origin}")

    if strategy is MutationStrategy.IDENTITY:
        return origin, UrlMutation(strategy, "no change")

    if strategy is MutationStrategy.CHAR_SWAP:
        eligible = [
            i
            for i in range(len(host) - 1)
            if host[i] in _ALNUM and host[i + 1] in _ALNUM and host[i] != host[i + 1]
        ]
        if not eligible:
            raise UnmutableUrl(f"no swappable adjacent characters in host {host!r}")
        i = rng.choice(list(_window(eligible, subtlety)))
        new_host = host[:i] + host[i + 1] + host[i] + host[i + 2 :]
        detail = f"transpose host chars {i} and {i + 1} ({host[i:i+2]!r} -> {new_host[i:i+2]!r})"
        return _rebuild(origin, new_host), UrlMutation(strategy, detail)

    if strategy is MutationStrategy.HOMOGLYPH:
        if _is_ip_literal(host):
            raise UnmutableUrl(f"homoglyphs do not apply to IP literal {host!r}")
        table = confusables if confusables is not None else _confusables()
        eligible = [i for i, ch in enumerate(host) if table.get(ch)]
        if not eligible:
            raise UnmutableUrl(f"no confusable characters in host {host!r}")
        i = rng.choice(list(_window(eligible, subtlety)))
        repl = rng.choice(list(table[host[i]]))
        new_host = host[:i] + repl + host[i + 1 :]
        detail = f"replace host char {i} {host[i]!r} with {repl!r}"
        return _rebuild(origin, new_host), UrlMutation(strategy, detail)

    if strategy is MutationStrategy.EXTRA_SUBDOMAIN:
        label = rng.choice(SUBDOMAIN_TIERS[subtlety])
        detail = f"prepend subdomain {label!r}"
        return _rebuild(origin, f"{label}.{host}"), UrlMutation(strategy, detail)

    if strategy is MutationStrategy.TLD_SWAP:
        table = tld_table if tld_table is not None else DEFAULT_TLD_TABLE
        labels = host.rsplit(".", 1)
        if len(labels) != 2 or _is_ip_literal(host):
            raise UnmutableUrl(f"host {host!r} has no TLD to swap")
        tld = labels[1].lower()
        candidates = [c for c in table.get(tld, ()) if c != tld]
        if not candidates:
            raise UnmutableUrl(f"no replacement configured for TLD {tld!r}")
        repl = rng.choice(candidates)
        detail = f"replace tld {tld!r} with {repl!r}"
        return _rebuild(origin, f"{labels[0]}.{repl}"), UrlMutation(strategy, detail)

    raise UnmutableUrl(f"unsupported strategy {strategy!r}")


_SWAP_RE = re.compile(r"^transpose host chars (\d+) and (\d+) ")
_GLYPH_RE = re.compile(r"^replace host char (\d+) '(.*)' with '(.*)'$")
_SUB_RE = re.compile(r"^prepend subdomain '([^']+)'$")
_TLD_RE = re.compile(r"^replace tld '([^']+)' with '([^']+)'$")


def apply_mutation(origin: str, mutation: UrlMutation) -> str:
    """Re-apply a recorded mutation to the origin; must reproduce the lure."""
    parts = urlsplit(origin)
    _, host, _ = _split_netloc(parts.netloc)
    strategy = MutationStrategy(mutation.strategy)
    detail = mutation.detail

    if strategy is MutationStrategy.IDENTITY:
        return origin

    if strategy is MutationStrategy.CHAR_SWAP:
        m = _SWAP_RE.match(detail)
        if not m:
            raise ValueError(f"malformed CharSwap detail: {detail!r}")
        i = int(m.group(1))
        new_host = host[:i] + host[i + 1] + host[i] + host[i + 2 :]
        return _rebuild(origin, new_host)

    if strategy is MutationStrategy.HOMOGLYPH:
        m = _GLYPH_RE.match(detail)
        if not m:
            raise ValueError(f"malformed Homoglyph detail: {detail!r}")
        i, repl = int(m.group(1)), m.group(3)
        new_host = host[:i] + repl + host[i + 1 :]
        return _rebuild(origin, new_host)

    if strategy is MutationStrategy.EXTRA_SUBDOMAIN:
        m = _SUB_RE.match(detail)
        if not m:
            raise ValueError(f"malformed ExtraSubdomain detail: {detail!r}")
        return _rebuild(origin, f"{m.group(1)}.{host}")

    if strategy is MutationStrategy.TLD_SWAP:
        m = _TLD_RE.match(detail)
        if not m:
            raise ValueError(f"malformed TldSwap detail: {detail!r}")
        old, new = m.group(1), m.group(2)
        stem, dot, tld = host.rpartition(".")
        if tld.lower() != old:
            raise ValueError(f"origin TLD {tld!r} does not match recorded {old!r}")
        return _rebuild(origin, f"{stem}{dot}{new}")

    raise ValueError(f"unsupported strategy {strategy!r}")
