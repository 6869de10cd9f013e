"""HTML rewriting for the capture proxy.

The rewriter parses with the stdlib's tolerant ``HTMLParser`` but never
re-serializes the whole document: it splices replacement text over the byte
ranges of the tags it actually changes and copies everything else through
verbatim. Unmodified markup therefore survives byte-for-byte, and running
the rewriter over its own output is a no-op (every URL it would touch
already points at the proxy).

Rules, applied to ``href``/``src``/``action`` attributes:

- any ``<form>`` action (whatever its host) becomes ``/clone/{site_id}/capture``
  and its method is forced to post so credentials never land in query strings;
- URLs resolving to the origin host become ``/clone/{site_id}/<path>``;
- off-origin URLs stay as they are but are recorded in ``asset_map``;
- ``<base href>`` is honoured for resolution, then pointed at the proxy root;
- non-web schemes (mailto:, javascript:, data:, tel:) pass through unless the
  value mentions the origin host, in which case the attribute is neutralized
  to ``#``: a clone must never offer a live path back to the real
  organization, and a dead link preserves the page visually.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from html import escape
from html.parser import HTMLParser
from typing import Mapping
from urllib.parse import urljoin, urlsplit

from phishrange.errors import NotHtml
from phishrange.webgen.mutate import UrlMutation

_URL_ATTRS = ("href", "src", "action")


@dataclass(frozen=True)
class SiteAsset:
    content_type: str
    body: bytes


@dataclass(frozen=True)
class ClonedSite:
    site_id: str
    origin: str
    rewritten_html: str
    asset_map: Mapping[str, str | None]
    mutations: tuple[UrlMutation, ...]
    lure_url: str
    created_at: float
    # Extra pages/files captured alongside the index document, already
    # rewritten where they are HTML. Keyed by proxy-relative path.
    assets: Mapping[str, SiteAsset] = field(default_factory=dict)

    @property
    def capture_path(self) -> str:
        return f"/clone/{self.site_id}/capture"


class _Rewriter(HTMLParser):
    def __init__(self, raw: str, base_url: str, site_id: str):
        super().__init__(convert_charrefs=False)
        self.raw = raw
        self.site_id = site_id
        self.base = base_url
        self.origin_host = (urlsplit(base_url).hostname or "").lower()
        self.asset_map: dict[str, str | None] = {}
        self.pieces: list[str] = []
        self.copied = 0
        self.line_starts = [0]
        for i, ch in enumerate(raw):
            if ch == "\n":
                self.line_starts.append(i + 1)

    # --- offsets ---

    def _offset(self) -> int:
        line, col = self.getpos()
        return self.line_starts[line - 1] + col

    def _splice(self, start: int, end: int, replacement: str) -> None:
        self.pieces.append(self.raw[self.copied : start])
        self.pieces.append(replacement)
        self.copied = end

    # --- URL logic ---

    def _proxy_path(self, resolved: str) -> str:
        parts = urlsplit(resolved)
        path = parts.path or "/"
        out = f"/clone/{self.site_id}{path}"
        if parts.query:
            out += f"?{parts.query}"
        if parts.fragment:
            out += f"#{parts.fragment}"
        return out

    def _rewrite_url(self, value: str) -> str | None:
        """New attribute value, or None to keep the original."""
        raw = value.strip()
        if not raw or raw.startswith("#") or raw.startswith("/clone/"):
            return None
        scheme = urlsplit(raw).scheme
        if scheme and scheme not in ("http", "https"):
            # mailto:/javascript:/data: values can still smuggle the origin
            # host out of the clone (a mailto to the real org would even
            # deliver). Those get dead-linked; anything else passes through.
            if self.origin_host and self.origin_host in raw.lower():
                return "#"
            return None
        resolved = urljoin(self.base, raw)
        parts = urlsplit(resolved)
        if parts.scheme not in ("http", "https"):
            return None
        host = (parts.hostname or "").lower()
        # Subdomains count as the origin too: a support.bank.example link
        # would otherwise leak the training target's host into the clone.
        if host == self.origin_host or host.endswith("." + self.origin_host):
            proxied = self._proxy_path(resolved)
            self.asset_map[resolved] = proxied
            return proxied
        self.asset_map.setdefault(resolved, None)
        return None

    def _transform(self, tag: str, attrs: list[tuple[str, str | None]]):
        changed = False
        names = {name for name, _ in attrs}
        out: list[tuple[str, str | None]] = []

        if tag == "base":
            for name, value in attrs:
                if name == "href" and value is not None:
                    self.base = urljoin(self.base, value.strip())
                    proxy_root = f"/clone/{self.site_id}/"
                    if value != proxy_root:
                        changed = True
                    out.append((name, proxy_root))
                else:
                    out.append((name, value))
            return out, changed

        if tag == "form":
            capture = f"/clone/{self.site_id}/capture"
            for name, value in attrs:
                if name == "action":
                    if value != capture:
                        changed = True
                    out.append((name, capture))
                elif name == "method":
                    # A GET form would put submitted values into the query
                    # string, where they outlive the salted-digest pipeline.
                    if value is None or value.lower() != "post":
                        changed = True
                    out.append((name, "post"))
                else:
                    out.append((name, value))
            if "action" not in names:
                out.append(("action", capture))
                changed = True
            if "method" not in names:
                out.append(("method", "post"))
                changed = True
            return out, changed

        for name, value in attrs:
            if name in _URL_ATTRS and value is not None:
                new = self._rewrite_url(value)
                if new is not None and new != value:
                    out.append((name, new))
                    changed = True
                    continue
            out.append((name, value))
        return out, changed

    def _render(self, tag: str, attrs, selfclosing: bool) -> str:
        bits = [f"<{tag}"]
        for name, value in attrs:
            if value is None:
                bits.append(f" {name}")
            else:
                bits.append(f' {name}="{escape(value, quote=True)}"')
        bits.append(" />" if selfclosing else ">")
        return "".join(bits)

    def _handle(self, tag: str, attrs, selfclosing: bool) -> None:
        text = self.get_starttag_text()
        if text is None:
            return
        new_attrs, changed = self._transform(tag, attrs)
        if not changed:
            return
        start = self._offset()
        self._splice(start, start + len(text), self._render(tag, new_attrs, selfclosing))

    # --- parser events ---

    def handle_starttag(self, tag, attrs):
        self._handle(tag, attrs, selfclosing=False)

    def handle_startendtag(self, tag, attrs):
        self._handle(tag, attrs, selfclosing=True)

    def result(self) -> str:
        self.pieces.append(self.raw[self.copied :])
        return "".join(self.pieces)


def clone_page(
    html: str | bytes,
    base_url: str,
    site_id: str,
    *,
    mutations: tuple[UrlMutation, ...] = (),
    lure_url: str | None = None,
    created_at: float = 0.0,
    assets: Mapping[str, SiteAsset] | None = None,
) -> ClonedSite:
    """Rewrite one HTML document for serving through the capture proxy.

    Parsing is best-effort: malformed markup never aborts, unparseable
    regions are copied through untouched. Only genuinely binary input is
    rejected.
    """
    if isinstance(html, bytes):
        try:
            text = html.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise NotHtml(f"input is not UTF-8 text: {exc}") from None
    else:
        text = html
    if "\x00" in text:
        raise NotHtml("input contains NUL bytes; looks binary, not HTML")

    parser = _Rewriter(text, base_url, site_id)
    parser.feed(text)
    parser.close()

    return ClonedSite(
        site_id=site_id,
        origin=base_url,
        rewritten_html=parser.result(),
        asset_map=parser.asset_map,
        mutations=tuple(mutations),
        lure_url=lure_url if lure_url is not None else base_url,
        created_at=created_at,
        assets=dict(assets) if assets else {},
    )
