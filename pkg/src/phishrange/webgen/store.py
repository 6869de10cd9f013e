"""Persistence for cloned sites and credential-capture records.

Sites are one JSON document each under a sites directory. Captures are an
append-only JSON-lines log. Captured *values* are never written anywhere:
each record stores field names plus salted SHA-256 digests, with a fresh
random salt per record so identical submissions do not even correlate.
"""

from __future__ import annotations

import base64
import hashlib
import json
import secrets
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from phishrange.errors import UnknownSite
from phishrange.webgen.mutate import MutationStrategy, UrlMutation
from phishrange.webgen.rewrite import ClonedSite, SiteAsset


@dataclass(frozen=True)
class CaptureRecord:
    site_id: str
    form_field_names: tuple[str, ...]
    value_digests: tuple[str, ...]
    received_at: float
    session_id: str | None
    salt: str


def _digest(salt_hex: str, value: str) -> str:
    return hashlib.sha256(bytes.fromhex(salt_hex) + value.encode("utf-8")).hexdigest()


def capture_submission(
    site_id: str,
    session_id: str | None,
    form_fields: Mapping[str, str] | Sequence[tuple[str, str]],
    *,
    received_at: float,
    salt: str | None = None,
) -> CaptureRecord:
    """Build a capture record: names in submission order, values digested."""
    items = list(form_fields.items()) if isinstance(form_fields, Mapping) else list(form_fields)
    salt = salt if salt is not None else secrets.token_hex(16)
    return CaptureRecord(
        site_id=site_id,
        form_field_names=tuple(name for name, _ in items),
        value_digests=tuple(_digest(salt, value) for _, value in items),
        received_at=received_at,
        session_id=session_id,
        salt=salt,
    )


# --- site (de)serialization ---------------------------------------------------

def site_to_dict(site: ClonedSite) -> dict:
    return {
        "site_id": site.site_id,
        "origin": site.origin,
        "rewritten_html": site.rewritten_html,
        "asset_map": dict(site.asset_map),
        "mutations": [
            {"strategy": m.strategy.value, "detail": m.detail} for m in site.mutations
        ],
        "lure_url": site.lure_url,
        "created_at": site.created_at,
        "assets": {
            path: {
                "content_type": asset.content_type,
                "body_b64": base64.b64encode(asset.body).decode("ascii"),
            }
            for path, asset in sorted(site.assets.items())
        },
    }


def site_from_dict(d: Mapping) -> ClonedSite:
    return ClonedSite(
        site_id=d["site_id"],
        origin=d["origin"],
        rewritten_html=d["rewritten_html"],
        asset_map=dict(d.get("asset_map", {})),
        mutations=tuple(
            UrlMutation(MutationStrategy(m["strategy"]), m["detail"])
            for m in d.get("mutations", [])
        ),
        lure_url=d["lure_url"],
        created_at=float(d.get("created_at", 0.0)),
        assets={
            path: SiteAsset(
                content_type=a["content_type"],
                body=base64.b64decode(a["body_b64"]),
            )
            for path, a in d.get("assets", {}).items()
        },
    )


class SiteStore:
    """Read-mostly store, one ``<site_id>.json`` per cloned site."""

    def __init__(self, root: Path | str):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._cache: dict[str, ClonedSite] = {}

    def save(self, site: ClonedSite) -> None:
        path = self.root / f"{site.site_id}.json"
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(json.dumps(site_to_dict(site), ensure_ascii=False), "utf-8")
        tmp.replace(path)
        self._cache[site.site_id] = site

    def get(self, site_id: str) -> ClonedSite:
        if site_id in self._cache:
            return self._cache[site_id]
        path = self.root / f"{site_id}.json"
        if not path.is_file():
            raise UnknownSite(site_id)
        site = site_from_dict(json.loads(path.read_text("utf-8")))
        self._cache[site_id] = site
        return site

    def ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.json"))

    def __contains__(self, site_id: str) -> bool:
        return site_id in self._cache or (self.root / f"{site_id}.json").is_file()


class CaptureStore:
    """Append-only JSONL capture log with an exclusive writer lock."""

    def __init__(self, path: Path | str):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    def append(self, record: CaptureRecord) -> None:
        line = json.dumps(
            {
                "site_id": record.site_id,
                "form_field_names": list(record.form_field_names),
                "value_digests": list(record.value_digests),
                "received_at": record.received_at,
                "session_id": record.session_id,
                "salt": record.salt,
            },
            ensure_ascii=False,
        )
        with self._lock, self.path.open("a", encoding="utf-8") as fh:
            fh.write(line + "\n")

    def all(self) -> list[CaptureRecord]:
        if not self.path.is_file():
            return []
        records: list[CaptureRecord] = []
        with self.path.open(encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                d = json.loads(line)
                records.append(
                    CaptureRecord(
                        site_id=d["site_id"],
                        form_field_names=tuple(d["form_field_names"]),
                        value_digests=tuple(d["value_digests"]),
                        received_at=d["received_at"],
                        session_id=d.get("session_id"),
                        salt=d["salt"],
                    )
                )
        return records

    def for_site(self, site_id: str) -> Iterable[CaptureRecord]:
        return [r for r in self.all() if r.site_id == site_id]
