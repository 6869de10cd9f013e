"""Capture hygiene and site persistence."""

import hashlib
import json

import pytest

from phishrange.errors import UnknownSite
from phishrange.webgen import (
    CaptureStore,
    SiteStore,
    capture_submission,
    clone_page,
    site_from_dict,
    site_to_dict,
)
from phishrange.webgen.rewrite import SiteAsset


def test_capture_stores_digests_not_values():
    record = capture_submission(
        "s1", "sess-1", {"username": "alice", "password": "hunter2"}, received_at=10.0
    )
    assert record.form_field_names == ("username", "password")
    assert "alice" not in record.value_digests
    assert "hunter2" not in record.value_digests
    for digest in record.value_digests:
        assert len(digest) == 64
        int(digest, 16)


def test_capture_digest_is_verifiable_via_salt():
    record = capture_submission("s1", None, [("password", "hunter2")], received_at=0.0)
    expected = hashlib.sha256(bytes.fromhex(record.salt) + b"hunter2").hexdigest()
    assert record.value_digests == (expected,)


def test_fresh_salt_per_capture():
    a = capture_submission("s1", None, {"u": "same"}, received_at=0.0)
    b = capture_submission("s1", None, {"u": "same"}, received_at=0.0)
    assert a.salt != b.salt
    assert a.value_digests != b.value_digests


def test_empty_form_allowed():
    record = capture_submission("s1", "sess-9", {}, received_at=1.0)
    assert record.form_field_names == ()
    assert record.value_digests == ()


def test_capture_store_appends_and_never_holds_plaintext(tmp_path):
    path = tmp_path / "captures.jsonl"
    store = CaptureStore(path)
    secrets_seen = []
    for i in range(20):
        secret = f"pw-{i}-correct-horse"
        secrets_seen.append(secret)
        store.append(
            capture_submission("site-a" if i % 2 else "site-b", f"sess-{i}",
                               {"password": secret, "user": f"u{i}"}, received_at=float(i))
        )
    raw = path.read_text("utf-8")
    for secret in secrets_seen:
        assert secret not in raw
    assert len(store.all()) == 20
    assert all(r.site_id == "site-a" for r in store.for_site("site-a"))
    assert len(store.for_site("site-a")) == 10

    reopened = CaptureStore(path)
    assert reopened.all() == store.all()


def test_site_round_trips_through_dict():
    site = clone_page(
        '<form><input name="u"></form><img src="/logo.png">',
        "https://nb.example/",
        "s1",
        created_at=123.5,
        assets={"/logo.png": SiteAsset("image/png", b"\x89PNG fake")},
    )
    restored = site_from_dict(site_to_dict(site))
    assert restored == site


def test_site_store_save_get_roundtrip(tmp_path):
    store = SiteStore(tmp_path)
    site = clone_page("<p>x</p>", "https://nb.example/", "s77")
    store.save(site)
    assert "s77" in store
    assert store.get("s77") == site
    assert store.ids() == ["s77"]

    fresh = SiteStore(tmp_path)  # reread from disk, no shared cache
    assert fresh.get("s77") == site


def test_site_store_unknown_site(tmp_path):
    store = SiteStore(tmp_path)
    with pytest.raises(UnknownSite):
        store.get("nope")


def test_site_file_is_plain_json(tmp_path):
    store = SiteStore(tmp_path)
    store.save(clone_page("<p>x</p>", "https://nb.example/", "sj"))
    doc = json.loads((tmp_path / "sj.json").read_text("utf-8"))
    assert doc["site_id"] == "sj"
    assert doc["origin"] == "https://nb.example/"
