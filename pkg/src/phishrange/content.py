"""Content bundles: the frozen set of challenges a game build ships with.

A bundle pools sampled corpus judgments, cloned sites, and approved dialogue
scripts, keyed by phishing kind. Sessions draw their missions from it through
the engine's content protocol. The review gate is enforced twice: bundles
cannot be built from non-Approved scripts, and every export and import scans
again, so an unreviewed script cannot reach a player through any path.
"""

from __future__ import annotations

import json
import mimetypes
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence
from urllib.parse import urljoin

from phishrange.dialoggen import DialogueScript, ReviewState, canned_scripts
from phishrange.dialoggen.review import script_from_dict, script_to_dict
from phishrange.engine import (
    Challenge,
    DialogueMcq,
    LegitimacyJudgment,
    McqKey,
    PhishingKind,
    WebPage,
)
from phishrange.engine.serialize import challenge_from_dict, challenge_to_dict
from phishrange.errors import UnreviewedContent
from phishrange.fixtures import dataset_path, sites_root
from phishrange.questgen import Dataset, build_judgment, ingest_dataset, sample_items
from phishrange.webgen import (
    ClonedSite,
    MutationStrategy,
    SiteAsset,
    clone_page,
    mutate_url,
    site_from_dict,
    site_to_dict,
)

BUNDLE_FORMAT = "phishrange-bundle/1"


def _gate(scripts: Iterable[DialogueScript]) -> None:
    for script in scripts:
        if script.review.state is not ReviewState.APPROVED:
            raise UnreviewedContent(
                f"script {script.script_id} is {script.review.state.value}; "
                "only Approved scripts may enter a bundle"
            )


@dataclass(frozen=True)
class ContentBundle:
    """Implements the engine's content protocol (challenges_for, mcq_keys_for)."""

    seed: int
    built_at: float
    challenges: Mapping[PhishingKind, tuple[Challenge, ...]]
    scripts: tuple[DialogueScript, ...] = ()
    sites: tuple[ClonedSite, ...] = ()

    def __post_init__(self):
        _gate(self.scripts)
        by_id = {s.script_id: s for s in self.scripts}
        site_ids = {s.site_id for s in self.sites}
        for kind, challenges in self.challenges.items():
            for challenge in challenges:
                if isinstance(challenge, DialogueMcq):
                    script = by_id.get(challenge.script_ref)
                    if script is None:
                        raise ValueError(
                            f"{kind.value} challenge references unknown script "
                            f"{challenge.script_ref!r}"
                        )
                    if challenge.question_index >= len(script.questions):
                        raise ValueError(
                            f"script {script.script_id} has no question "
                            f"{challenge.question_index}"
                        )
                if isinstance(challenge, LegitimacyJudgment) and isinstance(
                    challenge.artifact, WebPage
                ):
                    if challenge.artifact.cloned_site_ref not in site_ids:
                        raise ValueError(
                            f"challenge references unknown site "
                            f"{challenge.artifact.cloned_site_ref!r}"
                        )

    def challenges_for(self, kind: PhishingKind) -> tuple[Challenge, ...]:
        return self.challenges.get(kind, ())

    def mcq_keys_for(self, script_ref: str) -> tuple[McqKey, ...]:
        for script in self.scripts:
            if script.script_id == script_ref:
                return tuple(
                    McqKey(option_count=len(q.options), correct_index=q.correct_index)
                    for q in script.questions
                )
        raise KeyError(script_ref)

    def script(self, script_ref: str) -> DialogueScript:
        for s in self.scripts:
            if s.script_id == script_ref:
                return s
        raise KeyError(script_ref)

    def site(self, site_id: str) -> ClonedSite:
        for s in self.sites:
            if s.site_id == site_id:
                return s
        raise KeyError(site_id)


def _judgments_for_sites(sites: Sequence[ClonedSite]) -> list[LegitimacyJudgment]:
    out = []
    for site in sites:
        displayed = site.lure_url or site.origin
        is_lure = displayed != site.origin
        cues = tuple(
            f"lure url: {m.detail}"
            for m in site.mutations
            if m.detail != "no change"
        )
        out.append(
            LegitimacyJudgment(
                artifact=WebPage(cloned_site_ref=site.site_id, displayed_url=displayed),
                ground_truth=is_lure,
                cue_notes=cues if is_lure else (),
            )
        )
    return out


def build_bundle(
    *,
    seed: int,
    smish: Dataset,
    spear: Dataset,
    smish_n: int = 20,
    spear_n: int = 20,
    scripts: Sequence[DialogueScript] = (),
    sites: Sequence[ClonedSite] = (),
    built_at: float | None = None,
) -> ContentBundle:
    """Freeze a playable challenge set.

    The per-dataset draws happen here, once per build, with the build seed;
    sessions created from the bundle then pick their own subsets.
    """
    _gate(scripts)

    smish_samples = sample_items(smish, smish_n, seed)
    spear_samples = sample_items(spear, spear_n, seed + 1)

    challenges: dict[PhishingKind, tuple[Challenge, ...]] = {
        PhishingKind.CLONE: tuple(_judgments_for_sites(sites)),
        PhishingKind.SMISH: tuple(build_judgment(s) for s in smish_samples),
        PhishingKind.SPEAR: tuple(build_judgment(s) for s in spear_samples),
    }
    for script in scripts:
        extra = tuple(
            DialogueMcq(script_ref=script.script_id, question_index=i)
            for i in range(len(script.questions))
        )
        challenges[script.kind] = challenges[script.kind] + extra

    return ContentBundle(
        seed=seed,
        built_at=time.time() if built_at is None else built_at,
        challenges=challenges,
        scripts=tuple(scripts),
        sites=tuple(sites),
    )


_DEFAULT_CLONE_SLUGS = (
    "nordbank",
    "swiftpay",
    "cloudhub",
    "stellarshop",
    "meridianmail",
    "civicgov",
)

_STRATEGY_CYCLE = (
    MutationStrategy.CHAR_SWAP,
    MutationStrategy.HOMOGLYPH,
    MutationStrategy.EXTRA_SUBDOMAIN,
    MutationStrategy.TLD_SWAP,
    MutationStrategy.IDENTITY,
    MutationStrategy.CHAR_SWAP,
)


def _walk_files(node, prefix: str = "") -> Iterator[tuple[str, object]]:
    # importlib Traversables have no rglob; iterate by hand, sorted for
    # deterministic asset ordering.
    for child in sorted(node.iterdir(), key=lambda c: c.name):
        name = f"{prefix}{child.name}"
        if child.is_dir():
            yield from _walk_files(child, f"{name}/")
        else:
            yield name, child


def fixture_site_assets(site_dir, origin: str, site_id: str) -> dict[str, SiteAsset]:
    """Everything next to index.html, keyed by proxy-relative path.

    HTML assets pass through the rewriter so their links and forms stay
    inside the proxy; anything else is served verbatim.
    """
    assets: dict[str, SiteAsset] = {}
    for rel, node in _walk_files(site_dir):
        if rel == "index.html":
            continue
        if rel.endswith(".html"):
            page = clone_page(
                node.read_text(encoding="utf-8"),
                urljoin(origin, rel),
                site_id=site_id,
            )
            body = page.rewritten_html.encode("utf-8")
            assets[rel] = SiteAsset("text/html; charset=utf-8", body)
        else:
            ctype = mimetypes.guess_type(rel)[0] or "application/octet-stream"
            assets[rel] = SiteAsset(ctype, node.read_bytes())
    return assets


def clone_fixture_sites(
    seed: int,
    slugs: Sequence[str] = _DEFAULT_CLONE_SLUGS,
    *,
    subtlety: int = 2,
) -> tuple[ClonedSite, ...]:
    """Clone bundled fixture sites with a deterministic mutation per site."""
    sites = []
    root = sites_root()
    for slug, strategy in zip(slugs, _STRATEGY_CYCLE):
        origin = f"https://{slug}.example/"
        site_id = f"cl-{slug}-s{seed}"
        html = (root / slug / "index.html").read_text(encoding="utf-8")
        lure, mutation = mutate_url(origin, strategy, subtlety, seed)
        sites.append(
            clone_page(
                html,
                origin,
                site_id=site_id,
                mutations=(mutation,),
                lure_url=lure,
                created_at=0.0,
                assets=fixture_site_assets(root / slug, origin, site_id),
            )
        )
    return tuple(sites)


def default_bundle(seed: int = 0, *, built_at: float = 0.0) -> ContentBundle:
    """Fully offline bundle from fixtures and canned scripts."""
    smish = ingest_dataset(
        str(dataset_path("smish")), kind=PhishingKind.SMISH, ingested_at=built_at
    ).dataset
    spear = ingest_dataset(
        str(dataset_path("spear")), kind=PhishingKind.SPEAR, ingested_at=built_at
    ).dataset
    scripts = tuple(
        script for kind in PhishingKind for script in canned_scripts(kind)
    )
    return build_bundle(
        seed=seed,
        smish=smish,
        spear=spear,
        scripts=scripts,
        sites=clone_fixture_sites(seed),
        built_at=built_at,
    )


def bundle_to_dict(bundle: ContentBundle) -> dict:
    _gate(bundle.scripts)
    return {
        "format": BUNDLE_FORMAT,
        "seed": bundle.seed,
        "built_at": bundle.built_at,
        "challenges": {
            kind.value: [challenge_to_dict(c) for c in bundle.challenges_for(kind)]
            for kind in PhishingKind
        },
        "scripts": [script_to_dict(s) for s in bundle.scripts],
        "sites": [site_to_dict(s) for s in bundle.sites],
    }


def bundle_from_dict(doc: dict) -> ContentBundle:
    if doc.get("format") != BUNDLE_FORMAT:
        raise ValueError(f"not a content bundle: format={doc.get('format')!r}")
    bundle = ContentBundle(
        seed=doc["seed"],
        built_at=doc["built_at"],
        challenges={
            PhishingKind(kind): tuple(challenge_from_dict(c) for c in challenges)
            for kind, challenges in doc["challenges"].items()
        },
        scripts=tuple(script_from_dict(s) for s in doc["scripts"]),
        sites=tuple(site_from_dict(s) for s in doc["sites"]),
    )
    return bundle


def save_bundle(bundle: ContentBundle, path) -> None:
    Path(path).write_text(
        json.dumps(bundle_to_dict(bundle), indent=1, sort_keys=True) + "\n", "utf-8"
    )


def load_bundle(path) -> ContentBundle:
    return bundle_from_dict(json.loads(Path(path).read_text("utf-8")))
