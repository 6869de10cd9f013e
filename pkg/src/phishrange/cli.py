"""Operator command line.

Every platform capability is reachable here without a browser: run the
service, validate corpora, freeze content bundles, clone sites, drive the
dialogue review queue, import quiz results, and produce the study report.

Defaults resolve in precedence order: explicit flags win over a
``phish-range.json`` file in the working directory, which wins over the
``PR_DATA_DIR`` environment variable, which wins over built-ins.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
import urllib.request
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from .analytics.report import CONTROL, EXPERIMENTAL, build_report
from .content import (
    build_bundle,
    canned_scripts,
    clone_fixture_sites,
    default_bundle,
    fixture_site_assets,
    load_bundle,
    save_bundle,
)
from .dialoggen.llm import LlmConfig, generate
from .dialoggen.review import ScriptStore
from .dialoggen.script import ReviewState
from .engine.types import PhishingKind
from .errors import PhishRangeError
from .fixtures import dataset_path, sites_root, study_root
from .questgen.ingest import ingest_dataset
from .ranged.config import ServiceConfig
from .ranged.stores import StudyStore
from .webgen.mutate import MutationStrategy, mutate_url
from .webgen.rewrite import clone_page
from .webgen.store import SiteStore

CONFIG_FILE = "phish-range.json"

GROUPS = (CONTROL, EXPERIMENTAL)

# Keys a phish-range.json may set. Anything else in the file is ignored so
# one config can serve several tool versions.
_CONFIG_KEYS = frozenset(
    {"data_dir", "bind", "content_bundle", "webui_dir", "format", "store"}
)

_MESSAGE_KINDS = {"smish": PhishingKind.SMISH, "spear": PhishingKind.SPEAR}
_ALL_KINDS = {
    "clone": PhishingKind.CLONE,
    "smish": PhishingKind.SMISH,
    "spear": PhishingKind.SPEAR,
}


class CliError(PhishRangeError):
    """Operator input the CLI refuses; reported on stderr, exit 1."""


def _strategy(text: str) -> MutationStrategy:
    key = text.replace("-", "").replace("_", "").lower()
    for strategy in MutationStrategy:
        if strategy.value.lower() == key:
            return strategy
    raise argparse.ArgumentTypeError(
        f"unknown strategy {text!r}; choose from "
        + ", ".join(s.value for s in MutationStrategy)
    )


def _emit(args: argparse.Namespace, payload: dict, text: str) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _data_dir(args: argparse.Namespace) -> Path:
    return Path(args.data_dir)


def _store_root(args: argparse.Namespace) -> Path:
    return _data_dir(args) / "store"


def _load_config_file() -> dict:
    path = Path(CONFIG_FILE)
    if not path.is_file():
        return {}
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"unreadable config file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise CliError(f"config file {path} must hold a JSON object")
    return {key: doc[key] for key in doc.keys() & _CONFIG_KEYS}


def _merged_defaults() -> dict:
    merged = {"data_dir": os.environ.get("PR_DATA_DIR", "data")}
    merged.update(_load_config_file())
    return merged


# serve ----------------------------------------------------------------

_LOOPBACK_NAMES = {"localhost"}


def _parse_bind(bind: str) -> tuple[str, int]:
    host, sep, port_text = bind.rpartition(":")
    if not sep or not host:
        raise CliError(f"bind address {bind!r} must look like HOST:PORT")
    host = host.strip("[]")
    try:
        port = int(port_text)
    except ValueError:
        raise CliError(f"bind address {bind!r} has a non-numeric port") from None
    if not 0 < port < 65536:
        raise CliError(f"port {port} out of range")
    return host, port


def _is_loopback(host: str) -> bool:
    if host in _LOOPBACK_NAMES:
        return True
    import ipaddress

    try:
        return ipaddress.ip_address(host).is_loopback
    except ValueError:
        return False


def _cmd_serve(args: argparse.Namespace) -> int:
    host, port = _parse_bind(args.bind)
    if not _is_loopback(host) and not args.i_am_training_only:
        raise CliError(
            f"refusing to bind {host}:{port}: this service hosts deceptive "
            "lookalike pages for awareness training; add --i-am-training-only "
            "to confirm the deployment is a consented training range"
        )
    if args.content_bundle:
        bundle = load_bundle(args.content_bundle)
    else:
        bundle = default_bundle()
    config = ServiceConfig(
        data_dir=_data_dir(args),
        bundle=bundle,
        webui_dir=Path(args.webui_dir) if args.webui_dir else None,
    )
    from .ranged.app import create_app

    app = create_app(config)
    print(f"serving on http://{host}:{port}  data={config.data_dir}")
    import uvicorn

    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


# ingest ---------------------------------------------------------------


def _cmd_ingest(args: argparse.Namespace) -> int:
    kind = _MESSAGE_KINDS[args.kind]
    result = ingest_dataset(
        args.file,
        kind=kind,
        name=args.name,
        on_unknown_label="reject" if args.lenient else "raise",
    )
    dataset = result.dataset
    payload = {
        "name": dataset.name,
        "kind": kind.value,
        "accepted": result.accepted,
        "rejected": result.rejected,
        "rejected_rows": list(result.rejected_rows),
    }
    rows = ""
    if result.rejected_rows:
        rows = " (rows " + ", ".join(str(r) for r in result.rejected_rows) + ")"
    _emit(
        args,
        payload,
        f"{dataset.name}: accepted {result.accepted} rejected {result.rejected}{rows}",
    )
    return 0


# bundle ---------------------------------------------------------------


def _ingest_for_bundle(path, kind: PhishingKind, built_at: float):
    return ingest_dataset(str(path), kind=kind, ingested_at=built_at).dataset


def _cmd_bundle(args: argparse.Namespace) -> int:
    built_at = args.built_at
    smish = _ingest_for_bundle(
        args.smish or dataset_path("smish"), PhishingKind.SMISH, built_at
    )
    spear = _ingest_for_bundle(
        args.spear or dataset_path("spear"), PhishingKind.SPEAR, built_at
    )
    scripts = tuple(
        script for kind in PhishingKind for script in canned_scripts(kind)
    )
    if args.scripts:
        extra = [
            s
            for s in ScriptStore(args.scripts).all()
            if s.review.state is ReviewState.APPROVED
        ]
        scripts = scripts + tuple(extra)
    bundle = build_bundle(
        seed=args.seed,
        smish=smish,
        spear=spear,
        smish_n=args.smish_n,
        spear_n=args.spear_n,
        scripts=scripts,
        sites=clone_fixture_sites(args.seed),
        built_at=built_at,
    )
    out = Path(args.out)
    save_bundle(bundle, out)
    digest = hashlib.sha256(out.read_bytes()).hexdigest()
    counts = {
        kind.value: len(bundle.challenges_for(kind)) for kind in PhishingKind
    }
    payload = {
        "out": str(out),
        "seed": args.seed,
        "built_at": built_at,
        "sha256": digest,
        "challenges": counts,
        "scripts": len(bundle.scripts),
        "sites": len(bundle.sites),
    }
    count_text = " ".join(f"{k}={v}" for k, v in counts.items())
    _emit(
        args,
        payload,
        f"wrote {out} seed={args.seed} {count_text}\nsha256 {digest}",
    )
    return 0


# clone ----------------------------------------------------------------


def _slug(host: str) -> str:
    cleaned = "".join(c if c.isalnum() else "-" for c in host.lower())
    return cleaned.strip("-") or "site"


def _fetch_url(url: str) -> str:
    request = urllib.request.Request(url, headers={"User-Agent": "phish-range"})
    with urllib.request.urlopen(request, timeout=30) as response:
        charset = response.headers.get_content_charset() or "utf-8"
        return response.read().decode(charset, errors="replace")


def _cmd_clone(args: argparse.Namespace) -> int:
    assets = None
    if args.fixture:
        site_dir = sites_root() / args.fixture
        index = site_dir / "index.html"
        if not index.is_file():
            names = ", ".join(
                sorted(c.name for c in sites_root().iterdir() if c.is_dir())
            )
            raise CliError(f"unknown fixture site {args.fixture!r}; have: {names}")
        origin = f"https://{args.fixture}.example/"
        html = index.read_text(encoding="utf-8")
        site_id = f"cl-{args.fixture}-s{args.seed}"
        assets = fixture_site_assets(site_dir, origin, site_id)
    else:
        origin = args.url
        html = _fetch_url(origin)
        from urllib.parse import urlsplit

        site_id = f"cl-{_slug(urlsplit(origin).hostname or 'site')}-s{args.seed}"
    lure, mutation = mutate_url(origin, args.strategy, args.subtlety, args.seed)
    site = clone_page(
        html,
        origin,
        site_id=site_id,
        mutations=(mutation,),
        lure_url=lure,
        created_at=time.time(),
        assets=assets or {},
    )
    store_dir = Path(args.out) if args.out else _store_root(args) / "sites"
    SiteStore(store_dir).save(site)
    payload = {
        "site_id": site.site_id,
        "origin": site.origin,
        "lure_url": site.lure_url,
        "strategy": mutation.strategy.value,
        "mutation": mutation.detail,
        "path": str(store_dir / f"{site.site_id}.json"),
    }
    _emit(
        args,
        payload,
        f"{site.site_id}\nlure   {site.lure_url}\norigin {site.origin}\n"
        f"saved  {payload['path']}",
    )
    return 0


# dialogue -------------------------------------------------------------


def _script_store(args: argparse.Namespace) -> ScriptStore:
    root = Path(args.store) if args.store else _store_root(args) / "scripts"
    return ScriptStore(root)


def _cmd_dialogue_gen(args: argparse.Namespace) -> int:
    config = LlmConfig.from_env()
    if args.questions is not None:
        config = replace(config, questions=args.questions)
    outcome = generate(_ALL_KINDS[args.kind], config)
    store = _script_store(args)
    store.save(outcome.script)
    script = outcome.script
    payload = {
        "script_id": script.script_id,
        "kind": script.kind.value,
        "state": script.review.state.value,
        "provenance": script.provenance.value,
        "fell_back": outcome.fell_back,
        "fallback_reason": outcome.fallback_reason,
    }
    note = ""
    if outcome.fell_back:
        note = f"  (fallback: {outcome.fallback_reason})"
    _emit(
        args,
        payload,
        f"{script.script_id} kind={script.kind.value} "
        f"state={script.review.state.value}{note}",
    )
    return 0


def _cmd_dialogue_review(args: argparse.Namespace) -> int:
    store = _script_store(args)
    if args.list:
        scripts = store.all()
        payload = {
            "scripts": [
                {
                    "script_id": s.script_id,
                    "kind": s.kind.value,
                    "state": s.review.state.value,
                    "provenance": s.provenance.value,
                }
                for s in scripts
            ]
        }
        lines = [
            f"{s.script_id}  {s.kind.value:<6} {s.review.state.value:<9} "
            f"{s.provenance.value}"
            for s in scripts
        ]
        _emit(args, payload, "\n".join(lines) if lines else "no scripts")
        return 0
    if args.reject and not args.reason:
        print("error: --reject requires --reason", file=sys.stderr)
        return 2
    script_id = args.approve or args.reject
    decision = ReviewState.APPROVED if args.approve else ReviewState.REJECTED
    try:
        updated = store.review(
            script_id, decision, args.reviewer, reason=args.reason
        )
    except KeyError:
        raise CliError(f"unknown script id {script_id!r}") from None
    payload = {
        "script_id": updated.script_id,
        "state": updated.review.state.value,
        "reason": updated.review.reason,
    }
    _emit(
        args, payload, f"{updated.script_id} -> {updated.review.state.value}"
    )
    return 0


# analyze --------------------------------------------------------------


def _study_store(args: argparse.Namespace) -> StudyStore:
    if getattr(args, "replica_fixture", False):
        return StudyStore(study_root())
    root = _data_dir(args)
    store = root / "store"
    return StudyStore(store if store.is_dir() else root)


def _cmd_analyze(args: argparse.Namespace) -> int:
    report = build_report(_study_store(args))
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        print(report.to_text())
    return 0


# quiz import ----------------------------------------------------------


def _validated_quiz_row(doc: object, row: int) -> dict:
    if not isinstance(doc, dict):
        raise CliError(f"row {row}: expected a JSON object")
    participant = doc.get("participant_id")
    if not isinstance(participant, str) or not participant:
        raise CliError(f"row {row}: participant_id must be a non-empty string")
    group = doc.get("group")
    if group not in GROUPS:
        raise CliError(f"row {row}: group must be one of {sorted(GROUPS)}")
    answers = doc.get("answers")
    if (
        not isinstance(answers, list)
        or len(answers) != 10
        or not all(isinstance(a, bool) for a in answers)
    ):
        raise CliError(f"row {row}: answers must be a list of 10 booleans")
    received = doc.get("received_at")
    if received is not None and not isinstance(received, (int, float)):
        raise CliError(f"row {row}: received_at must be a number")
    return doc


def _cmd_quiz_import(args: argparse.Namespace) -> int:
    rows: list[tuple[int, dict]] = []
    with open(args.file, encoding="utf-8") as fh:
        for number, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                doc = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CliError(f"row {number}: invalid JSON: {exc}") from None
            rows.append((number, _validated_quiz_row(doc, number)))
    # Validation happens for the whole file before the first append, so a
    # bad row never leaves a half-imported store behind.
    store = StudyStore(_store_root(args))
    now = time.time()
    imported = 0
    duplicates = 0
    for number, doc in rows:
        answers = doc["answers"]
        score = 100.0 * sum(answers) / len(answers)
        _, duplicate = store.add(
            "quiz",
            doc["participant_id"],
            doc["group"],
            {"answers": answers},
            received_at=doc.get("received_at", now + number * 1e-3),
            extra={"score_percent": score},
        )
        imported += 1
        duplicates += duplicate
    payload = {"imported": imported, "duplicates": duplicates}
    _emit(args, payload, f"imported {imported} rows ({duplicates} duplicates)")
    return 0


# parser ---------------------------------------------------------------


def _build_parser(defaults: dict) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("json", "text"),
        default="text",
        help="output format (default: text)",
    )
    common.add_argument(
        "--data-dir",
        default="data",
        help="working directory for stores (default: data, or PR_DATA_DIR)",
    )

    parser = argparse.ArgumentParser(
        prog="phish-range",
        description="Self-hosted phishing-awareness training range.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser(
        "serve", parents=[common], help="run the HTTP service"
    )
    serve.add_argument("--bind", default="127.0.0.1:8000", metavar="HOST:PORT")
    serve.add_argument(
        "--content-bundle",
        default=None,
        metavar="FILE",
        help="bundle file to serve (default: build one from fixtures)",
    )
    serve.add_argument(
        "--i-am-training-only",
        action="store_true",
        help="required to bind beyond loopback",
    )
    serve.add_argument(
        "--webui-dir",
        default=None,
        metavar="DIR",
        help="static web client to mount at /app",
    )
    serve.set_defaults(handler=_cmd_serve)

    ingest = sub.add_parser(
        "ingest", parents=[common], help="validate a message corpus"
    )
    ingest.add_argument("--file", required=True, metavar="F")
    ingest.add_argument(
        "--kind", required=True, choices=sorted(_MESSAGE_KINDS)
    )
    ingest.add_argument("--name", default=None, metavar="N")
    ingest.add_argument(
        "--lenient",
        action="store_true",
        help="drop unmapped-label rows instead of aborting",
    )
    ingest.set_defaults(handler=_cmd_ingest)

    bundle = sub.add_parser(
        "bundle", parents=[common], help="freeze a playable content bundle"
    )
    bundle.add_argument("--out", required=True, metavar="FILE")
    bundle.add_argument("--seed", type=int, default=0)
    bundle.add_argument("--smish-n", type=int, default=20)
    bundle.add_argument("--spear-n", type=int, default=20)
    bundle.add_argument(
        "--smish", default=None, metavar="F", help="smish corpus (default: fixture)"
    )
    bundle.add_argument(
        "--spear", default=None, metavar="F", help="spear corpus (default: fixture)"
    )
    bundle.add_argument(
        "--scripts",
        default=None,
        metavar="DIR",
        help="also include approved scripts from this review store",
    )
    bundle.add_argument(
        "--built-at",
        type=float,
        default=0.0,
        help="build timestamp written into the bundle (default 0.0 so "
        "identical inputs give byte-identical files)",
    )
    bundle.set_defaults(handler=_cmd_bundle)

    clone = sub.add_parser(
        "clone", parents=[common], help="clone a page behind the capture proxy"
    )
    source = clone.add_mutually_exclusive_group(required=True)
    source.add_argument("--fixture", metavar="NAME")
    source.add_argument("--url", metavar="URL")
    clone.add_argument(
        "--strategy",
        type=_strategy,
        default=MutationStrategy.CHAR_SWAP,
        metavar="S",
        help="lure URL mutation: "
        + ", ".join(s.value for s in MutationStrategy),
    )
    clone.add_argument("--subtlety", type=int, default=2, metavar="K")
    clone.add_argument("--seed", type=int, default=0, metavar="N")
    clone.add_argument(
        "--out", default=None, metavar="DIR", help="site store directory"
    )
    clone.set_defaults(handler=_cmd_clone)

    dialogue = sub.add_parser("dialogue", help="dialogue script pipeline")
    dialogue_sub = dialogue.add_subparsers(dest="dialogue_command", required=True)

    gen = dialogue_sub.add_parser(
        "gen", parents=[common], help="generate a script (LLM or fallback)"
    )
    gen.add_argument("--kind", required=True, choices=sorted(_ALL_KINDS))
    gen.add_argument("--questions", type=int, default=None)
    gen.add_argument("--store", default=None, metavar="DIR")
    gen.set_defaults(handler=_cmd_dialogue_gen)

    review = dialogue_sub.add_parser(
        "review", parents=[common], help="list or decide pending scripts"
    )
    action = review.add_mutually_exclusive_group(required=True)
    action.add_argument("--list", action="store_true")
    action.add_argument("--approve", metavar="ID")
    action.add_argument("--reject", metavar="ID")
    review.add_argument("--reason", default=None, metavar="R")
    review.add_argument(
        "--reviewer", default=os.environ.get("USER", "operator"), metavar="NAME"
    )
    review.add_argument("--store", default=None, metavar="DIR")
    review.set_defaults(handler=_cmd_dialogue_review)

    analyze = sub.add_parser(
        "analyze", parents=[common], help="build the study report"
    )
    analyze.add_argument(
        "--replica-fixture",
        action="store_true",
        help="analyze the bundled replica study store instead of --data-dir",
    )
    analyze.set_defaults(handler=_cmd_analyze)

    quiz = sub.add_parser("quiz", help="quiz result tools")
    quiz_sub = quiz.add_subparsers(dest="quiz_command", required=True)
    quiz_import = quiz_sub.add_parser(
        "import", parents=[common], help="bulk-load quiz results from JSONL"
    )
    quiz_import.add_argument("--file", required=True, metavar="F")
    quiz_import.set_defaults(handler=_cmd_quiz_import)

    # Parser-level defaults override argument-level ones, so config file
    # and environment values land here, and explicit flags still win.
    for p in (
        parser,
        serve,
        ingest,
        bundle,
        clone,
        gen,
        review,
        analyze,
        quiz_import,
    ):
        p.set_defaults(**defaults)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        parser = _build_parser(_merged_defaults())
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
        return args.handler(args)
    except PhishRangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
