"""CSV corpus ingestion and deterministic sampling.

Expected file shape: UTF-8, comma separated, RFC-4180 quoting, header row.
Required columns are ``text`` and ``label``; ``sender``, ``subject`` and
``source`` are picked up when present. Raw labels go through a mapping table
so third-party dumps (ham/spam style) can be used without editing the files.
"""

from __future__ import annotations

import csv
import random
import time
from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from phishrange.engine import PhishingKind
from phishrange.errors import (
    EmptyDataset,
    MissingColumn,
    SampleTooLarge,
    UnknownLabel,
)


class Label(str, Enum):
    PHISH = "Phish"
    LEGIT = "Legit"


# Raw CSV label -> Label. Lowercased before lookup. Deliberately small:
# "spam" is absent because bulk advertising is not phishing, and silently
# treating it as such would poison the ground truth.
DEFAULT_LABEL_MAP: Mapping[str, Label] = {
    "phish": Label.PHISH,
    "phishing": Label.PHISH,
    "smish": Label.PHISH,
    "smishing": Label.PHISH,
    "spear": Label.PHISH,
    "legit": Label.LEGIT,
    "legitimate": Label.LEGIT,
    "ham": Label.LEGIT,
}

_MESSAGE_KINDS = (PhishingKind.SMISH, PhishingKind.SPEAR)


class FrozenMap(Mapping):
    """Immutable, hashable string map so samples stay usable in sets."""

    __slots__ = ("_items",)

    def __init__(self, items=()):
        if isinstance(items, Mapping):
            items = items.items()
        self._items = tuple(sorted(items))

    def __getitem__(self, key):
        for k, v in self._items:
            if k == key:
                return v
        raise KeyError(key)

    def __iter__(self):
        return (k for k, _ in self._items)

    def __len__(self):
        return len(self._items)

    def __hash__(self):
        return hash(self._items)

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return dict(self) == dict(other)
        return NotImplemented

    def __repr__(self):
        return f"FrozenMap({dict(self._items)!r})"


@dataclass(frozen=True)
class MessageSample:
    sample_id: str
    kind: PhishingKind
    text: str
    label: Label
    source: str
    metadata: Mapping = field(default_factory=FrozenMap)

    def __post_init__(self):
        if self.kind not in _MESSAGE_KINDS:
            raise ValueError(f"message samples are Smish or Spear, not {self.kind.value}")
        if not self.text:
            raise ValueError("sample text must be non-empty")
        if not isinstance(self.metadata, FrozenMap):
            object.__setattr__(self, "metadata", FrozenMap(self.metadata))


@dataclass(frozen=True)
class Dataset:
    name: str
    kind: PhishingKind
    samples: tuple[MessageSample, ...]
    ingested_at: float

    def __post_init__(self):
        ids = [s.sample_id for s in self.samples]
        if len(ids) != len(set(ids)):
            raise ValueError("sample_ids must be unique within a dataset")

    def __len__(self):
        return len(self.samples)


@dataclass(frozen=True)
class IngestResult:
    dataset: Dataset
    accepted: int
    rejected_rows: tuple[int, ...]

    @property
    def rejected(self) -> int:
        return len(self.rejected_rows)


def ingest_dataset(
    path,
    format: str = "csv",
    kind: PhishingKind = PhishingKind.SMISH,
    *,
    name: str | None = None,
    label_map: Mapping[str, Label] | None = None,
    on_unknown_label: str = "raise",
    ingested_at: float | None = None,
) -> IngestResult:
    """Read a message corpus into an immutable Dataset.

    ``on_unknown_label`` is "raise" (default: the first unmapped label aborts
    with UnknownLabel carrying its row number) or "reject" (unmapped and
    empty-text rows are dropped but counted, so accepted + rejected equals
    the number of data rows).
    """
    if format != "csv":
        raise ValueError(f"unsupported dataset format {format!r}")
    if on_unknown_label not in ("raise", "reject"):
        raise ValueError("on_unknown_label must be 'raise' or 'reject'")
    label_map = DEFAULT_LABEL_MAP if label_map is None else label_map

    path = str(path)
    dataset_name = name if name is not None else path.rsplit("/", 1)[-1].rsplit(".", 1)[0]

    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for required in ("text", "label"):
            if required not in header:
                raise MissingColumn(f"dataset {path!r} is missing column {required!r}")

        samples: list[MessageSample] = []
        rejected: list[int] = []
        for row in reader:
            line = reader.line_num
            raw_label = (row.get("label") or "").strip().lower()
            text = (row.get("text") or "").strip()
            mapped = label_map.get(raw_label)
            if mapped is None:
                if on_unknown_label == "raise":
                    raise UnknownLabel(line, raw_label)
                rejected.append(line)
                continue
            if not text:
                rejected.append(line)
                continue
            metadata = {
                key: value.strip()
                for key in ("sender", "subject")
                if (value := row.get(key)) is not None and value.strip()
            }
            samples.append(
                MessageSample(
                    sample_id=f"{dataset_name}-r{line:05d}",
                    kind=kind,
                    text=text,
                    label=mapped,
                    source=(row.get("source") or "").strip() or dataset_name,
                    metadata=metadata,
                )
            )

    if not samples:
        raise EmptyDataset(f"dataset {path!r} yielded no usable rows")

    dataset = Dataset(
        name=dataset_name,
        kind=kind,
        samples=tuple(samples),
        ingested_at=time.time() if ingested_at is None else ingested_at,
    )
    return IngestResult(dataset=dataset, accepted=len(samples), rejected_rows=tuple(rejected))


def sample_items(dataset: Dataset, n: int, seed: int) -> list[MessageSample]:
    """Draw n distinct samples without replacement, deterministic in
    (dataset order, n, seed)."""
    if n < 0:
        raise ValueError("sample count must be non-negative")
    if n > len(dataset.samples):
        raise SampleTooLarge(
            f"asked for {n} samples from a dataset of {len(dataset.samples)}"
        )
    rng = random.Random(f"{seed}:questgen:sample")
    return rng.sample(list(dataset.samples), n)


def samples_from_rows(
    rows: Sequence[Mapping[str, str]],
    kind: PhishingKind,
    name: str,
    *,
    label_map: Mapping[str, Label] | None = None,
    ingested_at: float = 0.0,
) -> Dataset:
    """Build a Dataset directly from in-memory rows (tests, ad-hoc tooling)."""
    label_map = DEFAULT_LABEL_MAP if label_map is None else label_map
    samples = []
    for i, row in enumerate(rows, start=2):  # mirror CSV numbering: header is row 1
        mapped = label_map.get(row["label"].strip().lower())
        if mapped is None:
            raise UnknownLabel(i, row["label"])
        metadata = {k: row[k] for k in ("sender", "subject") if row.get(k)}
        samples.append(
            MessageSample(
                sample_id=f"{name}-r{i:05d}",
                kind=kind,
                text=row["text"],
                label=mapped,
                source=row.get("source") or name,
                metadata=metadata,
            )
        )
    if not samples:
        raise EmptyDataset(f"no rows supplied for dataset {name!r}")
    return Dataset(name=name, kind=kind, samples=tuple(samples), ingested_at=ingested_at)
