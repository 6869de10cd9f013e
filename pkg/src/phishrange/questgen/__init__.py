"""Dataset ingestion and challenge sampling for message-based missions."""

from phishrange.questgen.build import build_judgment
from phishrange.questgen.cues import annotate_cues
from phishrange.questgen.ingest import (
    DEFAULT_LABEL_MAP,
    Dataset,
    IngestResult,
    Label,
    MessageSample,
    ingest_dataset,
    sample_items,
)

__all__ = [
    "DEFAULT_LABEL_MAP",
    "Dataset",
    "IngestResult",
    "Label",
    "MessageSample",
    "annotate_cues",
    "build_judgment",
    "ingest_dataset",
    "sample_items",
]
