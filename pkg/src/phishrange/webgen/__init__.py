"""Clone-site generation: HTML rewriting, lure URL mutation, capture store."""

from phishrange.webgen.mutate import (
    MutationStrategy,
    UrlMutation,
    apply_mutation,
    load_confusables,
    mutate_url,
)
from phishrange.webgen.rewrite import ClonedSite, SiteAsset, clone_page
from phishrange.webgen.store import (
    CaptureRecord,
    CaptureStore,
    SiteStore,
    capture_submission,
    site_from_dict,
    site_to_dict,
)

__all__ = [
    "CaptureRecord",
    "CaptureStore",
    "ClonedSite",
    "MutationStrategy",
    "SiteAsset",
    "SiteStore",
    "UrlMutation",
    "apply_mutation",
    "capture_submission",
    "clone_page",
    "load_confusables",
    "mutate_url",
    "site_from_dict",
    "site_to_dict",
]
