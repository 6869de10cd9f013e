"""Bundled sample data so the full pipeline runs without downloads."""

from importlib import resources


def _root():
    return resources.files("phishrange") / "fixtures"


def dataset_path(name: str):
    """Path to a bundled message corpus, e.g. dataset_path("smish")."""
    return _root() / "datasets" / f"{name}.csv"


def sites_root():
    """Directory of fixture web sites, one subdirectory per origin."""
    return _root() / "sites"


def study_root():
    """Directory of replica study records (surveys, quiz scores)."""
    return _root() / "study"
