"""Service wiring: data directory, content bundle, injectable clocks."""

from __future__ import annotations

import secrets
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping

from phishrange.content import ContentBundle
from phishrange.engine import DEFAULT_DIFFICULTIES, DEFAULT_MAP_SIZE
from phishrange.engine.types import Difficulty


def random_seed() -> int:
    return secrets.randbits(32)


@dataclass
class ServiceConfig:
    """Everything the HTTP layer needs, with all nondeterminism injectable.

    ``clock`` is a monotonic seconds source and the only timing authority
    for challenges: session logical time is milliseconds of ``clock`` since
    that session's creation, and request bodies carry no timestamps.
    ``wall`` is wall-clock seconds, used for receipts, idle expiry, and
    leaderboard tie-breaking. Tests swap both for fakes.
    """

    data_dir: Path
    bundle: ContentBundle
    clock: Callable[[], float] = time.monotonic
    wall: Callable[[], float] = time.time
    seed_source: Callable[[], int] = field(default=random_seed)
    session_idle_seconds: float = 86400.0
    map_size: tuple[int, int] = DEFAULT_MAP_SIZE
    webui_dir: Path | None = None
    difficulties: Mapping[str, Difficulty] = field(
        default_factory=lambda: DEFAULT_DIFFICULTIES
    )

    def __post_init__(self) -> None:
        self.data_dir = Path(self.data_dir)
        if self.webui_dir is not None:
            self.webui_dir = Path(self.webui_dir)
        if self.session_idle_seconds <= 0:
            raise ValueError("session_idle_seconds must be positive")

    @property
    def store_dir(self) -> Path:
        return self.data_dir / "store"
