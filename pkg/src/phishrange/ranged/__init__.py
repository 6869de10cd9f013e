"""HTTP service: session lifecycle, timing authority, leaderboard, proxy."""

from phishrange.ranged.app import ApiError, RangeService, create_app
from phishrange.ranged.config import ServiceConfig
from phishrange.ranged.stores import (
    JsonlStore,
    ParticipantStore,
    SessionLog,
    StudyStore,
)

__all__ = [
    "ApiError",
    "JsonlStore",
    "ParticipantStore",
    "RangeService",
    "ServiceConfig",
    "SessionLog",
    "StudyStore",
    "create_app",
]
