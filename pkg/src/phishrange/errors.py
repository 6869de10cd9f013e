"""Exception hierarchy shared across the package.

Every module raises subclasses of :class:`PhishRangeError` so callers can
catch one base type at process boundaries (the HTTP service and the CLI)
and map it to a status code or exit code.
"""


class PhishRangeError(Exception):
    """Base class for all errors raised by this package."""


# --- engine ---------------------------------------------------------------

class EngineError(PhishRangeError):
    """Base class for rule violations inside the session state machine."""


class OutOfBounds(EngineError):
    """Move target is outside the map bounds."""


class NotAtMission(EngineError):
    """start_challenge for a mission the player is not standing on."""


class MissionAlreadyComplete(EngineError):
    """start_challenge for a mission with nothing left to answer."""


class ChallengeAlreadyActive(EngineError):
    """start_challenge while another challenge is in flight."""


class NoActiveChallenge(EngineError):
    """An answer was submitted while no challenge is active."""


class PayloadShapeMismatch(EngineError):
    """The answer payload does not fit the active challenge type."""


class SessionNotActive(EngineError):
    """An operation was attempted on a completed or failed session."""


class InsufficientContent(EngineError):
    """The content bundle cannot cover the requested difficulty."""


class CorruptLog(EngineError):
    """An event log is not a valid history (non-monotonic timestamps)."""


# --- webgen ---------------------------------------------------------------

class WebgenError(PhishRangeError):
    """Base class for clone-site generation errors."""


class NotHtml(WebgenError):
    """Clone input is binary or not decodable as an HTML document."""


class UnmutableUrl(WebgenError):
    """The chosen mutation strategy cannot apply to this URL."""


class UnknownSite(WebgenError):
    """No stored clone matches the requested site id."""


# --- questgen -------------------------------------------------------------

class QuestgenError(PhishRangeError):
    """Base class for corpus ingestion errors."""


class MissingColumn(QuestgenError):
    """A dataset file lacks a required header column."""


class UnknownLabel(QuestgenError):
    """A dataset row carries a label with no configured mapping."""

    def __init__(self, row: int, label: str):
        super().__init__(f"row {row}: unmapped label {label!r}")
        self.row = row
        self.label = label


class EmptyDataset(QuestgenError):
    """A dataset file contains no data rows."""


class SampleTooLarge(QuestgenError):
    """More samples were requested than the dataset holds."""


# --- dialoggen ------------------------------------------------------------

class DialoggenError(PhishRangeError):
    """Base class for dialogue generation errors."""


class LlmUnavailable(DialoggenError):
    """The configured LLM endpoint could not be reached or rejected us."""


class NotPending(DialoggenError):
    """A review decision was submitted for a script not awaiting review."""


# --- analytics ------------------------------------------------------------

class AnalyticsError(PhishRangeError):
    """Base class for analytics errors."""


class TooFewScores(AnalyticsError):
    """A variance-bearing statistic needs at least two values per group."""


class ScoreOutOfRange(AnalyticsError):
    """A percentage score fell outside [0, 100]."""


class EmptyInput(AnalyticsError):
    """An aggregate was requested over an empty collection."""


# --- content / service ----------------------------------------------------

class ContentError(PhishRangeError):
    """Base class for content bundle assembly errors."""


class UnreviewedContent(ContentError):
    """A bundle was asked to include a dialogue script that is not Approved."""


class StoreError(PhishRangeError):
    """A persistence record could not be written or read back."""
