"""Self-hosted phishing-awareness training range.

The package is organised as a set of largely independent subpackages:

``engine``
    Deterministic, event-sourced state machine for training sessions.
``webgen``
    Clone-site asset rewriting, lure URL mutation, and the salted
    credential-capture store.
``questgen``
    Ingestion of real phishing corpora into legitimacy-judgment challenges.
``dialoggen``
    LLM-backed dialogue generation with a mandatory human review gate.
``analytics``
    Study statistics (pooled t-test) and report assembly.
``ranged``
    FastAPI application tying everything together.

The command line entry point lives in :mod:`phishrange.cli`.
"""

__version__ = "0.1.0"
