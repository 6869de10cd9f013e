"""Boot the range service for browser tests.

Same wiring as production except the hazard timer is two seconds so a
deliberate timeout costs the suite seconds, not minutes, and the session
seed is pinned so every run deals the same missions (the clone mission is
all web judgments, which the capture leg relies on).

Usage: python3 e2e_server.py PORT DATA_DIR WEBUI_DIR
"""

import sys
from pathlib import Path

import uvicorn

from phishrange.content import default_bundle
from phishrange.engine.types import Difficulty
from phishrange.ranged import ServiceConfig, create_app

BLITZ = {
    "Easy": Difficulty(label="Easy", challenge_count=3, timer_seconds=2, lure_subtlety=1),
    "Medium": Difficulty(label="Medium", challenge_count=4, timer_seconds=2, lure_subtlety=2),
    "Hard": Difficulty(label="Hard", challenge_count=5, timer_seconds=2, lure_subtlety=3),
}


def main() -> None:
    port = int(sys.argv[1])
    data_dir = Path(sys.argv[2])
    webui_dir = Path(sys.argv[3])
    config = ServiceConfig(
        data_dir=data_dir,
        bundle=default_bundle(seed=7),
        seed_source=lambda: 11,
        webui_dir=webui_dir,
        difficulties=BLITZ,
    )
    uvicorn.run(create_app(config), host="127.0.0.1", port=port, log_level="warning")


if __name__ == "__main__":
    main()
