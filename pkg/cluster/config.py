"""Settings read from the environment (and a .env file, if present)."""

import os
from dataclasses import dataclass

from dotenv import load_dotenv


def _flag(value: str) -> bool:
    return value.strip().lower() in {"1", "true", "yes", "y", "on"}


@dataclass
class Settings:
    parallelism: int = 8
    pit_trials: int = 20
    progress: bool = True

    @classmethod
    def from_env(cls) -> "Settings":
        load_dotenv()
        defaults = cls()
        try:
            return cls(
                parallelism=int(os.environ.get("WORKBENCH_PARALLELISM", defaults.parallelism)),
                pit_trials=int(os.environ.get("WORKBENCH_PIT_TRIALS", defaults.pit_trials)),
                progress=_flag(os.environ.get("WORKBENCH_PROGRESS", str(defaults.progress))),
            )
        except ValueError as e:
            raise ValueError(f"Invalid workbench setting in the environment: {e}") from e
