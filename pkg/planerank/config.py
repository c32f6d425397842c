from dataclasses import dataclass
import os

from dotenv import load_dotenv

load_dotenv()


@dataclass(frozen=True)
class Settings:
    # Parallelism (oracle census parts, simulation replicates)
    threads: int

    # Oracle guard rails
    oracle_cap: int
    oracle_force_cap: int

    # Limit-constant quadrature defaults
    limits_kmax: int
    step: float

    # Logging
    log_level: str


def _load_settings() -> Settings:
    return Settings(
        threads=max(1, int(os.getenv("THREADS", "1"))),
        oracle_cap=int(os.getenv("PLANERANK_ORACLE_CAP", "9")),
        oracle_force_cap=int(os.getenv("PLANERANK_ORACLE_FORCE_CAP", "10")),
        limits_kmax=int(os.getenv("PLANERANK_LIMITS_KMAX", "6")),
        step=float(os.getenv("PLANERANK_STEP", "1e-6")),
        log_level=os.getenv("PLANERANK_LOG_LEVEL", "WARNING").upper(),
    )


settings = _load_settings()
