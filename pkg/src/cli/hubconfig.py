"""
Defaults for the analyze command, read from HUB_* environment variables or
an optional .env file. Command-line flags override anything set here.
"""

from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.oracle.brute_force import DEFAULT_CAP
from src.oracle.numeric import (
    DEFAULT_EPSILONS,
    DEFAULT_MIN_EPSILON,
    DEFAULT_THRESHOLD,
    DEFAULT_TOLERANCE,
)


class SweepConfig(BaseModel):
    """Numerical epsilon-sweep configuration.

    Attributes:
        epsilons : List[float]
            epsilon values to solve at
        threshold : float (default: 0.01)
            smallest stationary weight that still counts as stable
        min_epsilon : float (default: 1e-5)
            values below this are dropped as too ill-conditioned
        tolerance : float (default: 1e-12)
            residual bound for each stationary solve
    """

    epsilons: List[float] = Field(default_factory=lambda: list(DEFAULT_EPSILONS))
    threshold: float = DEFAULT_THRESHOLD
    min_epsilon: float = DEFAULT_MIN_EPSILON
    tolerance: float = DEFAULT_TOLERANCE

    @field_validator("epsilons")
    @classmethod
    def _in_unit_interval(cls, value: List[float]) -> List[float]:
        if not value:
            raise ValueError("at least one epsilon is needed")
        for epsilon in value:
            if not 0 < epsilon <= 1:
                raise ValueError(f"epsilon {epsilon} is outside (0, 1]")
        return value


class HubSettings(BaseSettings):
    """Settings for hub_stability

    Attributes:

        cap : int
            largest graph the brute-force oracles accept
        workers : int
            threads for the per-transient Dijkstra runs and the sweep
        sweep : SweepConfig
            instance of the Pydantic sweep model
    """

    cap: int = Field(default=DEFAULT_CAP, ge=1)
    workers: int = Field(default=1, ge=1)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    model_config = SettingsConfigDict(
        env_prefix="HUB_",
        env_file=".env",
        env_file_encoding="utf-8",
        env_nested_delimiter="__",
        extra="ignore",
    )


def load_settings(env_dir: Optional[str] = None) -> HubSettings:
    """Settings from the environment, plus env_dir/.env when it exists"""
    if env_dir and (Path(env_dir) / ".env").exists():
        return HubSettings(_env_file=Path(env_dir) / ".env")  # type: ignore[call-arg]
    return HubSettings()
