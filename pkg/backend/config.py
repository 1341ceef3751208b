"""
Runtime configuration.

Values come from the environment (a .env file is honoured); CLI flags
override them and are validated the same way.
"""
import logging
import os
import sys
from enum import Enum

from dotenv import load_dotenv
from pydantic import BaseModel, Field

from backend.models import SolveBudget

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    DOT = "dot"


class ToolConfig(BaseModel):
    node_budget: int = Field(default=10 ** 8, gt=0, description="Solver conflict budget per instance")
    time_budget: float = Field(default=60.0, gt=0, description="Seconds per instance")
    workers: int = Field(default=1, ge=1, description="Processes for sweep and conjecture")
    output_dir: str = Field(default=".", description="Where relative output paths are resolved")
    format: OutputFormat = Field(default=OutputFormat.JSON)
    space_limit: int = Field(default=200000, gt=0, description="Largest sweep space accepted")
    db_path: str = Field(default="backend/results.db", description="SQLite result store")
    log_level: str = Field(default="WARNING")

    @property
    def budget(self) -> SolveBudget:
        return SolveBudget(nodes=self.node_budget, seconds=self.time_budget)


_ENV = {
    "node_budget": "SIGMA_NODE_BUDGET",
    "time_budget": "SIGMA_TIME_BUDGET",
    "workers": "SIGMA_WORKERS",
    "output_dir": "SIGMA_OUTPUT_DIR",
    "format": "SIGMA_FORMAT",
    "space_limit": "SIGMA_SPACE_LIMIT",
    "db_path": "SIGMA_DB_PATH",
    "log_level": "SIGMA_LOG_LEVEL",
}


def load_config() -> ToolConfig:
    load_dotenv()
    values = {field: os.getenv(var) for field, var in _ENV.items()}
    return ToolConfig(**{k: v for k, v in values.items() if v is not None})


def configure_logging(level: str = "WARNING") -> None:
    """Diagnostics go to stderr; stdout is reserved for data."""
    logging.basicConfig(stream=sys.stderr, level=level.upper(), format=LOG_FORMAT, force=True)
