# src/hyperturan/config.py
import os
from dataclasses import asdict, dataclass, field
from enum import Enum

from hyperturan.exceptions import InvalidArgumentError

DEFAULT_CEILING = 100  # largest C(n, k) the exact search accepts
DEFAULT_SPLIT_DEPTH = 3
THREADS_ENV_VAR = "HYPERTURAN_THREADS"


class OutputFormat(Enum):
    TEXT = "text"
    JSON = "json"


@dataclass(frozen=True)
class SearchBudget:
    """Caps on the exact search; None means unlimited."""

    max_nodes: int | None = None
    max_seconds: float | None = None

    def __post_init__(self):
        if self.max_nodes is not None and self.max_nodes < 1:
            raise InvalidArgumentError(f"max_nodes must be positive, got {self.max_nodes}")
        if self.max_seconds is not None and self.max_seconds <= 0:
            raise InvalidArgumentError(f"max_seconds must be positive, got {self.max_seconds}")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    inputs: tuple[str, ...] = ()
    parameters: dict[str, object] = field(default_factory=dict, hash=False)
    output: str | None = None
    output_format: OutputFormat = OutputFormat.TEXT
    threads: int = 1
    ceiling: int = DEFAULT_CEILING

    def to_dict(self) -> dict:
        data = asdict(self)
        data["inputs"] = list(self.inputs)
        data["output_format"] = self.output_format.value
        data["parameters"] = {
            key: value for key, value in sorted(self.parameters.items()) if value is not None
        }
        return data


def resolve_threads(flag: int | None) -> int:
    """The --threads flag wins over the environment variable; the default is 1."""
    if flag is not None:
        value = flag
    else:
        raw = os.environ.get(THREADS_ENV_VAR, "").strip()
        if not raw:
            return 1
        try:
            value = int(raw)
        except ValueError:
            message = f"{THREADS_ENV_VAR} must be an integer, got {raw!r}"
            raise InvalidArgumentError(message) from None
    if value < 1:
        raise InvalidArgumentError(f"Thread count must be at least 1, got {value}")
    return value
