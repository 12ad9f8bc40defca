"""Configuration loading and validated run settings for the CLI."""

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Tuple

import yaml

from RDS.src.errors import UsageError

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "configs" / "defaults.yaml"

COMMANDS = ("spectrum", "verify", "sweep", "quotient", "decompose")
OUTPUT_FORMATS = ("json", "csv", "human")


def load_config(config_path=None):
    path = Path(config_path) if config_path else DEFAULT_CONFIG_PATH
    if not path.exists():
        raise UsageError(f"config file not found: {path}")
    with open(path) as f:
        return yaml.safe_load(f) or {}


def parse_alpha_list(text: str) -> Tuple[float, ...]:
    """Parse a comma-separated list of decimals such as "0,0.5,1"."""
    values = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            values.append(float(token))
        except ValueError:
            raise UsageError(f"invalid alpha value: {token!r}")
    return tuple(values)


@dataclass(frozen=True)
class Tolerances:
    match: float = 1e-8
    coalesce: float = 1e-7
    jacobi: float = 1e-13
    equitable: float = 1e-9
    imaginary: float = 1e-8
    max_sweeps: int = 100

    @classmethod
    def from_config(cls, config: dict, match: Optional[float] = None) -> "Tolerances":
        tol = config.get("tolerances", {})
        solver = config.get("solver", {})
        return cls(
            match=float(match if match is not None else tol.get("match", cls.match)),
            coalesce=float(tol.get("coalesce", cls.coalesce)),
            jacobi=float(tol.get("jacobi", cls.jacobi)),
            equitable=float(tol.get("equitable", cls.equitable)),
            imaginary=float(tol.get("imaginary", cls.imaginary)),
            max_sweeps=int(solver.get("max_sweeps", cls.max_sweeps)),
        )


@dataclass(frozen=True)
class RunConfig:
    """Settings for one CLI invocation, validated at construction."""

    command: str
    input: Optional[str]
    alphas: Tuple[float, ...]
    tolerances: Tolerances = field(default_factory=Tolerances)
    output_format: str = "human"
    output_path: Optional[str] = None
    compare_printed: bool = False
    workers: int = 1
    experiment: str = "rd-alpha-verification"
    track: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command: {self.command}")
        if not self.alphas:
            raise UsageError("alpha list is empty")
        for a in self.alphas:
            if not 0.0 <= a <= 1.0:
                raise UsageError(f"alpha must lie in [0, 1], got {a}")
        if self.tolerances.match <= 0:
            raise UsageError("tolerance must be positive")
        if self.output_format not in OUTPUT_FORMATS:
            raise UsageError(f"unknown output format: {self.output_format}")
        if self.workers < 1:
            raise UsageError("workers must be at least 1")

    @property
    def tol(self) -> float:
        return self.tolerances.match


def build_run_config(
    command: str,
    input_value: Optional[str],
    config: dict,
    alpha_text: Optional[str] = None,
    tol: Optional[float] = None,
    output_format: Optional[str] = None,
    output_path: Optional[str] = None,
    compare_printed: bool = False,
    workers: Optional[int] = None,
    track: bool = False,
) -> RunConfig:
    """Layer CLI arguments over the YAML defaults."""
    alphas: Sequence[float]
    if alpha_text is not None:
        alphas = parse_alpha_list(alpha_text)
    else:
        alphas = tuple(float(a) for a in config.get("alphas", (0.0, 0.25, 0.5, 0.75, 1.0)))

    sweep_cfg = config.get("sweep", {})
    default_workers = min(int(sweep_cfg.get("workers", 4)), os.cpu_count() or 1)

    return RunConfig(
        command=command,
        input=input_value,
        alphas=tuple(alphas),
        tolerances=Tolerances.from_config(config, match=tol),
        output_format=output_format or config.get("output", {}).get("format", "human"),
        output_path=output_path,
        compare_printed=compare_printed,
        workers=workers if workers is not None else default_workers,
        experiment=config.get("tracking", {}).get("experiment", "rd-alpha-verification"),
        track=track,
    )
