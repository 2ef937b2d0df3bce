"""Run configuration for the command-line interface."""

import argparse
from dataclasses import dataclass, fields
from enum import Enum
from pathlib import Path
from typing import ClassVar

from avgmdp.errors import ParameterError


class Precision(Enum):
    """Working precision for the closed-form computations."""

    DOUBLE = "double"
    EXTENDED = "extended"

    @property
    def dps(self) -> int:
        """mpmath decimal digits."""
        return 15 if self is Precision.DOUBLE else 50


class Builtin(Enum):
    """Models available without a model file."""

    EXAMPLE41 = "example41"
    RANDOM = "random"
    ABSORBING = "absorbing"


ADVERSARIAL_GRID = "example41"


def parse_grid(spec: str, adversarial: list[float] | None = None) -> tuple[float, ...]:
    """Parse an α-grid spec.

    Accepted forms are ``geometric:K1:K2`` (α = 1 − 2⁻ᵏ for k = K1..K2), a
    comma-separated list of numbers, and ``example41`` (the adversarial grid,
    which the caller supplies as ``adversarial``).

    Raises:
        ParameterError: If the spec is malformed or the grid is not strictly
            increasing inside [0, 1)
    """
    spec = spec.strip()
    if spec == ADVERSARIAL_GRID:
        if adversarial is None:
            msg = "The example41 grid is only available for the example41 model"
            raise ParameterError(msg)
        grid = tuple(adversarial)
    elif spec.startswith("geometric:"):
        try:
            _, first, last = spec.split(":")
            low, high = int(first), int(last)
        except ValueError:
            msg = f"Bad geometric grid spec {spec!r}; expected geometric:K1:K2"
            raise ParameterError(msg) from None
        if not 0 <= low <= high:
            msg = f"Geometric grid needs 0 ≤ K1 ≤ K2, got {spec!r}"
            raise ParameterError(msg)
        grid = tuple(1.0 - 2.0**-k for k in range(low, high + 1))
    else:
        try:
            grid = tuple(float(item) for item in spec.split(","))
        except ValueError:
            msg = f"Bad grid spec {spec!r}"
            raise ParameterError(msg) from None

    if any(not 0.0 <= a < 1.0 for a in grid):
        msg = f"Grid {spec!r} leaves [0, 1)"
        raise ParameterError(msg)
    if any(b <= a for a, b in zip(grid, grid[1:], strict=False)):
        msg = f"Grid {spec!r} is not strictly increasing"
        raise ParameterError(msg)
    return grid


@dataclass(frozen=True)
class RunConfig:
    """Validated settings of one CLI invocation."""

    DEFAULT_GRID: ClassVar[str] = "geometric:1:20"
    DEFAULT_EXAMPLE_GRID: ClassVar[str] = ADVERSARIAL_GRID

    command: str
    action: str | None = None
    model_path: Path | None = None
    builtin: Builtin | None = None
    alpha: float = 0.9
    alpha_grid: str | None = None
    horizon: int = 10
    tol: float = 1e-9
    branches: int = 3
    precision: Precision = Precision.EXTENDED
    threads: int = 1
    out: Path | None = None
    seed: int = 0
    states: int = 4
    actions: int = 2
    source: str = "auto"
    beta: float = 0.5
    m: float = 1.0
    alpha1: float = 0.5
    samples: int = 50
    verbose: bool = False

    def __post_init__(self) -> None:
        if self.tol <= 0:
            msg = f"--tol must be positive, got {self.tol}"
            raise ParameterError(msg)
        if self.threads < 1:
            msg = f"--threads must be at least 1, got {self.threads}"
            raise ParameterError(msg)
        if self.branches < 1:
            msg = f"--branches must be at least 1, got {self.branches}"
            raise ParameterError(msg)
        if not 0.0 <= self.alpha <= 1.0:
            msg = f"--alpha must lie in [0, 1], got {self.alpha}"
            raise ParameterError(msg)
        if self.horizon < 1:
            msg = f"--horizon must be at least 1, got {self.horizon}"
            raise ParameterError(msg)
        if self.states < 1 or self.actions < 1:
            msg = "--states and --actions must be at least 1"
            raise ParameterError(msg)
        if self.samples < 1:
            msg = f"--samples must be at least 1, got {self.samples}"
            raise ParameterError(msg)

    @property
    def grid_spec(self) -> str:
        """Grid spec in force, with the per-model default."""
        if self.alpha_grid is not None:
            return self.alpha_grid
        if self.builtin is Builtin.EXAMPLE41:
            return self.DEFAULT_EXAMPLE_GRID
        return self.DEFAULT_GRID

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> "RunConfig":
        """Build a config from parsed arguments; absent options keep defaults.

        Raises:
            ParameterError: If a value is out of range
        """
        values = vars(args)
        chosen = {
            f.name: values[f.name]
            for f in fields(cls)
            if values.get(f.name) is not None
        }
        if "builtin" in chosen:
            chosen["builtin"] = Builtin(chosen["builtin"])
        if "precision" in chosen:
            chosen["precision"] = Precision(chosen["precision"])
        return cls(**chosen)
