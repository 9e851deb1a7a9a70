"""Run configuration: defaults, config-file parsing, flag precedence."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["RunConfig", "load_config_file", "ConfigError", "KNOWN_KEYS"]

DEFAULT_L = 1024
DEFAULT_DELTA = 1.0 / 32.0

# every key a config file may set; command-line flags mirror these
KNOWN_KEYS = {
    "L",
    "delta",
    "window",
    "alpha",
    "beta",
    "outdir",
    "cache",
    "threads",
    "wrap_tol",
    "snap_tol",
    "res",
    "m",
    "base",
    "points",
    "domain",
    "alpha_range",
    "beta_range",
    "variant",
    "signal_window",
}


class ConfigError(ValueError):
    """Malformed configuration file or invalid value."""


def _power_factor(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


@dataclass
class RunConfig:
    """Resolved configuration shared by all commands."""

    L: int = DEFAULT_L
    delta: float = DEFAULT_DELTA
    window: str = "gaussian"
    outdir: str = "."
    cache: bool = True
    threads: int = 1
    wrap_tol: float = 1e-12
    extra: dict = field(default_factory=dict)  # command-specific parameters

    def validate(self) -> None:
        if self.L <= 0 or self.L % 2 != 0:
            raise ConfigError(f"L must be a positive even integer, got {self.L}")
        if _power_factor(_power_factor(self.L, 2), 3) != 1:
            raise ConfigError(
                f"L must factor as a power of two times a power of three, got {self.L}"
            )
        if not (self.delta > 0):
            raise ConfigError(f"delta must be positive, got {self.delta}")
        if self.threads < 1:
            raise ConfigError("threads must be at least 1")


def load_config_file(path: str) -> dict[str, str]:
    """Parse a line-oriented ``key = value`` file.

    Blank lines are skipped; a line must contain exactly one '='; unknown
    keys are errors.  Returns raw string values (typing happens at merge).
    """
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.count("=") != 1:
                raise ConfigError(f"{path}:{lineno}: malformed line {line!r}")
            key, value = (part.strip() for part in line.split("="))
            if not key or not value:
                raise ConfigError(f"{path}:{lineno}: malformed line {line!r}")
            if key not in KNOWN_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = value
    return values
