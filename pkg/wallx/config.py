"""
Run configuration: defaults < config file < command-line flags.

Config files are flat ``key = value`` lines; ``#`` starts a comment. The
file path comes from --config, else WALLX_CONFIG, else nothing is read.
"""

import dataclasses
import logging
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from wallx.errors import ConfigError
from wallx.wallcross import MODES, WindowConfig

log = logging.getLogger(__name__)

CONFIG_ENV = "WALLX_CONFIG"
FORMATS = ("json", "csv")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@dataclass(frozen=True)
class RunConfig:
    command: Optional[str] = None
    # pt-local
    c_max: int = 1
    n_max: int = 8
    mode: str = "behrend"
    # dt
    r: int = 0
    c: int = 1
    m2: int = -1
    # series
    which: str = "eta3"
    order: Fraction = Fraction(4)
    theta_r: int = 2
    theta_a: int = 0
    # check-constraint
    d_beta0: Optional[Fraction] = None
    l_beta0: Optional[Fraction] = None
    n: int = 5
    shift: int = 1
    n_floor: int = 0
    # windows
    m_window: int = 3
    r_window: int = 3
    n_pad: int = 3
    saturation_steps: int = 2
    max_candidates: int = 2_000_000
    # runtime
    threads: int = 1
    out: Optional[str] = None
    dt_table: Optional[str] = None
    fmt: str = "json"
    prefer_user: bool = False
    log_level: str = "WARNING"
    full: bool = False

    def __post_init__(self):
        errors = []
        if self.mode not in MODES:
            errors.append(f"mode must be one of {', '.join(MODES)}")
        if self.fmt not in FORMATS:
            errors.append(f"fmt must be one of {', '.join(FORMATS)}")
        if self.log_level.upper() not in LOG_LEVELS:
            errors.append(f"log_level must be one of {', '.join(LOG_LEVELS)}")
        if self.m_window < 0:
            errors.append("m_window cannot be negative")
        if self.r_window < 1:
            errors.append("r_window must be at least 1")
        if self.n_pad < 0:
            errors.append("n_pad cannot be negative")
        if self.saturation_steps < 1:
            errors.append("saturation_steps must be at least 1")
        if self.threads < 1:
            errors.append("threads must be at least 1")
        if self.c_max < 0:
            errors.append("c_max cannot be negative")
        if self.dt_table and not os.access(self.dt_table, os.R_OK):
            errors.append(f"dt_table {self.dt_table} is not readable")
        if errors:
            raise ConfigError("; ".join(errors))

    def window(self):
        return WindowConfig(self.m_window, self.r_window, self.n_pad,
                            self.saturation_steps, self.max_candidates)


_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}
_INT_FIELDS = {"c_max", "n_max", "r", "c", "m2", "theta_r", "theta_a", "n", "shift", "n_floor",
               "m_window", "r_window", "n_pad", "saturation_steps", "max_candidates", "threads"}
_FRACTION_FIELDS = {"order", "d_beta0", "l_beta0"}
_BOOL_FIELDS = {"prefer_user", "full"}


def coerce(key, raw):
    """Convert a raw string (or already-typed value) for the named field."""
    if key not in _FIELDS:
        raise ConfigError(f"unknown configuration key '{key}'")
    if raw is None or not isinstance(raw, str):
        return raw
    raw = raw.strip()
    try:
        if key in _INT_FIELDS:
            return int(raw)
        if key in _FRACTION_FIELDS:
            return Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"cannot parse {key} = '{raw}'") from None
    if key in _BOOL_FIELDS:
        lowered = raw.lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"cannot parse {key} = '{raw}' as a boolean")
    return raw


def read_config_file(path):
    """Parse a key = value file into typed field values."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e.strerror}") from None
    values = {}
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in line.split("=", 1))
        values[key.replace("-", "_")] = coerce(key.replace("-", "_"), raw)
    log.info("[config] %d settings from %s", len(values), path)
    return values


def build_config(overrides=None, config_path=None, environ=None):
    """Merge defaults, the config file and explicit overrides (None = not given)."""
    environ = os.environ if environ is None else environ
    path = config_path or environ.get(CONFIG_ENV)
    values = read_config_file(path) if path else {}
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = coerce(key, value)
    return RunConfig(**values)
