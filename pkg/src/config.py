"""
Run configuration for the command-line front end.

Values are resolved from lowest to highest precedence:
1. RunConfig defaults,
2. the POPCHECK_SEED environment variable (seed only),
3. a flat ``key=value`` file given with --config,
4. command-line flags.
"""

import logging
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple, Union, get_args, get_origin

from .errors import DomainError, RegistryError
from .inequalities import INEQUALITY_IDS, JensenMode
from .registry import parse_function, parse_generator, parse_h

logger = logging.getLogger(__name__)

SEED_ENV = "POPCHECK_SEED"
MAX_SEED = 2 ** 64 - 1
FORMATS = ("json", "csv")
MEANS = ("qa", "power", "log2", "log3", "identric")


@dataclass(frozen=True)
class RunConfig:
    """
    Every parameter a command may use, with defaults.

    grid is None to let each command pick its own default (15 nodes per axis
    for search, 201 for classify).
    """
    command: str = "eval"
    ineq: str = "popoviciu"
    fn: Optional[str] = None
    g: Optional[str] = None
    phi: str = "identity"
    psi: str = "identity"
    h: Optional[str] = None
    triple: Optional[Tuple[float, ...]] = None
    points: Optional[Tuple[float, ...]] = None
    weights: Optional[Tuple[float, ...]] = None
    region: Optional[Tuple[float, ...]] = None
    interval: Optional[Tuple[float, ...]] = None
    grid: Optional[int] = None
    samples: int = 10_000
    seed: int = 0
    tol: float = 1e-9
    modulus: float = 1.0
    alpha: float = 2.0
    shape: str = "convex"
    jensen_mode: str = JensenMode.CONVEX_SUPER.value
    k: int = 5
    max_iter: int = 2000
    restarts: int = 0
    mean: str = "qa"
    order: float = 1.0
    out: Optional[str] = None
    format: str = "json"

    def validate(self) -> "RunConfig":
        """
        Raises:
            DomainError: for out-of-range numbers or malformed tuples.
            RegistryError: for names no registry knows.
        """
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.samples < 1:
            raise DomainError(f"samples must be at least 1, got {self.samples}")
        if self.grid is not None and self.grid < 2:
            raise DomainError(f"grid must be at least 2, got {self.grid}")
        if not 0 <= self.seed <= MAX_SEED:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.format not in FORMATS:
            raise DomainError(f"format must be one of {', '.join(FORMATS)}, got {self.format!r}")
        if self.ineq not in INEQUALITY_IDS:
            raise RegistryError(f"unknown inequality {self.ineq!r}; known: {', '.join(INEQUALITY_IDS)}")
        if self.mean not in MEANS:
            raise RegistryError(f"unknown mean {self.mean!r}; known: {', '.join(MEANS)}")
        if self.shape not in ("convex", "concave"):
            raise DomainError(f"shape must be convex or concave, got {self.shape!r}")
        modes = [m.value for m in JensenMode]
        if self.jensen_mode not in modes:
            raise DomainError(f"jensen_mode must be one of {', '.join(modes)}, got {self.jensen_mode!r}")
        for name, size in (("triple", 3), ("interval", 2)):
            value = getattr(self, name)
            if value is not None and len(value) != size:
                raise DomainError(f"{name} takes {size} numbers, got {len(value)}")
        if self.region is not None and (len(self.region) not in (2, 6)):
            raise DomainError(f"region takes lo hi (a cube) or three lo hi pairs, got {len(self.region)} numbers")
        for name in ("fn", "g"):
            if getattr(self, name) is not None:
                parse_function(getattr(self, name))
        parse_generator(self.phi)
        parse_generator(self.psi)
        if self.h is not None:
            parse_h(self.h)
        return self


def _field_types() -> Dict[str, Any]:
    return {f.name: f.type for f in fields(RunConfig)}


def _base_type(annotation) -> Any:
    if get_origin(annotation) is Union:
        annotation = next(a for a in get_args(annotation) if a is not type(None))
    return get_origin(annotation) or annotation


def coerce(key: str, raw: Union[str, Any]) -> Any:
    """Converts a textual value to the type of RunConfig field ``key``."""
    types = _field_types()
    if key not in types:
        raise DomainError(f"unknown configuration key {key!r}")
    if not isinstance(raw, str):
        return raw
    text = raw.strip()
    kind = _base_type(types[key])
    if text.lower() in ("", "none") and "Optional" in str(types[key]):
        return None
    try:
        if kind is tuple:
            return tuple(float(v) for v in text.replace(",", " ").split())
        if kind is int:
            return int(text)
        if kind is float:
            return float(text)
    except ValueError:
        raise DomainError(f"malformed value {raw!r} for {key}") from None
    return text


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Parses a flat key=value file; ``#`` starts a comment, blank lines are
    skipped, and keys may use ``-`` or ``_``.
    """
    values: Dict[str, Any] = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise DomainError(f"cannot read config file {path}: {exc.strerror}") from None
    for number, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"{path}:{number}: expected key=value, got {line!r}")
        key, raw = line.split("=", 1)
        key = key.strip().replace("-", "_")
        values[key] = coerce(key, raw)
    logger.debug("loaded %d settings from %s", len(values), path)
    return values


def seed_from_env(environ: Mapping[str, str] = os.environ) -> Optional[int]:
    raw = environ.get(SEED_ENV)
    if raw is None or not raw.strip():
        return None
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def resolve(overrides: Mapping[str, Any], config_path: Optional[Union[str, Path]] = None,
            environ: Mapping[str, str] = os.environ) -> RunConfig:
    """
    Builds a validated RunConfig from the environment, an optional file and
    explicit overrides (None values in overrides are treated as unset).
    """
    config = RunConfig()
    env_seed = seed_from_env(environ)
    if env_seed is not None:
        config = replace(config, seed=env_seed)
    if config_path is not None:
        config = replace(config, **load_config_file(config_path))
    explicit = {k: coerce(k, v) for k, v in overrides.items() if v is not None}
    return replace(config, **explicit).validate()
