"""Plain-text material database and run configuration files.

Both formats are flat ``key = value`` lines; ``#`` starts a comment and blank
lines are ignored.

Material database::

    # name = s11, s12, s22, s66
    glass = 1.0, -0.25, 1.0, 2.5

Point-force configuration for ``strohwf sif``::

    material.upper = aluminium-ref
    material.lower = boron-ref
    beta = 0.25                  # optional override
    rtol = 1e-12                 # optional
    force.upper = -1.0, 0.0, -1.0
    force.lower = -1.5, 0.0, -0.5
    force.lower = -0.5, 0.0, -0.5
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DomainError, StrohWFError, ValidationError
from .materials import OrthotropicMaterial, validate_material
from .presets import PRESETS
from .sif import PointForceLoading

MATERIALS_ENV = "STROHWF_MATERIALS"


class ConfigSyntaxError(StrohWFError):
    """A configuration or database file could not be parsed."""


def _lines(text: str, origin: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigSyntaxError(f"{origin}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key, value = key.strip(), value.strip()
        if not key or not value:
            raise ConfigSyntaxError(f"{origin}:{lineno}: empty key or value in {raw!r}")
        yield lineno, key, value


def parse_floats(text: str, count: int | None = None, origin: str = "value") -> list[float]:
    """Parse a comma-separated list of floats."""
    try:
        values = [float(tok) for tok in text.split(",")]
    except ValueError:
        raise ConfigSyntaxError(f"{origin}: cannot parse numbers from {text!r}") from None
    if count is not None and len(values) != count:
        raise ConfigSyntaxError(f"{origin}: expected {count} numbers, got {len(values)}")
    if not all(math.isfinite(v) for v in values):
        raise ValidationError(f"{origin}: numbers must be finite, got {text!r}")
    return values


@dataclass(frozen=True)
class MaterialDatabase:
    """Named materials, each validated on load."""

    materials: dict[str, OrthotropicMaterial] = field(default_factory=dict)

    @classmethod
    def parse(cls, text: str, origin: str = "<materials>") -> "MaterialDatabase":
        out: dict[str, OrthotropicMaterial] = {}
        for lineno, name, value in _lines(text, origin):
            if name in out:
                raise ValidationError(f"{origin}:{lineno}: duplicate material {name!r}")
            s11, s12, s22, s66 = parse_floats(value, 4, f"{origin}:{lineno}")
            out[name] = validate_material(s11, s12, s22, s66, name=name)
        return cls(out)

    @classmethod
    def load(cls, path: str | os.PathLike) -> "MaterialDatabase":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigSyntaxError(f"cannot read material database {path}: {exc}") from None
        return cls.parse(text, str(path))

    @classmethod
    def from_environment(cls, path: str | None = None) -> "MaterialDatabase":
        """Load from ``path``, else from ``$STROHWF_MATERIALS``, else empty."""
        path = path or os.environ.get(MATERIALS_ENV)
        return cls.load(path) if path else cls()

    def resolve(self, spec: str) -> OrthotropicMaterial:
        """Look up a name (database first, then presets) or parse ``s11,s12,s22,s66``."""
        spec = spec.strip()
        if spec in self.materials:
            return self.materials[spec]
        if spec in PRESETS:
            return PRESETS[spec]()
        if "," in spec:
            s11, s12, s22, s66 = parse_floats(spec, 4, "material constants")
            return validate_material(s11, s12, s22, s66, name=spec)
        known = sorted(set(self.materials) | set(PRESETS))
        raise ValidationError(f"unknown material {spec!r}; known: {', '.join(known)}")


def parse_grid(text: str) -> np.ndarray:
    """``min,max,count`` to an evenly spaced ``b/a`` grid within ``[0, 1)``."""
    lo, hi, count = parse_floats(text, 3, "grid")
    if count != int(count) or count < 1:
        raise ConfigSyntaxError(f"grid count must be a positive integer, got {count}")
    grid = np.linspace(lo, hi, int(count))
    if grid.size and not (0.0 <= grid.min() and grid.max() < 1.0):
        raise DomainError(f"grid must lie within [0, 1), got {text!r}")
    return grid


def parse_betas(text: str) -> list[float]:
    betas = parse_floats(text, None, "beta list")
    for b in betas:
        if not -1.0 < b < 1.0:
            raise DomainError(f"beta values must lie in (-1, 1), got {b}")
    return betas


@dataclass(frozen=True)
class SifConfig:
    """Contents of a point-force configuration file."""

    upper: str
    lower: str
    loading: PointForceLoading
    beta: float | None = None
    rtol: float = 1e-12

    @classmethod
    def parse(cls, text: str, origin: str = "<config>") -> "SifConfig":
        fields: dict[str, str] = {}
        upper, lower = [], []
        for lineno, key, value in _lines(text, origin):
            where = f"{origin}:{lineno}"
            if key in ("force.upper", "force.lower"):
                x, f1, f2 = parse_floats(value, 3, where)
                (upper if key == "force.upper" else lower).append((x, (f1, f2)))
            elif key in ("material.upper", "material.lower", "beta", "rtol"):
                if key in fields:
                    raise ConfigSyntaxError(f"{where}: duplicate key {key!r}")
                fields[key] = value
            else:
                raise ConfigSyntaxError(f"{where}: unknown key {key!r}")
        for key in ("material.upper", "material.lower"):
            if key not in fields:
                raise ConfigSyntaxError(f"{origin}: missing required key {key!r}")
        beta = None
        if "beta" in fields:
            (beta,) = parse_betas(fields["beta"])
        rtol = 1e-12
        if "rtol" in fields:
            (rtol,) = parse_floats(fields["rtol"], 1, "rtol")
            if not 0.0 < rtol < 1.0:
                raise ValidationError(f"rtol must lie in (0, 1), got {rtol}")
        return cls(
            fields["material.upper"],
            fields["material.lower"],
            PointForceLoading(tuple(upper), tuple(lower)),
            beta,
            rtol,
        )

    @classmethod
    def load(cls, path: str | os.PathLike) -> "SifConfig":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigSyntaxError(f"cannot read config {path}: {exc}") from None
        return cls.parse(text, str(path))


@dataclass(frozen=True)
class RunConfig:
    """Validated command-line request.

    Attributes
    ----------
    command : str
    materials : tuple of str
        Material names or inline ``s11,s12,s22,s66`` constants.
    betas : tuple of float or None
        Overrides for ``beta``; ``None`` keeps the material value.
    grid : ndarray or None
        ``b/a`` values.
    out : str or None
        Output path; ``None`` writes to standard output.
    rtol : float or None
        Quadrature tolerance override.
    """

    command: str
    materials: tuple[str, ...] = ()
    betas: tuple[float, ...] | None = None
    grid: tuple[float, ...] | None = None
    out: str | None = None
    rtol: float | None = None

    def __post_init__(self):
        if self.grid is not None:
            for t in self.grid:
                if not 0.0 <= t < 1.0:
                    raise DomainError(f"grid value {t} outside [0, 1)")
        if self.betas is not None:
            for b in self.betas:
                if not -1.0 < b < 1.0:
                    raise DomainError(f"beta value {b} outside (-1, 1)")
        if self.rtol is not None and not 0.0 < self.rtol < 1.0:
            raise ValidationError(f"rtol must lie in (0, 1), got {self.rtol}")
