"""Experiment configuration: a flat key=value text format with units in the
key names, validated before any computation.

Values are stored in the file's units (GHz, m, dB) so that emitting a config
as text and parsing it back is bit-exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .materials import VACUUM, Medium, material_by_name
from .quadrature import QuadratureSpec
from .spectrum import SceneConfig, SceneError

SPACING_RULES = ("rayleigh_D", "rayleigh_De", "snr_dependent_D", "snr_dependent_De")
NORMALIZATIONS = ("SelfSum", "RelativeToLOS")

_DEFAULT_MATERIALS = ("perfect_conductor", "concrete", "floor_board", "plaster_board")
_DEFAULT_SNR_GRID = tuple(float(db) for db in range(-10, 41, 2))


class ConfigError(ValueError):
    """Invalid configuration; ``violations`` lists every failed constraint."""

    def __init__(self, violations: list[str]) -> None:
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class ExperimentConfig:
    """Inputs shared by all named experiments.

    ``spacing_rule`` of ``"default"`` lets each experiment pick its own
    published rule; an explicit rule overrides the spacing used for
    reflected channels.
    """

    frequency_ghz: float = 57.5
    d1_m: float = 15.0
    range_m: float = 10.0
    antennas: int = 8
    materials: tuple[str, ...] = _DEFAULT_MATERIALS
    snr_grid_db: tuple[float, ...] = _DEFAULT_SNR_GRID
    spacing_rule: str = "default"
    normalization: str = "RelativeToLOS"
    n_alpha: int | None = None
    n_beta: int | None = None

    @property
    def frequency_hz(self) -> float:
        return self.frequency_ghz * 1e9

    @property
    def equivalent_range_m(self) -> float:
        return 2.0 * self.d1_m - self.range_m

    @property
    def quadrature(self) -> QuadratureSpec | None:
        if self.n_alpha is None:
            return None
        return QuadratureSpec(n_alpha=self.n_alpha, n_beta=self.n_beta or 4)

    def validate(self) -> None:
        """Raise :class:`ConfigError` listing every violated constraint."""
        problems: list[str] = []
        if not (self.frequency_ghz > 0.0 and math.isfinite(self.frequency_ghz)):
            problems.append(f"frequency_ghz must be positive, got {self.frequency_ghz!r}")
        if not (self.d1_m > 0.0 and math.isfinite(self.d1_m)):
            problems.append(f"d1_m must be positive, got {self.d1_m!r}")
        if not (0.0 < self.range_m <= self.d1_m):
            problems.append(
                f"range_m must satisfy 0 < range_m <= d1_m, got {self.range_m!r}"
            )
        if self.antennas < 1:
            problems.append(f"antennas must be >= 1, got {self.antennas}")
        if not self.materials:
            problems.append("materials must be non-empty")
        for name in self.materials:
            try:
                material_by_name(name)
            except ValueError:
                problems.append(f"unknown material {name!r}")
        if not self.snr_grid_db:
            problems.append("snr_grid_db must be non-empty")
        elif any(not math.isfinite(db) for db in self.snr_grid_db):
            problems.append("snr_grid_db entries must be finite")
        if self.spacing_rule != "default" and self.spacing_rule not in SPACING_RULES:
            problems.append(
                f"spacing_rule must be 'default' or one of {SPACING_RULES}, "
                f"got {self.spacing_rule!r}"
            )
        if self.normalization not in NORMALIZATIONS:
            problems.append(
                f"normalization must be one of {NORMALIZATIONS}, "
                f"got {self.normalization!r}"
            )
        if self.n_alpha is not None and self.n_alpha < 2:
            problems.append(f"n_alpha must be >= 2, got {self.n_alpha}")
        if self.n_beta is not None and self.n_beta < 4:
            problems.append(f"n_beta must be >= 4, got {self.n_beta}")
        if not problems:
            # Scene guards (surface clearance) depend on the wavelength, so
            # they can only run once the scalar fields are sane.
            try:
                SceneConfig(
                    medium=Medium(self.frequency_hz, VACUUM),
                    surface_z=self.d1_m,
                    source_z=0.0,
                    receiver_z=self.range_m,
                )
            except SceneError as exc:
                problems.extend(exc.violations)
        if problems:
            raise ConfigError(problems)


def _parse_snr_grid(text: str) -> tuple[float, ...]:
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            msg = f"SNR range must be start:stop:step, got {text!r}"
            raise ValueError(msg)
        start, stop, step = (float(p) for p in parts)
        if step <= 0.0:
            msg = f"SNR range step must be positive, got {step!r}"
            raise ValueError(msg)
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        if count < 1:
            msg = f"empty SNR range {text!r}"
            raise ValueError(msg)
        return tuple(start + i * step for i in range(count))
    return tuple(float(p) for p in text.split(",") if p.strip())


_INT_KEYS = ("antennas", "n_alpha", "n_beta")
_FLOAT_KEYS = ("frequency_ghz", "d1_m", "range_m")
_KNOWN_KEYS = _INT_KEYS + _FLOAT_KEYS + (
    "materials", "snr_grid_db", "spacing_rule", "normalization",
)


def parse_config(text: str) -> ExperimentConfig:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    problems: list[str] = []
    fields: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            problems.append(f"line {lineno}: expected key = value, got {raw.strip()!r}")
            continue
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KNOWN_KEYS:
            problems.append(f"line {lineno}: unknown key {key!r}")
            continue
        try:
            if key in _INT_KEYS:
                fields[key] = int(value)
            elif key in _FLOAT_KEYS:
                fields[key] = float(value)
            elif key == "materials":
                fields[key] = tuple(
                    part.strip() for part in value.split(",") if part.strip()
                )
            elif key == "snr_grid_db":
                fields[key] = _parse_snr_grid(value)
            else:
                fields[key] = value
        except ValueError as exc:
            problems.append(f"line {lineno}: {exc}")
    if problems:
        raise ConfigError(problems)
    config = ExperimentConfig(**fields)
    config.validate()
    return config


def config_to_text(config: ExperimentConfig) -> str:
    """Canonical text form; ``parse_config`` of the result reproduces
    ``config`` exactly."""
    lines = [
        f"frequency_ghz = {config.frequency_ghz!r}",
        f"d1_m = {config.d1_m!r}",
        f"range_m = {config.range_m!r}",
        f"antennas = {config.antennas}",
        f"materials = {','.join(config.materials)}",
        f"snr_grid_db = {','.join(repr(db) for db in config.snr_grid_db)}",
        f"spacing_rule = {config.spacing_rule}",
        f"normalization = {config.normalization}",
    ]
    if config.n_alpha is not None:
        lines.append(f"n_alpha = {config.n_alpha}")
    if config.n_beta is not None:
        lines.append(f"n_beta = {config.n_beta}")
    return "\n".join(lines) + "\n"


def load_config(path: str | Path) -> ExperimentConfig:
    """Load a config from flat text, or recover one from emitted JSON
    results (the provenance block echoes the exact config text)."""
    content = Path(path).read_text(encoding="utf-8")
    stripped = content.lstrip()
    if stripped.startswith("{"):
        payload = json.loads(content)
        try:
            text = payload["provenance"]["config_text"]
        except (KeyError, TypeError) as exc:
            raise ConfigError(["JSON input lacks provenance.config_text"]) from exc
        return parse_config(text)
    return parse_config(content)
