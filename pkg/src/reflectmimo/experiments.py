"""Named experiments over the reflected-channel model.

Each experiment produces ordered tables of plain rows, ready for CSV or
JSON emission.  Eigenvalue experiments report the direct channel under
self-sum normalization and, by default, reflected channels on the same
scale so the material-dependent power loss stays visible.  All iteration
orders are fixed, so identical configs yield identical tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._version import __version__
from .capacity import dof_bound, waterfill
from .closedform import los_impulse
from .config import ConfigError, ExperimentConfig, config_to_text
from .materials import PERFECT_CONDUCTOR, VACUUM, Material, Medium, material_by_name
from .materials import fresnel_reflection, fresnel_transmission
from .mimo import (
    RELATIVE,
    SELF_SUM,
    ArrayLayout,
    ChannelMatrix,
    EigenSpectrum,
    build_channel_matrix,
    eigen_spectrum,
    spacing_rayleigh,
    spacing_snr,
)
from .quadrature import SpatialLag, estimate_nodes, synthesize_impulse
from .spectrum import FieldComponent, SceneConfig, oscillation_span

EXPERIMENT_NAMES = (
    "fig2", "fig3", "fig4", "fig5", "fresnel_sweep", "impulse_validate",
)

_EIGEN_COLUMNS = ("material", "spacing_rule", "index", "lambda", "lambda_db")
_CAPACITY_COLUMNS = ("material", "spacing_rule", "snr_db", "bits_per_s_hz")
_FRESNEL_COLUMNS = ("material", "theta_deg", "R", "T", "reflectivity")
_VALIDATION_COLUMNS = ("dz_m", "lag_m", "rel_err")

_DB_FLOOR = 1e-300


@dataclass(frozen=True)
class ResultTable:
    name: str
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]


@dataclass(frozen=True)
class ResultSet:
    experiment: str
    config: ExperimentConfig
    provenance: dict
    tables: tuple[ResultTable, ...]

    def table(self, name: str) -> ResultTable:
        for table in self.tables:
            if table.name == name:
                return table
        msg = f"no table named {name!r} in {self.experiment}"
        raise KeyError(msg)


class _Context:
    """Per-run caches: channel matrices and reference scales are keyed by
    material and spacing so SNR sweeps reuse work across grid points."""

    def __init__(self, config: ExperimentConfig) -> None:
        config.validate()
        self.config = config
        self.vacuum_medium = Medium(config.frequency_hz, VACUUM)
        self.wavelength = self.vacuum_medium.wavelength
        self.node_counts: dict[str, list[int]] = {}
        self._channels: dict[tuple[str, int], ChannelMatrix] = {}
        self._los_scales: dict[int, float] = {}

    def scene(self, material: Material) -> SceneConfig:
        return SceneConfig(
            medium=Medium(self.config.frequency_hz, material),
            surface_z=self.config.d1_m,
            source_z=0.0,
            receiver_z=self.config.range_m,
        )

    def channel(self, material_name: str, spacing: float) -> ChannelMatrix:
        key = (material_name, round(spacing / 1e-15))
        if key not in self._channels:
            if material_name == "los":
                scene = self.scene(VACUUM)
                component = FieldComponent.LOS_ONLY
            else:
                scene = self.scene(material_by_name(material_name))
                component = FieldComponent.REFLECTION_ONLY
            n = self.config.antennas
            tx = ArrayLayout.along_x(n, spacing, 0.0)
            rx = ArrayLayout.along_x(n, spacing, self.config.range_m)
            self._channels[key] = build_channel_matrix(
                scene, tx, rx, component, self.config.quadrature,
            )
        return self._channels[key]

    def los_scale(self, spacing: float) -> float:
        key = round(spacing / 1e-15)
        if key not in self._los_scales:
            spectrum = eigen_spectrum(self.channel("los", spacing), SELF_SUM)
            self._los_scales[key] = spectrum.scale
        return self._los_scales[key]

    def reflected_spectrum(self, material_name: str, spacing: float) -> EigenSpectrum:
        channel = self.channel(material_name, spacing)
        if self.config.normalization == "RelativeToLOS":
            return eigen_spectrum(
                channel, RELATIVE, reference_scale=self.los_scale(spacing),
            )
        return eigen_spectrum(channel, SELF_SUM)

    def record_nodes(self, label: str, channel: ChannelMatrix) -> None:
        current = [channel.spec.n_alpha, channel.spec.n_beta]
        previous = self.node_counts.get(label)
        if previous is None or current[0] > previous[0]:
            self.node_counts[label] = current


def _reflected_rule(context: _Context, default_rule: str) -> str:
    rule = context.config.spacing_rule
    return default_rule if rule == "default" else rule


def _spacing_of(context: _Context, rule: str, snr_linear: float | None) -> float:
    cfg = context.config
    if rule == "rayleigh_D":
        return spacing_rayleigh(context.wavelength, cfg.range_m, cfg.antennas)
    if rule == "rayleigh_De":
        return spacing_rayleigh(context.wavelength, cfg.equivalent_range_m, cfg.antennas)
    if snr_linear is None:
        raise ConfigError(
            [f"spacing rule {rule!r} is SNR-dependent and needs an SNR sweep"]
        )
    if rule == "snr_dependent_D":
        return spacing_snr(context.wavelength, cfg.range_m, cfg.antennas, snr_linear)
    if rule == "snr_dependent_De":
        return spacing_snr(
            context.wavelength, cfg.equivalent_range_m, cfg.antennas, snr_linear,
        )
    raise ConfigError([f"unknown spacing rule {rule!r}"])


def _db(value: float) -> float:
    return 10.0 * math.log10(max(value, _DB_FLOOR))


def _eigen_table(context: _Context, los_rule: str, reflected_rule: str) -> ResultTable:
    rows: list[tuple] = []
    d_los = _spacing_of(context, los_rule, None)
    channel = context.channel("los", d_los)
    context.record_nodes(f"los@{los_rule}", channel)
    spectrum = eigen_spectrum(channel, SELF_SUM)
    for index, value in enumerate(spectrum.values, start=1):
        rows.append(("los", los_rule, index, float(value), _db(float(value))))
    d_ref = _spacing_of(context, reflected_rule, None)
    for name in context.config.materials:
        context.record_nodes(f"{name}@{reflected_rule}", context.channel(name, d_ref))
        spectrum = context.reflected_spectrum(name, d_ref)
        for index, value in enumerate(spectrum.values, start=1):
            rows.append((name, reflected_rule, index, float(value), _db(float(value))))
    return ResultTable("eigenvalues", _EIGEN_COLUMNS, tuple(rows))


def _capacity_of(spectrum: EigenSpectrum, snr: float) -> float:
    if float(np.max(spectrum.values, initial=0.0)) <= 0.0:
        return 0.0
    return waterfill(spectrum, snr).capacity


def _capacity_table(context: _Context, los_rule: str, reflected_rule: str) -> ResultTable:
    cfg = context.config
    rows: list[tuple] = []
    for snr_db in cfg.snr_grid_db:
        snr = 10.0 ** (snr_db / 10.0)
        d = _spacing_of(context, los_rule, snr)
        channel = context.channel("los", d)
        context.record_nodes(f"los@{los_rule}", channel)
        capacity = _capacity_of(eigen_spectrum(channel, SELF_SUM), snr)
        rows.append(("los", los_rule, snr_db, capacity))
    for name in cfg.materials:
        for snr_db in cfg.snr_grid_db:
            snr = 10.0 ** (snr_db / 10.0)
            d = _spacing_of(context, reflected_rule, snr)
            context.record_nodes(f"{name}@{reflected_rule}", context.channel(name, d))
            capacity = _capacity_of(context.reflected_spectrum(name, d), snr)
            rows.append((name, reflected_rule, snr_db, capacity))
    for snr_db in cfg.snr_grid_db:
        snr = 10.0 ** (snr_db / 10.0)
        bound = dof_bound(cfg.antennas, snr).bound
        rows.append(("upper_bound", los_rule, snr_db, bound))
    return ResultTable("capacity", _CAPACITY_COLUMNS, tuple(rows))


def _run_fig2(context: _Context) -> list[ResultTable]:
    return [_eigen_table(context, "rayleigh_D", _reflected_rule(context, "rayleigh_D"))]


def _run_fig4(context: _Context) -> list[ResultTable]:
    return [_eigen_table(context, "rayleigh_D", _reflected_rule(context, "rayleigh_De"))]


def _run_fig3(context: _Context) -> list[ResultTable]:
    return [
        _capacity_table(
            context, "snr_dependent_D", _reflected_rule(context, "snr_dependent_D"),
        )
    ]


def _run_fig5(context: _Context) -> list[ResultTable]:
    return [
        _capacity_table(
            context, "snr_dependent_D", _reflected_rule(context, "snr_dependent_De"),
        )
    ]


def _run_fresnel_sweep(context: _Context) -> list[ResultTable]:
    kappa1 = context.vacuum_medium.kappa1
    rows: list[tuple] = []
    for name in context.config.materials:
        medium = Medium(context.config.frequency_hz, material_by_name(name))
        for half_deg in range(181):
            theta_deg = half_deg * 0.5
            kx = kappa1 * math.sin(math.radians(theta_deg))
            r = float(fresnel_reflection(medium, kx, 0.0))
            t = float(fresnel_transmission(medium, kx, 0.0))
            rows.append((name, theta_deg, r, t, r * r))
    return [ResultTable("fresnel", _FRESNEL_COLUMNS, tuple(rows))]


def _validation_grid(context: _Context) -> tuple[list[float], list[float]]:
    spans = [float(v) for v in np.geomspace(10.0 * context.wavelength, 20.0, 5)]
    lags = [0.0, 0.1, 0.5, 1.0]
    return spans, lags


def _run_impulse_validate(context: _Context) -> list[ResultTable]:
    medium = context.vacuum_medium
    spans, lags = _validation_grid(context)
    quadrature = context.config.quadrature

    def record(label: str, spec) -> None:
        current = [spec.n_alpha, spec.n_beta]
        previous = context.node_counts.get(label)
        if previous is None or current[0] > previous[0]:
            context.node_counts[label] = current

    los_rows: list[tuple] = []
    for dz in spans:
        scene = SceneConfig(
            medium=medium, surface_z=dz + 1.0, source_z=0.0, receiver_z=dz,
        )
        for lag_x in lags:
            lag = SpatialLag(x=lag_x)
            spec = quadrature or estimate_nodes(
                scene, lag_x, oscillation_span(scene, FieldComponent.LOS_ONLY),
            )
            record("validation_los", spec)
            value = synthesize_impulse(scene, FieldComponent.LOS_ONLY, lag, spec)
            reference = los_impulse(medium, (lag_x, 0.0, dz), (0.0, 0.0, 0.0))
            los_rows.append((dz, lag_x, abs(value - reference) / abs(reference)))

    image_rows: list[tuple] = []
    pc_medium = Medium(context.config.frequency_hz, PERFECT_CONDUCTOR)
    for span in spans:
        d1 = max(0.75 * span, 10.0 * context.wavelength)
        receiver_z = 2.0 * d1 - span
        scene = SceneConfig(
            medium=pc_medium, surface_z=d1, source_z=0.0, receiver_z=receiver_z,
        )
        for lag_x in lags:
            lag = SpatialLag(x=lag_x)
            spec = quadrature or estimate_nodes(
                scene, lag_x, oscillation_span(scene, FieldComponent.REFLECTION_ONLY),
            )
            record("validation_image", spec)
            value = synthesize_impulse(
                scene, FieldComponent.REFLECTION_ONLY, lag, spec,
            )
            mirrored = (0.0, 0.0, 2.0 * d1)
            reference = -los_impulse(medium, (lag_x, 0.0, receiver_z), mirrored)
            image_rows.append((span, lag_x, abs(value - reference) / abs(reference)))

    return [
        ResultTable("validation_los", _VALIDATION_COLUMNS, tuple(los_rows)),
        ResultTable("validation_image", _VALIDATION_COLUMNS, tuple(image_rows)),
    ]


_RUNNERS = {
    "fig2": _run_fig2,
    "fig3": _run_fig3,
    "fig4": _run_fig4,
    "fig5": _run_fig5,
    "fresnel_sweep": _run_fresnel_sweep,
    "impulse_validate": _run_impulse_validate,
}


def run_named(name: str, config: ExperimentConfig | None = None, *,
              config_text: str | None = None) -> ResultSet:
    """Run a named experiment; ``config_text`` overrides the provenance echo
    with the exact input text (used when a config file was supplied)."""
    if name not in _RUNNERS:
        known = ", ".join(EXPERIMENT_NAMES)
        msg = f"unknown experiment {name!r}; expected one of: {known}"
        raise ValueError(msg)
    if config is None:
        config = ExperimentConfig()
    context = _Context(config)
    tables = _RUNNERS[name](context)
    provenance = {
        "library": "reflectmimo",
        "version": __version__,
        "experiment": name,
        "normalization": config.normalization,
        "config_text": config_text if config_text is not None else config_to_text(config),
        "node_counts": dict(sorted(context.node_counts.items())),
    }
    return ResultSet(
        experiment=name, config=config, provenance=provenance, tables=tuple(tables),
    )
