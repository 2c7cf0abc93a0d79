"""Half-space materials, wavenumbers, and scalar Fresnel coefficients.

The link volume is split by an infinite plane: free space on the source
side, a lossless homogeneous fill behind it.  The far side is either a
dielectric described by its refractive index or a perfect conductor, which
is kept as a distinguished variant rather than a large-index limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

SPEED_OF_LIGHT = 2.998e8
"""Free-space propagation speed, m/s (rounding convention of the catalog tables)."""

FREE_SPACE_IMPEDANCE = 376.730313668
"""Free-space wave impedance, ohm."""

# Tolerate samples sitting exactly on the disk rim after sin/cos round-off.
_DISK_SLACK = 1.0 + 1e-12


@dataclass(frozen=True)
class Material:
    """A surface fill: a lossless dielectric, or the perfect-conductor variant.

    ``refractive_index`` is ``None`` for the perfect conductor, whose
    permeability ratio mu2/mu1 is 0 by definition.  Dielectrics must be at
    least as dense as free space so every propagating incident wave stays
    propagating behind the surface.
    """

    name: str
    refractive_index: float | None
    permeability_ratio: float = 1.0

    def __post_init__(self) -> None:
        if not self.name:
            msg = "material name must be non-empty"
            raise ValueError(msg)
        if self.refractive_index is None:
            if self.permeability_ratio != 0.0:
                msg = "the perfect conductor variant requires permeability_ratio == 0"
                raise ValueError(msg)
            return
        if not self.refractive_index >= 1.0:
            msg = f"refractive index must be >= 1, got {self.refractive_index!r}"
            raise ValueError(msg)
        if not self.permeability_ratio > 0.0:
            msg = f"permeability ratio must be positive, got {self.permeability_ratio!r}"
            raise ValueError(msg)

    @property
    def is_conductor(self) -> bool:
        return self.refractive_index is None

    @property
    def is_homogeneous(self) -> bool:
        """True when the far side is indistinguishable from free space."""
        return (
            self.refractive_index == 1.0
            and self.permeability_ratio == 1.0
        )


PERFECT_CONDUCTOR = Material("perfect_conductor", None, 0.0)
CONCRETE = Material("concrete", 2.55)
FLOOR_BOARD = Material("floor_board", 1.98)
PLASTER_BOARD = Material("plaster_board", 1.50)
VACUUM = Material("vacuum", 1.0)


def material_catalog() -> list[Material]:
    """Built-in materials: the conductor variant, three building dielectrics
    at 57.5 GHz, and vacuum (the trivial half-space)."""
    return [PERFECT_CONDUCTOR, CONCRETE, FLOOR_BOARD, PLASTER_BOARD, VACUUM]


def material_by_name(name: str, extra: tuple[Material, ...] = ()) -> Material:
    """Look up a material by normalized name, searching ``extra`` first."""
    key = name.strip().lower().replace("-", "_").replace(" ", "_")
    for mat in (*extra, *material_catalog()):
        if mat.name == key:
            return mat
    known = ", ".join(m.name for m in (*extra, *material_catalog()))
    msg = f"unknown material {name!r} (known: {known})"
    raise ValueError(msg)


def load_catalog(path: str | Path) -> list[Material]:
    """Parse a plain-text material catalog: one ``name n2`` pair per line.

    Blank lines and ``#`` comments are ignored; a comma may separate the
    fields.  Entries are dielectrics (use the built-in variant for the
    perfect conductor).
    """
    materials: list[Material] = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            msg = f"{path}:{lineno}: expected 'name n2', got {raw!r}"
            raise ValueError(msg)
        name = parts[0].lower()
        try:
            index = float(parts[1])
        except ValueError as exc:
            msg = f"{path}:{lineno}: bad refractive index {parts[1]!r}"
            raise ValueError(msg) from exc
        materials.append(Material(name, index))
    return materials


@dataclass(frozen=True)
class Medium:
    """A material paired with the operating frequency."""

    frequency: float
    material: Material

    def __post_init__(self) -> None:
        if not self.frequency > 0.0:
            msg = f"frequency must be positive, got {self.frequency!r}"
            raise ValueError(msg)

    @property
    def kappa1(self) -> float:
        """Free-space wavenumber, rad/m."""
        return 2.0 * math.pi * self.frequency / SPEED_OF_LIGHT

    @property
    def kappa2(self) -> float | None:
        """Far-side wavenumber, rad/m; ``None`` for the perfect conductor."""
        if self.material.is_conductor:
            return None
        return self.material.refractive_index * self.kappa1

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.frequency


def wavenumbers(frequency: float, material: Material) -> tuple[float, float | None]:
    """Per-medium wavenumbers (kappa1, kappa2) at ``frequency``.

    kappa2 is ``None`` for the perfect conductor: the variant is never
    collapsed to a float.
    """
    medium = Medium(frequency, material)
    return medium.kappa1, medium.kappa2


def _transverse_sq(medium: Medium, kx, ky):
    """Squared transverse wavenumber, validated against the propagating disk."""
    kx = np.asarray(kx, dtype=float)
    ky = np.asarray(ky, dtype=float)
    rho_sq = kx * kx + ky * ky
    if np.any(rho_sq > medium.kappa1 ** 2 * _DISK_SLACK):
        msg = "sample outside the propagating disk (evanescent region unsupported)"
        raise ValueError(msg)
    return rho_sq


def longitudinal_wavenumbers(medium: Medium, kx, ky):
    """Longitudinal components (kappa_1z, kappa_2z) for in-disk samples.

    Returns a float pair for scalar inputs, arrays otherwise; kappa_2z is
    ``None`` for the perfect conductor.
    """
    scalar = np.isscalar(kx) and np.isscalar(ky)
    rho_sq = _transverse_sq(medium, kx, ky)
    k1z = np.sqrt(np.maximum(medium.kappa1 ** 2 - rho_sq, 0.0))
    if medium.material.is_conductor:
        return (float(k1z), None) if scalar else (k1z, None)
    k2z = np.sqrt(np.maximum(medium.kappa2 ** 2 - rho_sq, 0.0))
    return (float(k1z), float(k2z)) if scalar else (k1z, k2z)


def reflection_from_kz(material: Material, k1z, k2z):
    """Reflection coefficient from longitudinal wavenumbers.

    R = (mu_r kappa_1z - kappa_2z) / (mu_r kappa_1z + kappa_2z) with
    mu_r = mu2/mu1.  Valid for real (propagating) and analytically
    continued (imaginary kappa_1z) arguments alike.
    """
    if material.is_conductor:
        return np.full_like(np.asarray(k1z), -1.0)
    mu = material.permeability_ratio
    return (mu * k1z - k2z) / (mu * k1z + k2z)


def transmission_from_kz(material: Material, k1z, k2z):
    """Transmission coefficient 2 mu_r kappa_1z / (mu_r kappa_1z + kappa_2z)."""
    if material.is_conductor:
        return np.zeros_like(np.asarray(k1z))
    mu = material.permeability_ratio
    return 2.0 * mu * k1z / (mu * k1z + k2z)


def fresnel_reflection(medium: Medium, kx, ky):
    """Surface reflection coefficient at in-disk transverse wavenumbers.

    Parameters
    ----------
    medium:
        Frequency/material pair fixing kappa1 and kappa2.
    kx, ky:
        Transverse wavenumbers, rad/m; scalars or broadcastable arrays with
        kx**2 + ky**2 <= kappa1**2.

    Returns
    -------
    Real coefficient in [-1, 1]: exactly -1 for the perfect conductor,
    exactly 0 for a homogeneous far side.  Raises ValueError outside the
    propagating disk.
    """
    scalar = np.isscalar(kx) and np.isscalar(ky)
    rho_sq = _transverse_sq(medium, kx, ky)
    mat = medium.material
    if mat.is_conductor:
        out = np.full_like(rho_sq, -1.0)
    elif mat.is_homogeneous:
        out = np.zeros_like(rho_sq)
    else:
        k1z = np.sqrt(np.maximum(medium.kappa1 ** 2 - rho_sq, 0.0))
        k2z = np.sqrt(np.maximum(medium.kappa2 ** 2 - rho_sq, 0.0))
        out = reflection_from_kz(mat, k1z, k2z)
    return float(out) if scalar else out


def fresnel_transmission(medium: Medium, kx, ky):
    """Surface transmission coefficient at in-disk transverse wavenumbers.

    Satisfies 1 + R = T everywhere on the disk; 0 for the perfect
    conductor, 1 for a homogeneous far side.
    """
    scalar = np.isscalar(kx) and np.isscalar(ky)
    rho_sq = _transverse_sq(medium, kx, ky)
    mat = medium.material
    if mat.is_conductor:
        out = np.zeros_like(rho_sq)
    elif mat.is_homogeneous:
        out = np.ones_like(rho_sq)
    else:
        k1z = np.sqrt(np.maximum(medium.kappa1 ** 2 - rho_sq, 0.0))
        k2z = np.sqrt(np.maximum(medium.kappa2 ** 2 - rho_sq, 0.0))
        out = transmission_from_kz(mat, k1z, k2z)
    return float(out) if scalar else out


def _continued_kz(medium: Medium, gamma):
    """Longitudinal wavenumbers on the branch cut kappa_1z = i*gamma, gamma > 0.

    The far-side root keeps Im kappa_2z >= 0 so continued fields decay.
    """
    gamma = np.asarray(gamma, dtype=float)
    k1z = 1j * gamma
    if medium.material.is_conductor:
        return k1z, None
    k2z_sq = medium.kappa2 ** 2 - medium.kappa1 ** 2 - gamma * gamma
    k2z = np.sqrt(k2z_sq.astype(complex))
    return k1z, k2z


def _reflection_continued(medium: Medium, gamma):
    """Reflection coefficient analytically continued to kappa_1z = i*gamma."""
    mat = medium.material
    gamma = np.asarray(gamma, dtype=float)
    if mat.is_conductor:
        return np.full(gamma.shape, -1.0 + 0.0j)
    if mat.is_homogeneous:
        return np.zeros(gamma.shape, dtype=complex)
    k1z, k2z = _continued_kz(medium, gamma)
    return np.asarray(reflection_from_kz(mat, k1z, k2z), dtype=complex)


def _transmission_continued(medium: Medium, gamma):
    """Transmission coefficient analytically continued to kappa_1z = i*gamma."""
    mat = medium.material
    gamma = np.asarray(gamma, dtype=float)
    if mat.is_conductor:
        return np.zeros(gamma.shape, dtype=complex)
    if mat.is_homogeneous:
        return np.ones(gamma.shape, dtype=complex)
    k1z, k2z = _continued_kz(medium, gamma)
    return np.asarray(transmission_from_kz(mat, k1z, k2z), dtype=complex)
