"""Waterfilling capacity over an eigenvalue spectrum and the flat-spectrum
upper bound attained by concentrating the total channel gain on an optimal
number of identical eigenvalues.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class CapacityResult:
    """Waterfilling solution: capacity in bits/s/Hz plus the allocation."""

    snr: float
    capacity: float
    water_level: float
    powers: np.ndarray


@dataclass(frozen=True)
class DofBound:
    """Upper bound over all spectra with the same total gain: ``rho_star``
    identical eigenvalues of size N^2 / rho_star each."""

    snr: float
    rho_star: int
    bound: float


def _spectrum_values(spectrum: object) -> np.ndarray:
    values = getattr(spectrum, "values", spectrum)
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        msg = f"expected a 1-D eigenvalue array, got shape {arr.shape}"
        raise ValueError(msg)
    if np.any(arr < -1e-12 * max(arr.max(initial=0.0), 1.0)):
        raise ValueError("eigenvalues must be nonnegative")
    return np.maximum(arr, 0.0)


def waterfill(spectrum: object, snr: float) -> CapacityResult:
    """Capacity-optimal power allocation for a total transmit SNR.

    The water level is found by the exact active-set procedure: eigenvalues
    are sorted descending, the candidate level for the top k modes is
    (snr + sum 1/lambda) / k, and the largest k whose level still covers its
    weakest active mode wins.  No iteration tolerance is involved, so the
    power constraint holds to round-off.
    """
    if snr <= 0.0:
        msg = f"snr must be > 0, got {snr!r}"
        raise ValueError(msg)
    values = _spectrum_values(spectrum)
    # Eigenvalues so small that 1/lambda overflows can never rise above any
    # finite water level; treat them as zero modes.
    positive = values > np.finfo(float).tiny
    if not positive.any():
        raise ValueError("all-zero spectrum has no capacity")
    lam = np.sort(values[positive])[::-1]
    inv_cum = np.cumsum(1.0 / lam)
    k_range = np.arange(1, lam.size + 1)
    levels = (snr + inv_cum) / k_range
    feasible = levels >= 1.0 / lam
    k = int(np.nonzero(feasible)[0][-1]) + 1
    nu = float(levels[k - 1])

    powers = np.zeros_like(values)
    active_order = np.argsort(values)[::-1][:k]
    powers[active_order] = nu - 1.0 / values[active_order]
    capacity = float(np.sum(np.log2(nu * values[active_order])))
    return CapacityResult(snr=snr, capacity=capacity, water_level=nu, powers=powers)


def dof_bound(count: int, snr: float) -> DofBound:
    """Exhaustive scan of rho * log2(1 + snr N^2 / rho^2) over rho = 1..N.

    Ties go to the larger stream count so the matched antenna spacing is
    well defined at crossover SNRs.
    """
    if count < 1:
        msg = f"count must be >= 1, got {count}"
        raise ValueError(msg)
    if snr <= 0.0:
        msg = f"snr must be > 0, got {snr!r}"
        raise ValueError(msg)
    best_rho = 1
    best = -math.inf
    for rho in range(1, count + 1):
        value = rho * math.log2(1.0 + snr * count * count / (rho * rho))
        if value >= best:
            best = value
            best_rho = rho
    return DofBound(snr=snr, rho_star=best_rho, bound=best)


def optimal_stream_count(count: int, snr: float) -> int:
    """Stream count maximizing the flat-spectrum bound at this SNR."""
    return dof_bound(count, snr).rho_star
