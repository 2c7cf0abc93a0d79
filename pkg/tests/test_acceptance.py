"""Acceptance gate: nine library-level criteria, one test per criterion.

Each test prints a single pass/fail line (visible with ``pytest -s``; the
``-v`` test listing itself gives the per-criterion verdict) and asserts the
stated tolerance.  Every expected value is either an exact identity, an
independent closed form, or a published constant — never the output of the
code under test.
"""

import math
import time

import numpy as np
import pytest

from reflectmimo import (
    CONCRETE,
    FLOOR_BOARD,
    PERFECT_CONDUCTOR,
    PLASTER_BOARD,
    FieldComponent,
    Medium,
    SceneConfig,
    SpatialLag,
    dof_bound,
    emit,
    estimate_nodes,
    fresnel_reflection,
    fresnel_transmission,
    longitudinal_wavenumbers,
    oscillation_span,
    run_named,
    synthesize_impulse,
    waterfill,
)

FREQUENCY = 57.5e9
DIELECTRICS = (CONCRETE, FLOOR_BOARD, PLASTER_BOARD)


def _report(number: int, description: str, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] criterion {number}: {description} — {detail}")
    assert ok, f"criterion {number}: {description} — {detail}"


@pytest.fixture(scope="module")
def fig2():
    return run_named("fig2")


@pytest.fixture(scope="module")
def fig4():
    return run_named("fig4")


@pytest.fixture(scope="module")
def fig5():
    return run_named("fig5")


def _rows(results, table, material):
    return [row for row in results.table(table).rows if row[0] == material]


def test_criterion_1_fresnel_identities():
    """|1 + R - T| and |R^2 + (k2z/(mu k1z)) T^2 - 1| below 1e-12 on random
    in-disk samples for every dielectric material, in under a second."""
    start = time.perf_counter()
    worst_sum = 0.0
    worst_energy = 0.0
    rng = np.random.default_rng(20260823)
    for material in DIELECTRICS:
        medium = Medium(FREQUENCY, material)
        kappa1 = medium.kappa1
        radius = kappa1 * np.sqrt(rng.uniform(0.0, 1.0, 10_000))
        angle = rng.uniform(0.0, 2.0 * math.pi, 10_000)
        kx = radius * np.cos(angle)
        ky = radius * np.sin(angle)
        r = fresnel_reflection(medium, kx, ky)
        t = fresnel_transmission(medium, kx, ky)
        k1z, k2z = longitudinal_wavenumbers(medium, kx, ky)
        alpha = k2z / (material.permeability_ratio * k1z)
        worst_sum = max(worst_sum, float(np.max(np.abs(1.0 + r - t))))
        worst_energy = max(
            worst_energy, float(np.max(np.abs(r * r + alpha * t * t - 1.0)))
        )
    elapsed = time.perf_counter() - start
    ok = worst_sum <= 1e-12 and worst_energy <= 1e-12 and elapsed < 1.0
    _report(
        1,
        "Fresnel identities on 1e4 in-disk samples per material",
        ok,
        f"|1+R-T| <= {worst_sum:.2e}, |R^2+aT^2-1| <= {worst_energy:.2e}, "
        f"{elapsed:.2f}s",
    )


def test_criterion_2_far_side_wavenumbers():
    """kappa2 at 57.5 GHz matches the published 3-significant-digit values."""
    published = {"concrete": 3.07, "floor_board": 2.38, "plaster_board": 1.81}
    details = []
    ok = True
    for material in DIELECTRICS:
        computed = Medium(FREQUENCY, material).kappa2 / 1e3
        stated = published[material.name]
        rel = abs(computed - stated) / stated
        ok = ok and rel <= 5e-3
        details.append(f"{material.name}: {computed:.4f} vs {stated} (rel {rel:.1e})")
    _report(2, "far-side wavenumbers match published table", ok, "; ".join(details))


def test_criterion_3_los_oracle_equivalence():
    """Synthesized free-space impulse matches the closed form to 1e-3 on a
    20-point grid spanning dz in [10 lambda, 20 m], |x| <= 1 m."""
    results = run_named("impulse_validate")
    rows = results.table("validation_los").rows
    worst = max(row[2] for row in rows)
    ok = len(rows) == 20 and worst <= 1e-3
    _report(
        3,
        "synthesized free-space impulse vs closed form",
        ok,
        f"{len(rows)} grid points, worst relative error {worst:.2e} (tol 1e-3)",
    )


def test_criterion_4_image_equivalence_and_surface_null():
    """Conductor reflection matches the sign-flipped mirror wave to 1e-3 on
    the same grid, and the total field on the surface nulls to 1e-3 of the
    direct field."""
    results = run_named("impulse_validate")
    rows = results.table("validation_image").rows
    worst = max(row[2] for row in rows)
    grid_ok = len(rows) == 20 and worst <= 1e-3

    conductor = Medium(FREQUENCY, PERFECT_CONDUCTOR)
    d1 = 1.0
    scene = SceneConfig(
        medium=conductor, surface_z=d1, source_z=0.0, receiver_z=d1
    )
    rng = np.random.default_rng(42)
    worst_null = 0.0
    for lag_x in rng.uniform(0.0, 1.0, 5):
        lag = SpatialLag(x=float(lag_x))
        spec = estimate_nodes(
            scene, lag.transverse,
            oscillation_span(scene, FieldComponent.LOS_PLUS_REFLECTION),
        )
        total = synthesize_impulse(
            scene, FieldComponent.LOS_PLUS_REFLECTION, lag, spec
        )
        direct = synthesize_impulse(scene, FieldComponent.LOS_ONLY, lag, spec)
        worst_null = max(worst_null, abs(total) / abs(direct))
    null_ok = worst_null <= 1e-3
    _report(
        4,
        "conductor reflection vs mirror wave and on-surface null",
        grid_ok and null_ok,
        f"worst mirror error {worst:.2e}, worst surface residual {worst_null:.2e} "
        f"(tol 1e-3)",
    )


def test_criterion_5_direct_channel_eigenvalues_flat(fig2):
    """At the matched spacing for the 10 m range, all 8 self-sum direct-path
    eigenvalues sit within 0.5 dB of 9.03 dB."""
    rows = _rows(fig2, "eigenvalues", "los")
    deviations = [abs(row[4] - 9.03) for row in rows]
    ok = len(rows) == 8 and max(deviations) <= 0.5
    _report(
        5,
        "direct-path eigenvalues flat at 9.03 dB",
        ok,
        f"max deviation {max(deviations):.4f} dB (tol 0.5 dB)",
    )


def test_criterion_6_conductor_flatness_and_selectivity(fig2, fig4):
    """Conductor reflected eigenvalues are flat (within 0.5 dB) at the
    spacing matched to the mirrored 20 m range, and strictly more spread at
    the spacing matched to the direct 10 m range."""

    def spread(results):
        rows = _rows(results, "eigenvalues", "perfect_conductor")
        dbs = [row[4] for row in rows]
        return max(dbs) - min(dbs)

    matched = spread(fig4)
    mismatched = spread(fig2)
    ok = matched <= 0.5 and mismatched > matched
    _report(
        6,
        "conductor spectrum flat at matched spacing, spread at direct spacing",
        ok,
        f"matched spread {matched:.4f} dB (tol 0.5), "
        f"mismatched spread {mismatched:.2f} dB",
    )


def test_criterion_7_reflectivity_scaling(fig4):
    """Dielectric reflected spectra equal the conductor spectrum scaled by
    the specular power reflectivity |R(0)|^2, within 10% per eigenvalue."""
    pc_rows = _rows(fig4, "eigenvalues", "perfect_conductor")
    worst = 0.0
    details = []
    for material in DIELECTRICS:
        medium = Medium(FREQUENCY, material)
        reflectivity = float(fresnel_reflection(medium, 0.0, 0.0)) ** 2
        rows = _rows(fig4, "eigenvalues", material.name)
        ratios = [
            row[3] / (reflectivity * pc_row[3])
            for row, pc_row in zip(rows, pc_rows)
        ]
        material_worst = max(abs(ratio - 1.0) for ratio in ratios)
        worst = max(worst, material_worst)
        details.append(f"{material.name}: {material_worst:.4f}")
    ok = worst <= 0.10
    _report(
        7,
        "dielectric spectra scale by specular reflectivity",
        ok,
        f"per-eigenvalue deviation {'; '.join(details)} (tol 0.10)",
    )


def test_criterion_8_capacity_properties(fig5):
    """Waterfilling never beats the flat-spectrum bound on random spectra;
    a flat spectrum attains the full-stream formula exactly; the bound at
    8 antennas / 10 dB is 27.68 b/s/Hz; and above 30 dB the reflected
    capacity curves climb at the direct-path slope within 2%."""
    count = 8
    snr_grid = [10.0 ** (db / 10.0) for db in range(-10, 41, 2)]

    rng = np.random.default_rng(7)
    worst_gap = 0.0
    for _ in range(1000):
        raw = rng.uniform(0.0, 1.0, count)
        values = raw * (count * count / raw.sum())
        for snr in (snr_grid[0], snr_grid[len(snr_grid) // 2], snr_grid[-1]):
            achieved = waterfill(values, snr).capacity
            worst_gap = max(worst_gap, achieved - dof_bound(count, snr).bound)
    bound_ok = worst_gap <= 1e-9

    flat = np.full(count, float(count))
    flat_err = max(
        abs(waterfill(flat, snr).capacity - count * math.log2(1.0 + snr))
        for snr in snr_grid
    )
    flat_ok = flat_err <= 1e-9

    reference = dof_bound(count, 10.0).bound
    reference_ok = round(reference, 2) == 27.68

    table = fig5.table("capacity")
    los = {row[2]: row[3] for row in table.rows if row[0] == "los"}
    slope_details = []
    slope_ok = True
    los_slope = (los[40.0] - los[38.0]) / 2.0
    for material in ("perfect_conductor",) + tuple(m.name for m in DIELECTRICS):
        rates = {row[2]: row[3] for row in table.rows if row[0] == material}
        slope = (rates[40.0] - rates[38.0]) / 2.0
        rel = abs(slope / los_slope - 1.0)
        slope_ok = slope_ok and rel <= 0.02
        slope_details.append(f"{material}: {rel:.4f}")

    ok = bound_ok and flat_ok and reference_ok and slope_ok
    _report(
        8,
        "capacity bound, flat-spectrum equality, 27.68 reference, slopes",
        ok,
        f"bound gap {worst_gap:.1e}, flat err {flat_err:.1e}, "
        f"reference {reference:.5f}, slope errors {'; '.join(slope_details)} "
        f"(tol 0.02)",
    )


def test_criterion_9_deterministic_output(tmp_path):
    """Two runs of the same experiment emit byte-identical CSV files."""
    first = emit(run_named("fig2"), "csv", tmp_path / "a")
    second = emit(run_named("fig2"), "csv", tmp_path / "b")
    pairs = list(zip(first, second))
    identical = all(a.read_bytes() == b.read_bytes() for a, b in pairs)
    ok = identical and len(pairs) == 1
    _report(
        9,
        "repeated runs emit byte-identical CSV",
        ok,
        f"{len(pairs)} file(s) compared byte-for-byte",
    )
