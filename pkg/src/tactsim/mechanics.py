"""Linear elastic contact mechanics: depth-to-force law and hysteresis.

The silicone slab responds like a spring: F = k_s * d with stiffness
k_s = E * A / D (E Young's modulus, A effective contact area, D slab
thickness). Defaults are calibrated so the full 3 mm indentation produces
18 N, i.e. one 0.6 mm depth step is worth 3.6 N.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .geometry import MAX_DEPTH_MM, N_DEPTH_LEVELS, SLAB_THICKNESS_MM

DEFAULT_YOUNGS_MODULUS_PA = 5.9e6
DEFAULT_MAX_FORCE_N = 18.0


@dataclass(frozen=True)
class MechanicsParams:
    """Elastic parameters of the slab; stiffness is derived, k_s = E*A/D."""

    youngs_modulus_pa: float
    slab_thickness_mm: float
    effective_area_mm2: float
    stiffness_n_per_mm: float
    max_depth_mm: float = MAX_DEPTH_MM

    def __post_init__(self) -> None:
        if self.youngs_modulus_pa <= 0:
            raise ValueError("Young's modulus must be positive")
        if self.slab_thickness_mm <= 0:
            raise ValueError("slab thickness must be positive")
        if self.effective_area_mm2 <= 0:
            raise ValueError("effective area must be positive")
        if self.max_depth_mm <= 0:
            raise ValueError("max depth must be positive")
        derived = (
            self.youngs_modulus_pa / 1e6
        ) * self.effective_area_mm2 / self.slab_thickness_mm
        if abs(derived - self.stiffness_n_per_mm) > 1e-9 * abs(derived):
            raise ValueError("stiffness inconsistent with E*A/D")

    @classmethod
    def from_area(
        cls,
        youngs_modulus_pa: float = DEFAULT_YOUNGS_MODULUS_PA,
        slab_thickness_mm: float = SLAB_THICKNESS_MM,
        effective_area_mm2: float = 5.0,
        max_depth_mm: float = MAX_DEPTH_MM,
    ) -> "MechanicsParams":
        stiffness = (youngs_modulus_pa / 1e6) * effective_area_mm2 / slab_thickness_mm
        return cls(
            youngs_modulus_pa=youngs_modulus_pa,
            slab_thickness_mm=slab_thickness_mm,
            effective_area_mm2=effective_area_mm2,
            stiffness_n_per_mm=stiffness,
            max_depth_mm=max_depth_mm,
        )

    @classmethod
    def from_calibration(
        cls,
        youngs_modulus_pa: float = DEFAULT_YOUNGS_MODULUS_PA,
        slab_thickness_mm: float = SLAB_THICKNESS_MM,
        max_force_n: float = DEFAULT_MAX_FORCE_N,
        max_depth_mm: float = MAX_DEPTH_MM,
    ) -> "MechanicsParams":
        """Fix the stiffness from the (max depth -> max force) endpoint.

        The stiffness is taken directly as F_max / d_max so the calibration
        endpoint is reproduced exactly; the effective area follows from it.
        """
        stiffness = max_force_n / max_depth_mm
        area = effective_area_from_calibration(
            youngs_modulus_pa, slab_thickness_mm, max_force_n, max_depth_mm
        )
        return cls(
            youngs_modulus_pa=youngs_modulus_pa,
            slab_thickness_mm=slab_thickness_mm,
            effective_area_mm2=area,
            stiffness_n_per_mm=stiffness,
            max_depth_mm=max_depth_mm,
        )

    @property
    def max_force_n(self) -> float:
        return self.stiffness_n_per_mm * self.max_depth_mm


def default_mechanics() -> MechanicsParams:
    """Paper-scale defaults: 5.9 MPa silicone, 5 mm slab, 18 N at 3 mm."""
    return MechanicsParams.from_calibration()


def force_from_depth(params: MechanicsParams, depth_mm: float) -> float:
    """Contact force in N for an indentation depth in mm (linear law)."""
    if not 0.0 <= depth_mm <= params.max_depth_mm:
        raise ValueError(
            f"depth {depth_mm} mm outside [0, {params.max_depth_mm}] mm"
        )
    return params.stiffness_n_per_mm * depth_mm


def force_at_level(params: MechanicsParams, level: int) -> float:
    """Force at a discrete depth level, exact on the calibration scale.

    Computed as F_max * level / n_levels so the level forces come out as
    the correctly rounded decimals (3.6, 7.2, ... 18.0 N by default).
    """
    if not isinstance(level, int) or isinstance(level, bool):
        raise ValueError("depth level must be an integer")
    if not 1 <= level <= N_DEPTH_LEVELS:
        raise ValueError(f"depth level {level} out of range 1..{N_DEPTH_LEVELS}")
    return params.max_force_n * level / N_DEPTH_LEVELS


def effective_area_from_calibration(
    youngs_modulus_pa: float,
    slab_thickness_mm: float,
    max_force_n: float,
    max_depth_mm: float,
) -> float:
    """Solve F = E*A*d/D for the effective contact area in mm^2.

    A zero peak force is allowed and yields zero area; the physical
    constants (E, D, d_max) must be strictly positive.
    """
    if youngs_modulus_pa <= 0 or slab_thickness_mm <= 0 or max_depth_mm <= 0:
        raise ValueError("E, D and d_max must be positive")
    if max_force_n < 0:
        raise ValueError("peak force must be non-negative")
    return (
        max_force_n * slab_thickness_mm / ((youngs_modulus_pa / 1e6) * max_depth_mm)
    )


@dataclass(frozen=True)
class ForceCurve:
    """Sampled force-vs-depth curve with strictly increasing depths."""

    depths_mm: np.ndarray
    forces_n: np.ndarray

    def __post_init__(self) -> None:
        depths = np.asarray(self.depths_mm, dtype=float)
        forces = np.asarray(self.forces_n, dtype=float)
        object.__setattr__(self, "depths_mm", depths)
        object.__setattr__(self, "forces_n", forces)
        if depths.ndim != 1 or forces.ndim != 1 or depths.size != forces.size:
            raise ValueError("depths and forces must be 1-d arrays of equal length")
        if depths.size < 2:
            raise ValueError("a force curve needs at least two samples")
        if not np.all(np.diff(depths) > 0):
            raise ValueError("depths must be strictly increasing")
        if np.any(forces < 0):
            raise ValueError("forces must be non-negative")


def hysteresis_area(loading: ForceCurve, unloading: ForceCurve) -> float:
    """Area enclosed between loading and unloading force-depth curves, N*mm.

    Each curve is integrated with the trapezoid rule on its own sample
    grid (no resampling); the area is the difference of the two integrals.
    Both curves must span the same depth interval.
    """
    if (
        loading.depths_mm[0] != unloading.depths_mm[0]
        or loading.depths_mm[-1] != unloading.depths_mm[-1]
    ):
        raise ValueError("loading and unloading curves must span the same depths")
    load_integral = float(np.trapezoid(loading.forces_n, loading.depths_mm))
    unload_integral = float(np.trapezoid(unloading.forces_n, unloading.depths_mm))
    return load_integral - unload_integral


def save_force_curve(curve: ForceCurve, path: str | Path) -> None:
    """Write a force curve as a two-column CSV (depth_mm, force_N)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["depth_mm", "force_N"])
        for d, f in zip(curve.depths_mm, curve.forces_n):
            writer.writerow([f"{d:.17g}", f"{f:.17g}"])


def load_force_curve(path: str | Path) -> ForceCurve:
    """Read a two-column (depth_mm, force_N) CSV written by save_force_curve."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["depth_mm", "force_N"]:
        raise ValueError(f"{path}: expected header 'depth_mm,force_N'")
    try:
        depths = np.array([float(r[0]) for r in rows[1:]])
        forces = np.array([float(r[1]) for r in rows[1:]])
    except (ValueError, IndexError) as exc:
        raise ValueError(f"{path}: malformed force curve row") from exc
    return ForceCurve(depths_mm=depths, forces_n=forces)
