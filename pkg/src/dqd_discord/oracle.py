"""Brute-force geometric discord by scanning local projective measurements.

Used as an independent reference for the closed-form bounds in
:mod:`dqd_discord.correlations`.  Nothing here is fast; it is meant to be
obviously correct.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .correlations import PAULI, geometric_discord_lower, one_sided_discord


@dataclass(frozen=True)
class MeasurementGrid:
    """Uniform polar/azimuthal grid over measurement directions.

    Polar angles are j*pi/n_theta for j = 0..n_theta, the poles appear once.
    Doubling both counts gives a superset of directions.
    """

    n_theta: int = 128
    n_phi: int = 128
    side: str = "left"

    def __post_init__(self):
        if self.n_theta < 32 or self.n_phi < 32:
            raise ValueError("n_theta and n_phi must be at least 32")
        if self.side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', got {self.side!r}")

    def directions(self) -> np.ndarray:
        theta = np.pi * np.arange(1, self.n_theta) / self.n_theta
        phi = 2 * np.pi * np.arange(self.n_phi) / self.n_phi
        th, ph = np.meshgrid(theta, phi, indexing="ij")
        ring = np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=-1)
        poles = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]])
        return np.concatenate([poles[:1], ring.reshape(-1, 3), poles[1:]])

    def refined(self) -> "MeasurementGrid":
        return MeasurementGrid(2 * self.n_theta, 2 * self.n_phi, self.side)


def _projectors(n: np.ndarray) -> np.ndarray:
    """(N, 2, 2, 2) array of the +n and -n projectors for each direction."""
    sn = np.einsum("ni,ijk->njk", n, np.stack(PAULI))
    eye = np.eye(2)
    return np.stack([(eye + sn) / 2, (eye - sn) / 2], axis=1)


def measurement_distances(rho, grid: MeasurementGrid, chunk: int = 4096) -> np.ndarray:
    """||rho - sum_a P_a rho P_a||_HS^2 for every grid direction."""
    rho = np.asarray(getattr(rho, "rho", rho), dtype=complex)
    r = rho.reshape(2, 2, 2, 2)  # (l, r, l', r')
    dirs = grid.directions()
    out = np.empty(len(dirs))
    for start in range(0, len(dirs), chunk):
        proj = _projectors(dirs[start:start + chunk])
        if grid.side == "left":
            dephased = np.einsum("naij,jbkc,nakl->niblc", proj, r, proj, optimize=True)
        else:
            dephased = np.einsum("naij,bjck,nakl->nbicl", proj, r, proj, optimize=True)
        diff = r[None] - dephased
        out[start:start + chunk] = np.sum(np.abs(diff) ** 2, axis=(1, 2, 3, 4))
    return out


def oracle_one_sided(rho, grid: MeasurementGrid = MeasurementGrid()) -> float:
    return float(np.min(measurement_distances(rho, grid)))


@dataclass(frozen=True)
class SandwichReport:
    lower: float
    oracle_left: float
    oracle_right: float
    closed_left: float
    closed_right: float
    ok: bool
    detail: str = ""


def sandwich_check(rho, grid: MeasurementGrid = MeasurementGrid(), grid_tolerance: float = 5e-4,
                   raise_on_failure: bool = True) -> SandwichReport:
    """Compare the closed-form one-sided values with the grid search on both sides."""
    rho = np.asarray(getattr(rho, "rho", rho), dtype=complex)
    o_left = oracle_one_sided(rho, MeasurementGrid(grid.n_theta, grid.n_phi, "left"))
    o_right = oracle_one_sided(rho, MeasurementGrid(grid.n_theta, grid.n_phi, "right"))
    c_left, c_right = one_sided_discord(rho)
    lower = geometric_discord_lower(rho)
    problems = []
    if lower > max(o_left, o_right) + grid_tolerance:
        problems.append(f"lower bound {lower:.6g} above oracle max {max(o_left, o_right):.6g}")
    if o_left < c_left - grid_tolerance:
        problems.append(f"left oracle {o_left:.6g} below closed form {c_left:.6g}")
    if o_right < c_right - grid_tolerance:
        problems.append(f"right oracle {o_right:.6g} below closed form {c_right:.6g}")
    detail = "; ".join(problems)
    if problems:
        detail += f"; state={[[[z.real, z.imag] for z in row] for row in rho.tolist()]}"
    report = SandwichReport(lower, o_left, o_right, c_left, c_right, not problems, detail)
    if problems and raise_on_failure:
        raise AssertionError(detail)
    return report
