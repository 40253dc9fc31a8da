"""Phonon-bath dephasing functions for two in-plane quantum dots.

Units throughout: meV, ps, nm, K.  The k-sums over phonon modes are turned
into integrals, and the normalization volume cancels analytically.  Because
the dispersion is linear and isotropic (omega = c|k|), every time dependence
sits in the radial coordinate.  The angular integrals are done once per
interdot distance, which leaves a set of 1-D spectral weights on a
Gauss-Legendre radial grid.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.special import j0

from .errors import ResolutionError

HBAR = 0.6582  # meV ps
K_B = 0.08617  # meV / K

# 1 kg/m^3 expressed in meV ps^2 / nm^5
KG_M3 = 6.241509074e21 * 1e24 / 1e45


@dataclass(frozen=True)
class MaterialParams:
    """Deformation-potential coupling constants and wavefunction widths (GaAs defaults)."""

    sigma_e: float = 8000.0  # meV
    sigma_h: float = -1000.0  # meV
    sound_speed: float = 5.6  # nm/ps
    mass_density: float = 5600.0 * KG_M3  # meV ps^2 / nm^5
    l_e: float = 4.4  # nm
    l_h: float = 3.6  # nm
    l_z: float = 1.0  # nm

    def __post_init__(self):
        for name in ("sound_speed", "mass_density", "l_e", "l_h", "l_z"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"MaterialParams.{name} must be positive, got {value!r}")


@dataclass(frozen=True)
class BathSpec:
    temperature: float  # K
    boltzmann_k: float = K_B
    hbar: float = HBAR

    def __post_init__(self):
        if not self.temperature >= 0:
            raise ValueError(f"temperature must be >= 0, got {self.temperature!r}")


@dataclass(frozen=True)
class SpectralGrid:
    """Quadrature layout in spherical phonon-momentum coordinates.

    ``k_max`` and ``n_k`` set the radial Gauss-Legendre rule, ``n_theta`` the
    polar rule on [0, pi/2] (the integrand is even in k_z).  The azimuthal
    angle is either integrated in closed form (``"bessel"``) or by the
    periodic trapezoid rule with ``n_phi`` points (``"trapezoid"``).
    """

    k_max: float = 6.0  # 1/nm
    n_k: int = 1024
    n_theta: int = 256
    azimuthal_mode: str = "bessel"
    n_phi: int = 64

    def __post_init__(self):
        if not self.k_max > 0:
            raise ValueError("k_max must be positive")
        if self.n_k < 16 or self.n_theta < 16:
            raise ValueError("n_k and n_theta must be at least 16")
        if self.azimuthal_mode not in ("bessel", "trapezoid"):
            raise ValueError(f"unknown azimuthal_mode {self.azimuthal_mode!r}")
        if self.azimuthal_mode == "trapezoid" and self.n_phi < 16:
            raise ValueError("n_phi must be at least 16")

    @property
    def dk(self) -> float:
        return self.k_max / self.n_k

    def refined(self, factor: int = 2) -> "SpectralGrid":
        return SpectralGrid(self.k_max, self.n_k * factor, self.n_theta * factor,
                            self.azimuthal_mode, self.n_phi * factor)


@dataclass(frozen=True)
class DephasingKernel:
    """A_01, A_03, B_01, B_03 tabulated on a time grid for one (T, d).

    The remaining dephasing functions follow from the sums above and are
    exposed as properties so that the identities between them are exact.
    """

    time_grid: np.ndarray
    a01: np.ndarray
    a03: np.ndarray
    b01: np.ndarray
    b03: np.ndarray
    temperature: float
    distance: float
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def a13(self) -> np.ndarray:
        return self.a03 - self.a01

    @property
    def b12(self) -> np.ndarray:
        return 4.0 * self.b01 - self.b03

    def phase(self, i: int, j: int) -> np.ndarray:
        """A_ij on the time grid for i < j."""
        zero = np.zeros_like(self.a01)
        return {
            (0, 1): self.a01, (0, 2): self.a01, (0, 3): self.a03,
            (1, 2): zero, (1, 3): self.a13, (2, 3): self.a13,
        }[(i, j)]

    def damping(self, i: int, j: int) -> np.ndarray:
        """B_ij on the time grid for i < j."""
        return {
            (0, 1): self.b01, (0, 2): self.b01, (1, 3): self.b01, (2, 3): self.b01,
            (0, 3): self.b03, (1, 2): self.b12,
        }[(i, j)]

    def to_csv(self, path) -> Path:
        path = Path(path)
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["t_ps", "a01", "a03", "b01", "b03", "b12"])
            for row in zip(self.time_grid, self.a01, self.a03, self.b01, self.b03, self.b12):
                writer.writerow([f"{v:.12g}" for v in row])
        return path


def form_factor(k_perp, k_z, params: MaterialParams):
    """Deformation-potential form factor F(k_perp, k_z) in meV."""
    k_perp = np.asarray(k_perp, dtype=float)
    k_z = np.asarray(k_z, dtype=float)
    vertical = np.exp(-params.l_z**2 * k_z**2 / 4)
    inplane = (params.sigma_e * np.exp(-params.l_e**2 * k_perp**2 / 4)
               - params.sigma_h * np.exp(-params.l_h**2 * k_perp**2 / 4))
    return vertical * inplane


def coupling_density(k_perp, k_z, params: MaterialParams = MaterialParams(), hbar: float = HBAR):
    """Volume-normalized coupling V |g_k|^2 in nm^3.

    V |f_k|^2 = hbar k F^2 / (2 rho c) and g_k = f_k / (hbar c k), so the
    result is F^2 / (2 rho hbar c^3 k).  Defined as 0 at k = 0.
    """
    k_perp = np.asarray(k_perp, dtype=float)
    k_z = np.asarray(k_z, dtype=float)
    k = np.hypot(k_perp, k_z)
    F = form_factor(k_perp, k_z, params)
    c = params.sound_speed
    with np.errstate(divide="ignore", invalid="ignore"):
        out = F**2 / (2 * params.mass_density * hbar * c**3 * k)
    out = np.where(k > 0, out, 0.0)
    return out[()] if out.ndim == 0 else out


def thermal_factor(omega, bath: BathSpec):
    """Return 2 n(omega) + 1 = coth(hbar omega / 2 k_B T); exactly 1 at T = 0."""
    omega = np.asarray(omega, dtype=float)
    if np.any(~(omega > 0)):
        raise ValueError("thermal_factor requires omega > 0")
    if bath.temperature == 0:
        out = np.ones_like(omega)
    else:
        with np.errstate(over="ignore"):
            x = bath.hbar * omega / (2 * bath.boltzmann_k * bath.temperature)
        out = 1.0 / np.tanh(x)
    return out[()] if out.ndim == 0 else out


def _leggauss(n: int, a: float, b: float):
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def _cos2_average(k_perp: np.ndarray, d: float, grid: SpectralGrid) -> np.ndarray:
    """Azimuthal mean of cos^2(k_perp d cos(phi) / 2)."""
    if math.isinf(d):
        return np.full_like(k_perp, 0.5)
    if grid.azimuthal_mode == "bessel":
        return 0.5 * (1.0 + j0(k_perp * d))
    phi = 2 * np.pi * np.arange(grid.n_phi) / grid.n_phi
    arg = 0.5 * d * k_perp[..., None] * np.cos(phi)
    return np.mean(np.cos(arg) ** 2, axis=-1)


@dataclass(frozen=True)
class SpectralWeights:
    """Radial nodes with the quadrature-weighted couplings for A_01/B_01 and A_03/B_03.

    ``w01[i]`` approximates the contribution of the shell at ``k[i]`` to
    sum_k |g_k|^2 (...), ``w03[i]`` the same for 4 sum_k |g_k|^2 cos^2(k_x d/2)(...).
    """

    k: np.ndarray
    omega: np.ndarray
    w01: np.ndarray
    w03: np.ndarray
    distance: float


def spectral_weights(d: float, params: MaterialParams = MaterialParams(),
                     grid: SpectralGrid = SpectralGrid(), hbar: float = HBAR) -> SpectralWeights:
    if not d >= 0:
        raise ValueError(f"distance must be >= 0, got {d!r}")
    k, wk = _leggauss(grid.n_k, 0.0, grid.k_max)
    theta, wt = _leggauss(grid.n_theta, 0.0, 0.5 * np.pi)
    kk = k[:, None]
    k_perp = kk * np.sin(theta)
    k_z = kk * np.cos(theta)
    # solid-angle integrand of k^2 V|g|^2; the upper z half-space is doubled
    shell = coupling_density(k_perp, k_z, params, hbar) * kk**2 * np.sin(theta) * wt
    s01 = shell.sum(axis=1)
    s03 = (shell * _cos2_average(k_perp, d, grid)).sum(axis=1)
    base = wk * (2.0 * 2.0 * np.pi) / (2.0 * np.pi) ** 3
    return SpectralWeights(k=k, omega=params.sound_speed * k,
                           w01=base * s01, w03=base * (4.0 * s03), distance=d)


def check_resolution(t_max: float, params: MaterialParams, grid: SpectralGrid) -> None:
    if grid.dk * params.sound_speed * t_max > np.pi / 4:
        needed = math.ceil(4 * grid.k_max * params.sound_speed * t_max / np.pi)
        raise ResolutionError(
            f"radial grid too coarse for t_max={t_max} ps: n_k={grid.n_k}, need n_k >= {needed}",
            required_points=needed,
        )


def compute_kernel(times, bath: BathSpec, d: float, params: MaterialParams = MaterialParams(),
                   grid: SpectralGrid = SpectralGrid(),
                   weights: SpectralWeights | None = None) -> DephasingKernel:
    """Tabulate the dephasing functions on ``times`` (ps) for temperature and distance ``d`` (nm).

    ``weights`` may be passed to reuse the angular integrals across temperatures.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("times must be a non-empty 1-D sequence")
    if np.any(times < 0) or np.any(np.diff(times) < 0):
        raise ValueError("times must be non-negative and ordered")
    check_resolution(float(times[-1]), params, grid)
    if weights is None:
        weights = spectral_weights(d, params, grid, bath.hbar)
    elif weights.distance != d:
        raise ValueError("weights were computed for a different distance")

    phase = np.outer(times, weights.omega)
    sin_wt = np.sin(phase)
    # cos(wt) - 1 without cancellation near t = 0
    cos_m1 = -2.0 * np.sin(0.5 * phase) ** 2
    thermal = thermal_factor(weights.omega, bath)
    a01 = (sin_wt * weights.w01).sum(axis=1)
    a03 = (sin_wt * weights.w03).sum(axis=1)
    b01 = (cos_m1 * (weights.w01 * thermal)).sum(axis=1)
    b03 = (cos_m1 * (weights.w03 * thermal)).sum(axis=1)
    return DephasingKernel(times, a01, a03, b01, b03, bath.temperature, d,
                           meta={"grid": grid, "params": params})


def asymptotic_b(bath: BathSpec, d: float, params: MaterialParams = MaterialParams(),
                 grid: SpectralGrid = SpectralGrid(),
                 weights: SpectralWeights | None = None) -> tuple[float, float, float]:
    """Long-time limits (B_01, B_03, B_12) with the cos(omega t) terms averaged away."""
    if weights is None:
        weights = spectral_weights(d, params, grid, bath.hbar)
    thermal = thermal_factor(weights.omega, bath)
    b01 = -float(np.sum(weights.w01 * thermal))
    b03 = -float(np.sum(weights.w03 * thermal))
    return b01, b03, 4.0 * b01 - b03


def steady_state_kernel(bath: BathSpec, d: float, params: MaterialParams = MaterialParams(),
                        grid: SpectralGrid = SpectralGrid(),
                        weights: SpectralWeights | None = None) -> DephasingKernel:
    """One-point kernel holding the long-time limit: A_ij -> 0, B_ij -> asymptotic values."""
    b01, b03, _ = asymptotic_b(bath, d, params, grid, weights)
    return DephasingKernel(np.array([np.inf]), np.zeros(1), np.zeros(1),
                           np.array([b01]), np.array([b03]), bath.temperature, d,
                           meta={"grid": grid, "params": params, "steady_state": True})
