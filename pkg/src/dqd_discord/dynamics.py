"""Two-qubit states and their exact pure-dephasing evolution.

Basis ordering: |0> = |0_L 0_R>, |1> = |0_L 1_R>, |2> = |1_L 0_R>, |3> = |1_L 1_R>.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

import numpy as np

from .errors import StateError
from .phonon_spectral import HBAR, DephasingKernel

PAIRS = tuple(combinations(range(4), 2))


def state_violations(rho: np.ndarray, atol: float = 1e-12, psd_tol: float = 1e-10) -> list[str]:
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        return [f"shape {rho.shape} is not (4, 4)"]
    if not np.all(np.isfinite(rho)):
        return ["non-finite entries"]
    problems = []
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > atol:
        problems.append(f"not Hermitian (max |rho - rho^H| = {herm:.3g})")
    tr = np.trace(rho)
    if abs(tr - 1) > atol:
        problems.append(f"trace {tr.real:.15g} != 1")
    if herm <= atol:
        lam = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0]
        if lam < -psd_tol:
            problems.append(f"not positive semidefinite (min eigenvalue {lam:.3g})")
    return problems


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    rho: np.ndarray

    def __post_init__(self):
        rho = np.array(self.rho, dtype=complex)
        problems = state_violations(rho)
        if problems:
            raise StateError("invalid two-qubit state: " + "; ".join(problems), problems)
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    def to_json(self) -> str:
        return json.dumps([[[z.real, z.imag] for z in row] for row in self.rho.tolist()])

    @classmethod
    def from_json(cls, text: str) -> "TwoQubitState":
        data = json.loads(text)
        try:
            arr = np.array(data, dtype=float)
        except (TypeError, ValueError) as exc:
            raise StateError(f"state JSON is not a numeric array: {exc}") from exc
        if arr.shape != (4, 4, 2):
            raise StateError(f"state JSON must be a 4x4 array of [re, im] pairs, got shape {arr.shape}")
        return cls(arr[..., 0] + 1j * arr[..., 1])

    def save(self, path) -> None:
        Path(path).write_text(self.to_json())

    @classmethod
    def load(cls, path) -> "TwoQubitState":
        return cls.from_json(Path(path).read_text())


@dataclass(frozen=True)
class PropagationSettings:
    """Single-dot energies for the optional deterministic phase (meV).

    The phase exp(i(E_j - E_i)t/hbar) is a local unitary, so it is off by
    default and the level shifts are then ignored.
    """

    level_shift_L: float = 0.0
    level_shift_R: float = 0.0
    include_energy_phase: bool = False

    def energies(self) -> np.ndarray:
        if not self.include_energy_phase:
            return np.zeros(4)
        eL, eR = self.level_shift_L, self.level_shift_R
        return np.array([0.0, eR, eL, eL + eR])


def _matrix(state) -> np.ndarray:
    return state.rho if isinstance(state, TwoQubitState) else np.asarray(state, dtype=complex)


def pure_product_state(alpha: complex, beta: complex) -> TwoQubitState:
    """Both dots in alpha|0> + beta|1>."""
    norm = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norm - 1) > 1e-12:
        raise StateError(f"|alpha|^2 + |beta|^2 = {norm!r}, expected 1")
    psi = np.array([alpha * alpha, alpha * beta, alpha * beta, beta * beta], dtype=complex)
    return TwoQubitState(np.outer(psi, psi.conj()))


def x_state(a: float, b: float, c: float, x: complex, y: complex, tol: float = 1e-12) -> TwoQubitState:
    if abs(a + 2 * b + c - 1) > tol:
        raise StateError(f"a + 2b + c = {a + 2 * b + c!r}, expected 1")
    if min(a, b, c) < -tol:
        raise StateError("populations a, b, c must be non-negative")
    if abs(x) > b + tol:
        raise StateError(f"inner block {{|1>,|2>}} not positive: |x| = {abs(x):.6g} > b = {b:.6g}")
    if abs(y) ** 2 > a * c + tol:
        raise StateError(f"outer block {{|0>,|3>}} not positive: |y|^2 = {abs(y)**2:.6g} > ac = {a*c:.6g}")
    rho = np.array([
        [a, 0, 0, y],
        [0, b, x, 0],
        [0, np.conj(x), b, 0],
        [np.conj(y), 0, 0, c],
    ], dtype=complex)
    return TwoQubitState(rho)


def initial_x_from_alpha(alpha2: float) -> TwoQubitState:
    """X-state keeping the populations and the 0-3, 1-2 coherences of the pure product state."""
    if not 0 <= alpha2 <= 1:
        raise ValueError(f"alpha2 must lie in [0, 1], got {alpha2!r}")
    beta2 = 1.0 - alpha2
    a, b, c = alpha2 * alpha2, alpha2 * beta2, beta2 * beta2
    return x_state(a, b, c, b, b)


def propagate(rho0, kernel: DephasingKernel, t_index: int,
              settings: PropagationSettings = PropagationSettings()) -> TwoQubitState:
    """Evolve ``rho0`` to ``kernel.time_grid[t_index]``; populations are untouched."""
    rho0 = _matrix(rho0)
    n = len(kernel.time_grid)
    if not -n <= t_index < n:
        raise IndexError(f"t_index {t_index} out of range for {n} time points")
    t = kernel.time_grid[t_index]
    energies = settings.energies()
    rho = rho0.copy()
    for i, j in PAIRS:
        a = kernel.phase(i, j)[t_index]
        b = kernel.damping(i, j)[t_index]
        if a == 0 and b == 0:
            continue
        factor = np.exp(-1j * a + b)
        if settings.include_energy_phase and np.isfinite(t):
            factor *= np.exp(1j * (energies[j] - energies[i]) * t / HBAR)
        rho[i, j] = rho0[i, j] * factor
        rho[j, i] = np.conj(rho[i, j])
    return TwoQubitState(rho)


def propagate_all(rho0, kernel: DephasingKernel,
                  settings: PropagationSettings = PropagationSettings()) -> list[TwoQubitState]:
    return [propagate(rho0, kernel, n, settings) for n in range(len(kernel.time_grid))]


def normalized_coherences(rho0, kernel: DephasingKernel, t_index: int,
                          pairs=PAIRS) -> dict[tuple[int, int], float]:
    """|rho_ij(t)| / |rho_ij(0)| for the requested pairs with non-zero initial coherence."""
    rho0 = _matrix(rho0)
    out = {}
    for i, j in pairs:
        if i > j:
            i, j = j, i
        if rho0[i, j] == 0:
            continue
        out[(i, j)] = float(np.exp(kernel.damping(i, j)[t_index]))
    return out
