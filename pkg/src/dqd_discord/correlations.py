"""Geometric and rescaled discord bounds, purity and concurrence for two qubits."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .dynamics import TwoQubitState, x_state

I2 = np.eye(2, dtype=complex)
PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
SIGMA_YY = np.kron(PAULI[1], PAULI[1])

RESCALE = 0.5 / (1.0 - math.sqrt(3.0) / 2.0)


def _matrix(state) -> np.ndarray:
    return state.rho if isinstance(state, TwoQubitState) else np.asarray(state, dtype=complex)


def jacobi_eigh(a, tol: float = 1e-14, max_sweeps: int = 64):
    """Cyclic Jacobi eigensolver for a small real symmetric matrix.

    Returns eigenvalues in ascending order and the matching eigenvectors as
    columns.  Sweeps stop once the off-diagonal norm falls below ``tol``
    relative to the Frobenius norm.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    scale = np.linalg.norm(a)
    if scale == 0:
        return np.zeros(n), v
    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        if math.sqrt(np.sum(a[off_mask] ** 2)) <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                a[p, q] = a[q, p] = 0.0
                v = v @ rot
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def top_eigenpair(m, degenerate_tol: float = 1e-12):
    """Largest eigenvalue and a deterministic unit eigenvector.

    Inside a degenerate top eigenspace the candidate with the lexicographically
    largest component magnitudes wins; the sign makes its first non-zero
    component positive.
    """
    w, v = jacobi_eigh(m)
    top = w[-1]
    tol = degenerate_tol * max(1.0, abs(top))
    candidates = [v[:, i] for i in range(len(w)) if top - w[i] <= tol]
    vec = max(candidates, key=lambda u: tuple(np.round(np.abs(u), 12)))
    nz = np.flatnonzero(np.abs(vec) > 1e-12)
    if nz.size and vec[nz[0]] < 0:
        vec = -vec
    return top, vec


@dataclass(frozen=True)
class BlochDecomposition:
    x_vec: np.ndarray
    y_vec: np.ndarray
    t_mat: np.ndarray

    def reconstruct(self) -> np.ndarray:
        rho = np.kron(I2, I2).astype(complex)
        for i in range(3):
            rho += self.x_vec[i] * np.kron(PAULI[i], I2)
            rho += self.y_vec[i] * np.kron(I2, PAULI[i])
            for j in range(3):
                rho += self.t_mat[i, j] * np.kron(PAULI[i], PAULI[j])
        return rho / 4


def bloch_decompose(rho) -> BlochDecomposition:
    rho = _matrix(rho)
    x = np.array([np.trace(rho @ np.kron(s, I2)).real for s in PAULI])
    y = np.array([np.trace(rho @ np.kron(I2, s)).real for s in PAULI])
    t = np.array([[np.trace(rho @ np.kron(si, sj)).real for sj in PAULI] for si in PAULI])
    return BlochDecomposition(x, y, t)


def _k_matrices(b: BlochDecomposition):
    kx = np.outer(b.x_vec, b.x_vec) + b.t_mat @ b.t_mat.T
    ky = np.outer(b.y_vec, b.y_vec) + b.t_mat.T @ b.t_mat
    return kx, ky


def one_sided_discord(rho) -> tuple[float, float]:
    """Closed-form minimum over projective measurements on the left and on the right qubit."""
    kx, ky = _k_matrices(bloch_decompose(rho))
    left = 0.25 * max(np.trace(kx) - top_eigenpair(kx)[0], 0.0)
    right = 0.25 * max(np.trace(ky) - top_eigenpair(ky)[0], 0.0)
    return left, right


def geometric_discord_lower(rho) -> float:
    return max(one_sided_discord(rho))


def geometric_discord_upper(rho) -> float:
    b = bloch_decompose(rho)
    kx, ky = _k_matrices(b)
    kx_top, kx_vec = top_eigenpair(kx)
    ky_top, ky_vec = top_eigenpair(ky)
    tvec_y = b.t_mat @ ky_vec
    tvec_x = b.t_mat.T @ kx_vec
    lx = np.outer(b.x_vec, b.x_vec) + np.outer(tvec_y, tvec_y)
    ly = np.outer(b.y_vec, b.y_vec) + np.outer(tvec_x, tvec_x)
    first = np.trace(kx) - kx_top + np.trace(ly) - top_eigenpair(ly)[0]
    second = np.trace(ky) - ky_top + np.trace(lx) - top_eigenpair(lx)[0]
    return 0.25 * max(min(first, second), 0.0)


def purity(rho) -> float:
    rho = _matrix(rho)
    return float(np.real(np.vdot(rho, rho)))


def rescaled_discord(ds: float, purity: float) -> float:
    """Purity-independent rescaling of a geometric discord value."""
    if ds < 0:
        raise ValueError(f"geometric discord must be non-negative, got {ds!r}")
    ratio = ds / (2.0 * purity)
    if ratio > 1:
        raise ValueError(f"geometric discord {ds!r} exceeds twice the purity {purity!r}")
    return RESCALE * (1.0 - math.sqrt(1.0 - ratio))


def x_state_geometric_discord(a: float, b: float, c: float, x: complex, y: complex) -> float:
    ax, ay = abs(x), abs(y)
    pop = 0.5 * ((a - b) ** 2 + (b - c) ** 2)
    return min(2 * ay**2 + 2 * ax**2, pop + (ay - ax) ** 2)


def initial_x_discord(alpha2: float) -> float:
    """Geometric discord of ``initial_x_from_alpha(alpha2)`` in closed form.

    The second branch is 2|x|^2 + 2|y|^2 = 4 (|alpha|^2 |beta|^2)^2.
    """
    s = 2 * alpha2 - 1
    return min(0.25 * s**2 * (s**2 + 1), 4 * alpha2**2 * (alpha2 - 1) ** 2)


def concurrence(rho, rank_tol: float = 1e-13) -> float:
    """Wootters concurrence.

    The spin-flip spectrum is taken as the singular values of X^T (sy x sy) X
    with rho = X X^H, which avoids square roots of round-off eigenvalues.
    Eigenvalues of rho below ``rank_tol`` are dropped.
    """
    rho = _matrix(rho)
    p, v = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    keep = p > rank_tol
    x = v[:, keep] * np.sqrt(p[keep])
    s = np.linalg.svd(x.T @ SIGMA_YY @ x, compute_uv=False)
    s = np.sort(np.concatenate([s, np.zeros(4 - s.size)]))[::-1]
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))


@dataclass(frozen=True)
class DiscordReport:
    ds_lower: float
    ds_upper: float
    purity: float
    d_lower: float
    d_upper: float
    concurrence: float

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def discord_report(rho) -> DiscordReport:
    rho = _matrix(rho)
    lo = geometric_discord_lower(rho)
    hi = geometric_discord_upper(rho)
    pur = purity(rho)
    return DiscordReport(lo, hi, pur, rescaled_discord(lo, pur), rescaled_discord(hi, pur),
                         concurrence(rho))


def rescaled_bounds(rho) -> tuple[float, float]:
    r = discord_report(rho)
    return r.d_lower, r.d_upper

