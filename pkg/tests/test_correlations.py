import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from conftest import (BELL, classical_classical, product_state, random_density_matrix,
                      random_local_unitary, random_x_state, seeds)
from dqd_discord.correlations import (SIGMA_YY, bloch_decompose, concurrence, discord_report,
                                      geometric_discord_lower, geometric_discord_upper,
                                      initial_x_discord, jacobi_eigh, one_sided_discord, purity,
                                      rescaled_discord, top_eigenpair, x_state_geometric_discord)
from dqd_discord.dynamics import (initial_x_from_alpha, propagate, pure_product_state, x_state)
from dqd_discord.phonon_spectral import BathSpec, compute_kernel


def wootters_eigen(rho):
    """Textbook Wootters route: square roots of the eigenvalues of rho * rho_tilde."""
    rt = SIGMA_YY @ rho.conj() @ SIGMA_YY
    lam = np.sqrt(np.abs(np.sort(np.linalg.eigvals(rho @ rt).real)[::-1]))
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


@settings(max_examples=50, deadline=None)
@given(seed=seeds)
def test_jacobi_matches_lapack(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(3, 3))
    a = a + a.T
    w, v = jacobi_eigh(a)
    assert_allclose(w, np.linalg.eigvalsh(a), atol=1e-13 * max(1, np.abs(a).max()))
    assert_allclose(v @ np.diag(w) @ v.T, a, atol=1e-13 * max(1, np.abs(a).max()))
    assert_allclose(v.T @ v, np.eye(3), atol=1e-14)


def test_jacobi_zero_matrix():
    w, v = jacobi_eigh(np.zeros((3, 3)))
    assert np.all(w == 0) and np.array_equal(v, np.eye(3))


def test_top_eigenpair_degenerate_tie_break():
    value, vec = top_eigenpair(np.eye(3))
    assert value == 1.0
    assert_allclose(vec, [1, 0, 0])
    value, vec = top_eigenpair(np.diag([0.2, 1.0, 1.0]))
    assert_allclose(vec, [0, 1, 0])
    _, vec = top_eigenpair(np.diag([0.0, 0.0, 3.0]))
    assert_allclose(vec, [0, 0, 1])


def test_bloch_maximally_mixed():
    b = bloch_decompose(np.eye(4) / 4)
    assert np.all(b.x_vec == 0) and np.all(b.y_vec == 0) and np.all(b.t_mat == 0)


def test_bloch_bell():
    b = bloch_decompose(BELL)
    assert_allclose(b.x_vec, 0, atol=1e-15)
    assert_allclose(b.y_vec, 0, atol=1e-15)
    assert_allclose(b.t_mat, np.diag([1, -1, 1]), atol=1e-15)


@settings(max_examples=50, deadline=None)
@given(seed=seeds)
def test_bloch_reconstruction(seed):
    rho = random_density_matrix(np.random.default_rng(seed))
    b = bloch_decompose(rho)
    assert_allclose(b.reconstruct(), rho, atol=1e-12)
    assert np.linalg.norm(b.x_vec) <= 1 + 1e-12 and np.linalg.norm(b.y_vec) <= 1 + 1e-12
    assert np.all(np.abs(b.t_mat) <= 1 + 1e-12)


@settings(max_examples=50, deadline=None)
@given(a2=st.floats(0, 1), phase=st.floats(0, 2 * math.pi))
def test_product_correlation_matrix_is_rank_one(a2, phase):
    rho = pure_product_state(math.sqrt(a2), math.sqrt(1 - a2) * np.exp(1j * phase))
    b = bloch_decompose(rho)
    assert_allclose(b.t_mat, np.outer(b.x_vec, b.y_vec), atol=1e-12)


def test_bell_discord():
    assert geometric_discord_lower(BELL) == pytest.approx(0.5, abs=1e-12)
    assert geometric_discord_upper(BELL) == pytest.approx(0.5, abs=1e-12)
    assert concurrence(BELL) == pytest.approx(1.0, abs=1e-12)


def test_x_state_example_lower_bound():
    rho = x_state(0.25, 0.25, 0.25, 0.0, 0.25)
    assert geometric_discord_lower(rho) == pytest.approx(1 / 16, abs=1e-14)
    assert geometric_discord_upper(rho) == pytest.approx(1 / 16, abs=1e-14)


def test_product_and_classical_states_have_zero_discord(rng):
    for _ in range(200):
        for rho in (product_state(rng), classical_classical(rng)):
            assert geometric_discord_lower(rho) < 1e-12
            assert geometric_discord_upper(rho) < 1e-12
            assert concurrence(rho) == 0.0


def test_rescaled_discord_values():
    assert rescaled_discord(0.0, 0.7) == 0.0
    assert rescaled_discord(0.5, 1.0) == pytest.approx(0.5, abs=1e-15)
    # 30-digit evaluation: 0.158884196878501...
    assert rescaled_discord(1 / 16, 3 / 8) == pytest.approx(0.1588841968785011, abs=1e-15)
    expected = 0.5 / (1 - math.sqrt(3) / 2) * (1 - math.sqrt(1 - 1 / 12))
    assert rescaled_discord(1 / 16, 3 / 8) == pytest.approx(expected, rel=1e-15)


def test_rescaled_discord_domain():
    with pytest.raises(ValueError):
        rescaled_discord(0.9, 0.4)
    with pytest.raises(ValueError):
        rescaled_discord(-0.1, 0.4)


@given(p=st.floats(0.25, 1.0), d1=st.floats(0, 0.5), d2=st.floats(0, 0.5))
def test_rescaled_discord_monotone(p, d1, d2):
    lo, hi = sorted((d1, d2))
    assert rescaled_discord(lo, p) <= rescaled_discord(hi, p)


def test_x_state_closed_form_examples():
    assert x_state_geometric_discord(0.25, 0.25, 0.25, 0.0, 0.25) == pytest.approx(1 / 16)
    # Bell boundary: both branches equal 1/2
    assert 2 * 0.25 + 0 == 0.5 * ((0.5 - 0) ** 2 + (0 - 0.5) ** 2) + 0.25
    assert x_state_geometric_discord(0.5, 0.0, 0.5, 0.0, 0.5) == pytest.approx(0.5)
    assert x_state_geometric_discord(0.25, 0.25, 0.25, 0.2, 0.2) == 0.0


def test_x_state_closed_form_equals_lower_bound(rng):
    for _ in range(300):
        params, rho = random_x_state(rng)
        assert geometric_discord_lower(rho) == pytest.approx(x_state_geometric_discord(*params),
                                                             abs=1e-12)


def test_x_state_upper_bound_gap_is_analytic(rng):
    """The upper-bound formula exceeds the exact X-state value by (a-c)^2/4 terms."""
    for _ in range(300):
        (a, b, c, x, y), rho = random_x_state(rng)
        lo, hi = geometric_discord_lower(rho), geometric_discord_upper(rho)
        pop = 0.5 * ((a - b) ** 2 + (b - c) ** 2)
        in_plane = 4 * (abs(x) + abs(y)) ** 2 > 4 * pop + 1e-12
        expected = 0.25 * min((a - c) ** 2, 4 * (abs(x) + abs(y)) ** 2) if in_plane else 0.0
        assert hi - lo == pytest.approx(expected, abs=1e-12)


def test_x_state_bounds_coincide_when_populations_symmetric(rng):
    for _ in range(200):
        a = rng.uniform(0, 0.5)
        b = (1 - 2 * a) / 2
        x = rng.uniform(0, b) * np.exp(1j * rng.uniform(0, 6.3))
        y = rng.uniform(0, a) * np.exp(1j * rng.uniform(0, 6.3))
        rho = x_state(a, b, a, x, y)
        assert geometric_discord_upper(rho) == pytest.approx(geometric_discord_lower(rho),
                                                             abs=1e-12)


def test_initial_x_discord_values():
    for a2 in (0.0, 0.5, 1.0):
        assert initial_x_discord(a2) == pytest.approx(0.0, abs=1e-16)
    assert initial_x_discord(0.25) == pytest.approx(5 / 64, abs=1e-16)
    assert initial_x_discord(0.05) == pytest.approx(4 * (0.05 * 0.95) ** 2, abs=1e-16)
    for a2 in np.linspace(0, 1, 21):
        rho = initial_x_from_alpha(a2)
        b = a2 * (1 - a2)
        assert initial_x_discord(a2) == pytest.approx(
            x_state_geometric_discord(a2**2, b, (1 - a2) ** 2, b, b), abs=1e-12)
        assert initial_x_discord(a2) == pytest.approx(geometric_discord_lower(rho), abs=1e-12)


def test_purity_values():
    assert purity(pure_product_state(0.6, 0.8)) == pytest.approx(1.0, abs=1e-14)
    assert purity(np.eye(4) / 4) == pytest.approx(0.25)
    assert purity(x_state(0.25, 0.25, 0.25, 0.0, 0.25)) == pytest.approx(3 / 8)


@settings(max_examples=100, deadline=None)
@given(seed=seeds)
def test_report_invariants(seed):
    rng = np.random.default_rng(seed)
    rho = random_density_matrix(rng)
    r = discord_report(rho)
    assert 0 <= r.ds_lower <= r.ds_upper + 1e-12
    assert r.ds_upper <= 0.5 + 1e-10
    assert 0.25 - 1e-12 <= r.purity <= 1 + 1e-12
    assert 0 <= r.d_lower <= r.d_upper + 1e-12 <= 0.5 + 1e-10


@settings(max_examples=60, deadline=None)
@given(seed=seeds)
def test_local_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    rho = random_density_matrix(rng)
    u = random_local_unitary(rng)
    rotated = u @ rho @ u.conj().T
    assert geometric_discord_lower(rotated) == pytest.approx(geometric_discord_lower(rho), abs=1e-10)
    assert geometric_discord_upper(rotated) == pytest.approx(geometric_discord_upper(rho), abs=1e-10)
    assert concurrence(rotated) == pytest.approx(concurrence(rho), abs=1e-10)


@settings(max_examples=60, deadline=None)
@given(seed=seeds)
def test_concurrence_matches_textbook_route(seed):
    rho = random_density_matrix(np.random.default_rng(seed), rank=4)
    assert concurrence(rho) == pytest.approx(wootters_eigen(rho), abs=1e-9)


def test_concurrence_werner_family():
    for p in np.linspace(0, 1, 11):
        rho = p * BELL + (1 - p) * np.eye(4) / 4
        assert concurrence(rho) == pytest.approx(max(0.0, (3 * p - 1) / 2), abs=1e-12)


def test_rescaled_discord_bell_werner_regression():
    """Rescaled discord of p*Bell + (1-p)*I/4 from the analytic D_S = p^2/2."""
    for p in np.linspace(0.05, 1, 20):
        rho = p * BELL + (1 - p) * np.eye(4) / 4
        r = discord_report(rho)
        pur = (1 + 3 * p**2) / 4
        assert r.ds_lower == pytest.approx(p**2 / 2, abs=1e-12)
        assert r.purity == pytest.approx(pur, abs=1e-12)
        assert r.d_lower == pytest.approx(rescaled_discord(p**2 / 2, pur), abs=1e-12)
        assert r.d_lower == r.d_upper


def test_evolved_equal_superposition_bounds_coincide():
    times = np.linspace(0, 10, 41)
    rho0 = pure_product_state(1 / math.sqrt(2), 1 / math.sqrt(2))
    for T in (0.0, 100.0, 300.0):
        k = compute_kernel(times, BathSpec(T), 6.0)
        for n in range(len(times)):
            rho = propagate(rho0, k, n)
            assert geometric_discord_upper(rho) == pytest.approx(geometric_discord_lower(rho),
                                                                 abs=1e-8)


def test_one_sided_sides_differ_for_asymmetric_state():
    # classical on the left, quantum on the right
    plus = np.full((2, 2), 0.5)
    rho = 0.5 * np.kron(np.diag([1, 0]), np.diag([1, 0])) + 0.5 * np.kron(np.diag([0, 1]), plus)
    left, right = one_sided_discord(rho)
    assert left == pytest.approx(0.0, abs=1e-15)
    assert right > 1e-3
    assert geometric_discord_lower(rho) == max(left, right)


def test_report_json():
    r = discord_report(BELL)
    assert set(r.to_dict()) == {"ds_lower", "ds_upper", "purity", "d_lower", "d_upper",
                                "concurrence"}
    assert '"d_upper"' in r.to_json()
