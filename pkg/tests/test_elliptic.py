import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import LATTICES, SQUARE, interior_points, random_lattices
from foundry.elliptic import (
    Lattice,
    lattice_constants,
    lattice_coords,
    lattice_distance,
    log_sigma,
    quasi_period,
    reduce_to_fundamental,
    sigma_w,
    wp,
    wp_prime,
    zeta_w,
)
from foundry.errors import InvalidLattice, PoleAtLatticePoint
from foundry.tolerances import TOL
from oracles import sigma_product, wp_brute, wp_prime_sum, wp_sum, zeta_sum


def rel(a, b):
    return np.abs(a - b) / np.maximum(np.abs(b), 1e-300)


# -- Lattice ----------------------------------------------------------------


@pytest.mark.parametrize("w1,w3", [(0, 1j), (1, 0), (1, 2), (1, -1j), (np.nan, 1j), (1, np.inf)])
def test_invalid_lattice(w1, w3):
    with pytest.raises(InvalidLattice):
        Lattice(w1, w3)


def test_lattice_derived_values():
    lat = Lattice(1.0, 0.3 + 0.8j)
    assert lat.omega2 == 1.3 + 0.8j
    assert lat.generators == (2.0, 0.6 + 1.6j)
    assert lat.point(1, -2) == 2.0 - 2 * (0.6 + 1.6j)
    assert lat.pole_radius == pytest.approx(2e-8)


# -- reduction ----------------------------------------------------------------


def test_reduce_identity_cases(lat):
    assert reduce_to_fundamental(0j, lat) == (0j, 0, 0)
    x0, m, n = reduce_to_fundamental(2 * lat.omega1, lat)
    assert (m, n) == (1, 0) and abs(x0) < 1e-15


@given(st.floats(-40, 40), st.floats(-40, 40))
def test_reduce_round_trip(s, t):
    lat = LATTICES[2]
    x = s * lat.omega1 + t * lat.omega3
    x0, m, n = reduce_to_fundamental(x, lat)
    back = x0 + 2 * m * lat.omega1 + 2 * n * lat.omega3
    assert abs(back - x) <= 1e-14 * max(1.0, abs(x))
    a, b = lattice_coords(x0, lat)
    assert abs(a) <= 1 + 1e-12 and abs(b) <= 1 + 1e-12


def test_reduce_rejects_nonfinite():
    with pytest.raises(ValueError):
        reduce_to_fundamental(complex(np.nan, 0), SQUARE)


def test_poles_rejected(lat):
    for f in (wp, wp_prime, zeta_w):
        with pytest.raises(PoleAtLatticePoint):
            f(2 * lat.omega3, lat)
        with pytest.raises(PoleAtLatticePoint):
            f(lat.point(2, -1) + 1e-12, lat)


# -- symmetry and periodicity -------------------------------------------------


def test_parity(lat):
    x = interior_points(lat, 100, seed=1)
    assert np.max(rel(wp(-x, lat), wp(x, lat))) < 1e-12
    assert np.max(rel(wp_prime(-x, lat), -wp_prime(x, lat))) < 1e-12
    assert np.max(rel(zeta_w(-x, lat), -zeta_w(x, lat))) < 1e-12
    assert np.max(rel(sigma_w(-x, lat), -sigma_w(x, lat))) < 1e-12
    assert sigma_w(0j, lat) == 0


def test_quasi_periodicity(lat):
    k = lattice_constants(lat)
    x = interior_points(lat, 1000, seed=2)
    for j, (w, eta) in enumerate(((lat.omega1, k.eta1), (lat.omega3, k.eta3))):
        assert np.max(rel(wp(x + 2 * w, lat), wp(x, lat))) < 1e-12
        z = zeta_w(x, lat)
        assert np.max(np.abs(zeta_w(x + 2 * w, lat) - z - 2 * eta) / np.maximum(1, np.abs(z))) < 1e-12
        lhs = sigma_w(x + 2 * w, lat)
        rhs = -sigma_w(x, lat) * np.exp(2 * eta * (x + w))
        assert np.max(rel(lhs, rhs)) < 1e-12


def test_quasi_period_helper(lat):
    x = 0.31 + 0.17j
    for m, n in ((1, 0), (0, 1), (2, -3), (-1, 4)):
        d = zeta_w(x + lat.point(m, n), lat) - zeta_w(x, lat)
        assert abs(d - quasi_period(m, n, lat)) < 1e-11 * max(1, abs(d))


def test_sigma_far_translation_is_finite(lat):
    # log_sigma stays finite where sigma itself would overflow
    x = 0.2 + 0.1j + lat.point(40, -35)
    assert np.isfinite(log_sigma(x, lat))


# -- asymptotics ---------------------------------------------------------------


def test_wp_asymptotics(lat):
    u = np.exp(0.7j) * lat.omega1 / abs(lat.omega1)
    errs = []
    for r in (1e-2, 1e-3):
        x = r * u
        errs.append(abs(wp(x, lat) - 1 / x**2) / r**2)
    # |wp - 1/x^2| <= C |x|^2 with C fitted on the two radii
    C = max(errs)
    assert errs[1] <= 1.01 * C
    assert abs(errs[0] - errs[1]) < 1e-2 * C


def test_sigma_small_argument(lat):
    x = 1e-4 * np.exp(0.3j)
    assert abs(sigma_w(x, lat) / x - 1) < 1e-7
    assert abs(zeta_w(x, lat) - 1 / x) < 1e-6


def test_wp_prime_differential_equation(lat):
    k = lattice_constants(lat)
    x = interior_points(lat, 200, seed=3)
    p = wp(x, lat)
    lhs = wp_prime(x, lat) ** 2
    rhs = 4 * (p - k.e1) * (p - k.e2) * (p - k.e3)
    assert np.max(rel(lhs, rhs)) < 1e-10


def test_wp_prime_zero_at_half_periods(lat):
    for w in lat.half_periods:
        scale = abs(lat.omega1) ** -3
        assert abs(wp_prime(w, lat)) < 1e-10 * max(1, scale)


def test_finite_difference_identities(lat):
    x = interior_points(lat, 50, seed=4, margin=0.3)
    h = 1e-5
    dz = (zeta_w(x + h, lat) - zeta_w(x - h, lat)) / (2 * h)
    assert np.max(np.abs(dz + wp(x, lat)) / np.maximum(1, np.abs(wp(x, lat)))) < 1e-7
    dls = (log_sigma(x + h, lat) - log_sigma(x - h, lat)) / (2 * h)
    assert np.max(np.abs(dls - zeta_w(x, lat)) / np.maximum(1, np.abs(zeta_w(x, lat)))) < 1e-7


# -- constants ------------------------------------------------------------------


def test_constants_invariants():
    for lat in LATTICES + random_lattices(20, seed=5):
        k = lattice_constants(lat)
        scale = max(1.0, *(abs(e) for e in k.e))
        assert k.legendre_residual(lat) < TOL.const_identity
        assert k.e_sum_residual() < TOL.const_identity * scale
        assert k.eta_sum_residual() < TOL.const_identity * max(1.0, abs(k.eta1), abs(k.eta3))


def test_square_lattice_constants():
    lat = Lattice(0.5, 0.5j)
    k = lattice_constants(lat)
    assert abs(k.e2) < 1e-12
    assert abs(k.e1 + k.e3) < 1e-12
    # symmetry gives eta3 = -i eta1, so Legendre forces eta1 = pi/2
    assert abs(k.eta1 - math.pi / 2) < 1e-12
    assert abs(k.eta3 + 1j * math.pi / 2) < 1e-12
    assert abs(k.e1 - wp_sum(0.5, lat)) < 1e-12


def test_constants_are_function_values(lat):
    k = lattice_constants(lat)
    for j, w in enumerate(lat.half_periods):
        assert abs(wp(w, lat) - k.e[j]) < 1e-14 * max(1, abs(k.e[j]))
        assert abs(zeta_w(w, lat) - k.eta[j]) < 1e-12 * max(1, abs(k.eta[j]))


# -- oracles ------------------------------------------------------------------------


def grid_points(lat, n=10):
    u = (np.arange(n) + 0.5) / n - 0.5
    U, V = np.meshgrid(u, u)
    return (2 * U * lat.omega1 + 2 * V * lat.omega3).ravel()


@pytest.mark.parametrize("lat", LATTICES[:3] + random_lattices(3, seed=6))
def test_against_row_sum_oracle(lat):
    x = grid_points(lat)
    assert np.max(rel(wp(x, lat), wp_sum(x, lat))) < 1e-8
    assert np.max(rel(wp_prime(x, lat), wp_prime_sum(x, lat))) < 1e-8
    assert np.max(rel(zeta_w(x, lat), zeta_sum(x, lat))) < 1e-8
    assert np.max(rel(sigma_w(x, lat), sigma_product(x, lat))) < 1e-8


def test_row_sum_oracle_against_plain_sum():
    # the plain double sum converges slowly; it only confirms the oracle to ~1e-3
    x = 0.3 + 0.2j
    assert abs(wp_brute(x, SQUARE, 60) - wp_sum(x, SQUARE)) < 1e-3 * abs(wp_sum(x, SQUARE))


def test_purity(lat):
    x = interior_points(lat, 20, seed=7)
    a = wp(x, lat)
    b = wp(x.copy(), lat)
    assert np.array_equal(a, b)


def test_scalar_and_array_agree(lat):
    x = interior_points(lat, 5, seed=8)
    vec = zeta_w(x, lat)
    for xi, vi in zip(x, vec):
        assert abs(zeta_w(complex(xi), lat) - vi) <= 1e-15 * abs(vi)


def test_lattice_distance(lat):
    assert lattice_distance(lat.point(3, -2), lat) < 1e-12
    d = lattice_distance(lat.omega1 + lat.point(1, 1), lat)
    assert 0 < d <= abs(lat.omega1) + 1e-15
    x = 0.01 * lat.omega3 + lat.point(-4, 7)
    assert abs(lattice_distance(x, lat) - 0.01 * abs(lat.omega3)) < 1e-12
